#include "config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace defl::bench {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (const char c : key)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-')) return false;
  return true;
}

}  // namespace

ConfigMap parse_config(const std::string& text, const std::string& source) {
  ConfigMap out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(source, line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (!valid_key(key)) throw ConfigError(source, line, "invalid key '" + key + "'");
    if (value.empty()) throw ConfigError(source, line, "missing value for '" + key + "'");
    if (!out.emplace(key, value).second) throw ConfigError(source, line, "duplicate key '" + key + "'");
  }
  return out;
}

ConfigMap load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path);
}

ConfigMap merge_layers(const ConfigMap& lower, const ConfigMap& upper) {
  ConfigMap out = lower;
  for (const auto& [k, v] : upper) out[k] = v;
  return out;
}

}  // namespace defl::bench
