#pragma once

#include <map>
#include <string>

#include "defl/types.hpp"

namespace defl::bench {

/// Flat key = value text. Blank lines and lines starting with '#' are
/// ignored; keys are [A-Za-z0-9_.-]+, values run to end of line with
/// surrounding whitespace trimmed. Duplicate keys are an error.
using ConfigMap = std::map<std::string, std::string>;

class ConfigError : public Error {
 public:
  ConfigError(const std::string& source, int line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

ConfigMap parse_config(const std::string& text, const std::string& source = "<config>");
ConfigMap load_config(const std::string& path);

/// Later layers win: merge_layers(defaults, file, flags).
ConfigMap merge_layers(const ConfigMap& lower, const ConfigMap& upper);

}  // namespace defl::bench
