#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace weirdfind {

// An ordered list of argv vectors plus the binaries they may spawn.
struct Script {
  std::set<std::string> binaries;
  std::vector<std::vector<std::string>> commands;

  std::size_t token_count() const;
  bool operator==(const Script&) const = default;
};

class ScriptFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"binaries": [...], "commands": [[token, ...], ...]}
std::string script_to_json(const Script& script);
Script script_from_json(const std::string& text);  // throws ScriptFormatError

}  // namespace weirdfind
