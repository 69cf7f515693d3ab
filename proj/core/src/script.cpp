#include "weirdfind/script.hpp"

#include <nlohmann/json.hpp>

namespace weirdfind {

std::size_t Script::token_count() const {
  std::size_t n = 0;
  for (const auto& c : commands) n += c.size();
  return n;
}

std::string script_to_json(const Script& script) {
  nlohmann::json doc;
  doc["binaries"] = std::vector<std::string>(script.binaries.begin(), script.binaries.end());
  doc["commands"] = script.commands;
  return doc.dump(2) + "\n";
}

Script script_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScriptFormatError(std::string("malformed script JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ScriptFormatError("script must be a JSON object");

  Script script;
  auto strings = [](const nlohmann::json& arr, const std::string& what) {
    if (!arr.is_array()) throw ScriptFormatError(what + " must be an array");
    std::vector<std::string> out;
    for (const auto& e : arr) {
      if (!e.is_string()) throw ScriptFormatError(what + " entries must be strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  };
  if (auto it = doc.find("binaries"); it != doc.end()) {
    for (auto& b : strings(*it, "'binaries'")) script.binaries.insert(std::move(b));
  } else {
    script.binaries = {"find", "mkdir"};
  }
  auto it = doc.find("commands");
  if (it == doc.end() || !it->is_array()) throw ScriptFormatError("'commands' must be an array of argv arrays");
  for (std::size_t i = 0; i < it->size(); ++i) {
    auto argv = strings((*it)[i], "command " + std::to_string(i));
    if (argv.empty()) throw ScriptFormatError("command " + std::to_string(i) + " is empty");
    script.commands.push_back(std::move(argv));
  }
  return script;
}

}  // namespace weirdfind
