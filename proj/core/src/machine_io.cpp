#include "weirdfind/machine_io.hpp"

#include <nlohmann/json.hpp>

namespace weirdfind::machines {

using nlohmann::json;

namespace {

json parse_document(const std::string& text) {
  try {
    json doc = json::parse(text);
    if (!doc.is_object()) throw InputError("input document must be a JSON object");
    return doc;
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

const json& require(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw InputError(std::string("missing key '") + key + "'");
  return *it;
}

Word parse_word(const json& j, const TagSystem& sys, const std::string& what) {
  Word w;
  if (j.is_string()) {
    for (const auto& s : sys.symbols) {
      if (s.size() != 1) throw InputError(what + ": string words need single-character symbols; use an array");
    }
    for (char c : j.get<std::string>()) w.emplace_back(1, c);
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (!e.is_string()) throw InputError(what + ": word entries must be strings");
      w.push_back(e.get<std::string>());
    }
  } else {
    throw InputError(what + ": expected a string or an array of symbols");
  }
  for (const auto& s : w) {
    if (!sys.has_symbol(s)) throw InputError(what + ": unknown symbol '" + s + "'");
  }
  return w;
}

std::uint64_t parse_count(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) return 0;
  if (!it->is_number_unsigned()) throw InputError(std::string("'") + key + "' must be a non-negative integer");
  return it->get<std::uint64_t>();
}

}  // namespace

TagInput parse_tag_input(const std::string& json_text) {
  const json doc = parse_document(json_text);
  TagInput in;
  const json& symbols = require(doc, "symbols");
  if (!symbols.is_array()) throw InputError("'symbols' must be an array");
  for (const auto& s : symbols) {
    if (!s.is_string()) throw InputError("'symbols' entries must be strings");
    in.system.symbols.push_back(s.get<std::string>());
  }
  const json& halt = require(doc, "halt");
  if (!halt.is_string()) throw InputError("'halt' must be a string");
  in.system.halt = halt.get<std::string>();
  const json& prods = require(doc, "productions");
  if (!prods.is_object()) throw InputError("'productions' must be an object");
  for (const auto& [sym, rhs] : prods.items()) {
    in.system.productions[sym] = parse_word(rhs, in.system, "production of '" + sym + "'");
  }
  in.system.validate();
  in.initial = parse_word(require(doc, "initial"), in.system, "initial word");
  return in;
}

CounterInput parse_counter_input(const std::string& json_text) {
  const json doc = parse_document(json_text);
  CounterInput in;
  const json& instrs = require(doc, "instructions");
  if (!instrs.is_array()) throw InputError("'instructions' must be an array");
  for (std::size_t i = 0; i < instrs.size(); ++i) {
    const json& ins = instrs[i];
    const std::string where = "instruction " + std::to_string(i);
    if (!ins.is_object()) throw InputError(where + ": expected an object");
    const json& op = require(ins, "op");
    if (!op.is_string()) throw InputError(where + ": 'op' must be a string");
    const std::string name = op.get<std::string>();
    auto reg = [&] {
      const json& r = require(ins, "r");
      if (!r.is_number_integer()) throw InputError(where + ": 'r' must be an integer");
      return r.get<int>();
    };
    auto target = [&] {
      const json& q = require(ins, "q");
      if (!q.is_number_unsigned()) throw InputError(where + ": 'q' must be a non-negative integer");
      return q.get<std::size_t>();
    };
    if (name == "INC") {
      in.program.instructions.push_back(inc(reg()));
    } else if (name == "DEC") {
      in.program.instructions.push_back(dec(reg()));
    } else if (name == "JZ") {
      const int r = reg();
      in.program.instructions.push_back(jz(r, target()));
    } else if (name == "J") {
      in.program.instructions.push_back(jmp(target()));
    } else {
      throw InputError(where + ": unknown op '" + name + "'");
    }
  }
  in.program.validate();
  in.c0 = parse_count(doc, "c0");
  in.c1 = parse_count(doc, "c1");
  return in;
}

MachineKind detect_kind(const std::string& json_text) {
  const json doc = parse_document(json_text);
  const bool counter = doc.contains("instructions");
  const bool tag = doc.contains("productions");
  if (counter == tag) throw InputError("cannot tell the machine kind: expected exactly one of 'instructions' or 'productions'");
  return counter ? MachineKind::Counter : MachineKind::Tag;
}

std::string to_json(const TagInput& input) {
  json doc;
  doc["symbols"] = input.system.symbols;
  doc["halt"] = input.system.halt;
  json prods = json::object();
  for (const auto& [sym, rhs] : input.system.productions) prods[sym] = rhs;
  doc["productions"] = prods;
  doc["initial"] = input.initial;
  return doc.dump(2);
}

std::string to_json(const CounterInput& input) {
  json instrs = json::array();
  for (const auto& ins : input.program.instructions) {
    json j;
    switch (ins.op) {
      case CounterOp::Inc: j = {{"op", "INC"}, {"r", ins.r}}; break;
      case CounterOp::Dec: j = {{"op", "DEC"}, {"r", ins.r}}; break;
      case CounterOp::Jz: j = {{"op", "JZ"}, {"r", ins.r}, {"q", ins.q}}; break;
      case CounterOp::J: j = {{"op", "J"}, {"q", ins.q}}; break;
    }
    instrs.push_back(j);
  }
  json doc;
  doc["instructions"] = instrs;
  doc["c0"] = input.c0;
  doc["c1"] = input.c1;
  return doc.dump(2);
}

}  // namespace weirdfind::machines
