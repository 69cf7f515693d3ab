#pragma once

// JSON documents for machine inputs.
//
// Tag system:
//   {"symbols": ["a","b","c","H"], "halt": "H",
//    "productions": {"a": "ccbaH", "b": ["c","c","a"], "c": "cc"},
//    "initial": "baa"}
// Strings are accepted for words only when every symbol is one character.
//
// Counter program:
//   {"instructions": [{"op":"JZ","r":1,"q":4}, {"op":"DEC","r":1},
//                     {"op":"INC","r":0}, {"op":"J","q":0}],
//    "c0": 2, "c1": 3}

#include <stdexcept>
#include <string>

#include "weirdfind/machines.hpp"

namespace weirdfind::machines {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TagInput {
  TagSystem system;
  Word initial;
};

struct CounterInput {
  CounterProgram program;
  std::uint64_t c0 = 0;
  std::uint64_t c1 = 0;
};

enum class MachineKind : std::uint8_t { Tag, Counter };

// Throws InputError on malformed JSON or missing keys, MachineError when the
// decoded machine violates its invariants.
TagInput parse_tag_input(const std::string& json_text);
CounterInput parse_counter_input(const std::string& json_text);

// "instructions" key -> Counter, "productions" key -> Tag.
MachineKind detect_kind(const std::string& json_text);

std::string to_json(const TagInput& input);
std::string to_json(const CounterInput& input);

}  // namespace weirdfind::machines
