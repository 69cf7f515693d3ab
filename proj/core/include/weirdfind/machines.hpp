#pragma once

// Reference models: 2-tag systems and 2-counter program machines.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace weirdfind::machines {

enum class MachineErrc : std::uint8_t { UnknownSymbol, InvalidSystem, InvalidProgram };

class MachineError : public std::runtime_error {
 public:
  MachineError(MachineErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  MachineErrc code() const { return code_; }

 private:
  MachineErrc code_;
};

using Word = std::vector<std::string>;

std::string join_word(const Word& w);

struct TagSystem {
  std::vector<std::string> symbols;  // ordered, distinct, contains halt
  std::string halt;
  std::map<std::string, Word> productions;  // keys = symbols \ {halt}

  // Throws MachineError(InvalidSystem) when the invariants do not hold.
  void validate() const;
  bool has_symbol(const std::string& s) const;
  std::size_t index_of(const std::string& s) const;  // throws UnknownSymbol
};

// nullopt means the word halts.
std::optional<Word> tag_step(const TagSystem& sys, const Word& word);

struct TagRun {
  std::vector<Word> words;  // w_1 .. w_t
  bool halted = false;      // false: max_steps reached first
  std::size_t steps = 0;    // words.size() - 1

  const Word& last() const { return words.back(); }
};

TagRun tag_run(const TagSystem& sys, const Word& w1, std::size_t max_steps);

enum class CounterOp : std::uint8_t { Inc, Dec, Jz, J };

struct CounterInstr {
  CounterOp op;
  int r = 0;
  std::size_t q = 0;

  bool operator==(const CounterInstr&) const = default;
};

CounterInstr inc(int r);
CounterInstr dec(int r);
CounterInstr jz(int r, std::size_t q);
CounterInstr jmp(std::size_t q);

std::string to_string(const CounterInstr& ins);

struct CounterProgram {
  std::vector<CounterInstr> instructions;

  std::size_t size() const { return instructions.size(); }
  void validate() const;  // throws MachineError(InvalidProgram)
};

struct CounterConfig {
  std::size_t pc = 0;
  std::uint64_t c0 = 0;
  std::uint64_t c1 = 0;

  bool operator==(const CounterConfig&) const = default;
};

// Precondition: config.pc < prog.size().
CounterConfig cm_step(const CounterProgram& prog, const CounterConfig& config);

struct CounterRun {
  bool halted = false;  // false: max_steps reached first
  std::uint64_t output = 0;
  std::size_t steps = 0;
  CounterConfig final_config;
  std::vector<CounterConfig> trace;  // filled only when requested
};

CounterRun cm_run(const CounterProgram& prog, std::uint64_t c0, std::uint64_t c1, std::size_t max_steps,
                  bool record_trace = false);

}  // namespace weirdfind::machines
