#include "weirdfind/machines.hpp"

#include <algorithm>
#include <set>

namespace weirdfind::machines {

std::string join_word(const Word& w) {
  std::string out;
  for (const auto& s : w) out += s;
  return out;
}

bool TagSystem::has_symbol(const std::string& s) const {
  return std::find(symbols.begin(), symbols.end(), s) != symbols.end();
}

std::size_t TagSystem::index_of(const std::string& s) const {
  auto it = std::find(symbols.begin(), symbols.end(), s);
  if (it == symbols.end()) throw MachineError(MachineErrc::UnknownSymbol, "unknown symbol '" + s + "'");
  return static_cast<std::size_t>(it - symbols.begin());
}

void TagSystem::validate() const {
  auto bad = [](const std::string& msg) { return MachineError(MachineErrc::InvalidSystem, "tag system: " + msg); };
  std::set<std::string> seen;
  for (const auto& s : symbols) {
    if (s.empty()) throw bad("empty symbol name");
    if (!seen.insert(s).second) throw bad("duplicate symbol '" + s + "'");
  }
  if (seen.count(halt) == 0) throw bad("halt symbol '" + halt + "' is not in the alphabet");
  if (productions.count(halt) != 0) throw bad("the halt symbol has a production");
  for (const auto& s : symbols) {
    if (s != halt && productions.count(s) == 0) throw bad("symbol '" + s + "' has no production");
  }
  for (const auto& [lhs, rhs] : productions) {
    if (seen.count(lhs) == 0) throw bad("production for unknown symbol '" + lhs + "'");
    for (const auto& s : rhs) {
      if (seen.count(s) == 0) throw bad("production of '" + lhs + "' uses unknown symbol '" + s + "'");
    }
  }
}

std::optional<Word> tag_step(const TagSystem& sys, const Word& word) {
  for (const auto& s : word) {
    if (!sys.has_symbol(s)) throw MachineError(MachineErrc::UnknownSymbol, "unknown symbol '" + s + "'");
  }
  if (word.size() < 2 || word.front() == sys.halt) return std::nullopt;
  Word next(word.begin() + 2, word.end());
  const Word& p = sys.productions.at(word.front());
  next.insert(next.end(), p.begin(), p.end());
  return next;
}

TagRun tag_run(const TagSystem& sys, const Word& w1, std::size_t max_steps) {
  TagRun run;
  run.words.push_back(w1);
  for (;;) {
    std::optional<Word> next = tag_step(sys, run.words.back());
    if (!next) {
      run.halted = true;
      break;
    }
    if (run.steps == max_steps) break;
    run.words.push_back(std::move(*next));
    ++run.steps;
  }
  return run;
}

CounterInstr inc(int r) { return {CounterOp::Inc, r, 0}; }
CounterInstr dec(int r) { return {CounterOp::Dec, r, 0}; }
CounterInstr jz(int r, std::size_t q) { return {CounterOp::Jz, r, q}; }
CounterInstr jmp(std::size_t q) { return {CounterOp::J, 0, q}; }

std::string to_string(const CounterInstr& ins) {
  switch (ins.op) {
    case CounterOp::Inc: return "INC(" + std::to_string(ins.r) + ")";
    case CounterOp::Dec: return "DEC(" + std::to_string(ins.r) + ")";
    case CounterOp::Jz: return "JZ(" + std::to_string(ins.r) + "," + std::to_string(ins.q) + ")";
    case CounterOp::J: return "J(" + std::to_string(ins.q) + ")";
  }
  return "?";
}

void CounterProgram::validate() const {
  for (std::size_t i = 0; i < instructions.size(); ++i) {
    const CounterInstr& ins = instructions[i];
    const std::string where = "instruction " + std::to_string(i) + " " + to_string(ins);
    if (ins.r != 0 && ins.r != 1) throw MachineError(MachineErrc::InvalidProgram, where + ": register must be 0 or 1");
    if ((ins.op == CounterOp::Jz || ins.op == CounterOp::J) && ins.q > instructions.size()) {
      throw MachineError(MachineErrc::InvalidProgram, where + ": jump target beyond program end");
    }
  }
}

CounterConfig cm_step(const CounterProgram& prog, const CounterConfig& config) {
  const CounterInstr& ins = prog.instructions.at(config.pc);
  CounterConfig next = config;
  std::uint64_t& reg = ins.r == 0 ? next.c0 : next.c1;
  switch (ins.op) {
    case CounterOp::Inc:
      ++reg;
      ++next.pc;
      break;
    case CounterOp::Dec:
      if (reg > 0) --reg;
      ++next.pc;
      break;
    case CounterOp::Jz: next.pc = reg == 0 ? ins.q : next.pc + 1; break;
    case CounterOp::J: next.pc = ins.q; break;
  }
  return next;
}

CounterRun cm_run(const CounterProgram& prog, std::uint64_t c0, std::uint64_t c1, std::size_t max_steps,
                  bool record_trace) {
  CounterRun run;
  CounterConfig cfg{0, c0, c1};
  if (record_trace) run.trace.push_back(cfg);
  while (cfg.pc < prog.size() && run.steps < max_steps) {
    cfg = cm_step(prog, cfg);
    ++run.steps;
    if (record_trace) run.trace.push_back(cfg);
  }
  run.halted = cfg.pc >= prog.size();
  run.output = cfg.c0;
  run.final_config = cfg;
  return run;
}

}  // namespace weirdfind::machines
