#pragma once

// Deterministic executor for command sequences over a vfs::Filesystem.
//
// Each argv is parsed up front; then commands run in order against the shared
// filesystem. Every node visit, every spawned command, and every entry read
// from a -files0-from stream costs one unit of fuel.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "weirdfind/find_command.hpp"
#include "weirdfind/regex.hpp"
#include "weirdfind/vfs.hpp"

namespace weirdfind::emu {

inline constexpr std::uint64_t kDefaultFuel = 1'000'000;

using Argv = std::vector<std::string>;

class OutOfFuel : public std::runtime_error {
 public:
  OutOfFuel() : std::runtime_error("out of fuel") {}
};

class InvalidBinary : public std::runtime_error {
 public:
  explicit InvalidBinary(const std::string& binary)
      : std::runtime_error("binary '" + binary + "' is not permitted"), binary_(binary) {}
  const std::string& binary() const { return binary_; }

 private:
  std::string binary_;
};

// A situation the model refuses to guess about.
class EmulatorAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Outcome : std::uint8_t { Halted, OutOfFuel, InvalidBinary, ParseError, Abort };

std::string_view to_string(Outcome outcome);

struct Stats {
  std::uint64_t visits = 0;
  std::uint64_t spawns = 0;
  std::uint64_t stream_entries = 0;
};

struct ExecutionResult {
  Outcome outcome = Outcome::Halted;
  std::string stdout_bytes;
  std::string stderr_bytes;
  std::vector<int> statuses;  // one per top-level command that finished
  std::uint64_t fuel_used = 0;
  Stats stats;
  std::string diagnostic;  // set for every outcome but Halted

  bool halted() const { return outcome == Outcome::Halted; }
};

struct Hooks {
  // Called before the expression is evaluated on a visited path. `level` is
  // 0 for top-level commands and grows by one per -exec/-execdir nesting.
  std::function<void(int level, std::size_t command_index, std::string_view path)> on_visit;
};

struct Options {
  std::uint64_t fuel = kDefaultFuel;
  std::set<std::string> binaries{"find", "mkdir"};
  std::uint64_t regex_step_budget = re::kDefaultStepBudget;
  std::ostream* trace = nullptr;
  Hooks hooks;
};

struct ProcessCtx {
  vfs::NodePtr cwd;
  int level = 0;
  std::size_t command_index = 0;
};

class Emulator {
 public:
  Emulator(vfs::Filesystem& fs, Options options);

  ExecutionResult run_script(const std::vector<Argv>& commands);

  // Lower-level entry points; they throw OutOfFuel, InvalidBinary and
  // EmulatorAbort instead of folding them into a result.
  int run_command(const ProcessCtx& ctx, const Argv& argv);
  int run_find(const ProcessCtx& ctx, const find::FindCommand& cmd);
  int run_mkdir(const ProcessCtx& ctx, const find::MkdirCommand& cmd);

  const std::string& stdout_bytes() const { return out_; }
  const std::string& stderr_bytes() const { return err_; }
  std::uint64_t fuel_used() const { return used_; }
  const Stats& stats() const { return stats_; }

 private:
  friend class FindRun;

  void consume();
  int spawn(const ProcessCtx& ctx, const Argv& argv);
  void trace(std::string_view line);
  bool tracing() const { return options_.trace != nullptr; }

  vfs::Filesystem& fs_;
  Options options_;
  std::string out_;
  std::string err_;
  std::uint64_t used_ = 0;
  Stats stats_;
};

// Runs `commands` on `fs` with the given fuel and permitted binaries.
ExecutionResult run_script(const std::vector<Argv>& commands, vfs::Filesystem& fs, std::uint64_t fuel,
                           const std::set<std::string>& binaries);

}  // namespace weirdfind::emu
