// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "cli.hpp"
#include "generators.hpp"
#include "nfa_oracle.hpp"
#include "weirdfind/compiler.hpp"
#include "weirdfind/emulator.hpp"
#include "weirdfind/state_path.hpp"

using namespace weirdfind;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kCrit1Seconds = 5.0;
constexpr double kCrit2Seconds = 10.0;
constexpr double kCrit3Seconds = 5.0;
constexpr double kCrit4Seconds = 300.0;
constexpr int kCrit4Instances = 50;
constexpr std::uint64_t kCrit1Fuel = 1'000'000;
// Backend C spends roughly (symbols + 2) x path depth per step.
constexpr std::uint64_t kNoBackrefFuel = 50'000'000;
constexpr std::uint64_t kCounterFuel = 20'000'000;

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

machines::Word w(const std::string& s) {
  machines::Word out;
  for (char c : s) out.emplace_back(1, c);
  return out;
}

machines::TagSystem toy() {
  return {{"a", "b", "c", "H"}, "H", {{"a", w("ccbaH")}, {"b", w("cca")}, {"c", w("cc")}}};
}

machines::CounterProgram add_program() {
  return {{machines::jz(1, 4), machines::dec(1), machines::inc(0), machines::jmp(0)}};
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

emu::ExecutionResult emulate(vfs::Filesystem& fs, const Script& s, std::uint64_t fuel, emu::Hooks hooks = {}) {
  emu::Options opts;
  opts.fuel = fuel;
  opts.binaries = s.binaries;
  opts.hooks = std::move(hooks);
  return emu::Emulator(fs, std::move(opts)).run_script(s.commands);
}

Verdict criterion1() {
  Verdict v;
  const auto t0 = Clock::now();
  vfs::Filesystem fs;
  const auto r = emulate(fs, compiler::compile_tag_backref(toy(), w("baa")), kCrit1Fuel);
  const double secs = seconds_since(t0);
  v.require(r.halted(), "did not halt: " + r.diagnostic);
  v.require(r.stdout_bytes == "/ad/ac/ac/ac/ac/ac/ac/aa", "stdout was '" + cli::escape_bytes(r.stdout_bytes) + "'");
  if (v.ok) {
    const auto decoded = machines::join_word(compiler::decode_word(compiler::make_encoding(toy()), r.stdout_bytes));
    v.require(decoded == "Hcccccca", "decoded " + decoded);
  }
  v.require(secs < kCrit1Seconds, "took " + fixed(secs) + " s");
  if (v.ok) v.detail = "stdout /ad/ac/ac/ac/ac/ac/ac/aa, fuel " + std::to_string(r.fuel_used) + ", " + fixed(secs) + " s";
  return v;
}

Verdict criterion2() {
  Verdict v;
  const auto t0 = Clock::now();
  vfs::Filesystem fs;
  std::size_t checks = 0;
  std::string violation;
  emu::Hooks hooks;
  hooks.on_visit = [&](int level, std::size_t index, std::string_view) {
    if (level != 0 || index != 1) return;
    try {
      (void)compiler::extract_state_path(fs, compiler::kSep, compiler::FilePolicy::Reject);
      ++checks;
    } catch (const compiler::InvariantViolated& e) {
      if (violation.empty()) violation = e.what();
    }
  };
  const auto r = emulate(fs, compiler::compile_tag_nobackref(toy(), w("baa")), kNoBackrefFuel, hooks);
  const double secs = seconds_since(t0);
  v.require(r.halted(), "did not halt: " + r.diagnostic);
  v.require(r.stdout_bytes.find("unreachable") == std::string::npos, "sentinel printed");
  if (v.ok) {
    try {
      const auto decoded = machines::join_word(compiler::decode_word(compiler::make_encoding(toy()), r.stdout_bytes));
      v.require(decoded == "Hcccccca", "decoded " + decoded);
    } catch (const compiler::CompileError& e) {
      v.require(false, e.what());
    }
  }
  v.require(violation.empty(), violation);
  v.require(checks > 0, "hook never fired");
  v.require(secs < kCrit2Seconds, "took " + fixed(secs) + " s");
  if (v.ok) {
    v.detail = "decoded Hcccccca, " + std::to_string(checks) + " clean state checks, fuel " + std::to_string(r.fuel_used) +
               ", " + fixed(secs) + " s";
  }
  return v;
}

Verdict criterion3() {
  Verdict v;
  std::string summary;
  for (auto [c0, c1] : {std::pair<std::uint64_t, std::uint64_t>{2, 3}, {0, 0}}) {
    const auto t0 = Clock::now();
    vfs::Filesystem fs;
    const auto r = emulate(fs, compiler::compile_counter(add_program(), c0, c1), kCounterFuel);
    const double secs = seconds_since(t0);
    const auto oracle = machines::cm_run(add_program(), c0, c1, 10'000);
    const std::string want = std::to_string(oracle.output);
    const std::string tag = "(" + std::to_string(c0) + "," + std::to_string(c1) + ")";
    v.require(r.halted(), tag + " did not halt: " + r.diagnostic);
    v.require(oracle.halted && r.stdout_bytes == want, tag + " printed '" + r.stdout_bytes + "', oracle " + want);
    v.require(secs < kCrit3Seconds, tag + " took " + fixed(secs) + " s");
    summary += (summary.empty() ? "" : ", ") + tag + " -> " + r.stdout_bytes;
  }
  v.require(machines::cm_run(add_program(), 2, 3, 100).output == 5, "oracle disagrees with 5");
  if (v.ok) v.detail = summary;
  return v;
}

// Runs `weirdfind verify` on a machine document and returns the exit code.
int run_verify(const std::string& json, const std::string& backend, std::uint64_t fuel, std::size_t max_steps,
               std::string& report) {
  static int counter = 0;
  const auto path = std::filesystem::temp_directory_path() /
                    ("weirdfind_accept_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".json");
  {
    std::ofstream out(path);
    out << json;
  }
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli({"verify", path.string(), "--backend", backend, "--fuel", std::to_string(fuel),
                                 "--max-steps", std::to_string(max_steps)},
                                out, err);
  std::filesystem::remove(path);
  report = out.str() + err.str();
  return code;
}

Verdict criterion4() {
  Verdict v;
  const auto t0 = Clock::now();
  wftest::Rng rng(20240601);
  int passed_a = 0, passed_c = 0, passed_b = 0;
  std::size_t max_steps_seen = 0;
  wftest::TagGenOptions tag_opts;
  tag_opts.max_symbols = 5;
  tag_opts.max_production = 4;
  tag_opts.min_steps = 3;
  for (int i = 0; i < kCrit4Instances && v.ok; ++i) {
    const auto in = wftest::random_halting_tag(rng, tag_opts);
    max_steps_seen = std::max(max_steps_seen, machines::tag_run(in.system, in.initial, 200).steps);
    const std::string doc = machines::to_json(in);
    std::string report;
    const int a = run_verify(doc, "backref", kCrit1Fuel * 10, 200, report);
    v.require(a == 0, "backref mismatch on " + doc + "\n" + report);
    passed_a += a == 0;
    const int c = run_verify(doc, "nobackref", kNoBackrefFuel, 200, report);
    v.require(c == 0, "nobackref mismatch on " + doc + "\n" + report);
    passed_c += c == 0;
  }
  for (int i = 0; i < kCrit4Instances && v.ok; ++i) {
    const auto in = wftest::random_halting_counter(rng, {});
    const std::string doc = machines::to_json(in);
    std::string report;
    const int b = run_verify(doc, "counter", kCounterFuel, 500, report);
    v.require(b == 0, "counter mismatch on " + doc + "\n" + report);
    passed_b += b == 0;
  }
  const double secs = seconds_since(t0);
  v.require(secs < kCrit4Seconds, "took " + fixed(secs) + " s");
  if (v.ok) {
    v.detail = std::to_string(passed_a) + "/" + std::to_string(kCrit4Instances) + " backref, " + std::to_string(passed_c) +
               "/" + std::to_string(kCrit4Instances) + " nobackref, " + std::to_string(passed_b) + "/" +
               std::to_string(kCrit4Instances) + " counter; longest tag run " + std::to_string(max_steps_seen) +
               " steps; " + fixed(secs) + " s";
  }
  return v;
}

Verdict criterion5() {
  Verdict v;
  std::size_t prev = 0;
  std::string summary;
  for (std::uint64_t fuel : {1'000u, 10'000u}) {
    vfs::Filesystem fs;
    const Script s{{"find", "mkdir"}, {{"mkdir", "x"}, {"find", "x", "-execdir", "mkdir", "{}/x", ";"}}};
    const auto r = emulate(fs, s, fuel);
    v.require(r.outcome == emu::Outcome::OutOfFuel, "fuel " + std::to_string(fuel) + ": outcome " +
                                                        std::string(emu::to_string(r.outcome)));
    std::size_t depth = 0;
    vfs::NodePtr cur = fs.root();
    for (auto next = fs.lookup(cur, "x"); next.ok(); next = fs.lookup(cur, "x")) {
      cur = next.value;
      ++depth;
    }
    v.require(depth > prev, "depth " + std::to_string(depth) + " not above " + std::to_string(prev));
    prev = depth;
    summary += (summary.empty() ? "" : ", ") + std::string("F=") + std::to_string(fuel) + " depth " + std::to_string(depth);
  }
  if (v.ok) v.detail = summary;
  return v;
}

std::uint64_t counter_value(const vfs::Filesystem& fs, const std::string& name) {
  auto st = fs.stat(fs.root(), name);
  return st && st->size ? *st->size / 2 : 0;
}

void set_counter(vfs::Filesystem& fs, const std::string& name, std::uint64_t n) {
  std::string bytes;
  for (std::uint64_t i = 0; i < n; ++i) bytes += std::string(".\0", 2);
  if (n > 0) fs.write(fs.root(), name, bytes, vfs::WriteMode::TruncateCreate);
}

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

Verdict criterion6() {
  Verdict v;
  {
    vfs::Filesystem fs;
    const auto r = emulate(fs, Script{{"find"}, {{"find", "-quit", "-fprintf", "first", "."}}}, 100);
    auto st = fs.stat(fs.root(), "first");
    v.require(r.halted() && st && st->size == 0u, "(a) first is not an empty file");
  }
  for (auto [in, out] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{0, 0}, {1, 0}, {2, 1}, {5, 4}}) {
    vfs::Filesystem fs;
    set_counter(fs, "a", in);
    const auto r = emulate(fs, Script{{"find"}, {with(with({"find"}, compiler::dec_expr("a")), {"-quit"})}}, 100'000);
    v.require(r.halted() && counter_value(fs, "a") == out,
              "(b) dec maps " + std::to_string(in) + " to " + std::to_string(counter_value(fs, "a")));
  }
  for (auto [in, out] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{0, 1}, {1, 2}, {3, 4}}) {
    vfs::Filesystem fs;
    set_counter(fs, "s", in);
    const auto r = emulate(fs, Script{{"find"}, {with(with({"find"}, compiler::inc_expr("s")), {"-quit"})}}, 100'000);
    v.require(r.halted() && counter_value(fs, "s") == out,
              "(c) inc maps " + std::to_string(in) + " to " + std::to_string(counter_value(fs, "s")));
  }
  std::uint64_t iterations = 0;
  {
    vfs::Filesystem fs;
    set_counter(fs, "s", 1);
    const auto r = emulate(fs, Script{{"find"}, {with({"find", "-files0-from", "s", "-prune"}, compiler::inc_expr("s"))}},
                           100'000);
    iterations = counter_value(fs, "s") - 1;
    v.require(r.outcome == emu::Outcome::OutOfFuel && iterations >= 100,
              "(d) only " + std::to_string(iterations) + " iterations");
  }
  {
    vfs::Filesystem fs;
    std::ostringstream trace;
    emu::Options opts;
    opts.trace = &trace;
    const auto r = emu::Emulator(fs, opts).run_script({{"mkdir", "-p", "p/c"}, {"find", "p", "-name", "zzz", "-o", "-delete"}});
    const std::string t = trace.str();
    const auto child = t.find("visit p/c\n");
    const auto parent = t.find("visit p\n");
    v.require(r.halted() && child != std::string::npos && parent != std::string::npos && child < parent,
              "(e) child not visited before parent");
    v.require(!fs.stat(fs.root(), "p"), "(e) delete did not remove the tree");
  }
  if (v.ok) v.detail = "(a)-(e) exact; streaming ran " + std::to_string(iterations) + " iterations under fuel 1e5";
  return v;
}

Verdict criterion7() {
  Verdict v;
  std::size_t comparisons = 0;
  // Dead-branch law.
  {
    wftest::Rng rng(7);
    const auto inputs = wftest::all_strings("ab_$", 6);
    const re::Regex fx("($_)?x", re::Flavor::Awk);
    v.require(fx.full_match("x") && !fx.full_match("$_x"), "($_)?x fixture");
    for (int round = 0; round < 100 && v.ok; ++round) {
      const wftest::RegexGenOptions o{re::Flavor::Awk, 2, false};
      const auto g = [](const re::Ast& a) { return "(" + wftest::render_regex(a, re::Flavor::Awk) + ")"; };
      const std::string x = g(wftest::random_regex(rng, o));
      const std::string z = g(wftest::random_regex(rng, o));
      const std::string with_branch = x + "(" + g(wftest::random_regex(rng, o)) + "$_" + ")?" + z;
      const re::Regex r1(with_branch, re::Flavor::Awk);
      const re::Regex r2(x + z, re::Flavor::Awk);
      for (const auto& s : inputs) {
        ++comparisons;
        v.require(r1.full_match(s) == r2.full_match(s), "dead-branch discrepancy: " + with_branch + " on " + s);
      }
    }
  }
  // NFA equivalence, inputs up to length 8.
  {
    const auto inputs = wftest::all_strings("ab/_", 8);
    for (re::Flavor flavor : {re::Flavor::Emacs, re::Flavor::Awk}) {
      wftest::Rng rng(flavor == re::Flavor::Emacs ? 31 : 32);
      for (int round = 0; round < 40 && v.ok; ++round) {
        const re::Ast ast = wftest::random_regex(rng, {flavor, 4, true});
        const std::string p = wftest::render_regex(ast, flavor);
        const re::Regex engine(p, flavor);
        const wftest::NfaOracle nfa(ast);
        for (const auto& s : inputs) {
          ++comparisons;
          if (engine.full_match(s) != nfa.accepts(s)) {
            v.require(false, "NFA discrepancy: " + p + " on '" + s + "'");
            break;
          }
        }
      }
    }
  }
  // Back-reference fixture against the closed form {(ab)^k : k >= 2}.
  {
    const re::Regex r("\\(ab\\)*\\1", re::Flavor::Emacs);
    v.require(r.full_match("ababab"), "\\(ab\\)*\\1 rejects ababab");
    for (const auto& s : wftest::all_strings("ab", 10)) {
      bool expected = s.size() >= 4 && s.size() % 2 == 0;
      for (std::size_t i = 0; expected && i < s.size(); i += 2) expected = s.compare(i, 2, "ab") == 0;
      ++comparisons;
      v.require(r.full_match(s) == expected, "backref fixture wrong on " + s);
    }
  }
  if (v.ok) v.detail = std::to_string(comparisons) + " comparisons, 0 discrepancies";
  return v;
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* title;
    std::function<Verdict()> fn;
  };
  const std::vector<Item> items = {
      {1, "golden toy fixture, backref backend", criterion1},
      {2, "golden toy fixture, nobackref backend", criterion2},
      {3, "ADD counter machine", criterion3},
      {4, "oracle equivalence on random machines", criterion4},
      {5, "loop construction deepens with fuel", criterion5},
      {6, "find micro-semantics", criterion6},
      {7, "regex engine suites", criterion7},
  };
  bool all = true;
  bool equivalence = false;
  for (const auto& item : items) {
    Verdict v;
    try {
      v = item.fn();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (item.id == 4) equivalence = v.ok;
    all = all && v.ok;
    std::cout << (v.ok ? "PASS" : "FAIL") << " criterion " << item.id << " (" << item.title << "): " << v.detail << std::endl;
  }
  // Criterion 8 has no separate check; it rests on the equivalence suite.
  std::cout << (equivalence ? "PASS" : "FAIL")
            << " criterion 8 (headline claims, evidenced by the equivalence suite): "
            << (equivalence ? "criterion 4 passed" : "criterion 4 failed") << std::endl;
  return all && equivalence ? 0 : 1;
}
