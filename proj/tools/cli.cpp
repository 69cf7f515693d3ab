#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "weirdfind/compiler.hpp"
#include "weirdfind/emulator.hpp"
#include "weirdfind/machine_io.hpp"
#include "weirdfind/script.hpp"

namespace weirdfind::cli {

std::string escape_bytes(const std::string& bytes) {
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned char c : bytes) {
    if (c >= 0x20 && c < 0x7f && c != '\\') {
      out += static_cast<char>(c);
    } else {
      out += "\\x";
      out += hex[c >> 4];
      out += hex[c & 15];
    }
  }
  return out;
}

namespace {

using machines::MachineKind;

class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const char* status_name(int code) {
  switch (code) {
    case kOk: return "OK";
    case kMismatch: return "MISMATCH";
    case kInputError: return "ERROR";
    case kBudget: return "BUDGET";
  }
  return "ERROR";
}

int finish(std::ostream& out, int code, const std::string& detail) {
  out << "RESULT " << status_name(code) << ' ' << detail << '\n';
  return code;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t default_fuel() {
  if (const char* env = std::getenv("WEIRDFIND_FUEL")) {
    std::uint64_t v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec == std::errc{} && ptr == end && v > 0) return v;
  }
  return emu::kDefaultFuel;
}

struct Machine {
  MachineKind kind = MachineKind::Tag;
  machines::TagInput tag;
  machines::CounterInput counter;
};

Machine load_machine(const std::string& path, const std::string& kind_flag) {
  const std::string text = read_file(path);
  Machine m;
  if (kind_flag.empty()) {
    m.kind = machines::detect_kind(text);
  } else if (kind_flag == "tag") {
    m.kind = MachineKind::Tag;
  } else if (kind_flag == "cm") {
    m.kind = MachineKind::Counter;
  } else {
    throw CliError("unknown kind '" + kind_flag + "' (expected tag or cm)");
  }
  if (m.kind == MachineKind::Tag) {
    m.tag = machines::parse_tag_input(text);
  } else {
    m.counter = machines::parse_counter_input(text);
  }
  return m;
}

compiler::Backend pick_backend(const Machine& m, const std::string& flag) {
  if (flag.empty()) return m.kind == MachineKind::Tag ? compiler::Backend::Backref : compiler::Backend::Counter;
  auto b = compiler::backend_from_string(flag);
  if (!b) throw CliError("unknown backend '" + flag + "' (expected backref, nobackref or counter)");
  const bool counter = *b == compiler::Backend::Counter;
  if (counter != (m.kind == MachineKind::Counter)) {
    throw CliError("backend/kind mismatch: backend " + flag + " cannot compile a " +
                   (m.kind == MachineKind::Tag ? "tag system" : "counter machine"));
  }
  return *b;
}

Script compile_machine(const Machine& m, compiler::Backend backend) {
  switch (backend) {
    case compiler::Backend::Backref: return compiler::compile_tag_backref(m.tag.system, m.tag.initial);
    case compiler::Backend::NoBackref: return compiler::compile_tag_nobackref(m.tag.system, m.tag.initial);
    case compiler::Backend::Counter: return compiler::compile_counter(m.counter.program, m.counter.c0, m.counter.c1);
  }
  throw CliError("unknown backend");
}

struct Decoded {
  bool ok = false;
  std::string text;
};

Decoded decode_output(const Machine& m, const std::string& raw) {
  if (m.kind == MachineKind::Counter) {
    if (raw.empty() || !std::all_of(raw.begin(), raw.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return {false, "not a decimal number"};
    }
    return {true, raw};
  }
  try {
    const compiler::Encoding enc = compiler::make_encoding(m.tag.system);
    return {true, machines::join_word(compiler::decode_word(enc, raw))};
  } catch (const compiler::CompileError& e) {
    return {false, e.what()};
  }
}

struct OracleResult {
  bool halted = false;
  std::string output;
  std::size_t steps = 0;
};

OracleResult run_oracle(const Machine& m, std::size_t max_steps, std::ostream* trace) {
  OracleResult r;
  if (m.kind == MachineKind::Tag) {
    const machines::TagRun run = machines::tag_run(m.tag.system, m.tag.initial, max_steps);
    if (trace != nullptr) {
      for (std::size_t i = 0; i < run.words.size(); ++i) *trace << "step " << i << ": " << machines::join_word(run.words[i]) << '\n';
    }
    r.halted = run.halted;
    r.output = machines::join_word(run.last());
    r.steps = run.steps;
  } else {
    const machines::CounterRun run =
        machines::cm_run(m.counter.program, m.counter.c0, m.counter.c1, max_steps, trace != nullptr);
    if (trace != nullptr) {
      for (std::size_t i = 0; i < run.trace.size(); ++i) {
        const auto& c = run.trace[i];
        *trace << "step " << i << ": pc=" << c.pc << " c0=" << c.c0 << " c1=" << c.c1 << '\n';
      }
    }
    r.halted = run.halted;
    r.output = std::to_string(run.output);
    r.steps = run.steps;
  }
  return r;
}

emu::ExecutionResult emulate(const Script& script, std::uint64_t fuel, std::ostream* trace) {
  vfs::Filesystem fs;
  emu::Options opts;
  opts.fuel = fuel;
  opts.binaries = script.binaries;
  opts.trace = trace;
  return emu::Emulator(fs, std::move(opts)).run_script(script.commands);
}

void print_stdout(std::ostream& out, const std::string& bytes, bool raw) {
  if (raw) {
    out << bytes << '\n';
  } else {
    out << "stdout: " << escape_bytes(bytes) << '\n';
  }
}

int outcome_exit(emu::Outcome outcome) {
  switch (outcome) {
    case emu::Outcome::Halted: return kOk;
    case emu::Outcome::OutOfFuel: return kBudget;
    case emu::Outcome::InvalidBinary:
    case emu::Outcome::ParseError: return kInputError;
    case emu::Outcome::Abort: return kMismatch;
  }
  return kMismatch;
}

struct Flags {
  std::string input;
  std::string kind;
  std::string backend;
  std::string out_path;
  std::string format = "json";
  std::optional<std::uint64_t> fuel;
  std::size_t max_steps = 10'000;
  bool trace = false;
  bool raw = false;
  bool dump = false;
};

int cmd_compile(const Flags& f, std::ostream& out) {
  const Machine m = load_machine(f.input, f.kind);
  const compiler::Backend backend = pick_backend(m, f.backend);
  const Script script = compile_machine(m, backend);
  const bool shell = f.format == "shell";
  std::string path = f.out_path;
  if (path.empty()) path = std::filesystem::path(f.input).stem().string() + (shell ? ".sh" : ".script.json");
  std::ofstream file(path, std::ios::binary);
  if (!file) throw CliError("cannot write '" + path + "'");
  file << (shell ? compiler::emit_shell(script) : script_to_json(script));
  out << "backend: " << compiler::to_string(backend) << '\n'
      << "commands: " << script.commands.size() << '\n'
      << "tokens: " << script.token_count() << '\n'
      << "wrote: " << path << '\n';
  return finish(out, kOk, "compiled " + std::to_string(script.commands.size()) + " commands");
}

int cmd_run(const Flags& f, std::ostream& out, std::ostream& err) {
  const Machine m = load_machine(f.input, f.kind);
  const compiler::Backend backend = pick_backend(m, f.backend);
  const Script script = compile_machine(m, backend);
  const emu::ExecutionResult r = emulate(script, f.fuel.value_or(default_fuel()), f.trace ? &err : nullptr);
  print_stdout(out, r.stdout_bytes, f.raw);
  out << "outcome: " << emu::to_string(r.outcome) << '\n' << "fuel_used: " << r.fuel_used << '\n';
  if (!r.halted()) return finish(out, outcome_exit(r.outcome), std::string(emu::to_string(r.outcome)) + " " + r.diagnostic);
  const Decoded d = decode_output(m, r.stdout_bytes);
  if (!d.ok) {
    out << "decode_error: " << d.text << '\n';
    return finish(out, kMismatch, "undecodable output");
  }
  out << "decoded: " << d.text << '\n';
  return finish(out, kOk, "halted " + d.text);
}

int cmd_oracle(const Flags& f, std::ostream& out) {
  const Machine m = load_machine(f.input, f.kind);
  const OracleResult r = run_oracle(m, f.max_steps, f.trace ? &out : nullptr);
  out << "steps: " << r.steps << '\n';
  if (!r.halted) return finish(out, kBudget, "no halt within " + std::to_string(f.max_steps) + " steps");
  out << "output: " << r.output << '\n';
  return finish(out, kOk, r.output);
}

int cmd_emulate(const Flags& f, std::ostream& out, std::ostream& err) {
  Script script;
  try {
    script = script_from_json(read_file(f.input));
  } catch (const ScriptFormatError& e) {
    throw CliError(e.what());
  }
  vfs::Filesystem fs;
  emu::Options opts;
  opts.fuel = f.fuel.value_or(default_fuel());
  opts.binaries = script.binaries;
  opts.trace = f.trace ? &err : nullptr;
  const emu::ExecutionResult r = emu::Emulator(fs, std::move(opts)).run_script(script.commands);
  print_stdout(out, r.stdout_bytes, f.raw);
  out << "statuses:";
  for (int s : r.statuses) out << ' ' << s;
  out << '\n' << "outcome: " << emu::to_string(r.outcome) << '\n' << "fuel_used: " << r.fuel_used << '\n';
  if (f.dump) out << fs.dump();
  if (!r.halted()) return finish(out, outcome_exit(r.outcome), std::string(emu::to_string(r.outcome)) + " " + r.diagnostic);
  return finish(out, kOk, "halted");
}

int cmd_verify(const Flags& f, std::ostream& out) {
  const Machine m = load_machine(f.input, f.kind);
  const compiler::Backend backend = pick_backend(m, f.backend);
  const Script script = compile_machine(m, backend);
  const OracleResult oracle = run_oracle(m, f.max_steps, nullptr);
  const emu::ExecutionResult r = emulate(script, f.fuel.value_or(default_fuel()), nullptr);

  out << "backend: " << compiler::to_string(backend) << '\n'
      << "commands: " << script.commands.size() << '\n'
      << "tokens: " << script.token_count() << '\n'
      << "outcome: " << emu::to_string(r.outcome) << '\n'
      << "fuel_used: " << r.fuel_used << '\n'
      << "stdout: " << escape_bytes(r.stdout_bytes) << '\n'
      << "oracle: " << (oracle.halted ? oracle.output : "(no halt)") << '\n';

  const bool emu_budget = r.outcome == emu::Outcome::OutOfFuel;
  if (r.stdout_bytes.find("unreachable") != std::string::npos) {
    out << "match: false\n";
    return finish(out, kMismatch, "sentinel 'unreachable' printed");
  }
  if (!r.halted() && !emu_budget) {
    out << "match: false\n";
    return finish(out, kMismatch, std::string(emu::to_string(r.outcome)) + " " + r.diagnostic);
  }
  if (emu_budget && !oracle.halted) {
    out << "match: true\n";
    return finish(out, kOk, "both exceeded their budgets");
  }
  if (emu_budget != !oracle.halted) {
    out << "match: false\n";
    return finish(out, kBudget, emu_budget ? "emulator ran out of fuel but the oracle halted"
                                           : "emulator halted but the oracle exceeded max steps");
  }
  const Decoded d = decode_output(m, r.stdout_bytes);
  out << "decoded: " << (d.ok ? d.text : "(undecodable: " + d.text + ")") << '\n';
  const bool match = d.ok && d.text == oracle.output;
  out << "match: " << (match ? "true" : "false") << '\n';
  if (!match) return finish(out, kMismatch, "emulated " + (d.ok ? d.text : std::string("?")) + " != oracle " + oracle.output);
  return finish(out, kOk, "match " + d.text);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compile tag systems and counter machines into find/mkdir scripts and emulate them", "weirdfind"};
  app.require_subcommand(1);
  Flags f;
  std::uint64_t fuel = 0;

  auto add_machine = [&](CLI::App* sub) {
    sub->add_option("input", f.input, "Machine description (JSON)")->required();
    sub->add_option("--kind", f.kind, "tag or cm (detected from the document when omitted)")
        ->check(CLI::IsMember({"tag", "cm"}));
  };
  auto add_backend = [&](CLI::App* sub) {
    sub->add_option("--backend", f.backend, "backref, nobackref or counter")
        ->check(CLI::IsMember({"backref", "nobackref", "counter"}));
  };
  auto add_fuel = [&](CLI::App* sub) {
    sub->add_option("--fuel", fuel, "Emulator fuel (default 1000000, or $WEIRDFIND_FUEL)")->check(CLI::PositiveNumber);
  };

  CLI::App* compile = app.add_subcommand("compile", "Compile a machine into a script");
  add_machine(compile);
  add_backend(compile);
  compile->add_option("--out", f.out_path, "Output path (default <stem>.sh or <stem>.script.json)");
  compile->add_option("--format", f.format, "json or shell")->check(CLI::IsMember({"json", "shell"}));

  CLI::App* run = app.add_subcommand("run", "Compile and emulate a machine, decoding its output");
  add_machine(run);
  add_backend(run);
  add_fuel(run);
  run->add_flag("--raw", f.raw, "Print emulated stdout bytes unescaped");
  run->add_flag("--trace", f.trace, "Write the emulator trace to stderr");

  CLI::App* oracle = app.add_subcommand("oracle", "Run the reference machine directly");
  add_machine(oracle);
  oracle->add_option("--max-steps", f.max_steps, "Step budget (default 10000)");
  oracle->add_flag("--trace", f.trace, "Print one line per step");

  CLI::App* emulate_cmd = app.add_subcommand("emulate", "Emulate a script JSON file");
  emulate_cmd->add_option("script", f.input, "Script JSON")->required();
  add_fuel(emulate_cmd);
  emulate_cmd->add_flag("--raw", f.raw, "Print emulated stdout bytes unescaped");
  emulate_cmd->add_flag("--trace", f.trace, "Write the emulator trace to stderr");
  emulate_cmd->add_flag("--dump", f.dump, "Print the final filesystem tree");

  CLI::App* verify = app.add_subcommand("verify", "Compare an emulated compiled script with the oracle");
  add_machine(verify);
  add_backend(verify);
  add_fuel(verify);
  verify->add_option("--max-steps", f.max_steps, "Oracle step budget (default 10000)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return finish(out, kOk, "help");
  } catch (const CLI::ParseError& e) {
    err << "weirdfind: " << e.what() << '\n';
    return finish(out, kInputError, "usage error");
  }
  if (fuel > 0) f.fuel = fuel;

  try {
    if (compile->parsed()) return cmd_compile(f, out);
    if (run->parsed()) return cmd_run(f, out, err);
    if (oracle->parsed()) return cmd_oracle(f, out);
    if (emulate_cmd->parsed()) return cmd_emulate(f, out, err);
    return cmd_verify(f, out);
  } catch (const CliError& e) {
    err << "weirdfind: " << e.what() << '\n';
    return finish(out, kInputError, e.what());
  } catch (const machines::InputError& e) {
    err << "weirdfind: " << e.what() << '\n';
    return finish(out, kInputError, e.what());
  } catch (const machines::MachineError& e) {
    err << "weirdfind: " << e.what() << '\n';
    return finish(out, kInputError, e.what());
  } catch (const compiler::CompileError& e) {
    err << "weirdfind: " << e.what() << '\n';
    return finish(out, kInputError, e.what());
  }
}

}  // namespace weirdfind::cli
