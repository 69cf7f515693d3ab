#include "weirdfind/emulator.hpp"

#include <map>
#include <ostream>

namespace weirdfind::emu {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Halted: return "halted";
    case Outcome::OutOfFuel: return "out-of-fuel";
    case Outcome::InvalidBinary: return "invalid-binary";
    case Outcome::ParseError: return "parse-error";
    case Outcome::Abort: return "abort";
  }
  return "unknown";
}

namespace {

struct QuitSignal {};

std::string join_argv(const Argv& argv) {
  std::string s;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

std::string substitute(std::string_view arg, std::string_view with) {
  std::string out;
  std::size_t pos = 0;
  for (;;) {
    std::size_t hit = arg.find("{}", pos);
    if (hit == std::string_view::npos) break;
    out.append(arg.substr(pos, hit - pos));
    out.append(with);
    pos = hit + 2;
  }
  out.append(arg.substr(pos));
  return out;
}

void check_path(vfs::FsStatus status, std::string_view path) {
  if (status == vfs::FsStatus::Unsupported) {
    throw EmulatorAbort("unsupported path '" + std::string(path) + "' (absolute or containing '..')");
  }
}

}  // namespace

Emulator::Emulator(vfs::Filesystem& fs, Options options) : fs_(fs), options_(std::move(options)) {}

void Emulator::consume() {
  if (used_ >= options_.fuel) throw OutOfFuel();
  ++used_;
}

void Emulator::trace(std::string_view line) {
  if (options_.trace != nullptr) *options_.trace << line << '\n';
}

int Emulator::spawn(const ProcessCtx& ctx, const Argv& argv) {
  consume();
  ++stats_.spawns;
  if (tracing()) trace("spawn " + join_argv(argv) + " cwd=" + fs_.path_of(*ctx.cwd));
  if (argv.empty() || options_.binaries.count(argv.front()) == 0) {
    throw InvalidBinary(argv.empty() ? std::string() : argv.front());
  }
  const int status = run_command(ctx, argv);
  if (tracing()) trace("exit " + std::to_string(status));
  return status;
}

int Emulator::run_command(const ProcessCtx& ctx, const Argv& argv) {
  find::Command cmd;
  try {
    cmd = find::parse_command(argv);
  } catch (const find::ParseError& e) {
    err_ += e.what();
    err_ += '\n';
    return 1;
  }
  if (const auto* mk = std::get_if<find::MkdirCommand>(&cmd)) return run_mkdir(ctx, *mk);
  return run_find(ctx, std::get<find::FindCommand>(cmd));
}

int Emulator::run_mkdir(const ProcessCtx& ctx, const find::MkdirCommand& cmd) {
  int status = 0;
  for (const auto& path : cmd.paths) {
    const vfs::FsStatus st = fs_.mkdir(ctx.cwd, path, cmd.parents);
    check_path(st, path);
    if (st != vfs::FsStatus::Ok) {
      err_ += "mkdir: cannot create directory '" + path + "': " + std::string(vfs::to_string(st)) + "\n";
      status = 1;
    }
  }
  return status;
}

// ---------------------------------------------------------------------------
// find

class FindRun {
 public:
  FindRun(Emulator& emu, const ProcessCtx& ctx, const find::FindCommand& cmd) : emu_(emu), ctx_(ctx), cmd_(cmd) {}

  int run() {
    if (!open_targets()) return 1;
    try {
      if (cmd_.files0_from) {
        stream_starts();
      } else {
        for (const auto& s : cmd_.starts) traverse(s);
      }
    } catch (const QuitSignal&) {
    }
    return error_ ? 1 : 0;
  }

 private:
  struct Frame {
    vfs::NodePtr node;
    std::string name;
    std::size_t path_len;
    std::uint64_t cursor = 0;
    bool entered = false;
    bool descend = true;
  };

  // The node being evaluated.
  struct Current {
    const vfs::NodePtr& node;
    const vfs::NodePtr& parent;
    std::string_view path;
    std::string_view name;
    bool prune = false;
  };

  void fail(const std::string& msg) {
    emu_.err_ += "find: " + msg + "\n";
    error_ = true;
  }

  void collect_targets(const find::Expr& e, std::vector<std::string>& out) const {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, find::expr::Fprintf> || std::is_same_v<T, find::expr::Fprint>) {
            out.push_back(n.target);
          } else if constexpr (std::is_same_v<T, find::expr::Not>) {
            collect_targets(*n.child, out);
          } else if constexpr (std::is_same_v<T, find::expr::And> || std::is_same_v<T, find::expr::Or> ||
                               std::is_same_v<T, find::expr::Comma>) {
            for (const auto& c : n.items) collect_targets(c, out);
          }
        },
        e.node);
  }

  bool open_targets() {
    std::vector<std::string> targets;
    collect_targets(cmd_.expr, targets);
    for (const auto& t : targets) {
      if (targets_.count(t) != 0) continue;
      vfs::FsResult<vfs::NodePtr> f = emu_.fs_.open_truncate(ctx_.cwd, t);
      check_path(f.status, t);
      if (!f.ok()) {
        fail("'" + t + "': " + std::string(vfs::to_string(f.status)));
        return false;
      }
      if (emu_.tracing()) emu_.trace("write " + t + " 0B");
      targets_.emplace(t, f.value);
    }
    return true;
  }

  void stream_starts() {
    const std::string& from = *cmd_.files0_from;
    vfs::FsResult<vfs::NodePtr> src = emu_.fs_.lookup(ctx_.cwd, from);
    check_path(src.status, from);
    if (!src.ok() || !src.value->is_file()) {
      fail("cannot read file names from '" + from + "': " +
           std::string(vfs::to_string(src.ok() ? vfs::FsStatus::IsADirectory : src.status)));
      return;
    }
    const vfs::NodePtr stream = src.value;
    std::size_t offset = 0;
    for (;;) {
      const std::string& data = stream->content();
      if (offset >= data.size()) return;
      const std::size_t nul = data.find('\0', offset);
      if (nul == std::string::npos) return;
      std::string entry = data.substr(offset, nul - offset);
      offset = nul + 1;
      emu_.consume();
      ++emu_.stats_.stream_entries;
      if (entry.empty()) {
        fail("invalid zero-length file name in '" + from + "'");
        continue;
      }
      traverse(entry);
    }
  }

  void traverse(const std::string& start) {
    vfs::FsResult<vfs::NodePtr> root = emu_.fs_.lookup(ctx_.cwd, start);
    check_path(root.status, start);
    if (!root.ok()) {
      fail("'" + start + "': " + std::string(vfs::to_string(root.status)));
      return;
    }

    // Lexical parent and basename of the start point.
    std::string_view trimmed = start;
    while (trimmed.size() > 1 && trimmed.back() == '/') trimmed.remove_suffix(1);
    const std::size_t slash = trimmed.rfind('/');
    std::string parent_path = ".";
    std::string base(trimmed);
    if (slash != std::string_view::npos) {
      parent_path = slash == 0 ? "/" : std::string(trimmed.substr(0, slash));
      base = std::string(trimmed.substr(slash + 1));
    }
    vfs::FsResult<vfs::NodePtr> parent = emu_.fs_.lookup(ctx_.cwd, parent_path);
    check_path(parent.status, parent_path);
    start_parent_ = parent.ok() ? parent.value : nullptr;

    path_ = start;
    std::vector<Frame> stack;
    stack.push_back(Frame{root.value, base, path_.size()});
    while (!stack.empty()) {
      const std::size_t top = stack.size() - 1;
      path_.resize(stack[top].path_len);
      if (!stack[top].entered) {
        stack[top].entered = true;
        if (!cmd_.depth || !stack[top].node->is_dir()) {
          visit(stack, top);
          if (!stack[top].node->is_dir()) {
            stack.pop_back();
            continue;
          }
        }
      }
      Frame& f = stack[top];
      if (f.descend && f.node->attached()) {
        if (auto child = emu_.fs_.next_child(f.node, f.cursor)) {
          f.cursor = child->seq;
          if (path_.back() != '/') path_ += '/';
          path_ += child->name;
          stack.push_back(Frame{std::move(child->node), std::move(child->name), path_.size()});
          continue;
        }
      }
      if (cmd_.depth) visit(stack, top);
      stack.pop_back();
    }
  }

  void visit(std::vector<Frame>& stack, std::size_t index) {
    emu_.consume();
    ++emu_.stats_.visits;
    const std::string_view path(path_.data(), stack[index].path_len);
    if (emu_.tracing()) emu_.trace("visit " + std::string(path));
    if (emu_.options_.hooks.on_visit) emu_.options_.hooks.on_visit(ctx_.level, ctx_.command_index, path);
    static const vfs::NodePtr kNone;
    const vfs::NodePtr& parent = index == 0 ? (start_parent_ ? start_parent_ : kNone) : stack[index - 1].node;
    Current cur{stack[index].node, parent, path, stack[index].name};
    eval(cmd_.expr, cur);
    if (cur.prune) stack[index].descend = false;
  }

  std::string render(const find::Format& fmt, const Current& cur) const {
    std::string out;
    for (const auto& p : fmt.pieces) {
      switch (p.kind) {
        case find::FormatPiece::Kind::Text: out += p.text; break;
        case find::FormatPiece::Kind::Basename: out += cur.name; break;
        case find::FormatPiece::Kind::Size: out += std::to_string(cur.node->is_file() ? cur.node->size() : 0); break;
        case find::FormatPiece::Kind::Path: out += cur.path; break;
      }
    }
    return out;
  }

  void write_target(const std::string& target, const std::string& bytes) {
    vfs::Filesystem::append(targets_.at(target), bytes);
    if (emu_.tracing()) emu_.trace("write " + target + " " + std::to_string(bytes.size()) + "B");
  }

  int exec(const find::expr::Exec& n, const Current& cur) {
    Argv argv;
    argv.reserve(n.argv.size());
    for (const auto& a : n.argv) argv.push_back(substitute(a, cur.path));
    ProcessCtx child{ctx_.cwd, ctx_.level + 1, ctx_.command_index};
    return emu_.spawn(child, argv);
  }

  int execdir(const find::expr::Execdir& n, const Current& cur) {
    if (!cur.parent) {
      throw EmulatorAbort("-execdir on '" + std::string(cur.path) + "' whose parent directory cannot be resolved");
    }
    const std::string rel = "./" + std::string(cur.name);
    Argv argv;
    argv.reserve(n.argv.size());
    for (const auto& a : n.argv) argv.push_back(substitute(a, rel));
    ProcessCtx child{cur.parent, ctx_.level + 1, ctx_.command_index};
    return emu_.spawn(child, argv);
  }

  bool remove(const Current& cur) {
    vfs::FsStatus st = vfs::FsStatus::InvalidPath;
    if (cur.parent && cur.name != ".") st = emu_.fs_.remove_child(cur.parent, cur.name);
    if (st != vfs::FsStatus::Ok) {
      fail("cannot delete '" + std::string(cur.path) + "': " + std::string(vfs::to_string(st)));
      return false;
    }
    if (emu_.tracing()) emu_.trace("delete " + std::string(cur.path));
    return true;
  }

  bool eval(const find::Expr& e, Current& cur) {
    namespace x = find::expr;
    return std::visit(
        [&](const auto& n) -> bool {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, x::True>) {
            return true;
          } else if constexpr (std::is_same_v<T, x::False>) {
            return false;
          } else if constexpr (std::is_same_v<T, x::Empty>) {
            return cur.node->is_dir() ? cur.node->entry_count() == 0 : cur.node->size() == 0;
          } else if constexpr (std::is_same_v<T, x::Name>) {
            return find::glob_match(n.pattern, cur.name);
          } else if constexpr (std::is_same_v<T, x::Size>) {
            return cur.node->is_file() && cur.node->size() == n.bytes;
          } else if constexpr (std::is_same_v<T, x::TypeIs>) {
            return (n.type == find::FileType::Dir) == cur.node->is_dir();
          } else if constexpr (std::is_same_v<T, x::Regex>) {
            try {
              return n.compiled->full_match(cur.path, emu_.options_.regex_step_budget);
            } catch (const re::StepBudgetExceeded&) {
              throw EmulatorAbort("regex step budget exceeded matching '" + n.pattern + "'");
            }
          } else if constexpr (std::is_same_v<T, x::Exec>) {
            return exec(n, cur) == 0;
          } else if constexpr (std::is_same_v<T, x::Execdir>) {
            return execdir(n, cur) == 0;
          } else if constexpr (std::is_same_v<T, x::Delete>) {
            return remove(cur);
          } else if constexpr (std::is_same_v<T, x::Prune>) {
            if (!cmd_.depth) cur.prune = true;
            return true;
          } else if constexpr (std::is_same_v<T, x::Quit>) {
            throw QuitSignal{};
          } else if constexpr (std::is_same_v<T, x::Printf>) {
            emu_.out_ += render(n.format, cur);
            return true;
          } else if constexpr (std::is_same_v<T, x::Fprintf>) {
            write_target(n.target, render(n.format, cur));
            return true;
          } else if constexpr (std::is_same_v<T, x::Fprint>) {
            write_target(n.target, std::string(cur.path) + "\n");
            return true;
          } else if constexpr (std::is_same_v<T, x::Not>) {
            return !eval(*n.child, cur);
          } else if constexpr (std::is_same_v<T, x::And>) {
            for (const auto& c : n.items) {
              if (!eval(c, cur)) return false;
            }
            return true;
          } else if constexpr (std::is_same_v<T, x::Or>) {
            for (const auto& c : n.items) {
              if (eval(c, cur)) return true;
            }
            return false;
          } else {
            static_assert(std::is_same_v<T, x::Comma>);
            bool last = false;
            for (const auto& c : n.items) last = eval(c, cur);
            return last;
          }
        },
        e.node);
  }

  Emulator& emu_;
  ProcessCtx ctx_;
  const find::FindCommand& cmd_;
  std::map<std::string, vfs::NodePtr> targets_;
  vfs::NodePtr start_parent_;
  std::string path_;
  bool error_ = false;
};

int Emulator::run_find(const ProcessCtx& ctx, const find::FindCommand& cmd) { return FindRun(*this, ctx, cmd).run(); }

// ---------------------------------------------------------------------------

ExecutionResult Emulator::run_script(const std::vector<Argv>& commands) {
  ExecutionResult result;
  auto finish = [&](Outcome outcome, std::string diagnostic) {
    result.outcome = outcome;
    result.diagnostic = std::move(diagnostic);
    result.stdout_bytes = out_;
    result.stderr_bytes = err_;
    result.fuel_used = used_;
    result.stats = stats_;
    return result;
  };

  for (std::size_t i = 0; i < commands.size(); ++i) {
    const Argv& argv = commands[i];
    if (argv.empty() || options_.binaries.count(argv.front()) == 0) {
      return finish(Outcome::InvalidBinary, "command " + std::to_string(i) + ": binary '" +
                                                (argv.empty() ? std::string() : argv.front()) + "' is not permitted");
    }
    try {
      (void)find::parse_command(argv);
    } catch (const find::ParseError& e) {
      return finish(Outcome::ParseError, "command " + std::to_string(i) + ": " + e.what());
    }
  }

  try {
    for (std::size_t i = 0; i < commands.size(); ++i) {
      ProcessCtx ctx{fs_.root(), 0, i};
      const Argv& argv = commands[i];
      consume();
      ++stats_.spawns;
      if (tracing()) trace("spawn " + join_argv(argv) + " cwd=.");
      const int status = run_command(ctx, argv);
      if (tracing()) trace("exit " + std::to_string(status));
      result.statuses.push_back(status);
    }
  } catch (const OutOfFuel&) {
    return finish(Outcome::OutOfFuel, "out of fuel after " + std::to_string(used_) + " units");
  } catch (const InvalidBinary& e) {
    return finish(Outcome::InvalidBinary, e.what());
  } catch (const EmulatorAbort& e) {
    return finish(Outcome::Abort, e.what());
  }
  return finish(Outcome::Halted, {});
}

ExecutionResult run_script(const std::vector<Argv>& commands, vfs::Filesystem& fs, std::uint64_t fuel,
                           const std::set<std::string>& binaries) {
  Options opts;
  opts.fuel = fuel;
  opts.binaries = binaries;
  return Emulator(fs, std::move(opts)).run_script(commands);
}

}  // namespace weirdfind::emu
