#include "weirdfind/find_command.hpp"

#include <algorithm>
#include <charconv>

namespace weirdfind::find {

std::string_view to_string(ParseErrc code) {
  switch (code) {
    case ParseErrc::UnknownPrimary: return "UnknownPrimary";
    case ParseErrc::MissingSemicolon: return "MissingSemicolon";
    case ParseErrc::NestedExecFind: return "NestedExecFind";
    case ParseErrc::BadSize: return "BadSize";
    case ParseErrc::EmptyParens: return "EmptyParens";
    case ParseErrc::UnbalancedParens: return "UnbalancedParens";
    case ParseErrc::MissingArgument: return "MissingArgument";
    case ParseErrc::MissingOperand: return "MissingOperand";
    case ParseErrc::MisplacedGlobalOption: return "MisplacedGlobalOption";
    case ParseErrc::BadFormat: return "BadFormat";
    case ParseErrc::BadRegex: return "BadRegex";
    case ParseErrc::BadRegexType: return "BadRegexType";
    case ParseErrc::BadType: return "BadType";
    case ParseErrc::ConflictingStarts: return "ConflictingStarts";
    case ParseErrc::BadMkdirFlag: return "BadMkdirFlag";
    case ParseErrc::UnknownBinary: return "UnknownBinary";
  }
  return "Unknown";
}

namespace expr {
bool Not::operator==(const Not& o) const { return *child == *o.child; }
bool And::operator==(const And& o) const { return items == o.items; }
bool Or::operator==(const Or& o) const { return items == o.items; }
bool Comma::operator==(const Comma& o) const { return items == o.items; }
}  // namespace expr

Format parse_format(std::string_view raw) {
  Format fmt{std::string(raw), {}};
  std::string text;
  auto flush = [&] {
    if (!text.empty()) fmt.pieces.push_back({FormatPiece::Kind::Text, std::move(text)});
    text.clear();
  };
  auto bad = [&](const std::string& what) -> ParseError {
    return ParseError(ParseErrc::BadFormat, "format '" + std::string(raw) + "': " + what);
  };
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (c != '%' && c != '\\') {
      text += c;
      continue;
    }
    if (i + 1 >= raw.size()) throw bad(std::string("trailing ") + c);
    const char d = raw[++i];
    if (c == '\\') {
      switch (d) {
        case '0': text += '\0'; break;
        case '\\': text += '\\'; break;
        case 'n': text += '\n'; break;
        case 't': text += '\t'; break;
        default: throw bad(std::string("unsupported escape \\") + d);
      }
      continue;
    }
    switch (d) {
      case '%': text += '%'; break;
      case 'f': flush(); fmt.pieces.push_back({FormatPiece::Kind::Basename, {}}); break;
      case 's': flush(); fmt.pieces.push_back({FormatPiece::Kind::Size, {}}); break;
      case 'p': flush(); fmt.pieces.push_back({FormatPiece::Kind::Path, {}}); break;
      default: throw bad(std::string("unsupported directive %") + d);
    }
  }
  flush();
  return fmt;
}

bool contains_delete(const Expr& e) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, expr::Delete>) {
          return true;
        } else if constexpr (std::is_same_v<T, expr::Not>) {
          return contains_delete(*n.child);
        } else if constexpr (std::is_same_v<T, expr::And> || std::is_same_v<T, expr::Or> ||
                             std::is_same_v<T, expr::Comma>) {
          return std::any_of(n.items.begin(), n.items.end(), [](const Expr& c) { return contains_delete(c); });
        } else {
          return false;
        }
      },
      e.node);
}

namespace {

bool has_action(const Expr& e) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, expr::Exec> || std::is_same_v<T, expr::Execdir> ||
                      std::is_same_v<T, expr::Delete> || std::is_same_v<T, expr::Printf> ||
                      std::is_same_v<T, expr::Fprintf> || std::is_same_v<T, expr::Fprint>) {
          return true;
        } else if constexpr (std::is_same_v<T, expr::Not>) {
          return has_action(*n.child);
        } else if constexpr (std::is_same_v<T, expr::And> || std::is_same_v<T, expr::Or> ||
                             std::is_same_v<T, expr::Comma>) {
          return std::any_of(n.items.begin(), n.items.end(), [](const Expr& c) { return has_action(c); });
        } else {
          return false;
        }
      },
      e.node);
}

bool is_operator_token(std::string_view t) { return t == "(" || t == ")" || t == "!" || t == ","; }

class FindParser {
 public:
  explicit FindParser(const std::vector<std::string>& argv) : args_(argv.begin() + 1, argv.end()) {}

  FindCommand parse() {
    FindCommand cmd;
    while (pos_ < args_.size() && !args_[pos_].empty() && args_[pos_][0] != '-' &&
           !is_operator_token(args_[pos_])) {
      cmd.starts.push_back(args_[pos_++]);
    }
    while (pos_ < args_.size()) {
      if (args_[pos_] == "-depth") {
        cmd.depth_option = true;
        ++pos_;
      } else if (args_[pos_] == "-files0-from") {
        cmd.files0_from = argument("-files0-from");
        ++pos_;
      } else {
        break;
      }
    }
    if (!cmd.starts.empty() && cmd.files0_from) {
      throw ParseError(ParseErrc::ConflictingStarts, "find: start points given together with -files0-from");
    }
    if (cmd.starts.empty() && !cmd.files0_from) cmd.starts.push_back(".");

    skip_positional();
    Expr e{expr::True{}};
    bool empty = pos_ >= args_.size();
    if (!empty) {
      e = parse_comma();
      if (pos_ < args_.size()) {
        if (args_[pos_] == ")") throw ParseError(ParseErrc::UnbalancedParens, "find: unexpected ')'");
        throw ParseError(ParseErrc::UnknownPrimary, "find: unexpected '" + args_[pos_] + "'");
      }
    }
    Expr print{expr::Printf{parse_format("%p\\n")}};
    if (empty) {
      e = std::move(print);
    } else if (!has_action(e)) {
      e = Expr{expr::And{{std::move(e), std::move(print)}}};
    }
    cmd.depth = cmd.depth_option || contains_delete(e);
    cmd.expr = std::move(e);
    return cmd;
  }

 private:
  bool at_end() const { return pos_ >= args_.size(); }
  const std::string& peek() const { return args_[pos_]; }

  bool at_terminator() const { return at_end() || peek() == ")" || peek() == "-o" || peek() == ","; }

  const std::string& argument(const std::string& primary) {
    if (pos_ + 1 >= args_.size()) throw ParseError(ParseErrc::MissingArgument, "find: missing argument to " + primary);
    return args_[++pos_];
  }

  void skip_positional() {
    while (!at_end() && peek() == "-regextype") {
      const std::string& name = argument("-regextype");
      if (name == "emacs") {
        flavor_ = re::Flavor::Emacs;
      } else if (name == "awk") {
        flavor_ = re::Flavor::Awk;
      } else {
        throw ParseError(ParseErrc::BadRegexType, "find: unsupported regex type '" + name + "'");
      }
      ++pos_;
    }
  }

  Expr parse_comma() {
    std::vector<Expr> items;
    items.push_back(parse_or());
    while (!at_end() && peek() == ",") {
      ++pos_;
      items.push_back(parse_or());
    }
    if (items.size() == 1) return std::move(items.front());
    return Expr{expr::Comma{std::move(items)}};
  }

  Expr parse_or() {
    std::vector<Expr> items;
    items.push_back(parse_and());
    while (!at_end() && peek() == "-o") {
      ++pos_;
      items.push_back(parse_and());
    }
    if (items.size() == 1) return std::move(items.front());
    return Expr{expr::Or{std::move(items)}};
  }

  Expr parse_and() {
    std::vector<Expr> items;
    for (;;) {
      skip_positional();
      if (at_terminator()) break;
      items.push_back(parse_not());
    }
    if (items.empty()) {
      throw ParseError(ParseErrc::MissingOperand, at_end() ? "find: expected an expression at end of arguments"
                                                           : "find: expected an expression before '" + peek() + "'");
    }
    if (items.size() == 1) return std::move(items.front());
    return Expr{expr::And{std::move(items)}};
  }

  Expr parse_not() {
    if (peek() != "!") return parse_primary();
    ++pos_;
    skip_positional();
    if (at_terminator()) throw ParseError(ParseErrc::MissingOperand, "find: expected an expression after '!'");
    return Expr{expr::Not{parse_not()}};
  }

  std::vector<std::string> exec_template(const std::string& primary) {
    std::vector<std::string> tpl;
    ++pos_;
    while (!at_end() && peek() != ";") tpl.push_back(args_[pos_++]);
    if (at_end()) throw ParseError(ParseErrc::MissingSemicolon, "find: missing ';' terminating " + primary);
    ++pos_;
    if (tpl.empty()) throw ParseError(ParseErrc::MissingArgument, "find: empty command after " + primary);
    for (const auto& t : tpl) {
      if (t == "-exec" || t == "-execdir") {
        throw ParseError(ParseErrc::NestedExecFind,
                         "find: the template of " + primary + " contains " + t + "; its ';' would be consumed");
      }
    }
    return tpl;
  }

  Expr parse_primary() {
    const std::string tok = peek();
    if (tok == "(") {
      ++pos_;
      if (!at_end() && peek() == ")") throw ParseError(ParseErrc::EmptyParens, "find: empty parentheses");
      Expr inner = parse_comma();
      if (at_end() || peek() != ")") throw ParseError(ParseErrc::UnbalancedParens, "find: missing ')'");
      ++pos_;
      return inner;
    }
    if (tok == "-exec") return Expr{expr::Exec{exec_template(tok)}};
    if (tok == "-execdir") return Expr{expr::Execdir{exec_template(tok)}};

    Expr out;
    if (tok == "-true") {
      out = Expr{expr::True{}};
    } else if (tok == "-false") {
      out = Expr{expr::False{}};
    } else if (tok == "-empty") {
      out = Expr{expr::Empty{}};
    } else if (tok == "-delete") {
      out = Expr{expr::Delete{}};
    } else if (tok == "-prune") {
      out = Expr{expr::Prune{}};
    } else if (tok == "-quit") {
      out = Expr{expr::Quit{}};
    } else if (tok == "-name") {
      out = Expr{expr::Name{argument(tok)}};
    } else if (tok == "-size") {
      const std::string& arg = argument(tok);
      std::uint64_t n = 0;
      const char* end = arg.data() + arg.size();
      auto [ptr, ec] = std::from_chars(arg.data(), end, n);
      if (arg.size() < 2 || ec != std::errc{} || ptr != end - 1 || *ptr != 'c') {
        throw ParseError(ParseErrc::BadSize, "find: -size accepts only <n>c, got '" + arg + "'");
      }
      out = Expr{expr::Size{n}};
    } else if (tok == "-type") {
      const std::string& arg = argument(tok);
      if (arg == "d") {
        out = Expr{expr::TypeIs{FileType::Dir}};
      } else if (arg == "f") {
        out = Expr{expr::TypeIs{FileType::File}};
      } else {
        throw ParseError(ParseErrc::BadType, "find: -type accepts d or f, got '" + arg + "'");
      }
    } else if (tok == "-regex") {
      const std::string& arg = argument(tok);
      try {
        out = Expr{expr::Regex{arg, flavor_, std::make_shared<const re::Regex>(arg, flavor_)}};
      } catch (const re::RegexError& err) {
        throw ParseError(ParseErrc::BadRegex, std::string("find: ") + err.what());
      }
    } else if (tok == "-printf") {
      out = Expr{expr::Printf{parse_format(argument(tok))}};
    } else if (tok == "-fprintf") {
      std::string target = argument(tok);
      out = Expr{expr::Fprintf{std::move(target), parse_format(argument(tok))}};
    } else if (tok == "-fprint") {
      out = Expr{expr::Fprint{argument(tok)}};
    } else if (tok == "-depth" || tok == "-files0-from") {
      throw ParseError(ParseErrc::MisplacedGlobalOption, "find: global option " + tok + " must precede the expression");
    } else {
      throw ParseError(ParseErrc::UnknownPrimary, "find: unknown primary or operator '" + tok + "'");
    }
    ++pos_;
    return out;
  }

  std::vector<std::string> args_;
  std::size_t pos_ = 0;
  re::Flavor flavor_ = re::Flavor::Emacs;
};

MkdirCommand parse_mkdir(const std::vector<std::string>& argv) {
  MkdirCommand cmd;
  for (std::size_t i = 1; i < argv.size(); ++i) {
    const std::string& a = argv[i];
    if (a == "-p") {
      cmd.parents = true;
    } else if (!a.empty() && a[0] == '-') {
      throw ParseError(ParseErrc::BadMkdirFlag, "mkdir: unsupported option '" + a + "'");
    } else {
      cmd.paths.push_back(a);
    }
  }
  if (cmd.paths.empty()) throw ParseError(ParseErrc::MissingOperand, "mkdir: missing operand");
  return cmd;
}

}  // namespace

FindCommand parse_find(const std::vector<std::string>& argv) { return FindParser(argv).parse(); }

Command parse_command(const std::vector<std::string>& argv) {
  if (argv.empty()) throw ParseError(ParseErrc::UnknownBinary, "empty command");
  if (argv[0] == "find") return parse_find(argv);
  if (argv[0] == "mkdir") return parse_mkdir(argv);
  throw ParseError(ParseErrc::UnknownBinary, "unknown binary '" + argv[0] + "'");
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

int precedence(const Expr& e) {
  if (std::holds_alternative<expr::Comma>(e.node)) return 0;
  if (std::holds_alternative<expr::Or>(e.node)) return 1;
  if (std::holds_alternative<expr::And>(e.node)) return 2;
  if (std::holds_alternative<expr::Not>(e.node)) return 3;
  return 4;
}

class Renderer {
 public:
  explicit Renderer(std::vector<std::string>& out) : out_(out) {}

  void render(const Expr& e) {
    std::visit([this](const auto& n) { emit(n); }, e.node);
  }

 private:
  void child(const Expr& e, int parent_prec) {
    if (precedence(e) <= parent_prec) {
      out_.emplace_back("(");
      render(e);
      out_.emplace_back(")");
    } else {
      render(e);
    }
  }

  void list(const std::vector<Expr>& items, int prec, const char* sep) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0 && sep != nullptr) out_.emplace_back(sep);
      child(items[i], prec);
    }
  }

  void emit(const expr::True&) { out_.emplace_back("-true"); }
  void emit(const expr::False&) { out_.emplace_back("-false"); }
  void emit(const expr::Empty&) { out_.emplace_back("-empty"); }
  void emit(const expr::Delete&) { out_.emplace_back("-delete"); }
  void emit(const expr::Prune&) { out_.emplace_back("-prune"); }
  void emit(const expr::Quit&) { out_.emplace_back("-quit"); }
  void emit(const expr::Name& n) { out_.insert(out_.end(), {"-name", n.pattern}); }
  void emit(const expr::Size& n) { out_.insert(out_.end(), {"-size", std::to_string(n.bytes) + "c"}); }
  void emit(const expr::TypeIs& n) { out_.insert(out_.end(), {"-type", n.type == FileType::Dir ? "d" : "f"}); }
  void emit(const expr::Regex& n) {
    if (n.flavor != flavor_) {
      out_.insert(out_.end(), {"-regextype", std::string(re::to_string(n.flavor))});
      flavor_ = n.flavor;
    }
    out_.insert(out_.end(), {"-regex", n.pattern});
  }
  void emit(const expr::Exec& n) { exec("-exec", n.argv); }
  void emit(const expr::Execdir& n) { exec("-execdir", n.argv); }
  void emit(const expr::Printf& n) { out_.insert(out_.end(), {"-printf", n.format.raw}); }
  void emit(const expr::Fprintf& n) { out_.insert(out_.end(), {"-fprintf", n.target, n.format.raw}); }
  void emit(const expr::Fprint& n) { out_.insert(out_.end(), {"-fprint", n.target}); }
  void emit(const expr::Not& n) {
    out_.emplace_back("!");
    child(*n.child, 2);
  }
  void emit(const expr::And& n) { list(n.items, 2, nullptr); }
  void emit(const expr::Or& n) { list(n.items, 1, "-o"); }
  void emit(const expr::Comma& n) { list(n.items, 0, ","); }

  void exec(const char* primary, const std::vector<std::string>& argv) {
    out_.emplace_back(primary);
    out_.insert(out_.end(), argv.begin(), argv.end());
    out_.emplace_back(";");
  }

  std::vector<std::string>& out_;
  re::Flavor flavor_ = re::Flavor::Emacs;
};

}  // namespace

std::vector<std::string> render_expr(const Expr& e) {
  std::vector<std::string> out;
  Renderer(out).render(e);
  return out;
}

std::vector<std::string> render_command(const Command& cmd) {
  std::vector<std::string> out;
  if (const auto* mk = std::get_if<MkdirCommand>(&cmd)) {
    out.emplace_back("mkdir");
    if (mk->parents) out.emplace_back("-p");
    out.insert(out.end(), mk->paths.begin(), mk->paths.end());
    return out;
  }
  const auto& f = std::get<FindCommand>(cmd);
  out.emplace_back("find");
  if (!f.files0_from) out.insert(out.end(), f.starts.begin(), f.starts.end());
  if (f.depth_option) out.emplace_back("-depth");
  if (f.files0_from) out.insert(out.end(), {"-files0-from", *f.files0_from});
  Renderer(out).render(f.expr);
  return out;
}

Expr make_and(std::vector<Expr> items) {
  if (items.size() == 1) return std::move(items.front());
  return Expr{expr::And{std::move(items)}};
}

Expr make_or(std::vector<Expr> items) {
  if (items.size() == 1) return std::move(items.front());
  return Expr{expr::Or{std::move(items)}};
}

}  // namespace weirdfind::find
