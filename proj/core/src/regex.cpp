#include "weirdfind/regex.hpp"

#include <bitset>
#include <cstring>

namespace weirdfind::re {

std::string_view to_string(Flavor flavor) { return flavor == Flavor::Emacs ? "emacs" : "awk"; }

namespace ast {
bool Concat::operator==(const Concat& o) const { return items == o.items; }
bool Alternation::operator==(const Alternation& o) const { return alternatives == o.alternatives; }
bool Star::operator==(const Star& o) const { return *child == *o.child; }
bool Optional::operator==(const Optional& o) const { return *child == *o.child; }
bool Group::operator==(const Group& o) const { return index == o.index && *child == *o.child; }
}  // namespace ast

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok : std::uint8_t { Char, Any, Class, Open, Close, Alt, Star, Question, End, Backref, Eof };

struct Token {
  Tok kind = Tok::Eof;
  char ch = 0;
  int num = 0;
  std::size_t len = 0;
};

bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

class Parser {
 public:
  Parser(std::string_view pattern, Flavor flavor) : p_(pattern), flavor_(flavor) {}

  Ast parse() {
    Ast result = parse_alternation();
    if (peek().kind == Tok::Close) fail(RegexErrc::UnbalancedGroup, "unmatched close of group");
    return result;
  }

 private:
  [[noreturn]] void fail(RegexErrc code, const std::string& msg) const {
    throw RegexError(code, "regex '" + std::string(p_) + "' at offset " + std::to_string(pos_) + ": " + msg);
  }

  Token peek() const {
    if (pos_ >= p_.size()) return {};
    const char c = p_[pos_];
    return flavor_ == Flavor::Emacs ? lex_emacs(c) : lex_awk(c);
  }

  Token escaped() const {
    if (pos_ + 1 >= p_.size()) fail(RegexErrc::UnsupportedConstruct, "trailing backslash");
    return Token{Tok::Char, p_[pos_ + 1], 0, 2};
  }

  Token lex_emacs(char c) const {
    switch (c) {
      case '\\': {
        Token t = escaped();
        switch (t.ch) {
          case '(': t.kind = Tok::Open; return t;
          case ')': t.kind = Tok::Close; return t;
          case '|': t.kind = Tok::Alt; return t;
          default: break;
        }
        if (t.ch >= '1' && t.ch <= '9') {
          t.kind = Tok::Backref;
          t.num = t.ch - '0';
          return t;
        }
        if (is_alnum(t.ch) || std::strchr("{}'`<>_=", t.ch) != nullptr) {
          fail(RegexErrc::UnsupportedConstruct, std::string("escape \\") + t.ch);
        }
        return t;
      }
      case '*': return {Tok::Star, c, 0, 1};
      case '?':
      case '+':
      case '^': fail(RegexErrc::UnsupportedConstruct, std::string("operator ") + c);
      case '$': return {Tok::End, c, 0, 1};
      case '.': return {Tok::Any, c, 0, 1};
      case '[': return {Tok::Class, c, 0, 1};
      default: return {Tok::Char, c, 0, 1};
    }
  }

  Token lex_awk(char c) const {
    switch (c) {
      case '\\': {
        Token t = escaped();
        if (t.ch >= '1' && t.ch <= '9') fail(RegexErrc::BackrefInAwk, "back-references are not available in awk syntax");
        if (t.ch == '0') fail(RegexErrc::UnsupportedConstruct, "escape \\0");
        return t;
      }
      case '(': return {Tok::Open, c, 0, 1};
      case ')': return {Tok::Close, c, 0, 1};
      case '|': return {Tok::Alt, c, 0, 1};
      case '*': return {Tok::Star, c, 0, 1};
      case '?': return {Tok::Question, c, 0, 1};
      case '+':
      case '{':
      case '^': fail(RegexErrc::UnsupportedConstruct, std::string("operator ") + c);
      case '$': return {Tok::End, c, 0, 1};
      case '.': return {Tok::Any, c, 0, 1};
      case '[': return {Tok::Class, c, 0, 1};
      default: return {Tok::Char, c, 0, 1};
    }
  }

  Ast parse_alternation() {
    std::vector<Ast> alts;
    alts.push_back(parse_concat());
    while (peek().kind == Tok::Alt) {
      pos_ += peek().len;
      alts.push_back(parse_concat());
    }
    if (alts.size() == 1) return std::move(alts.front());
    return Ast{ast::Alternation{std::move(alts)}};
  }

  Ast parse_concat() {
    std::vector<Ast> items;
    for (;;) {
      Token t = peek();
      if (t.kind == Tok::Eof || t.kind == Tok::Alt || t.kind == Tok::Close) break;
      if (t.kind == Tok::Star || t.kind == Tok::Question) {
        fail(RegexErrc::DanglingQuantifier, "quantifier without operand");
      }
      Ast atom = parse_atom();
      for (Token q = peek(); q.kind == Tok::Star || q.kind == Tok::Question; q = peek()) {
        pos_ += q.len;
        if (q.kind == Tok::Star) {
          atom = Ast{ast::Star{std::move(atom)}};
        } else {
          atom = Ast{ast::Optional{std::move(atom)}};
        }
      }
      items.push_back(std::move(atom));
    }
    if (items.empty()) return Ast{ast::Empty{}};
    if (items.size() == 1) return std::move(items.front());
    return Ast{ast::Concat{std::move(items)}};
  }

  Ast parse_atom() {
    Token t = peek();
    switch (t.kind) {
      case Tok::Char: pos_ += t.len; return Ast{ast::Literal{t.ch}};
      case Tok::Any: pos_ += t.len; return Ast{ast::AnyChar{}};
      case Tok::End: pos_ += t.len; return Ast{ast::EndAnchor{}};
      case Tok::Class: return parse_class();
      case Tok::Backref:
        if (t.num > groups_opened_) fail(RegexErrc::InvalidBackref, "back-reference to a group not yet opened");
        pos_ += t.len;
        return Ast{ast::Backref{t.num}};
      case Tok::Open: {
        pos_ += t.len;
        const int index = ++groups_opened_;
        Ast inner = parse_alternation();
        Token close = peek();
        if (close.kind != Tok::Close) fail(RegexErrc::UnbalancedGroup, "unterminated group");
        pos_ += close.len;
        return Ast{ast::Group{index, std::move(inner)}};
      }
      default: fail(RegexErrc::UnsupportedConstruct, "unexpected token");
    }
  }

  Ast parse_class() {
    ++pos_;  // '['
    if (pos_ < p_.size() && p_[pos_] == '^') fail(RegexErrc::UnsupportedConstruct, "negated character class");
    ast::CharClass cls;
    bool first = true;
    for (;;) {
      if (pos_ >= p_.size()) fail(RegexErrc::UnterminatedClass, "unterminated character class");
      const auto lo = static_cast<unsigned char>(p_[pos_]);
      if (lo == ']' && !first) {
        ++pos_;
        break;
      }
      first = false;
      if (lo == '[' && pos_ + 1 < p_.size() && std::strchr(":.=", p_[pos_ + 1]) != nullptr) {
        fail(RegexErrc::UnsupportedConstruct, "named character class");
      }
      if (lo > 0x7f) fail(RegexErrc::UnsupportedConstruct, "non-ASCII byte in character class");
      ++pos_;
      unsigned char hi = lo;
      if (pos_ + 1 < p_.size() && p_[pos_] == '-' && p_[pos_ + 1] != ']') {
        hi = static_cast<unsigned char>(p_[pos_ + 1]);
        if (hi > 0x7f || hi < lo) fail(RegexErrc::UnsupportedConstruct, "invalid range in character class");
        pos_ += 2;
      }
      cls.ranges.emplace_back(lo, hi);
    }
    return Ast{std::move(cls)};
  }

  std::string_view p_;
  Flavor flavor_;
  std::size_t pos_ = 0;
  int groups_opened_ = 0;
};

}  // namespace

Ast parse_regex(std::string_view pattern, Flavor flavor) { return Parser(pattern, flavor).parse(); }

// ---------------------------------------------------------------------------
// Compilation to a backtracking program

namespace detail {

enum class Op : std::uint8_t {
  Char,
  Any,
  Class,
  RepeatChar,  // greedy star over a single-byte matcher; x = matcher index
  Split,       // try x, then y
  Jmp,
  OpenGroup,
  CloseGroup,
  Backref,
  AssertEnd,
  MarkSet,
  MarkCheck,
  Match,
};

struct Inst {
  Op op;
  unsigned char ch = 0;
  int x = 0;
  int y = 0;
};

struct Program {
  std::vector<Inst> code;
  std::vector<std::bitset<256>> sets;
  int groups = 0;
  int marks = 0;
};

}  // namespace detail

namespace {

using detail::Inst;
using detail::Op;
using detail::Program;

class Compiler {
 public:
  Program compile(const Ast& root) {
    emit(root);
    prog_.code.push_back({Op::Match});
    return std::move(prog_);
  }

 private:
  int here() const { return static_cast<int>(prog_.code.size()); }
  int push(Inst inst) {
    prog_.code.push_back(inst);
    return here() - 1;
  }

  // Single-byte matchers are lowered to a byte set.
  static bool byte_set(const Ast& a, std::bitset<256>& set) {
    if (const auto* lit = std::get_if<ast::Literal>(&a.node)) {
      set.set(static_cast<unsigned char>(lit->ch));
      return true;
    }
    if (std::holds_alternative<ast::AnyChar>(a.node)) {
      set.set();
      return true;
    }
    if (const auto* cls = std::get_if<ast::CharClass>(&a.node)) {
      for (auto [lo, hi] : cls->ranges) {
        for (int c = lo; c <= hi; ++c) set.set(static_cast<std::size_t>(c));
      }
      return true;
    }
    return false;
  }

  int add_set(const std::bitset<256>& set) {
    prog_.sets.push_back(set);
    return static_cast<int>(prog_.sets.size()) - 1;
  }

  void emit(const Ast& a) {
    std::visit([this](const auto& n) { emit_node(n); }, a.node);
  }

  void emit_node(const ast::Empty&) {}
  void emit_node(const ast::Literal& n) { push({Op::Char, static_cast<unsigned char>(n.ch)}); }
  void emit_node(const ast::AnyChar&) { push({Op::Any}); }
  void emit_node(const ast::CharClass& n) {
    std::bitset<256> set;
    byte_set(Ast{n}, set);
    push({Op::Class, 0, add_set(set)});
  }
  void emit_node(const ast::Concat& n) {
    for (const auto& item : n.items) emit(item);
  }
  void emit_node(const ast::Alternation& n) {
    std::vector<int> jumps;
    for (std::size_t i = 0; i + 1 < n.alternatives.size(); ++i) {
      const int split = push({Op::Split});
      prog_.code[split].x = here();
      emit(n.alternatives[i]);
      jumps.push_back(push({Op::Jmp}));
      prog_.code[split].y = here();
    }
    emit(n.alternatives.back());
    for (int j : jumps) prog_.code[j].x = here();
  }
  void emit_node(const ast::Star& n) {
    std::bitset<256> set;
    if (byte_set(*n.child, set)) {
      push({Op::RepeatChar, 0, add_set(set)});
      return;
    }
    const int mark = prog_.marks++;
    const int split = push({Op::Split});
    prog_.code[split].x = here();
    push({Op::MarkSet, 0, mark});
    emit(*n.child);
    push({Op::MarkCheck, 0, mark});
    push({Op::Jmp, 0, split});
    prog_.code[split].y = here();
  }
  void emit_node(const ast::Optional& n) {
    const int split = push({Op::Split});
    prog_.code[split].x = here();
    emit(*n.child);
    prog_.code[split].y = here();
  }
  void emit_node(const ast::Group& n) {
    if (n.index > prog_.groups) prog_.groups = n.index;
    push({Op::OpenGroup, 0, n.index});
    emit(*n.child);
    push({Op::CloseGroup, 0, n.index});
  }
  void emit_node(const ast::Backref& n) {
    if (n.index > prog_.groups) prog_.groups = n.index;
    push({Op::Backref, 0, n.index});
  }
  void emit_node(const ast::EndAnchor&) { push({Op::AssertEnd}); }

  Program prog_;
};

// Backtracking frames. Restore frames undo capture and mark writes when the
// branch that made them is abandoned.
struct Frame {
  enum class Kind : std::uint8_t { Branch, Repeat, Pending, Capture, Mark };
  Kind kind;
  int a;
  std::size_t b;
  std::size_t c;
};

constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

bool run(const Program& prog, std::string_view in, std::uint64_t budget) {
  const std::size_t n = in.size();
  const auto groups = static_cast<std::size_t>(prog.groups) + 1;
  std::vector<std::size_t> pending(groups, kUnset);
  std::vector<std::size_t> cap_start(groups, kUnset);
  std::vector<std::size_t> cap_end(groups, kUnset);
  std::vector<std::size_t> marks(static_cast<std::size_t>(prog.marks), kUnset);
  std::vector<Frame> stack;
  stack.reserve(64);

  std::uint64_t steps = 0;
  int pc = 0;
  std::size_t sp = 0;

  auto tick = [&] {
    if (++steps > budget) throw StepBudgetExceeded("regex backtracking budget exceeded");
  };

  for (;;) {
    tick();
    const Inst& inst = prog.code[static_cast<std::size_t>(pc)];
    bool ok = true;
    switch (inst.op) {
      case Op::Char:
        ok = sp < n && static_cast<unsigned char>(in[sp]) == inst.ch;
        if (ok) ++sp, ++pc;
        break;
      case Op::Any:
        ok = sp < n;
        if (ok) ++sp, ++pc;
        break;
      case Op::Class:
        ok = sp < n && prog.sets[static_cast<std::size_t>(inst.x)].test(static_cast<unsigned char>(in[sp]));
        if (ok) ++sp, ++pc;
        break;
      case Op::RepeatChar: {
        const auto& set = prog.sets[static_cast<std::size_t>(inst.x)];
        std::size_t end = sp;
        while (end < n && set.test(static_cast<unsigned char>(in[end]))) {
          ++end;
          tick();
        }
        if (end > sp) stack.push_back({Frame::Kind::Repeat, pc + 1, sp, end - 1});
        sp = end;
        ++pc;
        break;
      }
      case Op::Split:
        stack.push_back({Frame::Kind::Branch, inst.y, sp, 0});
        pc = inst.x;
        break;
      case Op::Jmp: pc = inst.x; break;
      case Op::OpenGroup: {
        const auto g = static_cast<std::size_t>(inst.x);
        stack.push_back({Frame::Kind::Pending, inst.x, pending[g], 0});
        pending[g] = sp;
        ++pc;
        break;
      }
      case Op::CloseGroup: {
        const auto g = static_cast<std::size_t>(inst.x);
        stack.push_back({Frame::Kind::Capture, inst.x, cap_start[g], cap_end[g]});
        cap_start[g] = pending[g];
        cap_end[g] = sp;
        ++pc;
        break;
      }
      case Op::Backref: {
        const auto g = static_cast<std::size_t>(inst.x);
        ok = cap_end[g] != kUnset;
        if (ok) {
          const std::size_t len = cap_end[g] - cap_start[g];
          ok = sp + len <= n && in.compare(sp, len, in.substr(cap_start[g], len)) == 0;
          if (ok) sp += len, ++pc;
        }
        break;
      }
      case Op::AssertEnd:
        ok = sp == n;
        if (ok) ++pc;
        break;
      case Op::MarkSet: {
        const auto m = static_cast<std::size_t>(inst.x);
        stack.push_back({Frame::Kind::Mark, inst.x, marks[m], 0});
        marks[m] = sp;
        ++pc;
        break;
      }
      case Op::MarkCheck:
        // An iteration that consumed nothing cannot repeat.
        ok = marks[static_cast<std::size_t>(inst.x)] != sp;
        if (ok) ++pc;
        break;
      case Op::Match:
        if (sp == n) return true;
        ok = false;
        break;
    }
    if (ok) continue;

    // Backtrack to the most recent open alternative.
    for (;;) {
      if (stack.empty()) return false;
      tick();
      Frame& f = stack.back();
      if (f.kind == Frame::Kind::Repeat) {
        pc = f.a;
        sp = f.c;
        if (f.c == f.b) {
          stack.pop_back();
        } else {
          --f.c;
        }
        break;
      }
      const Frame top = f;
      stack.pop_back();
      const auto idx = static_cast<std::size_t>(top.a);
      if (top.kind == Frame::Kind::Branch) {
        pc = top.a;
        sp = top.b;
        break;
      }
      switch (top.kind) {
        case Frame::Kind::Pending: pending[idx] = top.b; break;
        case Frame::Kind::Capture:
          cap_start[idx] = top.b;
          cap_end[idx] = top.c;
          break;
        case Frame::Kind::Mark: marks[idx] = top.b; break;
        default: break;
      }
    }
  }
}

}  // namespace

bool full_match(const Ast& ast, std::string_view input, std::uint64_t step_budget) {
  Program prog = Compiler().compile(ast);
  return run(prog, input, step_budget);
}

// ---------------------------------------------------------------------------

Regex::Regex(std::string_view pattern, Flavor flavor)
    : pattern_(pattern), flavor_(flavor), ast_(parse_regex(pattern, flavor)), program_(Compiler().compile(ast_)) {}

Regex::Regex(Ast ast) : ast_(std::move(ast)), program_(Compiler().compile(ast_)) {}

Regex::~Regex() = default;
Regex::Regex(const Regex&) = default;
Regex::Regex(Regex&&) noexcept = default;
Regex& Regex::operator=(const Regex&) = default;
Regex& Regex::operator=(Regex&&) noexcept = default;

bool Regex::full_match(std::string_view input, std::uint64_t step_budget) const {
  return run(*program_, input, step_budget);
}

int Regex::group_count() const { return program_->groups; }

// ---------------------------------------------------------------------------

namespace {

std::string describe_byte(unsigned char c) {
  if (c >= 0x20 && c < 0x7f) return std::string(1, static_cast<char>(c));
  static const char* hex = "0123456789abcdef";
  return std::string("\\x") + hex[c >> 4] + hex[c & 15];
}

struct Describer {
  std::string operator()(const ast::Empty&) const { return "Empty"; }
  std::string operator()(const ast::Literal& n) const {
    return "Lit('" + describe_byte(static_cast<unsigned char>(n.ch)) + "')";
  }
  std::string operator()(const ast::AnyChar&) const { return "Any"; }
  std::string operator()(const ast::CharClass& n) const {
    std::string out = "Class[";
    for (auto [lo, hi] : n.ranges) {
      out += describe_byte(lo);
      if (hi != lo) out += "-" + describe_byte(hi);
    }
    return out + "]";
  }
  std::string list(const char* name, const std::vector<Ast>& items) const {
    std::string out = std::string(name) + "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out += ", ";
      out += describe(items[i]);
    }
    return out + "]";
  }
  std::string operator()(const ast::Concat& n) const { return list("Concat", n.items); }
  std::string operator()(const ast::Alternation& n) const { return list("Alt", n.alternatives); }
  std::string operator()(const ast::Star& n) const { return "Star(" + describe(*n.child) + ")"; }
  std::string operator()(const ast::Optional& n) const { return "Opt(" + describe(*n.child) + ")"; }
  std::string operator()(const ast::Group& n) const {
    return "Group" + std::to_string(n.index) + "(" + describe(*n.child) + ")";
  }
  std::string operator()(const ast::Backref& n) const { return "Backref" + std::to_string(n.index); }
  std::string operator()(const ast::EndAnchor&) const { return "End"; }
};

}  // namespace

std::string describe(const Ast& a) { return std::visit(Describer{}, a.node); }

}  // namespace weirdfind::re
