#pragma once

// Whole-string regex matching for the two pattern dialects find accepts here:
// the default emacs syntax (\( \) \| and back-references \1..\9) and the awk
// syntax (( ) | ?, no back-references).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "weirdfind/box.hpp"

namespace weirdfind::re {

enum class Flavor : std::uint8_t { Emacs, Awk };

std::string_view to_string(Flavor flavor);

struct Ast;

namespace ast {
struct Empty {
  bool operator==(const Empty&) const = default;
};
struct Literal {
  char ch;
  bool operator==(const Literal&) const = default;
};
struct AnyChar {
  bool operator==(const AnyChar&) const = default;
};
struct CharClass {
  std::vector<std::pair<unsigned char, unsigned char>> ranges;  // inclusive
  bool operator==(const CharClass&) const = default;
};
struct Concat {
  std::vector<Ast> items;
  bool operator==(const Concat&) const;
};
struct Alternation {
  std::vector<Ast> alternatives;
  bool operator==(const Alternation&) const;
};
struct Star {
  Box<Ast> child;
  bool operator==(const Star&) const;
};
struct Optional {
  Box<Ast> child;
  bool operator==(const Optional&) const;
};
struct Group {
  int index;  // 1-based, by opening position
  Box<Ast> child;
  bool operator==(const Group&) const;
};
struct Backref {
  int index;
  bool operator==(const Backref&) const = default;
};
struct EndAnchor {
  bool operator==(const EndAnchor&) const = default;
};
}  // namespace ast

struct Ast {
  using Node = std::variant<ast::Empty, ast::Literal, ast::AnyChar, ast::CharClass, ast::Concat,
                            ast::Alternation, ast::Star, ast::Optional, ast::Group, ast::Backref,
                            ast::EndAnchor>;
  Node node;

  bool operator==(const Ast& other) const { return node == other.node; }
};

enum class RegexErrc : std::uint8_t {
  UnsupportedConstruct,
  BackrefInAwk,
  UnbalancedGroup,
  DanglingQuantifier,
  InvalidBackref,
  UnterminatedClass,
};

class RegexError : public std::runtime_error {
 public:
  RegexError(RegexErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  RegexErrc code() const { return code_; }

 private:
  RegexErrc code_;
};

class StepBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultStepBudget = 10'000'000;

Ast parse_regex(std::string_view pattern, Flavor flavor);

// Compiles on every call; prefer Regex for repeated matching.
bool full_match(const Ast& ast, std::string_view input, std::uint64_t step_budget = kDefaultStepBudget);

// Human-readable tree form, e.g. Concat[Lit('/'), Class[a-z]].
std::string describe(const Ast& ast);

namespace detail {
struct Program;
}

class Regex {
 public:
  Regex(std::string_view pattern, Flavor flavor);
  explicit Regex(Ast ast);
  ~Regex();
  Regex(const Regex&);
  Regex(Regex&&) noexcept;
  Regex& operator=(const Regex&);
  Regex& operator=(Regex&&) noexcept;

  bool full_match(std::string_view input, std::uint64_t step_budget = kDefaultStepBudget) const;

  const Ast& ast() const { return ast_; }
  const std::string& pattern() const { return pattern_; }
  Flavor flavor() const { return flavor_; }
  int group_count() const;

 private:
  std::string pattern_;
  Flavor flavor_ = Flavor::Emacs;
  Ast ast_;
  Box<detail::Program> program_;
};

}  // namespace weirdfind::re
