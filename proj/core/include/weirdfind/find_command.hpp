#pragma once

// argv -> command AST for the two binaries the emulator knows: mkdir and a
// subset of GNU find.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "weirdfind/box.hpp"
#include "weirdfind/regex.hpp"

namespace weirdfind::find {

enum class ParseErrc : std::uint8_t {
  UnknownPrimary,
  MissingSemicolon,
  NestedExecFind,
  BadSize,
  EmptyParens,
  UnbalancedParens,
  MissingArgument,
  MissingOperand,
  MisplacedGlobalOption,
  BadFormat,
  BadRegex,
  BadRegexType,
  BadType,
  ConflictingStarts,
  BadMkdirFlag,
  UnknownBinary,
};

std::string_view to_string(ParseErrc code);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ParseErrc code() const { return code_; }

 private:
  ParseErrc code_;
};

// -printf style format. Directives: %f %s %p %%. Escapes: \0 \\ \n \t.
struct FormatPiece {
  enum class Kind : std::uint8_t { Text, Basename, Size, Path };
  Kind kind;
  std::string text;  // Text only
  bool operator==(const FormatPiece&) const = default;
};

struct Format {
  std::string raw;
  std::vector<FormatPiece> pieces;
  bool operator==(const Format& o) const { return raw == o.raw; }
};

Format parse_format(std::string_view raw);

enum class FileType : std::uint8_t { Dir, File };

struct Expr;

namespace expr {
struct True {
  bool operator==(const True&) const = default;
};
struct False {
  bool operator==(const False&) const = default;
};
struct Empty {
  bool operator==(const Empty&) const = default;
};
struct Name {
  std::string pattern;
  bool operator==(const Name&) const = default;
};
struct Size {
  std::uint64_t bytes;
  bool operator==(const Size&) const = default;
};
struct Regex {
  std::string pattern;
  re::Flavor flavor;
  std::shared_ptr<const re::Regex> compiled;
  bool operator==(const Regex& o) const { return pattern == o.pattern && flavor == o.flavor; }
};
struct TypeIs {
  FileType type;
  bool operator==(const TypeIs&) const = default;
};
struct Exec {
  std::vector<std::string> argv;
  bool operator==(const Exec&) const = default;
};
struct Execdir {
  std::vector<std::string> argv;
  bool operator==(const Execdir&) const = default;
};
struct Delete {
  bool operator==(const Delete&) const = default;
};
struct Prune {
  bool operator==(const Prune&) const = default;
};
struct Quit {
  bool operator==(const Quit&) const = default;
};
struct Printf {
  Format format;
  bool operator==(const Printf&) const = default;
};
struct Fprintf {
  std::string target;
  Format format;
  bool operator==(const Fprintf&) const = default;
};
struct Fprint {
  std::string target;
  bool operator==(const Fprint&) const = default;
};
struct Not {
  Box<Expr> child;
  bool operator==(const Not&) const;
};
struct And {
  std::vector<Expr> items;
  bool operator==(const And&) const;
};
struct Or {
  std::vector<Expr> items;
  bool operator==(const Or&) const;
};
struct Comma {
  std::vector<Expr> items;
  bool operator==(const Comma&) const;
};
}  // namespace expr

struct Expr {
  using Node = std::variant<expr::True, expr::False, expr::Empty, expr::Name, expr::Size, expr::Regex,
                            expr::TypeIs, expr::Exec, expr::Execdir, expr::Delete, expr::Prune,
                            expr::Quit, expr::Printf, expr::Fprintf, expr::Fprint, expr::Not,
                            expr::And, expr::Or, expr::Comma>;
  Node node;

  bool operator==(const Expr& other) const { return node == other.node; }
};

struct FindCommand {
  std::vector<std::string> starts;  // ["."] when neither starts nor files0_from given
  std::optional<std::string> files0_from;
  bool depth_option = false;  // -depth given explicitly
  bool depth = false;         // effective: -depth or any -delete
  Expr expr;

  bool operator==(const FindCommand&) const = default;
};

struct MkdirCommand {
  bool parents = false;
  std::vector<std::string> paths;

  bool operator==(const MkdirCommand&) const = default;
};

using Command = std::variant<MkdirCommand, FindCommand>;

// Throws ParseError.
Command parse_command(const std::vector<std::string>& argv);
FindCommand parse_find(const std::vector<std::string>& argv);

// Inverse of parse_command up to parenthesisation.
std::vector<std::string> render_command(const Command& cmd);
std::vector<std::string> render_expr(const Expr& e);

bool contains_delete(const Expr& e);

// Expression helpers used by generators and tests.
Expr make_and(std::vector<Expr> items);
Expr make_or(std::vector<Expr> items);

// fnmatch-style match of `name` against `pattern`: `*`, `?`, backslash
// escapes, every other byte literal. `[` has no special meaning.
bool glob_match(std::string_view pattern, std::string_view name);

}  // namespace weirdfind::find
