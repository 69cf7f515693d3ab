#pragma once

// Code generators targeting find/mkdir command sequences.
//
//   backref    tag system -> find + mkdir, emacs regexes with \1
//   nobackref  tag system -> find + mkdir, awk regexes, marker files
//   counter    2-counter machine -> find alone (-files0-from loop)

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weirdfind/encoding.hpp"
#include "weirdfind/machines.hpp"
#include "weirdfind/script.hpp"

namespace weirdfind::compiler {

enum class Backend : std::uint8_t { Backref, NoBackref, Counter };

std::string_view to_string(Backend backend);
std::optional<Backend> backend_from_string(std::string_view name);

inline constexpr std::string_view kBackrefSep = "_";
inline constexpr std::string_view kSep = "$_)?(";
inline constexpr std::string_view kSepRegex = "\\$\\_\\)\\?\\(";
inline constexpr std::string_view kLambda = "/[a-z][a-z]";

using Tokens = std::vector<std::string>;

// Regexes of the tag backends, indexed by code order (see Encoding::order).
// beta has one entry per non-halt symbol.
struct TagPatterns {
  std::string lambda;
  std::string big_lambda;
  std::vector<std::string> alpha;
  std::vector<std::string> beta;
  std::string gamma;
};

TagPatterns backref_patterns(const Encoding& enc);
TagPatterns nobackref_patterns(const Encoding& enc);

// Marker file name for code index k (0-based): "1", "2", ...
std::string marker_name(std::size_t k);

// π(s) = Φ(P(s)).
std::string pi(const Encoding& enc, const machines::TagSystem& sys, const std::string& symbol);

Script compile_tag_backref(const machines::TagSystem& sys, const machines::Word& w1);
Script compile_tag_nobackref(const machines::TagSystem& sys, const machines::Word& w1);
Script compile_counter(const machines::CounterProgram& prog, std::uint64_t c0, std::uint64_t c1);

// Expression fragments of the counter backend. `file` is one of a, b, s.
Tokens inc_expr(const std::string& file);
Tokens dec_expr(const std::string& file);
Tokens jz_expr(const std::string& file, std::size_t q);
Tokens jump_expr(std::size_t q);
Tokens ispc_expr(std::size_t q);
const std::string& counter_file(int r);

// Output command shared by the tag backends.
Tokens tag_output_command(std::string_view sep);

// Shell text: one comment line naming the minimum GNU find version, then
// one line per command.
std::string shell_quote(std::string_view token);
std::string emit_shell(const Script& script);
std::string_view minimum_find_version(const Script& script);

}  // namespace weirdfind::compiler
