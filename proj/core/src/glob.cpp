#include "weirdfind/find_command.hpp"

namespace weirdfind::find {

// Iterative matcher with single-star backtracking: on mismatch, resume after
// the most recent `*` with one more byte consumed by it.
bool glob_match(std::string_view pattern, std::string_view name) {
  std::size_t p = 0;
  std::size_t n = 0;
  std::size_t star_p = std::string_view::npos;
  std::size_t star_n = 0;
  while (n < name.size()) {
    if (p < pattern.size()) {
      const char c = pattern[p];
      if (c == '*') {
        star_p = ++p;
        star_n = n;
        continue;
      }
      if (c == '?') {
        ++p;
        ++n;
        continue;
      }
      std::size_t width = 1;
      char lit = c;
      if (c == '\\' && p + 1 < pattern.size()) {
        lit = pattern[p + 1];
        width = 2;
      }
      if (lit == name[n]) {
        p += width;
        ++n;
        continue;
      }
    }
    if (star_p == std::string_view::npos) return false;
    p = star_p;
    n = ++star_n;
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

}  // namespace weirdfind::find
