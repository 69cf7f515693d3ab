#pragma once

// Word encoding shared by the two tag-system backends. Each symbol gets a
// two-letter lowercase code; σ(s) = "/" + code(s) and Φ concatenates σ over a
// word, so an encoded word is a relative path of two-letter directories.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "weirdfind/machines.hpp"

namespace weirdfind::compiler {

inline constexpr std::size_t kMaxSymbols = 675;

enum class CompileErrc : std::uint8_t { TooManySymbols, MalformedEncoding, InvalidInput };

class CompileError : public std::runtime_error {
 public:
  CompileError(CompileErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  CompileErrc code() const { return code_; }

 private:
  CompileErrc code_;
};

// i-th code of aa, ab, ..., az, ba, ...
std::string code_at(std::size_t index);

struct Encoding {
  // Code order: non-halt symbols in alphabet order, then the halt symbol.
  std::vector<std::string> order;
  std::map<std::string, std::string> code;
  std::map<std::string, std::string> symbol_of_code;
  std::string halt;

  std::size_t size() const { return order.size(); }
  std::string sigma(const std::string& symbol) const { return "/" + code.at(symbol); }
  std::string sigma_at(std::size_t k) const { return sigma(order.at(k)); }
  std::string eta() const { return sigma(halt); }
};

Encoding make_encoding(const machines::TagSystem& sys);

std::string encode_word(const Encoding& enc, const machines::Word& word);
machines::Word decode_word(const Encoding& enc, std::string_view text);

}  // namespace weirdfind::compiler
