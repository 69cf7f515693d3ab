#include "weirdfind/encoding.hpp"

namespace weirdfind::compiler {

std::string code_at(std::size_t index) {
  return {static_cast<char>('a' + index / 26), static_cast<char>('a' + index % 26)};
}

Encoding make_encoding(const machines::TagSystem& sys) {
  if (sys.symbols.size() > kMaxSymbols) {
    throw CompileError(CompileErrc::TooManySymbols, "tag system has " + std::to_string(sys.symbols.size()) +
                                                        " symbols; at most " + std::to_string(kMaxSymbols) +
                                                        " fit the two-letter code space");
  }
  Encoding enc;
  enc.halt = sys.halt;
  for (const auto& s : sys.symbols) {
    if (s != sys.halt) enc.order.push_back(s);
  }
  enc.order.push_back(sys.halt);
  for (std::size_t i = 0; i < enc.order.size(); ++i) {
    const std::string c = code_at(i);
    enc.code[enc.order[i]] = c;
    enc.symbol_of_code[c] = enc.order[i];
  }
  return enc;
}

std::string encode_word(const Encoding& enc, const machines::Word& word) {
  std::string out;
  out.reserve(word.size() * 3);
  for (const auto& s : word) {
    auto it = enc.code.find(s);
    if (it == enc.code.end()) throw CompileError(CompileErrc::InvalidInput, "cannot encode unknown symbol '" + s + "'");
    out += '/';
    out += it->second;
  }
  return out;
}

machines::Word decode_word(const Encoding& enc, std::string_view text) {
  auto malformed = [&](const std::string& why) {
    return CompileError(CompileErrc::MalformedEncoding, "cannot decode '" + std::string(text) + "': " + why);
  };
  if (text.size() % 3 != 0) throw malformed("length is not a multiple of 3");
  machines::Word word;
  for (std::size_t i = 0; i < text.size(); i += 3) {
    if (text[i] != '/') throw malformed("expected '/' at offset " + std::to_string(i));
    auto it = enc.symbol_of_code.find(std::string(text.substr(i + 1, 2)));
    if (it == enc.symbol_of_code.end()) throw malformed("unknown code at offset " + std::to_string(i));
    word.push_back(it->second);
  }
  return word;
}

}  // namespace weirdfind::compiler
