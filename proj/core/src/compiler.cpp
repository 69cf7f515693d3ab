#include "weirdfind/compiler.hpp"

#include <algorithm>

namespace weirdfind::compiler {

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::Backref: return "backref";
    case Backend::NoBackref: return "nobackref";
    case Backend::Counter: return "counter";
  }
  return "unknown";
}

std::optional<Backend> backend_from_string(std::string_view name) {
  if (name == "backref") return Backend::Backref;
  if (name == "nobackref") return Backend::NoBackref;
  if (name == "counter") return Backend::Counter;
  return std::nullopt;
}

namespace {

void append(Tokens& out, std::initializer_list<std::string> items) { out.insert(out.end(), items.begin(), items.end()); }
void append(Tokens& out, const Tokens& items) { out.insert(out.end(), items.begin(), items.end()); }

Encoding prepare(const machines::TagSystem& sys, const machines::Word& w1) {
  sys.validate();
  for (const auto& s : w1) {
    if (!sys.has_symbol(s)) throw CompileError(CompileErrc::InvalidInput, "initial word uses unknown symbol '" + s + "'");
  }
  return make_encoding(sys);
}

}  // namespace

std::string marker_name(std::size_t k) { return std::to_string(k + 1); }

std::string pi(const Encoding& enc, const machines::TagSystem& sys, const std::string& symbol) {
  return encode_word(enc, sys.productions.at(symbol));
}

TagPatterns backref_patterns(const Encoding& enc) {
  TagPatterns p;
  p.lambda = std::string(kLambda);
  p.big_lambda = "\\(" + p.lambda + "\\)*";
  const std::string& L = p.big_lambda;
  for (std::size_t k = 0; k < enc.size(); ++k) {
    const std::string sigma = enc.sigma_at(k);
    p.alpha.push_back(".*_" + p.lambda + p.lambda + "\\(" + L + "\\)" + sigma + L + "/_\\1");
    if (enc.order[k] != enc.halt) p.beta.push_back(".*_" + sigma + L + "/_" + L);
  }
  p.gamma = ".*_\\(\\|" + p.lambda + "\\|" + enc.eta() + L + "\\)/_";
  return p;
}

TagPatterns nobackref_patterns(const Encoding& enc) {
  TagPatterns p;
  const std::string sep(kSepRegex);
  p.lambda = std::string(kLambda);
  p.big_lambda = "(" + p.lambda + ")*";
  const std::string& L = p.big_lambda;
  for (std::size_t k = 0; k < enc.size(); ++k) {
    const std::string sigma = enc.sigma_at(k);
    p.alpha.push_back(".*" + sep + p.lambda + p.lambda + "({})" + sigma + L + "/" + sep + L + "/" + marker_name(k));
    if (enc.order[k] != enc.halt) p.beta.push_back(".*" + sep + sigma + L + "/" + sep + L);
  }
  p.gamma = ".*" + sep + "(|" + p.lambda + "|" + enc.eta() + L + ")/" + sep;
  return p;
}

Tokens tag_output_command(std::string_view sep) {
  const std::string s(sep);
  return {"find", s, "-depth", "!", "-empty", "-name", s, "-execdir", "find", s, "!", "-name", s, "-printf", "/%f", ";", "-quit"};
}

Script compile_tag_backref(const machines::TagSystem& sys, const machines::Word& w1) {
  const Encoding enc = prepare(sys, w1);
  const TagPatterns p = backref_patterns(enc);

  Script script;
  script.binaries = {"find", "mkdir"};
  script.commands.push_back({"mkdir", "-p", "_" + encode_word(enc, w1) + "/_"});

  Tokens main{"find", "_", "-empty", "(", "-regex", p.gamma, "-quit", "-o"};
  for (std::size_t k = 0; k < enc.size(); ++k) {
    append(main, {"-regex", p.alpha[k], "-execdir", "mkdir", "{}" + enc.sigma_at(k), ";", "-o"});
  }
  for (std::size_t k = 0; k + 1 < enc.size(); ++k) {
    append(main, {"-regex", p.beta[k], "-execdir", "mkdir", "-p", "{}" + pi(enc, sys, enc.order[k]) + "/_", ";", "-o"});
  }
  append(main, {"-printf", "unreachable", ")"});
  script.commands.push_back(std::move(main));
  script.commands.push_back(tag_output_command(kBackrefSep));
  return script;
}

Script compile_tag_nobackref(const machines::TagSystem& sys, const machines::Word& w1) {
  const Encoding enc = prepare(sys, w1);
  const TagPatterns p = nobackref_patterns(enc);
  const std::string sep(kSep);

  Script script;
  script.binaries = {"find", "mkdir"};
  script.commands.push_back({"mkdir", "-p", sep + encode_word(enc, w1) + "/" + sep});

  Tokens main{"find", sep, "-regextype", "awk", "-type", "d", "-empty", "(", "-regex", p.gamma, "-quit", "-o"};
  for (std::size_t k = 0; k < enc.size(); ++k) {
    append(main, {"-execdir", "find", "-fprint", "{}/" + marker_name(k), "-quit", ";"});
  }
  for (std::size_t k = 0; k < enc.size(); ++k) {
    append(main, {"-exec", "find", sep, "-regextype", "awk", "-type", "f", "-regex", p.alpha[k], "-delete", "-quit", ";"});
  }
  main.emplace_back("(");
  for (std::size_t k = 0; k < enc.size(); ++k) {
    append(main, {"!", "-execdir", "find", "{}/" + marker_name(k), "-quit", ";", "-execdir", "mkdir",
                  "{}/" + enc.sigma_at(k), ";", "-o"});
  }
  append(main, {"-false", ")", "-o", "("});
  for (std::size_t k = 0; k + 1 < enc.size(); ++k) {
    append(main, {"-regex", p.beta[k], "-execdir", "mkdir", "-p", "{}" + pi(enc, sys, enc.order[k]) + "/" + sep, ";", "-o"});
  }
  append(main, {"-printf", "unreachable", ")", ",", "-exec", "find", sep, "-type", "f", "-delete", ";", ")"});
  script.commands.push_back(std::move(main));
  script.commands.push_back(tag_output_command(kSep));
  return script;
}

// ---------------------------------------------------------------------------
// Counter backend

const std::string& counter_file(int r) {
  static const std::string a = "a";
  static const std::string b = "b";
  return r == 0 ? a : b;
}

Tokens inc_expr(const std::string& x) {
  return {"(", "(",
          "-exec", "find", x, "-quit", ";",
          "-exec", "find", "-quit", "-fprintf", "first", ".", ";",
          "-exec", "find", "-files0-from", x, "(", "-name", ".", "-o", "-name", "first", "-delete", ")", "-fprintf", "t", ".\\0", ";",
          "-exec", "find", "-files0-from", "t", "-prune", "-fprintf", x, ".\\0", ";",
          "-exec", "find", "t", "-delete", ";",
          ")", "-o",
          "-exec", "find", "-fprintf", x, ".\\0", "-quit", ";",
          ")"};
}

Tokens dec_expr(const std::string& x) {
  return {"(", "(",
          "-exec", "find", x, "-size", "2c", "-delete", ";",
          "-exec", "find", x, "-quit", ";",
          "-exec", "find", "-quit", "-fprint", "first", ";",
          "-exec", "find", "-files0-from", x, "-name", "first", "-delete", "-fprintf", "t", "skip", "-o",
          "-name", "t", "-fprintf", "t", ".", "-o", "-name", ".", "-fprintf", "t", "\\0", ";",
          "-exec", "find", "-files0-from", "t", "-name", ".", "-fprintf", x, ".\\0", ";",
          "-exec", "find", "t", "-delete", ";",
          ")", "-o", "-true", ")"};
}

Tokens jump_expr(std::size_t q) {
  if (q == 0) return {"-exec", "find", "-quit", "-fprintf", "pc", "x", ";"};
  return {"-exec", "find", "-fprintf", "pc", std::string(q, '1'), "-quit", ";"};
}

Tokens jz_expr(const std::string& x, std::size_t q) {
  Tokens out{"(", "(", "!", "-exec", "find", x, "-quit", ";"};
  append(out, jump_expr(q));
  append(out, {")", "-o", "-true", ")"});
  return out;
}

Tokens ispc_expr(std::size_t q) { return {"-size", std::to_string(q) + "c"}; }

Script compile_counter(const machines::CounterProgram& prog, std::uint64_t c0, std::uint64_t c1) {
  prog.validate();
  Script script;
  script.binaries = {"find"};
  script.commands.push_back({"find", "-quit", "-fprintf", "pc", "x"});

  Tokens init{"find"};
  append(init, inc_expr("s"));
  for (std::uint64_t i = 0; i < c0; ++i) append(init, inc_expr("a"));
  for (std::uint64_t i = 0; i < c1; ++i) append(init, inc_expr("b"));
  init.emplace_back("-quit");
  script.commands.push_back(std::move(init));

  Tokens loop{"find", "-files0-from", "s", "-name", "pc"};
  append(loop, inc_expr("s"));
  loop.emplace_back("(");
  const std::size_t m = prog.size();
  for (std::size_t j = 0; j < m; ++j) {
    const machines::CounterInstr& ins = prog.instructions[j];
    append(loop, ispc_expr(j));
    append(loop, jump_expr(j + 1));
    switch (ins.op) {
      case machines::CounterOp::Inc: append(loop, inc_expr(counter_file(ins.r))); break;
      case machines::CounterOp::Dec: append(loop, dec_expr(counter_file(ins.r))); break;
      case machines::CounterOp::Jz: append(loop, jz_expr(counter_file(ins.r), ins.q)); break;
      case machines::CounterOp::J: append(loop, jump_expr(ins.q)); break;
    }
    loop.emplace_back("-o");
  }
  append(loop, {"-quit", ")"});
  script.commands.push_back(std::move(loop));

  script.commands.push_back({"find", "-files0-from", "a", "-fprintf", "count", "1", "-prune"});
  script.commands.push_back({"find", "count", "-printf", "%s"});
  return script;
}

// ---------------------------------------------------------------------------
// Shell text

std::string shell_quote(std::string_view token) {
  const bool bare = !token.empty() && std::all_of(token.begin(), token.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '.' ||
           c == '/' || c == '%' || c == '-';
  });
  if (bare) return std::string(token);
  std::string out = "'";
  for (char c : token) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

std::string_view minimum_find_version(const Script& script) {
  return script.binaries == std::set<std::string>{"find"} ? "4.9.0" : "4.2.12";
}

std::string emit_shell(const Script& script) {
  std::string out = "# requires GNU find >= " + std::string(minimum_find_version(script)) + "\n";
  for (const auto& cmd : script.commands) {
    for (std::size_t i = 0; i < cmd.size(); ++i) {
      if (i) out += ' ';
      out += shell_quote(cmd[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace weirdfind::compiler
