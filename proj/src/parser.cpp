#include "canonseq/parser.hpp"

#include <cctype>
#include <map>

namespace canonseq {

std::string normalize_connective_name(const std::string& token) {
  static const std::map<std::string, std::string> aliases = {
      {"⊃", "imp"},   // superset sign, the usual implication glyph
      {"¬", "neg"},   {"⊥", "bot"},  {"⇝", "simp"},
      {"▷", "aff"},   {"▶", "waff"}, {"⊄", "cni"},
      {"∣", "nand"},  {"|", "nand"},      {"∘", "circ"},
      {"∧", "and"},   {"∨", "or"},
  };
  auto it = aliases.find(token);
  return it == aliases.end() ? token : it->second;
}

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Arrow, End };

struct Lexer {
  std::string_view text;
  size_t pos = 0;
  Tok kind = Tok::End;
  std::string ident;
  size_t tok_pos = 0;

  explicit Lexer(std::string_view t) : text(t) { next(); }

  static bool ident_char(unsigned char c) {
    return std::isalnum(c) || c == '_' || c >= 0x80;
  }

  void next() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    tok_pos = pos;
    if (pos >= text.size()) {
      kind = Tok::End;
      return;
    }
    char c = text[pos];
    if (c == '(') { kind = Tok::LParen; ++pos; return; }
    if (c == ')') { kind = Tok::RParen; ++pos; return; }
    if (c == ',') { kind = Tok::Comma; ++pos; return; }
    if (c == '=' && pos + 1 < text.size() && text[pos + 1] == '>') {
      kind = Tok::Arrow;
      pos += 2;
      return;
    }
    if (text.substr(pos).starts_with("⇒")) {  // accepted arrow alias
      kind = Tok::Arrow;
      pos += 3;
      return;
    }
    if (c == '|') {  // single-character alias for "nand"
      kind = Tok::Ident;
      ident = "|";
      ++pos;
      return;
    }
    if (ident_char(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < text.size() &&
             ident_char(static_cast<unsigned char>(text[pos])))
        ++pos;
      kind = Tok::Ident;
      ident = std::string(text.substr(start, pos - start));
      return;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos);
  }
};

bool atom_token(const std::string& s, int& index) {
  if (s.size() < 2 || s[0] != 'p') return false;
  for (size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  index = std::stoi(s.substr(1));
  return index >= 1;
}

Formula parse_formula_tokens(Lexer& lx, const Signature& sig) {
  if (lx.kind != Tok::Ident)
    throw ParseError("expected a formula", lx.tok_pos);
  size_t at = lx.tok_pos;
  std::string name = lx.ident;
  lx.next();
  int index = 0;
  if (atom_token(name, index)) return Formula::atom(index);

  name = normalize_connective_name(name);
  const Connective* conn = sig.find(name);
  if (!conn) throw ParseError("unknown connective '" + name + "'", at);

  std::vector<Formula> args;
  if (lx.kind == Tok::LParen) {
    lx.next();
    if (lx.kind != Tok::RParen) {
      args.push_back(parse_formula_tokens(lx, sig));
      while (lx.kind == Tok::Comma) {
        lx.next();
        args.push_back(parse_formula_tokens(lx, sig));
      }
    }
    if (lx.kind != Tok::RParen) throw ParseError("expected ')'", lx.tok_pos);
    lx.next();
  }
  if (static_cast<int>(args.size()) != conn->arity)
    throw ParseError("arity mismatch for '" + name + "': expected " +
                         std::to_string(conn->arity) + " arguments, got " +
                         std::to_string(args.size()),
                     at);
  return Formula::compound(name, std::move(args));
}

Sequent parse_sequent_tokens(Lexer& lx, const Signature& sig) {
  Sequent s;
  if (lx.kind == Tok::Ident) {
    s.antecedent.insert(parse_formula_tokens(lx, sig));
    while (lx.kind == Tok::Comma) {
      lx.next();
      s.antecedent.insert(parse_formula_tokens(lx, sig));
    }
  }
  if (lx.kind != Tok::Arrow) throw ParseError("expected '=>'", lx.tok_pos);
  lx.next();
  if (lx.kind == Tok::Ident) s.succedent = parse_formula_tokens(lx, sig);
  return s;
}

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) {
  Lexer lx(text);
  Formula f = parse_formula_tokens(lx, sig);
  if (lx.kind != Tok::End)
    throw ParseError("trailing input after formula", lx.tok_pos);
  return f;
}

Sequent parse_sequent(std::string_view text, const Signature& sig) {
  Lexer lx(text);
  Sequent s = parse_sequent_tokens(lx, sig);
  if (lx.kind != Tok::End)
    throw ParseError("trailing input after sequent", lx.tok_pos);
  return s;
}

std::vector<Sequent> parse_sequent_lines(std::string_view text,
                                         const Signature& sig) {
  std::vector<Sequent> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (!blank) out.push_back(parse_sequent(line, sig));
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace canonseq
