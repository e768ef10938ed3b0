#include <cctype>
#include <string>

#include "hpt/surface.hpp"

namespace hpt {

const char* to_string(Tok kind) {
  switch (kind) {
    case Tok::KwDef: return "'def'";
    case Tok::KwAxiom: return "'axiom'";
    case Tok::KwFun: return "'fun'";
    case Tok::KwType: return "'Type'";
    case Tok::KwRefl: return "'refl'";
    case Tok::KwJ: return "'J'";
    case Tok::HashCheck: return "'#check'";
    case Tok::HashEval: return "'#eval'";
    case Tok::HashAssert: return "'#assert'";
    case Tok::Ident: return "identifier";
    case Tok::Nat: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Colon: return "':'";
    case Tok::ColonEq: return "':='";
    case Tok::Arrow: return "'->'";
    case Tok::FatArrow: return "'=>'";
    case Tok::Eq: return "'='";
    case Tok::Star: return "'*'";
    case Tok::StarStar: return "'**'";
    case Tok::Tilde: return "'~'";
    case Tok::At: return "'@'";
    case Tok::Underscore: return "'_'";
    case Tok::Eof: return "end of input";
  }
  return "?";
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '\'';
}

class Lexer {
 public:
  Lexer(std::string_view input, const std::string& file)
      : in_(input), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (pos_ >= in_.size()) break;
      out.push_back(next());
    }
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < in_.size() ? in_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (in_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < in_.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '-' && peek(1) == '-') {
        while (pos_ < in_.size() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token make(Tok kind, std::size_t start, unsigned line, unsigned col) {
    Token t;
    t.kind = kind;
    t.text = std::string(in_.substr(start, pos_ - start));
    t.offset = start;
    t.span = SourceSpan{file_, line, col, line_, col_};
    return t;
  }

  Token next() {
    std::size_t start = pos_;
    unsigned line = line_, col = col_;
    char c = peek();

    if (ident_start(c)) {
      advance();
      while (pos_ < in_.size()) {
        if (ident_char(peek())) {
          advance();
        } else if (peek() == '-' && ident_char(peek(1)) && peek(1) != '\'' &&
                   peek(1) != '_') {
          advance();
        } else {
          break;
        }
      }
      Token t = make(Tok::Ident, start, line, col);
      if (t.text == "def") t.kind = Tok::KwDef;
      else if (t.text == "axiom") t.kind = Tok::KwAxiom;
      else if (t.text == "fun") t.kind = Tok::KwFun;
      else if (t.text == "Type") t.kind = Tok::KwType;
      else if (t.text == "refl") t.kind = Tok::KwRefl;
      else if (t.text == "J") t.kind = Tok::KwJ;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      return make(Tok::Nat, start, line, col);
    }
    if (c == '#') {
      advance();
      while (std::isalpha(static_cast<unsigned char>(peek()))) advance();
      std::string_view word = in_.substr(start, pos_ - start);
      if (word == "#check") return make(Tok::HashCheck, start, line, col);
      if (word == "#eval") return make(Tok::HashEval, start, line, col);
      if (word == "#assert") return make(Tok::HashAssert, start, line, col);
      throw Error(ErrorKind::Lex, SourceSpan{file_, line, col, line_, col_},
                  "unknown directive '" + std::string(word) + "'");
    }

    auto single = [&](Tok kind) {
      advance();
      return make(kind, start, line, col);
    };
    auto pair = [&](Tok kind) {
      advance();
      advance();
      return make(kind, start, line, col);
    };

    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '{': return single(Tok::LBrace);
      case '}': return single(Tok::RBrace);
      case '~': return single(Tok::Tilde);
      case '@': return single(Tok::At);
      case '_': return single(Tok::Underscore);
      case ':': return peek(1) == '=' ? pair(Tok::ColonEq) : single(Tok::Colon);
      case '=': return peek(1) == '>' ? pair(Tok::FatArrow) : single(Tok::Eq);
      case '*': return peek(1) == '*' ? pair(Tok::StarStar) : single(Tok::Star);
      case '-':
        if (peek(1) == '>') return pair(Tok::Arrow);
        break;
      default:
        break;
    }

    std::string shown;
    auto u = static_cast<unsigned char>(c);
    if (u >= 0x20 && u < 0x7f) {
      shown = std::string("'") + c + "'";
    } else {
      shown = "non-ASCII or control character";
    }
    throw Error(ErrorKind::Lex, SourceSpan{file_, line, col, line, col + 1},
                "illegal character: " + shown);
  }

  std::string_view in_;
  const std::string& file_;
  std::size_t pos_ = 0;
  unsigned line_ = 1;
  unsigned col_ = 1;
};

}  // namespace

std::vector<Token> lex(std::string_view input, const std::string& file) {
  return Lexer(input, file).run();
}

}  // namespace hpt
