#include <set>
#include <string>

#include "hpt/overloaded.hpp"
#include "hpt/surface.hpp"

namespace hpt {

std::string SurfaceDecl::name() const {
  if (const auto* d = std::get_if<decl::Def>(&node)) return d->name;
  if (const auto* a = std::get_if<decl::Axiom>(&node)) return a->name;
  return {};
}

namespace {

class Parser {
 public:
  Parser(std::string_view input, const std::string& file)
      : tokens_(lex(input, file)), file_(file) {
    Token eof;
    eof.kind = Tok::Eof;
    if (tokens_.empty()) {
      eof.span = SourceSpan{file, 1, 1, 1, 1};
    } else {
      const auto& last = tokens_.back().span;
      eof.span = SourceSpan{file, last.end_line, last.end_col, last.end_line,
                            last.end_col};
    }
    eof.offset = input.size();
    tokens_.push_back(eof);
  }

  std::vector<SurfaceDecl> file() {
    std::vector<SurfaceDecl> out;
    while (!at(Tok::Eof)) out.push_back(declaration());
    return out;
  }

  SurfacePtr whole_term() {
    SurfacePtr t = term();
    if (!at(Tok::Eof)) fail({"end of input"});
    return t;
  }

 private:
  const Token& cur() const { return tokens_[pos_]; }
  const Token& peek(std::size_t ahead) const {
    std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  bool at(Tok kind) const { return cur().kind == kind; }

  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    last_end_ = t.span;
    return t;
  }

  [[noreturn]] void fail(const std::vector<std::string>& expected) const {
    std::string msg = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += ", found ";
    msg += at(Tok::Ident) || at(Tok::Nat) ? "'" + cur().text + "'"
                                          : std::string(to_string(cur().kind));
    throw Error(ErrorKind::Parse, cur().span, msg);
  }

  const Token& expect(Tok kind) {
    if (!at(kind)) fail({to_string(kind)});
    return advance();
  }

  SourceSpan from(const SourceSpan& start) const {
    return SourceSpan::join(start, last_end_);
  }

  std::string identifier() {
    if (!at(Tok::Ident)) fail({"identifier"});
    return advance().text;
  }

  SurfaceDecl declaration() {
    SourceSpan start = cur().span;
    switch (cur().kind) {
      case Tok::KwDef: {
        advance();
        decl::Def d;
        d.name = identifier();
        while (binder_start()) d.binders.push_back(binder());
        expect(Tok::Colon);
        d.type = term();
        expect(Tok::ColonEq);
        d.body = term();
        return SurfaceDecl{std::move(d), from(start)};
      }
      case Tok::KwAxiom: {
        advance();
        decl::Axiom a;
        a.name = identifier();
        while (binder_start()) a.binders.push_back(binder());
        expect(Tok::Colon);
        a.type = term();
        return SurfaceDecl{std::move(a), from(start)};
      }
      case Tok::HashCheck: {
        advance();
        SurfacePtr t = term();
        return SurfaceDecl{decl::Check{t}, from(start)};
      }
      case Tok::HashEval: {
        advance();
        SurfacePtr t = term();
        return SurfaceDecl{decl::Eval{t}, from(start)};
      }
      case Tok::HashAssert: {
        advance();
        if (!at(Tok::Ident) || cur().text != "defeq") fail({"'defeq'"});
        advance();
        decl::AssertDefeq a;
        a.lhs = term();
        expect(Tok::Tilde);
        a.rhs = term();
        expect(Tok::Colon);
        a.type = term();
        return SurfaceDecl{std::move(a), from(start)};
      }
      default:
        fail({"'def'", "'axiom'", "'#check'", "'#eval'", "'#assert'"});
    }
  }

  bool binder_name_tok(std::size_t ahead) const {
    Tok k = peek(ahead).kind;
    return k == Tok::Ident || k == Tok::Underscore;
  }

  // `(` or `{` followed by one or more names and a colon.
  bool binder_start() const {
    if (!at(Tok::LParen) && !at(Tok::LBrace)) return false;
    std::size_t i = 1;
    while (binder_name_tok(i)) ++i;
    return i > 1 && peek(i).kind == Tok::Colon;
  }

  Binder binder() {
    Binder b;
    b.span = cur().span;
    bool implicit = at(Tok::LBrace);
    advance();
    b.icit = implicit ? Icit::Implicit : Icit::Explicit;
    while (binder_name_tok(0)) b.names.push_back(advance().text);
    expect(Tok::Colon);
    b.annotation = term();
    expect(implicit ? Tok::RBrace : Tok::RParen);
    b.span = from(b.span);
    return b;
  }

  SurfacePtr term() {
    SourceSpan start = cur().span;
    if (at(Tok::KwFun)) {
      advance();
      std::vector<Binder> binders;
      while (true) {
        if (binder_start()) {
          binders.push_back(binder());
        } else if (binder_name_tok(0)) {
          Binder b;
          b.span = cur().span;
          b.names.push_back(advance().text);
          binders.push_back(std::move(b));
        } else {
          break;
        }
      }
      if (binders.empty()) fail({"binder"});
      expect(Tok::FatArrow);
      SurfacePtr body = term();
      return make_surface(surface::Lam{std::move(binders), body}, from(start));
    }
    if (binder_start()) {
      std::vector<Binder> binders;
      while (binder_start()) binders.push_back(binder());
      expect(Tok::Arrow);
      SurfacePtr cod = term();
      return make_surface(surface::Pi{std::move(binders), cod}, from(start));
    }
    SurfacePtr lhs = equation();
    if (at(Tok::Arrow)) {
      advance();
      SurfacePtr cod = term();
      return make_surface(surface::Arrow{lhs, cod}, from(start));
    }
    return lhs;
  }

  SurfacePtr equation() {
    SourceSpan start = cur().span;
    SurfacePtr lhs = star();
    if (!at(Tok::Eq)) return lhs;
    advance();
    SurfacePtr rhs = star();
    return make_surface(surface::IdSugar{lhs, rhs}, from(start));
  }

  SurfacePtr binary(SurfacePtr lhs, const SourceSpan& start,
                    const Token& op, const char* global, SurfacePtr rhs) {
    auto fn = make_surface(surface::Name{global, false}, op.span);
    auto partial = make_surface(surface::App{fn, lhs}, from(start));
    return make_surface(surface::App{partial, rhs}, from(start));
  }

  SurfacePtr star() {
    SourceSpan start = cur().span;
    SurfacePtr lhs = star_star();
    while (at(Tok::Star)) {
      Token op = advance();
      SurfacePtr rhs = star_star();
      lhs = binary(lhs, start, op, "concat", rhs);
    }
    return lhs;
  }

  SurfacePtr star_star() {
    SourceSpan start = cur().span;
    SurfacePtr lhs = application();
    while (at(Tok::StarStar)) {
      Token op = advance();
      SurfacePtr rhs = application();
      lhs = binary(lhs, start, op, "par-concat", rhs);
    }
    return lhs;
  }

  bool atom_start() const {
    switch (cur().kind) {
      case Tok::Ident:
      case Tok::At:
      case Tok::Underscore:
      case Tok::KwType:
      case Tok::KwRefl:
      case Tok::KwJ:
      case Tok::LParen:
        return true;
      default:
        return false;
    }
  }

  // Head-position `refl` and `J` take their arguments from the atoms that
  // follow; everything else is left-associated application.
  SurfacePtr application() {
    SourceSpan start = cur().span;
    if (!atom_start())
      fail({"term"});
    SurfacePtr head;
    if (at(Tok::KwRefl)) {
      advance();
      SurfacePtr point = atom_start() ? atom() : nullptr;
      head = make_surface(surface::ReflSugar{point}, from(start));
    } else if (at(Tok::KwJ)) {
      advance();
      SurfacePtr args[3];
      for (auto& a : args) {
        if (atom_start()) {
          a = atom();
        } else {
          a = make_surface(surface::Hole{}, last_end_);
        }
      }
      head = make_surface(surface::JSugar{args[0], args[1], args[2]},
                          from(start));
    } else {
      head = atom();
    }
    while (atom_start()) {
      SurfacePtr arg = atom();
      head = make_surface(surface::App{head, arg}, from(start));
    }
    return head;
  }

  SurfacePtr atom() {
    SourceSpan start = cur().span;
    switch (cur().kind) {
      case Tok::Ident: {
        std::string name = advance().text;
        return make_surface(surface::Name{name, false}, from(start));
      }
      case Tok::At: {
        advance();
        std::string name = identifier();
        return make_surface(surface::Name{name, true}, from(start));
      }
      case Tok::Underscore:
        advance();
        return make_surface(surface::Hole{}, from(start));
      case Tok::KwType: {
        advance();
        unsigned level = 0;
        if (at(Tok::Nat)) level = static_cast<unsigned>(std::stoul(advance().text));
        return make_surface(surface::TypeU{level}, from(start));
      }
      case Tok::KwRefl:
        advance();
        return make_surface(surface::ReflSugar{nullptr}, from(start));
      case Tok::KwJ: {
        advance();
        auto hole = make_surface(surface::Hole{}, last_end_);
        return make_surface(surface::JSugar{hole, hole, hole}, from(start));
      }
      case Tok::LParen: {
        advance();
        SurfacePtr inner = term();
        expect(Tok::RParen);
        return inner;
      }
      default:
        fail({"term"});
    }
  }

  std::vector<Token> tokens_;
  std::string file_;
  std::size_t pos_ = 0;
  SourceSpan last_end_;
};

}  // namespace

std::vector<SurfaceDecl> parse_file(std::string_view input,
                                    const std::string& file) {
  return Parser(input, file).file();
}

SurfacePtr parse_term(std::string_view input, const std::string& file) {
  return Parser(input, file).whole_term();
}

}  // namespace hpt
