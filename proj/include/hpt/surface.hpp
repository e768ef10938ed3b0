#pragma once

// Surface language: tokens, span-carrying parse trees, the parser and the
// surface printer.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hpt/core.hpp"
#include "hpt/error.hpp"

namespace hpt {

enum class Tok {
  KwDef,
  KwAxiom,
  KwFun,
  KwType,
  KwRefl,
  KwJ,
  HashCheck,
  HashEval,
  HashAssert,
  Ident,
  Nat,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Colon,
  ColonEq,
  Arrow,
  FatArrow,
  Eq,
  Star,
  StarStar,
  Tilde,
  At,
  Underscore,
  Eof,
};

const char* to_string(Tok kind);

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
  std::size_t offset = 0;  // byte offset of the lexeme in the input
};

// Whitespace and `--` comments are dropped. The returned list has no Eof
// token.
std::vector<Token> lex(std::string_view input, const std::string& file = "<input>");

class Surface;
using SurfacePtr = std::shared_ptr<const Surface>;

struct Binder {
  std::vector<std::string> names;
  SurfacePtr annotation;  // null when the binder is a bare name
  Icit icit = Icit::Explicit;
  SourceSpan span;
};

namespace surface {
struct Name {
  std::string name;
  bool explicit_all = false;  // `@name`: no implicit insertion
};
struct Hole {};
struct TypeU {
  unsigned level = 0;
};
struct Lam {
  std::vector<Binder> binders;
  SurfacePtr body;
};
struct Pi {
  std::vector<Binder> binders;
  SurfacePtr codomain;
};
struct Arrow {
  SurfacePtr domain;
  SurfacePtr codomain;
};
struct App {
  SurfacePtr fn;
  SurfacePtr arg;
};
struct IdSugar {
  SurfacePtr lhs;
  SurfacePtr rhs;
};
struct ReflSugar {
  SurfacePtr point;  // null for bare `refl`
};
struct JSugar {
  SurfacePtr motive;
  SurfacePtr base;
  SurfacePtr path;
};
}  // namespace surface

class Surface {
 public:
  using Node = std::variant<surface::Name, surface::Hole, surface::TypeU,
                            surface::Lam, surface::Pi, surface::Arrow,
                            surface::App, surface::IdSugar, surface::ReflSugar,
                            surface::JSugar>;

  Surface(Node node, SourceSpan span)
      : node_(std::move(node)), span_(std::move(span)) {}

  const Node& node() const { return node_; }
  const SourceSpan& span() const { return span_; }

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node_);
  }

 private:
  Node node_;
  SourceSpan span_;
};

template <class T>
SurfacePtr make_surface(T node, SourceSpan span = {}) {
  return std::make_shared<const Surface>(Surface::Node(std::move(node)),
                                         std::move(span));
}

namespace decl {
struct Def {
  std::string name;
  std::vector<Binder> binders;
  SurfacePtr type;
  SurfacePtr body;
};
struct Axiom {
  std::string name;
  std::vector<Binder> binders;
  SurfacePtr type;
};
struct Check {
  SurfacePtr term;
};
struct Eval {
  SurfacePtr term;
};
struct AssertDefeq {
  SurfacePtr lhs;
  SurfacePtr rhs;
  SurfacePtr type;
};
}  // namespace decl

struct SurfaceDecl {
  std::variant<decl::Def, decl::Axiom, decl::Check, decl::Eval,
               decl::AssertDefeq>
      node;
  SourceSpan span;

  // Declared name for Def/Axiom, empty otherwise.
  std::string name() const;
};

std::vector<SurfaceDecl> parse_file(std::string_view input,
                                    const std::string& file = "<input>");
SurfacePtr parse_term(std::string_view input, const std::string& file = "<input>");

std::string print_surface(const SurfacePtr& t);
std::string print_decl(const SurfaceDecl& d);

// Structural equality that ignores spans and how binder names are grouped.
bool surface_eq(const SurfacePtr& a, const SurfacePtr& b);

}  // namespace hpt
