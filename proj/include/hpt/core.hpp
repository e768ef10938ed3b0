#pragma once

// Kernel term language: nameless (de Bruijn indexed) terms for a small
// intensional type theory with Pi types, a non-cumulative universe hierarchy
// and identity types eliminated by based path induction.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hpt {

struct Level {
  unsigned index = 0;
  auto operator<=>(const Level&) const = default;
};

// Plicity is elaboration metadata; the kernel ignores it just like binder
// name hints.
enum class Icit : std::uint8_t { Explicit, Implicit };

class Term;
using TermPtr = std::shared_ptr<const Term>;

namespace term {
struct Var {
  unsigned index;
};
struct Global {
  std::string name;
};
struct Lam {
  std::string hint;
  Icit icit;
  TermPtr body;
};
struct App {
  TermPtr fn;
  TermPtr arg;
  Icit icit;
};
struct Pi {
  std::string hint;
  Icit icit;
  TermPtr domain;
  TermPtr codomain;
};
struct Type {
  Level level;
};
struct Id {
  TermPtr type;
  TermPtr lhs;
  TermPtr rhs;
};
struct Refl {
  TermPtr point;
};
// Based path induction. The motive binds (endpoint, path); `endpoint` is the
// free right endpoint of `path` and is ignored by evaluation.
struct J {
  TermPtr motive;
  TermPtr base;
  TermPtr endpoint;
  TermPtr path;
};
// Metavariable reference. Only the elaborator produces these; the kernel
// rejects any term that still contains one.
struct Meta {
  unsigned id;
};
}  // namespace term

class Term {
 public:
  using Node = std::variant<term::Var, term::Global, term::Lam, term::App,
                            term::Pi, term::Type, term::Id, term::Refl,
                            term::J, term::Meta>;

  explicit Term(Node node) : node_(std::move(node)) {}

  const Node& node() const { return node_; }

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node_);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(node_);
  }

 private:
  Node node_;
};

TermPtr mk_var(unsigned index);
TermPtr mk_global(std::string name);
TermPtr mk_lam(std::string hint, TermPtr body, Icit icit = Icit::Explicit);
TermPtr mk_app(TermPtr fn, TermPtr arg, Icit icit = Icit::Explicit);
TermPtr mk_pi(std::string hint, TermPtr domain, TermPtr codomain,
              Icit icit = Icit::Explicit);
TermPtr mk_type(unsigned level = 0);
TermPtr mk_id(TermPtr type, TermPtr lhs, TermPtr rhs);
TermPtr mk_refl(TermPtr point);
TermPtr mk_j(TermPtr motive, TermPtr base, TermPtr endpoint, TermPtr path);
TermPtr mk_meta(unsigned id);

struct CoreDecl {
  std::string name;
  TermPtr type;
  TermPtr body;  // null for axioms
};

// Structural equality ignoring binder hints and plicity.
bool alpha_eq(const Term& a, const Term& b);
inline bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  return alpha_eq(*a, *b);
}

// Adds `amount` to every free index >= cutoff.
TermPtr shift(const TermPtr& t, unsigned cutoff, unsigned amount);

// True iff no variable index escapes `depth` enclosing binders.
bool is_closed(const Term& t, unsigned depth = 0);
bool contains_meta(const Term& t);
// First metavariable id occurring in t, if any.
std::optional<unsigned> first_meta(const Term& t);

std::size_t term_size(const Term& t);

struct PrettyOptions {
  // Render `concat`/`par-concat` applications with infix operators and hide
  // implicit arguments. Sugar-free output reparses to an alpha-equal term.
  bool sugar = false;
};

// Renders t as surface syntax. `names[i]` names de Bruijn index i (innermost
// binder first).
std::string pretty(const TermPtr& t, const std::vector<std::string>& names = {},
                   PrettyOptions options = {});

bool is_identifier(const std::string& s);
bool is_keyword(const std::string& s);

}  // namespace hpt
