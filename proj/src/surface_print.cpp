#include <string>

#include "hpt/overloaded.hpp"
#include "hpt/surface.hpp"

namespace hpt {

namespace {

enum Prec : int { kTerm = 0, kEq = 1, kStar = 2, kStarStar = 3, kApp = 4, kAtom = 5 };

std::string paren(bool wrap, std::string s) { return wrap ? "(" + s + ")" : s; }

std::string print(const SurfacePtr& t, int prec);

std::string print_binder(const Binder& b) {
  std::string names;
  for (const auto& n : b.names) names += (names.empty() ? "" : " ") + n;
  if (!b.annotation) return names;
  std::string inner = names + " : " + print(b.annotation, kTerm);
  return b.icit == Icit::Implicit ? "{" + inner + "}" : "(" + inner + ")";
}

// Recognizes `App(App(Name op, lhs), rhs)` for the two infix operators.
const char* infix_of(const surface::App& app, SurfacePtr& lhs, SurfacePtr& rhs) {
  const auto* inner = app.fn->as<surface::App>();
  if (!inner) return nullptr;
  const auto* name = inner->fn->as<surface::Name>();
  if (!name || name->explicit_all) return nullptr;
  lhs = inner->arg;
  rhs = app.arg;
  if (name->name == "concat") return "*";
  if (name->name == "par-concat") return "**";
  return nullptr;
}

std::string print(const SurfacePtr& t, int prec) {
  return std::visit(
      overloaded{
          [&](const surface::Name& n) {
            return (n.explicit_all ? "@" : "") + n.name;
          },
          [&](const surface::Hole&) { return std::string("_"); },
          [&](const surface::TypeU& u) {
            if (u.level == 0) return std::string("Type");
            return paren(prec > kApp, "Type " + std::to_string(u.level));
          },
          [&](const surface::Lam& l) {
            std::string out = "fun";
            for (const auto& b : l.binders) out += " " + print_binder(b);
            out += " => " + print(l.body, kTerm);
            return paren(prec > kTerm, out);
          },
          [&](const surface::Pi& p) {
            std::string out;
            for (const auto& b : p.binders) out += print_binder(b) + " ";
            out += "-> " + print(p.codomain, kTerm);
            return paren(prec > kTerm, out);
          },
          [&](const surface::Arrow& a) {
            return paren(prec > kTerm, print(a.domain, kStar) + " -> " +
                                           print(a.codomain, kTerm));
          },
          [&](const surface::App& a) {
            SurfacePtr lhs, rhs;
            if (const char* op = infix_of(a, lhs, rhs)) {
              if (op[1] == '*')
                return paren(prec > kStarStar, print(lhs, kStarStar) + " ** " +
                                                   print(rhs, kApp));
              return paren(prec > kStar,
                           print(lhs, kStar) + " * " + print(rhs, kStarStar));
            }
            std::string fn;
            const auto* refl = a.fn->as<surface::ReflSugar>();
            if (refl && !refl->point)
              fn = "(refl)";
            else
              fn = print(a.fn, kApp);
            return paren(prec > kApp, fn + " " + print(a.arg, kAtom));
          },
          [&](const surface::IdSugar& e) {
            return paren(prec > kEq,
                         print(e.lhs, kStar) + " = " + print(e.rhs, kStar));
          },
          [&](const surface::ReflSugar& r) {
            if (!r.point) return std::string("refl");
            return paren(prec > kApp, "refl " + print(r.point, kAtom));
          },
          [&](const surface::JSugar& j) {
            return paren(prec > kApp, "J " + print(j.motive, kAtom) + " " +
                                          print(j.base, kAtom) + " " +
                                          print(j.path, kAtom));
          },
      },
      t->node());
}

struct FlatBinder {
  std::string name;
  SurfacePtr annotation;
  Icit icit;
};

std::vector<FlatBinder> flatten(const std::vector<Binder>& binders) {
  std::vector<FlatBinder> out;
  for (const auto& b : binders)
    for (const auto& n : b.names) out.push_back({n, b.annotation, b.icit});
  return out;
}

bool binders_eq(const std::vector<Binder>& a, const std::vector<Binder>& b) {
  auto fa = flatten(a), fb = flatten(b);
  if (fa.size() != fb.size()) return false;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    if (fa[i].name != fb[i].name || fa[i].icit != fb[i].icit) return false;
    if (!fa[i].annotation != !fb[i].annotation) return false;
    if (fa[i].annotation && !surface_eq(fa[i].annotation, fb[i].annotation))
      return false;
  }
  return true;
}

bool opt_eq(const SurfacePtr& a, const SurfacePtr& b) {
  if (!a || !b) return !a && !b;
  return surface_eq(a, b);
}

}  // namespace

bool surface_eq(const SurfacePtr& a, const SurfacePtr& b) {
  if (a->node().index() != b->node().index()) return false;
  return std::visit(
      overloaded{
          [&](const surface::Name& x) {
            const auto& y = *b->as<surface::Name>();
            return x.name == y.name && x.explicit_all == y.explicit_all;
          },
          [&](const surface::Hole&) { return true; },
          [&](const surface::TypeU& x) {
            return x.level == b->as<surface::TypeU>()->level;
          },
          [&](const surface::Lam& x) {
            const auto& y = *b->as<surface::Lam>();
            return binders_eq(x.binders, y.binders) && surface_eq(x.body, y.body);
          },
          [&](const surface::Pi& x) {
            const auto& y = *b->as<surface::Pi>();
            return binders_eq(x.binders, y.binders) &&
                   surface_eq(x.codomain, y.codomain);
          },
          [&](const surface::Arrow& x) {
            const auto& y = *b->as<surface::Arrow>();
            return surface_eq(x.domain, y.domain) &&
                   surface_eq(x.codomain, y.codomain);
          },
          [&](const surface::App& x) {
            const auto& y = *b->as<surface::App>();
            return surface_eq(x.fn, y.fn) && surface_eq(x.arg, y.arg);
          },
          [&](const surface::IdSugar& x) {
            const auto& y = *b->as<surface::IdSugar>();
            return surface_eq(x.lhs, y.lhs) && surface_eq(x.rhs, y.rhs);
          },
          [&](const surface::ReflSugar& x) {
            return opt_eq(x.point, b->as<surface::ReflSugar>()->point);
          },
          [&](const surface::JSugar& x) {
            const auto& y = *b->as<surface::JSugar>();
            return surface_eq(x.motive, y.motive) && surface_eq(x.base, y.base) &&
                   surface_eq(x.path, y.path);
          },
      },
      a->node());
}

std::string print_surface(const SurfacePtr& t) { return print(t, kTerm); }

std::string print_decl(const SurfaceDecl& d) {
  return std::visit(
      overloaded{
          [](const decl::Def& x) {
            std::string out = "def " + x.name;
            for (const auto& b : x.binders) out += " " + print_binder(b);
            return out + " : " + print(x.type, kTerm) + " := " +
                   print(x.body, kTerm);
          },
          [](const decl::Axiom& x) {
            std::string out = "axiom " + x.name;
            for (const auto& b : x.binders) out += " " + print_binder(b);
            return out + " : " + print(x.type, kTerm);
          },
          [](const decl::Check& x) { return "#check " + print(x.term, kTerm); },
          [](const decl::Eval& x) { return "#eval " + print(x.term, kTerm); },
          [](const decl::AssertDefeq& x) {
            return "#assert defeq " + print(x.lhs, kTerm) + " ~ " +
                   print(x.rhs, kTerm) + " : " + print(x.type, kTerm);
          },
      },
      d.node);
}

}  // namespace hpt
