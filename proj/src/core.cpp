#include "hpt/core.hpp"

#include "hpt/overloaded.hpp"

namespace hpt {

TermPtr mk_var(unsigned index) {
  return std::make_shared<const Term>(term::Var{index});
}
TermPtr mk_global(std::string name) {
  return std::make_shared<const Term>(term::Global{std::move(name)});
}
TermPtr mk_lam(std::string hint, TermPtr body, Icit icit) {
  return std::make_shared<const Term>(
      term::Lam{std::move(hint), icit, std::move(body)});
}
TermPtr mk_app(TermPtr fn, TermPtr arg, Icit icit) {
  return std::make_shared<const Term>(
      term::App{std::move(fn), std::move(arg), icit});
}
TermPtr mk_pi(std::string hint, TermPtr domain, TermPtr codomain, Icit icit) {
  return std::make_shared<const Term>(
      term::Pi{std::move(hint), icit, std::move(domain), std::move(codomain)});
}
TermPtr mk_type(unsigned level) {
  return std::make_shared<const Term>(term::Type{Level{level}});
}
TermPtr mk_id(TermPtr type, TermPtr lhs, TermPtr rhs) {
  return std::make_shared<const Term>(
      term::Id{std::move(type), std::move(lhs), std::move(rhs)});
}
TermPtr mk_refl(TermPtr point) {
  return std::make_shared<const Term>(term::Refl{std::move(point)});
}
TermPtr mk_j(TermPtr motive, TermPtr base, TermPtr endpoint, TermPtr path) {
  return std::make_shared<const Term>(term::J{std::move(motive), std::move(base),
                                              std::move(endpoint),
                                              std::move(path)});
}
TermPtr mk_meta(unsigned id) {
  return std::make_shared<const Term>(term::Meta{id});
}

bool alpha_eq(const Term& a, const Term& b) {
  if (&a == &b) return true;
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      overloaded{
          [&](const term::Var& x) { return x.index == b.as<term::Var>()->index; },
          [&](const term::Global& x) {
            return x.name == b.as<term::Global>()->name;
          },
          [&](const term::Lam& x) {
            return alpha_eq(*x.body, *b.as<term::Lam>()->body);
          },
          [&](const term::App& x) {
            const auto& y = *b.as<term::App>();
            return alpha_eq(*x.fn, *y.fn) && alpha_eq(*x.arg, *y.arg);
          },
          [&](const term::Pi& x) {
            const auto& y = *b.as<term::Pi>();
            return alpha_eq(*x.domain, *y.domain) &&
                   alpha_eq(*x.codomain, *y.codomain);
          },
          [&](const term::Type& x) {
            return x.level == b.as<term::Type>()->level;
          },
          [&](const term::Id& x) {
            const auto& y = *b.as<term::Id>();
            return alpha_eq(*x.type, *y.type) && alpha_eq(*x.lhs, *y.lhs) &&
                   alpha_eq(*x.rhs, *y.rhs);
          },
          [&](const term::Refl& x) {
            return alpha_eq(*x.point, *b.as<term::Refl>()->point);
          },
          [&](const term::J& x) {
            const auto& y = *b.as<term::J>();
            return alpha_eq(*x.motive, *y.motive) &&
                   alpha_eq(*x.base, *y.base) &&
                   alpha_eq(*x.endpoint, *y.endpoint) &&
                   alpha_eq(*x.path, *y.path);
          },
          [&](const term::Meta& x) { return x.id == b.as<term::Meta>()->id; },
      },
      a.node());
}

namespace {

TermPtr shift_at(const TermPtr& t, unsigned cutoff, unsigned amount) {
  return std::visit(
      overloaded{
          [&](const term::Var& x) -> TermPtr {
            return x.index >= cutoff ? mk_var(x.index + amount) : t;
          },
          [&](const term::Global&) -> TermPtr { return t; },
          [&](const term::Type&) -> TermPtr { return t; },
          [&](const term::Meta&) -> TermPtr { return t; },
          [&](const term::Lam& x) -> TermPtr {
            return mk_lam(x.hint, shift_at(x.body, cutoff + 1, amount), x.icit);
          },
          [&](const term::App& x) -> TermPtr {
            return mk_app(shift_at(x.fn, cutoff, amount),
                          shift_at(x.arg, cutoff, amount), x.icit);
          },
          [&](const term::Pi& x) -> TermPtr {
            return mk_pi(x.hint, shift_at(x.domain, cutoff, amount),
                         shift_at(x.codomain, cutoff + 1, amount), x.icit);
          },
          [&](const term::Id& x) -> TermPtr {
            return mk_id(shift_at(x.type, cutoff, amount),
                         shift_at(x.lhs, cutoff, amount),
                         shift_at(x.rhs, cutoff, amount));
          },
          [&](const term::Refl& x) -> TermPtr {
            return mk_refl(shift_at(x.point, cutoff, amount));
          },
          [&](const term::J& x) -> TermPtr {
            return mk_j(shift_at(x.motive, cutoff, amount),
                        shift_at(x.base, cutoff, amount),
                        shift_at(x.endpoint, cutoff, amount),
                        shift_at(x.path, cutoff, amount));
          },
      },
      t->node());
}

}  // namespace

TermPtr shift(const TermPtr& t, unsigned cutoff, unsigned amount) {
  if (amount == 0) return t;
  return shift_at(t, cutoff, amount);
}

bool is_closed(const Term& t, unsigned depth) {
  return std::visit(
      overloaded{
          [&](const term::Var& x) { return x.index < depth; },
          [&](const term::Global&) { return true; },
          [&](const term::Type&) { return true; },
          [&](const term::Meta&) { return true; },
          [&](const term::Lam& x) { return is_closed(*x.body, depth + 1); },
          [&](const term::App& x) {
            return is_closed(*x.fn, depth) && is_closed(*x.arg, depth);
          },
          [&](const term::Pi& x) {
            return is_closed(*x.domain, depth) &&
                   is_closed(*x.codomain, depth + 1);
          },
          [&](const term::Id& x) {
            return is_closed(*x.type, depth) && is_closed(*x.lhs, depth) &&
                   is_closed(*x.rhs, depth);
          },
          [&](const term::Refl& x) { return is_closed(*x.point, depth); },
          [&](const term::J& x) {
            return is_closed(*x.motive, depth) && is_closed(*x.base, depth) &&
                   is_closed(*x.endpoint, depth) && is_closed(*x.path, depth);
          },
      },
      t.node());
}

std::optional<unsigned> first_meta(const Term& t) {
  std::optional<unsigned> found;
  auto go = [&](auto&& self, const Term& u) -> void {
    if (found) return;
    std::visit(overloaded{
                   [&](const term::Meta& x) { found = x.id; },
                   [&](const term::Var&) {},
                   [&](const term::Global&) {},
                   [&](const term::Type&) {},
                   [&](const term::Lam& x) { self(self, *x.body); },
                   [&](const term::App& x) {
                     self(self, *x.fn);
                     self(self, *x.arg);
                   },
                   [&](const term::Pi& x) {
                     self(self, *x.domain);
                     self(self, *x.codomain);
                   },
                   [&](const term::Id& x) {
                     self(self, *x.type);
                     self(self, *x.lhs);
                     self(self, *x.rhs);
                   },
                   [&](const term::Refl& x) { self(self, *x.point); },
                   [&](const term::J& x) {
                     self(self, *x.motive);
                     self(self, *x.base);
                     self(self, *x.endpoint);
                     self(self, *x.path);
                   },
               },
               u.node());
  };
  go(go, t);
  return found;
}

bool contains_meta(const Term& t) { return first_meta(t).has_value(); }

std::size_t term_size(const Term& t) {
  return std::visit(
      overloaded{
          [](const term::Var&) -> std::size_t { return 1; },
          [](const term::Global&) -> std::size_t { return 1; },
          [](const term::Type&) -> std::size_t { return 1; },
          [](const term::Meta&) -> std::size_t { return 1; },
          [](const term::Lam& x) { return 1 + term_size(*x.body); },
          [](const term::App& x) {
            return 1 + term_size(*x.fn) + term_size(*x.arg);
          },
          [](const term::Pi& x) {
            return 1 + term_size(*x.domain) + term_size(*x.codomain);
          },
          [](const term::Id& x) {
            return 1 + term_size(*x.type) + term_size(*x.lhs) +
                   term_size(*x.rhs);
          },
          [](const term::Refl& x) { return 1 + term_size(*x.point); },
          [](const term::J& x) {
            return 1 + term_size(*x.motive) + term_size(*x.base) +
                   term_size(*x.endpoint) + term_size(*x.path);
          },
      },
      t.node());
}

}  // namespace hpt
