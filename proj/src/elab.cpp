#include "hpt/elab.hpp"

#include <algorithm>
#include <map>

#include "hpt/overloaded.hpp"

namespace hpt {

unsigned MetaStore::fresh(SourceSpan span, unsigned depth) {
  entries_.push_back(Entry{std::move(span), depth, std::nullopt});
  return static_cast<unsigned>(entries_.size() - 1);
}

const Val* MetaStore::solution(unsigned id) const {
  if (id >= entries_.size() || !entries_[id].solution) return nullptr;
  return &*entries_[id].solution;
}

void MetaStore::solve(unsigned id, Val v) {
  entries_.at(id).solution = std::move(v);
  trail_.push_back(id);
}

void MetaStore::rollback(std::size_t mark) {
  while (trail_.size() > mark) {
    entries_[trail_.back()].solution.reset();
    trail_.pop_back();
  }
}

namespace {

struct Ctx {
  Env env;
  std::vector<Val> types;
  std::vector<std::string> names;
  std::vector<bool> visible;

  unsigned depth() const { return static_cast<unsigned>(types.size()); }

  Ctx bind(const std::string& name, Val type, bool is_visible = true) const {
    Ctx out = *this;
    out.env = env_extend(env, vvar(depth()));
    out.types.push_back(std::move(type));
    out.names.push_back(name);
    out.visible.push_back(is_visible && name != "_");
    return out;
  }

  std::vector<std::string> pretty_names() const {
    return {names.rbegin(), names.rend()};
  }
};

struct FlatBinder {
  std::string name;
  SurfacePtr annotation;
  Icit icit;
  SourceSpan span;
};

std::vector<FlatBinder> flatten(const std::vector<Binder>& binders) {
  std::vector<FlatBinder> out;
  for (const auto& b : binders)
    for (const auto& n : b.names) out.push_back({n, b.annotation, b.icit, b.span});
  return out;
}

struct Inferred {
  TermPtr term;
  Val type;
};

// Partial renaming from the context of a constraint to the parameters of
// a metavariable solution.
struct Renaming {
  unsigned dom = 0;
  unsigned cod = 0;
  std::map<unsigned, unsigned> ren;

  Renaming lift() const {
    Renaming r = *this;
    r.ren[cod] = dom;
    ++r.dom;
    ++r.cod;
    return r;
  }
};

[[noreturn]] void unify_fail(const std::string& msg) {
  throw Error(ErrorKind::UnifyFailure, {}, msg);
}

class Elab {
 public:
  Elab(const GlobalEnv& globals, StepBudget& budget, MetaStore& metas)
      : globals_(globals), metas_(metas), ev_(globals, budget, &metas) {}

  Evaluator& ev() { return ev_; }
  MetaStore& metas() { return metas_; }

  std::string show(const Ctx& ctx, const Val& v) {
    return pretty(ev_.quote(ctx.depth(), v, Unfold::None), ctx.pretty_names(),
                  {.sugar = true});
  }

  // ---- metavariables ---------------------------------------------------

  TermPtr fresh_meta(const Ctx& ctx, const SourceSpan& span) {
    unsigned id = metas_.fresh(span, ctx.depth());
    TermPtr t = mk_meta(id);
    for (unsigned level = 0; level < ctx.depth(); ++level)
      t = mk_app(t, mk_var(ctx.depth() - level - 1));
    return t;
  }

  Val fresh_meta_value(const Ctx& ctx, const SourceSpan& span) {
    return ev_.eval(ctx.env, fresh_meta(ctx, span));
  }

  // ---- unification ----------------------------------------------------------

  Renaming invert(unsigned depth, const Spine& spine) {
    Renaming r;
    r.cod = depth;
    for (const auto& e : spine) {
      if (e.kind != Elim::Kind::App)
        unify_fail("metavariable is stuck under path induction");
      Val a = ev_.force_metas(e.arg);
      const auto* rig = a->as<value::Rigid>();
      if (!rig || rig->head.kind != Head::Kind::Local || !rig->spine.empty())
        unify_fail("metavariable applied to a non-variable argument");
      if (r.ren.count(rig->head.level))
        unify_fail("metavariable applied to a repeated variable");
      r.ren[rig->head.level] = r.dom++;
    }
    return r;
  }

  TermPtr rename_spine(unsigned m, const Renaming& r, TermPtr head,
                       const Spine& spine) {
    for (const auto& e : spine) {
      if (e.kind == Elim::Kind::App) {
        head = mk_app(head, rename(m, r, e.arg), e.icit);
      } else {
        head = mk_j(rename(m, r, e.motive), rename(m, r, e.base),
                    rename(m, r, e.endpoint), head);
      }
    }
    return head;
  }

  TermPtr rename(unsigned m, const Renaming& r, const Val& v0) {
    ev_.budget().tick();
    Val v = ev_.force_metas(v0);
    return std::visit(
        overloaded{
            [&](const value::Flex& x) -> TermPtr {
              if (x.meta == m)
                throw Error(ErrorKind::OccursCheck, {},
                            "metavariable ?" + std::to_string(m) +
                                " occurs in its own solution");
              return rename_spine(m, r, mk_meta(x.meta), x.spine);
            },
            [&](const value::Rigid& x) -> TermPtr {
              TermPtr head;
              if (x.head.kind == Head::Kind::Axiom) {
                head = mk_global(x.head.name);
              } else {
                auto it = r.ren.find(x.head.level);
                if (it == r.ren.end())
                  unify_fail("variable escapes the scope of a metavariable");
                head = mk_var(r.dom - it->second - 1);
              }
              return rename_spine(m, r, head, x.spine);
            },
            [&](const value::Glued& x) -> TermPtr {
              std::size_t mark = metas_.mark();
              try {
                return rename_spine(m, r, mk_global(x.name), x.spine);
              } catch (const Error& e) {
                if (e.kind() != ErrorKind::UnifyFailure) throw;
                metas_.rollback(mark);
                return rename(m, r, x.unfolded->force(ev_));
              }
            },
            [&](const value::Lam& x) -> TermPtr {
              return mk_lam(x.hint,
                            rename(m, r.lift(),
                                   ev_.apply_closure(x.body, vvar(r.cod))),
                            x.icit);
            },
            [&](const value::Pi& x) -> TermPtr {
              return mk_pi(x.hint, rename(m, r, x.domain),
                           rename(m, r.lift(),
                                  ev_.apply_closure(x.codomain, vvar(r.cod))),
                           x.icit);
            },
            [&](const value::Type& x) -> TermPtr {
              return mk_type(x.level.index);
            },
            [&](const value::Id& x) -> TermPtr {
              return mk_id(rename(m, r, x.type), rename(m, r, x.lhs),
                           rename(m, r, x.rhs));
            },
            [&](const value::Refl& x) -> TermPtr {
              return mk_refl(rename(m, r, x.point));
            },
        },
        v->node());
  }

  void solve(unsigned depth, unsigned m, const Spine& spine, const Val& rhs) {
    Renaming r = invert(depth, spine);
    TermPtr body = rename(m, r, rhs);
    for (auto it = spine.rbegin(); it != spine.rend(); ++it)
      body = mk_lam("x" + std::to_string(r.dom--), body, it->icit);
    metas_.solve(m, ev_.eval(nullptr, body));
  }

  static bool recoverable(const Error& e) {
    return e.kind() == ErrorKind::UnifyFailure || e.kind() == ErrorKind::OccursCheck;
  }

  // Unifies the pairs left to right. A pair that fails is retried once after
  // the others, since their solutions may make it solvable.
  void unify_all(unsigned depth, const std::vector<std::pair<Val, Val>>& pairs) {
    std::vector<std::size_t> deferred;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      std::size_t mark = metas_.mark();
      try {
        unify(depth, pairs[i].first, pairs[i].second);
      } catch (const Error& e) {
        if (!recoverable(e) || i + 1 == pairs.size()) throw;
        metas_.rollback(mark);
        deferred.push_back(i);
      }
    }
    for (std::size_t i : deferred) unify(depth, pairs[i].first, pairs[i].second);
  }

  void unify_spine(unsigned depth, const Spine& a, const Spine& b) {
    if (a.size() != b.size()) unify_fail("spines differ in length");
    std::vector<std::pair<Val, Val>> pairs;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].kind != b[i].kind) unify_fail("spines differ");
      if (a[i].kind == Elim::Kind::App) {
        pairs.emplace_back(a[i].arg, b[i].arg);
      } else {
        pairs.emplace_back(a[i].motive, b[i].motive);
        pairs.emplace_back(a[i].base, b[i].base);
      }
    }
    unify_all(depth, pairs);
  }

  void unify(unsigned depth, const Val& a0, const Val& b0) {
    ev_.budget().tick();
    Val a = ev_.force_metas(a0);
    Val b = ev_.force_metas(b0);
    if (a == b) return;

    const auto* fa = a->as<value::Flex>();
    const auto* fb = b->as<value::Flex>();
    if (fa && fb && fa->meta == fb->meta) {
      unify_spine(depth, fa->spine, fb->spine);
      return;
    }
    if (fa) {
      try {
        solve(depth, fa->meta, fa->spine, b);
        return;
      } catch (const Error& e) {
        if (!fb || e.kind() != ErrorKind::UnifyFailure) throw;
      }
    }
    if (fb) {
      solve(depth, fb->meta, fb->spine, a);
      return;
    }

    const auto* ga = a->as<value::Glued>();
    const auto* gb = b->as<value::Glued>();
    if (ga && gb) {
      if (ga->name == gb->name) {
        std::size_t mark = metas_.mark();
        try {
          unify_spine(depth, ga->spine, gb->spine);
          return;
        } catch (const Error& e) {
          if (!recoverable(e)) throw;
          metas_.rollback(mark);
        }
      }
      if (ga->order >= gb->order)
        unify(depth, ga->unfolded->force(ev_), b);
      else
        unify(depth, a, gb->unfolded->force(ev_));
      return;
    }
    if (ga) return unify(depth, ga->unfolded->force(ev_), b);
    if (gb) return unify(depth, a, gb->unfolded->force(ev_));

    const auto* la = a->as<value::Lam>();
    const auto* lb = b->as<value::Lam>();
    if (la || lb) {
      Val x = vvar(depth);
      Val ba = la ? ev_.apply_closure(la->body, x) : ev_.apply(a, x, lb->icit);
      Val bb = lb ? ev_.apply_closure(lb->body, x) : ev_.apply(b, x, la->icit);
      unify(depth + 1, ba, bb);
      return;
    }

    bool ok = std::visit(
        overloaded{
            [&](const value::Pi& x) {
              const auto* y = b->as<value::Pi>();
              if (!y || x.icit != y->icit) return false;
              unify(depth, x.domain, y->domain);
              Val v = vvar(depth);
              unify(depth + 1, ev_.apply_closure(x.codomain, v),
                    ev_.apply_closure(y->codomain, v));
              return true;
            },
            [&](const value::Type& x) {
              const auto* y = b->as<value::Type>();
              return y && x.level == y->level;
            },
            [&](const value::Id& x) {
              const auto* y = b->as<value::Id>();
              if (!y) return false;
              unify_all(depth, {{x.type, y->type}, {x.lhs, y->lhs}, {x.rhs, y->rhs}});
              return true;
            },
            [&](const value::Refl& x) {
              const auto* y = b->as<value::Refl>();
              if (!y) return false;
              unify(depth, x.point, y->point);
              return true;
            },
            [&](const value::Rigid& x) {
              const auto* y = b->as<value::Rigid>();
              if (!y || !(x.head == y->head)) return false;
              unify_spine(depth, x.spine, y->spine);
              return true;
            },
            [&](const auto&) { return false; },
        },
        a->node());
    if (!ok) unify_fail("rigid mismatch");
  }

  void unify_or_mismatch(const Ctx& ctx, const Val& expected, const Val& found) {
    try {
      unify(ctx.depth(), expected, found);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnifyFailure &&
          e.kind() != ErrorKind::OccursCheck)
        throw;
      ErrorKind kind = e.kind() == ErrorKind::OccursCheck
                           ? ErrorKind::OccursCheck
                           : ErrorKind::TypeMismatch;
      throw Error(kind, {}, "type mismatch",
                  {"expected: " + show(ctx, expected),
                   "found:    " + show(ctx, found)});
    }
  }

  // ---- universes ------------------------------------------------------------

  Val neutral_type(const Ctx& ctx, const Val& w) {
    const auto* r = w->as<value::Rigid>();
    if (!r) throw Error(ErrorKind::TypeMismatch, {}, "cannot determine a universe");
    Val ty;
    Val cur;
    if (r->head.kind == Head::Kind::Local) {
      ty = ctx.types.at(r->head.level);
      cur = vvar(r->head.level);
    } else {
      const GlobalEntry* g = globals_.find(r->head.name);
      ty = g->type_value;
      cur = g->value;
    }
    for (const auto& e : r->spine) {
      Val f = ev_.force(ty);
      if (e.kind == Elim::Kind::App) {
        const auto* pi = f->as<value::Pi>();
        if (!pi) break;
        ty = ev_.apply_closure(pi->codomain, e.arg);
        cur = ev_.apply(cur, e.arg, e.icit);
      } else {
        ty = ev_.apply(ev_.apply(e.motive, e.endpoint), cur);
        cur = ev_.j(e.motive, e.base, e.endpoint, cur);
      }
    }
    return ty;
  }

  unsigned universe_of(const Ctx& ctx, const Val& ty) {
    Val w = ev_.force(ty);
    if (const auto* u = w->as<value::Type>()) return u->level.index + 1;
    if (const auto* pi = w->as<value::Pi>()) {
      Ctx inner = ctx.bind(pi->hint, pi->domain, false);
      return std::max(universe_of(ctx, pi->domain),
                      universe_of(inner, ev_.apply_closure(pi->codomain,
                                                           vvar(ctx.depth()))));
    }
    if (const auto* id = w->as<value::Id>()) return universe_of(ctx, id->type);
    Val k = ev_.force(neutral_type(ctx, w));
    if (const auto* u = k->as<value::Type>()) return u->level.index;
    throw Error(ErrorKind::TypeMismatch, {}, "cannot determine a universe");
  }

  // ---- bidirectional elaboration -------------------------------------------

  Inferred insert_implicits(const Ctx& ctx, Inferred r, const SourceSpan& span) {
    while (true) {
      Val f = ev_.force(r.type);
      const auto* pi = f->as<value::Pi>();
      if (!pi || pi->icit != Icit::Implicit) return r;
      TermPtr m = fresh_meta(ctx, span);
      r.term = mk_app(r.term, m, Icit::Implicit);
      r.type = ev_.apply_closure(pi->codomain, ev_.eval(ctx.env, m));
    }
  }

  std::pair<TermPtr, unsigned> infer_type_of(const Ctx& ctx, const SurfacePtr& s) {
    Inferred r = infer(ctx, s);
    Val f = ev_.force(r.type);
    if (const auto* u = f->as<value::Type>()) return {r.term, u->level.index};
    throw Error(ErrorKind::TypeMismatch, s->span(), "expected a type",
                {"found a term of type " + show(ctx, r.type)});
  }

  static bool explicit_head(const SurfacePtr& s) {
    const Surface* cur = s.get();
    while (const auto* app = cur->as<surface::App>()) cur = app->fn.get();
    const auto* n = cur->as<surface::Name>();
    return n && n->explicit_all;
  }

  Inferred infer(const Ctx& ctx, const SurfacePtr& s) {
    try {
      return infer_inner(ctx, s);
    } catch (Error& e) {
      e.set_span_if_missing(s->span());
      throw;
    }
  }

  Inferred infer_inner(const Ctx& ctx, const SurfacePtr& s) {
    ev_.budget().tick();
    return std::visit(
        overloaded{
            [&](const surface::Name& x) -> Inferred {
              for (unsigned i = ctx.depth(); i-- > 0;) {
                if (ctx.visible[i] && ctx.names[i] == x.name) {
                  Inferred r{mk_var(ctx.depth() - i - 1), ctx.types[i]};
                  return x.explicit_all ? r : insert_implicits(ctx, r, s->span());
                }
              }
              const GlobalEntry* g = globals_.find(x.name);
              if (!g)
                throw Error(ErrorKind::UnboundName, s->span(),
                            "unbound name '" + x.name + "'");
              Inferred r{mk_global(x.name), g->type_value};
              return x.explicit_all ? r : insert_implicits(ctx, r, s->span());
            },
            [&](const surface::Hole&) -> Inferred {
              Val ty = fresh_meta_value(ctx, s->span());
              return {fresh_meta(ctx, s->span()), ty};
            },
            [&](const surface::TypeU& x) -> Inferred {
              return {mk_type(x.level), vtype(x.level + 1)};
            },
            [&](const surface::Lam& x) -> Inferred {
              return infer_lam(ctx, flatten(x.binders), 0, x.body);
            },
            [&](const surface::Pi& x) -> Inferred {
              return infer_pi(ctx, flatten(x.binders), 0, x.codomain);
            },
            [&](const surface::Arrow& x) -> Inferred {
              auto [dom, i] = infer_type_of(ctx, x.domain);
              Ctx inner = ctx.bind("_", ev_.eval(ctx.env, dom), false);
              auto [cod, j] = infer_type_of(inner, x.codomain);
              return {mk_pi("_", dom, cod), vtype(std::max(i, j))};
            },
            [&](const surface::App& x) -> Inferred {
              bool all = explicit_head(x.fn);
              Inferred f = infer(ctx, x.fn);
              Val fty = ev_.force(f.type);
              const auto* pi = fty->as<value::Pi>();
              if (!pi || (!all && pi->icit != Icit::Explicit))
                throw Error(ErrorKind::TypeMismatch, x.fn->span(),
                            "applying a term that is not a function",
                            {"its type is " + show(ctx, f.type)});
              TermPtr arg = check(ctx, x.arg, pi->domain);
              Inferred r{mk_app(f.term, arg, pi->icit),
                         ev_.apply_closure(pi->codomain, ev_.eval(ctx.env, arg))};
              return all ? r : insert_implicits(ctx, r, s->span());
            },
            [&](const surface::IdSugar& x) -> Inferred {
              Inferred l = infer(ctx, x.lhs);
              TermPtr r = check(ctx, x.rhs, l.type);
              unsigned level = universe_of(ctx, l.type);
              return {mk_id(ev_.quote(ctx.depth(), l.type), l.term, r),
                      vtype(level)};
            },
            [&](const surface::ReflSugar& x) -> Inferred {
              Inferred p;
              if (x.point) {
                p = infer(ctx, x.point);
              } else {
                p.type = fresh_meta_value(ctx, s->span());
                p.term = fresh_meta(ctx, s->span());
              }
              Val pv = ev_.eval(ctx.env, p.term);
              return {mk_refl(p.term), make_value(value::Id{p.type, pv, pv})};
            },
            [&](const surface::JSugar& x) -> Inferred { return infer_j(ctx, x); },
        },
        s->node());
  }

  Inferred infer_lam(const Ctx& ctx, const std::vector<FlatBinder>& bs,
                     std::size_t i, const SurfacePtr& body) {
    if (i == bs.size()) return infer(ctx, body);
    const FlatBinder& b = bs[i];
    TermPtr dom = b.annotation ? infer_type_of(ctx, b.annotation).first
                               : fresh_meta(ctx, b.span);
    Val domv = ev_.eval(ctx.env, dom);
    Ctx inner = ctx.bind(b.name, domv);
    Inferred r = infer_lam(inner, bs, i + 1, body);
    TermPtr cod = ev_.quote(inner.depth(), r.type);
    return {mk_lam(b.name, r.term, b.icit),
            make_value(value::Pi{b.name, b.icit, domv, Closure{ctx.env, cod}})};
  }

  Inferred infer_pi(const Ctx& ctx, const std::vector<FlatBinder>& bs,
                    std::size_t i, const SurfacePtr& cod) {
    if (i == bs.size()) {
      auto [t, level] = infer_type_of(ctx, cod);
      return {t, vtype(level)};
    }
    const FlatBinder& b = bs[i];
    auto [dom, l1] = infer_type_of(ctx, b.annotation);
    Ctx inner = ctx.bind(b.name, ev_.eval(ctx.env, dom));
    Inferred rest = infer_pi(inner, bs, i + 1, cod);
    unsigned l2 = ev_.force(rest.type)->as<value::Type>()->level.index;
    return {mk_pi(b.name, dom, rest.term, b.icit), vtype(std::max(l1, l2))};
  }

  Inferred infer_j(const Ctx& ctx, const surface::JSugar& x) {
    Inferred path = infer(ctx, x.path);
    Val pty = ev_.force(path.type);
    if (pty->as<value::Flex>()) {
      Val X = fresh_meta_value(ctx, x.path->span());
      Val a = fresh_meta_value(ctx, x.path->span());
      Val b = fresh_meta_value(ctx, x.path->span());
      unify_or_mismatch(ctx, make_value(value::Id{X, a, b}), pty);
      pty = ev_.force(path.type);
    }
    const auto* id = pty->as<value::Id>();
    if (!id)
      throw Error(ErrorKind::TypeMismatch, x.path->span(),
                  "path induction on a term that is not a path",
                  {"its type is " + show(ctx, path.type)});
    Val X = id->type, a = id->lhs, b = id->rhs;

    TermPtr motive;
    const auto* lam = x.motive->as<surface::Lam>();
    std::vector<FlatBinder> bs;
    if (lam) bs = flatten(lam->binders);
    if (bs.size() >= 2) {
      Ctx c1 = bind_checked(ctx, bs[0], X);
      Val ety = make_value(value::Id{X, a, vvar(ctx.depth())});
      Ctx c2 = bind_checked(c1, bs[1], ety);
      TermPtr body;
      try {
        if (bs.size() == 2) {
          body = infer_type_of(c2, lam->body).first;
        } else {
          std::vector<Binder> rest;
          for (std::size_t k = 2; k < bs.size(); ++k)
            rest.push_back(Binder{{bs[k].name}, bs[k].annotation, bs[k].icit,
                                  bs[k].span});
          body = infer_type_of(
                     c2, make_surface(surface::Lam{rest, lam->body},
                                      lam->body->span()))
                     .first;
        }
      } catch (Error& e) {
        e.set_span_if_missing(x.motive->span());
        throw;
      }
      motive = mk_lam(bs[0].name, mk_lam(bs[1].name, body));
    } else if (x.motive->as<surface::Hole>()) {
      motive = fresh_meta(ctx, x.motive->span());
    } else {
      Inferred m = infer(ctx, x.motive);
      Val f1 = ev_.force(m.type);
      const auto* p1 = f1->as<value::Pi>();
      if (!p1)
        throw Error(ErrorKind::TypeMismatch, x.motive->span(),
                    "motive of path induction must be a function",
                    {"its type is " + show(ctx, m.type)});
      unify_or_mismatch(ctx, X, p1->domain);
      Ctx c1 = ctx.bind("y", X, false);
      Val f2 = ev_.force(ev_.apply_closure(p1->codomain, vvar(ctx.depth())));
      const auto* p2 = f2->as<value::Pi>();
      if (!p2)
        throw Error(ErrorKind::TypeMismatch, x.motive->span(),
                    "motive of path induction must take two arguments");
      unify_or_mismatch(c1, make_value(value::Id{X, a, vvar(ctx.depth())}),
                        p2->domain);
      motive = m.term;
    }

    Val mv = ev_.eval(ctx.env, motive);
    Val at_base = ev_.apply(ev_.apply(mv, a), make_value(value::Refl{a}));
    TermPtr base = check(ctx, x.base, at_base);
    TermPtr endpoint = ev_.quote(ctx.depth(), b);
    Val result = ev_.apply(ev_.apply(mv, b), ev_.eval(ctx.env, path.term));
    return {mk_j(motive, base, endpoint, path.term), result};
  }

  Ctx bind_checked(const Ctx& ctx, const FlatBinder& b, const Val& expected) {
    if (b.annotation && !b.annotation->as<surface::Hole>()) {
      TermPtr ann = infer_type_of(ctx, b.annotation).first;
      try {
        unify_or_mismatch(ctx, expected, ev_.eval(ctx.env, ann));
      } catch (Error& e) {
        e.set_span_if_missing(b.annotation->span());
        throw;
      }
    }
    return ctx.bind(b.name, expected);
  }

  TermPtr check(const Ctx& ctx, const SurfacePtr& s, const Val& expected) {
    try {
      return check_inner(ctx, s, expected);
    } catch (Error& e) {
      e.set_span_if_missing(s->span());
      throw;
    }
  }

  TermPtr check_lam(const Ctx& ctx, const std::vector<FlatBinder>& bs,
                    std::size_t i, const SurfacePtr& body, const Val& expected,
                    const SourceSpan& span) {
    if (i == bs.size()) return check(ctx, body, expected);
    Val f = ev_.force(expected);
    const auto* pi = f->as<value::Pi>();
    if (!pi)
      throw Error(ErrorKind::TypeMismatch, span,
                  "function where a non-function was expected",
                  {"expected: " + show(ctx, expected)});
    const FlatBinder& b = bs[i];
    Val x = vvar(ctx.depth());
    if (pi->icit == b.icit) {
      Ctx inner = bind_checked(ctx, b, pi->domain);
      TermPtr t = check_lam(inner, bs, i + 1, body,
                            ev_.apply_closure(pi->codomain, x), span);
      return mk_lam(b.name, t, b.icit);
    }
    if (pi->icit == Icit::Implicit) {
      Ctx inner = ctx.bind(pi->hint, pi->domain, false);
      TermPtr t = check_lam(inner, bs, i, body,
                            ev_.apply_closure(pi->codomain, x), span);
      return mk_lam(pi->hint, t, Icit::Implicit);
    }
    throw Error(ErrorKind::TypeMismatch, b.span,
                "implicit binder where an explicit one was expected",
                {"expected: " + show(ctx, expected)});
  }

  TermPtr check_inner(const Ctx& ctx, const SurfacePtr& s, const Val& expected) {
    ev_.budget().tick();
    if (const auto* lam = s->as<surface::Lam>())
      return check_lam(ctx, flatten(lam->binders), 0, lam->body, expected,
                       s->span());
    if (s->as<surface::Hole>()) return fresh_meta(ctx, s->span());

    Val f = ev_.force(expected);
    if (const auto* pi = f->as<value::Pi>()) {
      if (pi->icit == Icit::Implicit) {
        Ctx inner = ctx.bind(pi->hint, pi->domain, false);
        TermPtr t = check(inner, s,
                          ev_.apply_closure(pi->codomain, vvar(ctx.depth())));
        return mk_lam(pi->hint, t, Icit::Implicit);
      }
    }
    Inferred r = infer(ctx, s);
    unify_or_mismatch(ctx, expected, r.type);
    return r.term;
  }

  // ---- zonking --------------------------------------------------------------

  static Env identity_env(unsigned depth) {
    Env env;
    for (unsigned l = 0; l < depth; ++l) env = env_extend(env, vvar(l));
    return env;
  }

  TermPtr zonk(unsigned depth, const TermPtr& t) {
    const Term* head = t.get();
    while (const auto* app = head->as<term::App>()) head = app->fn.get();
    if (const auto* m = head->as<term::Meta>()) {
      if (metas_.solution(m->id))
        return ev_.quote(depth, ev_.eval(identity_env(depth), t), Unfold::None);
    }
    return std::visit(
        overloaded{
            [&](const term::Lam& x) {
              return mk_lam(x.hint, zonk(depth + 1, x.body), x.icit);
            },
            [&](const term::App& x) {
              return mk_app(zonk(depth, x.fn), zonk(depth, x.arg), x.icit);
            },
            [&](const term::Pi& x) {
              return mk_pi(x.hint, zonk(depth, x.domain),
                           zonk(depth + 1, x.codomain), x.icit);
            },
            [&](const term::Id& x) {
              return mk_id(zonk(depth, x.type), zonk(depth, x.lhs),
                           zonk(depth, x.rhs));
            },
            [&](const term::Refl& x) { return mk_refl(zonk(depth, x.point)); },
            [&](const term::J& x) {
              return mk_j(zonk(depth, x.motive), zonk(depth, x.base),
                          zonk(depth, x.endpoint), zonk(depth, x.path));
            },
            [&](const auto&) { return t; },
        },
        t->node());
  }

  TermPtr finish(const TermPtr& t) {
    TermPtr z = zonk(0, t);
    if (auto m = first_meta(*z)) {
      const auto& entry = metas_.at(*m);
      throw Error(ErrorKind::UnsolvedMeta, entry.span,
                  "unsolved metavariable ?" + std::to_string(*m) +
                      ": cannot infer this term");
    }
    return z;
  }

 private:
  const GlobalEnv& globals_;
  MetaStore& metas_;
  Evaluator ev_;
};

struct Telescope {
  Ctx ctx;
  std::vector<FlatBinder> binders;
  std::vector<TermPtr> types;
};

Telescope elaborate_telescope(Elab& e, const std::vector<Binder>& binders) {
  Telescope tel;
  tel.binders = flatten(binders);
  for (const auto& b : tel.binders) {
    TermPtr ty = e.infer_type_of(tel.ctx, b.annotation).first;
    tel.types.push_back(ty);
    tel.ctx = tel.ctx.bind(b.name, e.ev().eval(tel.ctx.env, ty));
  }
  return tel;
}

}  // namespace

CoreDecl elaborate_decl(const GlobalEnv& globals, const SurfaceDecl& d,
                        StepBudget& budget) {
  MetaStore metas;
  Elab e(globals, budget, metas);
  auto run = [&](const std::string& name, const std::vector<Binder>& binders,
                 const SurfacePtr& type, const SurfacePtr* body) {
    if (globals.contains(name))
      throw Error(ErrorKind::DuplicateName, d.span,
                  "'" + name + "' is already defined");
    Telescope tel = elaborate_telescope(e, binders);
    TermPtr ty = e.infer_type_of(tel.ctx, type).first;
    TermPtr tm;
    if (body) tm = e.check(tel.ctx, *body, e.ev().eval(tel.ctx.env, ty));
    for (std::size_t i = tel.binders.size(); i-- > 0;) {
      const auto& b = tel.binders[i];
      ty = mk_pi(b.name, tel.types[i], ty, b.icit);
      if (tm) tm = mk_lam(b.name, tm, b.icit);
    }
    CoreDecl out{name, e.finish(ty), tm ? e.finish(tm) : nullptr};
    return out;
  };
  try {
    if (const auto* def = std::get_if<decl::Def>(&d.node))
      return run(def->name, def->binders, def->type, &def->body);
    if (const auto* ax = std::get_if<decl::Axiom>(&d.node))
      return run(ax->name, ax->binders, ax->type, nullptr);
  } catch (Error& err) {
    err.set_span_if_missing(d.span);
    throw;
  }
  throw Error(ErrorKind::Parse, d.span, "not a declaration");
}

ElabTerm elaborate_term(const GlobalEnv& globals, const SurfacePtr& t,
                        StepBudget& budget) {
  MetaStore metas;
  Elab e(globals, budget, metas);
  Inferred r = e.infer({}, t);
  TermPtr term = e.finish(r.term);
  TermPtr type = e.finish(e.ev().quote(0, r.type));
  return {term, type};
}

ElabAssertion elaborate_assertion(const GlobalEnv& globals,
                                  const decl::AssertDefeq& a,
                                  StepBudget& budget) {
  MetaStore metas;
  Elab e(globals, budget, metas);
  TermPtr ty = e.infer_type_of({}, a.type).first;
  Val tyv = e.ev().eval(nullptr, ty);
  TermPtr lhs = e.check({}, a.lhs, tyv);
  TermPtr rhs = e.check({}, a.rhs, tyv);
  return {e.finish(lhs), e.finish(rhs), e.finish(ty)};
}

bool unify_closed(const GlobalEnv& globals, MetaStore& metas,
                  const TermPtr& lhs, const TermPtr& rhs, StepBudget& budget) {
  Elab e(globals, budget, metas);
  std::size_t mark = metas.mark();
  try {
    e.unify(0, e.ev().eval(nullptr, lhs), e.ev().eval(nullptr, rhs));
    return true;
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::UnifyFailure &&
        err.kind() != ErrorKind::OccursCheck)
      throw;
    metas.rollback(mark);
    return false;
  }
}

}  // namespace hpt
