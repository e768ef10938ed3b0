#include "hpt/kernel.hpp"

#include <algorithm>

#include "hpt/overloaded.hpp"

namespace hpt {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Lex: return "lex error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::UnboundName: return "unbound name";
    case ErrorKind::UnsolvedMeta: return "unsolved metavariable";
    case ErrorKind::TypeMismatch: return "type mismatch";
    case ErrorKind::OccursCheck: return "occurs check";
    case ErrorKind::UnifyFailure: return "unification failure";
    case ErrorKind::KernelType: return "kernel type error";
    case ErrorKind::DuplicateName: return "duplicate name";
    case ErrorKind::BudgetExceeded: return "step budget exceeded";
    case ErrorKind::AssertionFailed: return "assertion failed";
    case ErrorKind::Io: return "io error";
  }
  return "error";
}

KernelCtx KernelCtx::bind(const std::string& name, Val type) const {
  KernelCtx out = *this;
  out.env = env_extend(env, vvar(depth()));
  out.types.push_back(std::move(type));
  out.names.push_back(name);
  return out;
}

std::vector<std::string> KernelCtx::pretty_names() const {
  return {names.rbegin(), names.rend()};
}

namespace {

class Checker {
 public:
  Checker(const GlobalEnv& globals, StepBudget& budget)
      : ev_(globals, budget) {}

  std::string show(const KernelCtx& ctx, const Val& v) {
    return pretty(ev_.quote(ctx.depth(), v, Unfold::None), ctx.pretty_names(),
                  {.sugar = true});
  }

  [[noreturn]] void fail(const std::string& msg,
                         std::vector<std::string> notes = {}) {
    throw Error(ErrorKind::KernelType, {}, msg, std::move(notes));
  }

  unsigned universe(const KernelCtx& ctx, const TermPtr& t) {
    Val ty = ev_.force(infer(ctx, t));
    if (const auto* u = ty->as<value::Type>()) return u->level.index;
    fail("expected a type, found a term of type " + show(ctx, ty),
         {"in " + pretty(t, ctx.pretty_names(), {.sugar = true})});
  }

  void expect_conv(const KernelCtx& ctx, const Val& expected, const Val& found,
                   const TermPtr& t) {
    if (ev_.conv(ctx.depth(), expected, found)) return;
    fail("type mismatch", {"expected: " + show(ctx, expected),
                           "found:    " + show(ctx, found),
                           "in term:  " + pretty(t, ctx.pretty_names(),
                                                 {.sugar = true})});
  }

  Val infer(const KernelCtx& ctx, const TermPtr& t) {
    ev_.budget().tick();
    return std::visit(
        overloaded{
            [&](const term::Var& x) -> Val {
              if (x.index >= ctx.depth())
                fail("variable index " + std::to_string(x.index) +
                     " out of scope");
              return ctx.types[ctx.depth() - x.index - 1];
            },
            [&](const term::Global& x) -> Val {
              const GlobalEntry* e = ev_.globals().find(x.name);
              if (!e) fail("unknown global '" + x.name + "'");
              return e->type_value;
            },
            [&](const term::Lam&) -> Val {
              fail("cannot infer the type of an unannotated function");
            },
            [&](const term::App& x) -> Val {
              Val fty = ev_.force(infer(ctx, x.fn));
              const auto* pi = fty->as<value::Pi>();
              if (!pi)
                fail("applying a term that is not a function",
                     {"its type is " + show(ctx, fty)});
              check(ctx, x.arg, pi->domain);
              return ev_.apply_closure(pi->codomain, ev_.eval(ctx.env, x.arg));
            },
            [&](const term::Pi& x) -> Val {
              unsigned i = universe(ctx, x.domain);
              Val dom = ev_.eval(ctx.env, x.domain);
              unsigned j = universe(ctx.bind(x.hint, dom), x.codomain);
              return vtype(std::max(i, j));
            },
            [&](const term::Type& x) -> Val { return vtype(x.level.index + 1); },
            [&](const term::Id& x) -> Val {
              unsigned i = universe(ctx, x.type);
              Val a = ev_.eval(ctx.env, x.type);
              check(ctx, x.lhs, a);
              check(ctx, x.rhs, a);
              return vtype(i);
            },
            [&](const term::Refl& x) -> Val {
              Val a = infer(ctx, x.point);
              Val p = ev_.eval(ctx.env, x.point);
              return make_value(value::Id{a, p, p});
            },
            [&](const term::J& x) -> Val { return infer_j(ctx, x); },
            [&](const term::Meta& x) -> Val {
              fail("metavariable ?" + std::to_string(x.id) +
                   " reached the kernel");
            },
        },
        t->node());
  }

  // Motive domain: (y : A) -> Id A a y -> _.
  void check_motive(const KernelCtx& ctx, const TermPtr& motive, const Val& a,
                    const Val& base_point) {
    KernelCtx c1 = ctx.bind("y", a);
    Val y = vvar(ctx.depth());
    KernelCtx c2 = c1.bind("e", make_value(value::Id{a, base_point, y}));
    if (const auto* l1 = motive->as<term::Lam>()) {
      if (const auto* l2 = l1->body->as<term::Lam>()) {
        universe(c2, l2->body);
        return;
      }
    }
    Val mty = ev_.force(infer(ctx, motive));
    const auto* p1 = mty->as<value::Pi>();
    if (p1) {
      expect_conv(ctx, a, p1->domain, motive);
      Val rest = ev_.force(ev_.apply_closure(p1->codomain, y));
      if (const auto* p2 = rest->as<value::Pi>()) {
        expect_conv(c1, make_value(value::Id{a, base_point, y}), p2->domain,
                    motive);
        Val cod = ev_.force(ev_.apply_closure(p2->codomain, vvar(c1.depth())));
        if (cod->as<value::Type>()) return;
      }
    }
    fail("motive of path induction has the wrong shape",
         {"its type is " + show(ctx, mty)});
  }

  Val infer_j(const KernelCtx& ctx, const term::J& x) {
    Val pty = ev_.force(infer(ctx, x.path));
    const auto* id = pty->as<value::Id>();
    if (!id)
      fail("path induction on a term that is not a path",
           {"its type is " + show(ctx, pty)});
    check(ctx, x.endpoint, id->type);
    Val endpoint = ev_.eval(ctx.env, x.endpoint);
    if (!ev_.conv(ctx.depth(), endpoint, id->rhs))
      fail("recorded endpoint of path induction does not match the path",
           {"recorded: " + show(ctx, endpoint),
            "actual:   " + show(ctx, id->rhs)});
    check_motive(ctx, x.motive, id->type, id->lhs);
    Val motive = ev_.eval(ctx.env, x.motive);
    Val at_base = ev_.apply(ev_.apply(motive, id->lhs),
                            make_value(value::Refl{id->lhs}));
    check(ctx, x.base, at_base);
    return ev_.apply(ev_.apply(motive, id->rhs), ev_.eval(ctx.env, x.path));
  }

  void check(const KernelCtx& ctx, const TermPtr& t, const Val& type) {
    ev_.budget().tick();
    if (const auto* lam = t->as<term::Lam>()) {
      Val ty = ev_.force(type);
      const auto* pi = ty->as<value::Pi>();
      if (!pi)
        fail("function where a non-function was expected",
             {"expected: " + show(ctx, ty)});
      Val x = vvar(ctx.depth());
      check(ctx.bind(lam->hint, pi->domain), lam->body,
            ev_.apply_closure(pi->codomain, x));
      return;
    }
    expect_conv(ctx, type, infer(ctx, t), t);
  }

  // Typed readback.
  TermPtr nf(const KernelCtx& ctx, const Val& v, const Val& type) {
    ev_.budget().tick();
    Val ty = ev_.force(type);
    if (const auto* pi = ty->as<value::Pi>()) {
      Val x = vvar(ctx.depth());
      return mk_lam(pi->hint,
                    nf(ctx.bind(pi->hint, pi->domain), ev_.apply(v, x, pi->icit),
                       ev_.apply_closure(pi->codomain, x)),
                    pi->icit);
    }
    if (ty->as<value::Type>()) return nf_type(ctx, v);
    Val w = ev_.force(v);
    if (const auto* id = ty->as<value::Id>()) {
      if (const auto* r = w->as<value::Refl>())
        return mk_refl(nf(ctx, r->point, id->type));
    }
    return nf_neutral(ctx, w).first;
  }

  TermPtr nf_type(const KernelCtx& ctx, const Val& v) {
    Val w = ev_.force(v);
    if (const auto* pi = w->as<value::Pi>()) {
      Val x = vvar(ctx.depth());
      return mk_pi(pi->hint, nf_type(ctx, pi->domain),
                   nf_type(ctx.bind(pi->hint, pi->domain),
                           ev_.apply_closure(pi->codomain, x)),
                   pi->icit);
    }
    if (const auto* u = w->as<value::Type>()) return mk_type(u->level.index);
    if (const auto* id = w->as<value::Id>())
      return mk_id(nf_type(ctx, id->type), nf(ctx, id->lhs, id->type),
                   nf(ctx, id->rhs, id->type));
    return nf_neutral(ctx, w).first;
  }

  std::pair<TermPtr, Val> nf_neutral(const KernelCtx& ctx, const Val& w) {
    const auto* r = w->as<value::Rigid>();
    if (!r) fail("normal form requested for an ill-typed value");
    TermPtr head;
    Val ty;
    Val cur;
    if (r->head.kind == Head::Kind::Local) {
      head = mk_var(ctx.depth() - r->head.level - 1);
      ty = ctx.types.at(r->head.level);
      cur = vvar(r->head.level);
    } else {
      head = mk_global(r->head.name);
      ty = ev_.globals().find(r->head.name)->type_value;
      cur = ev_.globals().find(r->head.name)->value;
    }
    for (const auto& e : r->spine) {
      Val fty = ev_.force(ty);
      if (e.kind == Elim::Kind::App) {
        const auto* pi = fty->as<value::Pi>();
        if (!pi) fail("normal form requested for an ill-typed value");
        head = mk_app(head, nf(ctx, e.arg, pi->domain), e.icit);
        ty = ev_.apply_closure(pi->codomain, e.arg);
        cur = ev_.apply(cur, e.arg, e.icit);
      } else {
        const auto* id = fty->as<value::Id>();
        if (!id) fail("normal form requested for an ill-typed value");
        KernelCtx c1 = ctx.bind("y", id->type);
        Val y = vvar(ctx.depth());
        Val ety = make_value(value::Id{id->type, id->lhs, y});
        KernelCtx c2 = c1.bind("e", ety);
        Val body = ev_.apply(ev_.apply(e.motive, y), vvar(c1.depth()));
        TermPtr motive = mk_lam("y", mk_lam("e", nf_type(c2, body)));
        Val at_base = ev_.apply(ev_.apply(e.motive, id->lhs),
                                make_value(value::Refl{id->lhs}));
        head = mk_j(motive, nf(ctx, e.base, at_base),
                    nf(ctx, e.endpoint, id->type), head);
        ty = ev_.apply(ev_.apply(e.motive, e.endpoint), cur);
        cur = ev_.j(e.motive, e.base, e.endpoint, cur);
      }
    }
    return {head, ty};
  }

  Evaluator& ev() { return ev_; }

 private:
  Evaluator ev_;
};

}  // namespace

TermPtr normal_form(const GlobalEnv& globals, const KernelCtx& ctx,
                    const Val& v, const Val& type, StepBudget& budget) {
  Checker c(globals, budget);
  return c.nf(ctx, v, type);
}

TermPtr normalize(const GlobalEnv& globals, const TermPtr& t,
                  const TermPtr& type, StepBudget& budget) {
  Checker c(globals, budget);
  return c.nf({}, c.ev().eval(nullptr, t), c.ev().eval(nullptr, type));
}

Val infer_type(const GlobalEnv& globals, const KernelCtx& ctx, const TermPtr& t,
               StepBudget& budget) {
  Checker c(globals, budget);
  return c.infer(ctx, t);
}

void check_type(const GlobalEnv& globals, const KernelCtx& ctx,
                const TermPtr& t, const Val& type, StepBudget& budget) {
  Checker c(globals, budget);
  c.check(ctx, t, type);
}

std::shared_ptr<const GlobalEntry> make_entry(const GlobalEnv& globals,
                                              const CoreDecl& d,
                                              StepBudget& budget) {
  Evaluator ev(globals, budget);
  auto e = std::make_shared<GlobalEntry>();
  e->name = d.name;
  e->type = d.type;
  e->body = d.body;
  e->type_value = ev.eval(nullptr, d.type);
  e->order = globals.size();
  if (d.body) {
    TermPtr body = d.body;
    auto lazy = std::make_shared<Lazy>(
        [body](Evaluator& ev) { return ev.eval(nullptr, body); });
    e->value = make_value(value::Glued{d.name, e->order, {}, std::move(lazy)});
  } else {
    e->value = make_value(value::Rigid{Head{Head::Kind::Axiom, 0, d.name}, {}});
  }
  return e;
}

GlobalEnv check_decl(const GlobalEnv& globals, const CoreDecl& d,
                     StepBudget& budget) {
  if (globals.contains(d.name))
    throw Error(ErrorKind::DuplicateName, {},
                "'" + d.name + "' is already defined");
  for (const TermPtr& t : {d.type, d.body}) {
    if (t && contains_meta(*t))
      throw Error(ErrorKind::KernelType, {},
                  "declaration '" + d.name + "' contains a metavariable");
    if (t && !is_closed(*t))
      throw Error(ErrorKind::KernelType, {},
                  "declaration '" + d.name + "' has a free variable");
  }
  Checker c(globals, budget);
  try {
    c.universe({}, d.type);
    if (d.body) c.check({}, d.body, c.ev().eval(nullptr, d.type));
  } catch (Error& e) {
    if (e.kind() == ErrorKind::KernelType)
      e.add_note("while checking '" + d.name + "'");
    throw;
  }
  return globals.with(make_entry(globals, d, budget));
}

bool assert_defeq(const GlobalEnv& globals, const TermPtr& lhs,
                  const TermPtr& rhs, const TermPtr& type, StepBudget& budget) {
  Checker c(globals, budget);
  c.universe({}, type);
  Val ty = c.ev().eval(nullptr, type);
  c.check({}, lhs, ty);
  c.check({}, rhs, ty);
  return c.ev().conv(0, c.ev().eval(nullptr, lhs), c.ev().eval(nullptr, rhs));
}

}  // namespace hpt
