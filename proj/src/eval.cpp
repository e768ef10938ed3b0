#include <algorithm>

#include "hpt/kernel.hpp"
#include "hpt/overloaded.hpp"

namespace hpt {

const Val& env_lookup(const Env& env, unsigned index) {
  const EnvNode* node = env.get();
  for (unsigned i = 0; i < index && node; ++i) node = node->next.get();
  if (!node)
    throw Error(ErrorKind::KernelType, {},
                "variable index " + std::to_string(index) + " out of scope");
  return node->value;
}

const Val& Lazy::force(Evaluator& ev) const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (!done_) {
    value_ = fn_(ev);
    done_ = true;
  }
  return value_;
}

GlobalEnv::GlobalEnv() : table_(std::make_shared<const Table>()) {}

const GlobalEntry* GlobalEnv::find(const std::string& name) const {
  auto it = table_->by_name.find(name);
  return it == table_->by_name.end() ? nullptr : it->second.get();
}

std::size_t GlobalEnv::size() const { return table_->order.size(); }

const std::vector<std::shared_ptr<const GlobalEntry>>& GlobalEnv::entries()
    const {
  return table_->order;
}

GlobalEnv GlobalEnv::with(std::shared_ptr<const GlobalEntry> entry) const {
  auto next = std::make_shared<Table>(*table_);
  next->by_name[entry->name] = entry;
  next->order.push_back(std::move(entry));
  GlobalEnv out;
  out.table_ = std::move(next);
  return out;
}

Val Evaluator::eval(const Env& env, const TermPtr& t) {
  budget_.tick();
  return std::visit(
      overloaded{
          [&](const term::Var& x) -> Val { return env_lookup(env, x.index); },
          [&](const term::Global& x) -> Val {
            const GlobalEntry* e = globals_.find(x.name);
            if (!e)
              throw Error(ErrorKind::KernelType, {},
                          "unknown global '" + x.name + "'");
            return e->value;
          },
          [&](const term::Lam& x) -> Val {
            return make_value(value::Lam{x.hint, x.icit, Closure{env, x.body}});
          },
          [&](const term::App& x) -> Val {
            return apply(eval(env, x.fn), eval(env, x.arg), x.icit);
          },
          [&](const term::Pi& x) -> Val {
            return make_value(value::Pi{x.hint, x.icit, eval(env, x.domain),
                                        Closure{env, x.codomain}});
          },
          [&](const term::Type& x) -> Val {
            return make_value(value::Type{x.level});
          },
          [&](const term::Id& x) -> Val {
            return make_value(value::Id{eval(env, x.type), eval(env, x.lhs),
                                        eval(env, x.rhs)});
          },
          [&](const term::Refl& x) -> Val {
            return make_value(value::Refl{eval(env, x.point)});
          },
          [&](const term::J& x) -> Val {
            return j(eval(env, x.motive), eval(env, x.base),
                     eval(env, x.endpoint), eval(env, x.path));
          },
          [&](const term::Meta& x) -> Val {
            if (metas_) {
              if (const Val* s = metas_->solution(x.id)) return *s;
              return make_value(value::Flex{x.id, {}});
            }
            throw Error(ErrorKind::KernelType, {},
                        "metavariable ?" + std::to_string(x.id) +
                            " reached the kernel");
          },
      },
      t->node());
}

Val Evaluator::apply_closure(const Closure& c, const Val& arg) {
  return eval(env_extend(c.env, arg), c.body);
}

Val Evaluator::apply(const Val& fn, const Val& arg, Icit icit) {
  budget_.tick();
  return std::visit(
      overloaded{
          [&](const value::Lam& x) -> Val { return apply_closure(x.body, arg); },
          [&](const value::Rigid& x) -> Val {
            Spine sp = x.spine;
            sp.push_back(Elim::app(arg, icit));
            return make_value(value::Rigid{x.head, std::move(sp)});
          },
          [&](const value::Flex& x) -> Val {
            Spine sp = x.spine;
            sp.push_back(Elim::app(arg, icit));
            return make_value(value::Flex{x.meta, std::move(sp)});
          },
          [&](const value::Glued& x) -> Val {
            Spine sp = x.spine;
            sp.push_back(Elim::app(arg, icit));
            LazyPtr prev = x.unfolded;
            auto lazy = std::make_shared<Lazy>([prev, arg, icit](Evaluator& ev) {
              return ev.apply(prev->force(ev), arg, icit);
            });
            return make_value(value::Glued{x.name, x.order, std::move(sp),
                                           std::move(lazy)});
          },
          [&](const auto&) -> Val {
            throw Error(ErrorKind::KernelType, {},
                        "application of a non-function value");
          },
      },
      fn->node());
}

Val Evaluator::apply_spine(Val v, const Spine& spine) {
  for (const auto& e : spine) {
    if (e.kind == Elim::Kind::App)
      v = apply(v, e.arg, e.icit);
    else
      v = j(e.motive, e.base, e.endpoint, v);
  }
  return v;
}

Val Evaluator::j(const Val& motive, const Val& base, const Val& endpoint,
                 const Val& path) {
  budget_.tick();
  Val p = force(path);
  if (p->as<value::Refl>()) return base;

  Elim elim = Elim::j(motive, base, endpoint);
  if (const auto* g = force_metas(path)->as<value::Glued>()) {
    Spine sp = g->spine;
    sp.push_back(elim);
    Val stuck = apply_spine(p, {elim});
    return make_value(
        value::Glued{g->name, g->order, std::move(sp), Lazy::ready(stuck)});
  }
  if (const auto* r = p->as<value::Rigid>()) {
    Spine sp = r->spine;
    sp.push_back(elim);
    return make_value(value::Rigid{r->head, std::move(sp)});
  }
  if (const auto* f = p->as<value::Flex>()) {
    Spine sp = f->spine;
    sp.push_back(elim);
    return make_value(value::Flex{f->meta, std::move(sp)});
  }
  throw Error(ErrorKind::KernelType, {},
              "path induction on a value that is not a path");
}

Val Evaluator::force_metas(Val v) {
  while (metas_) {
    const auto* f = v->as<value::Flex>();
    if (!f) break;
    const Val* s = metas_->solution(f->meta);
    if (!s) break;
    v = apply_spine(*s, f->spine);
  }
  return v;
}

Val Evaluator::force(Val v) {
  while (true) {
    v = force_metas(std::move(v));
    const auto* g = v->as<value::Glued>();
    if (!g) return v;
    budget_.tick();
    v = g->unfolded->force(*this);
  }
}

TermPtr Evaluator::quote_spine(unsigned depth, TermPtr head,
                               const Spine& spine, Unfold mode) {
  for (const auto& e : spine) {
    if (e.kind == Elim::Kind::App) {
      head = mk_app(std::move(head), quote(depth, e.arg, mode), e.icit);
    } else {
      head = mk_j(quote(depth, e.motive, mode), quote(depth, e.base, mode),
                  quote(depth, e.endpoint, mode), std::move(head));
    }
  }
  return head;
}

TermPtr Evaluator::quote(unsigned depth, const Val& v0, Unfold mode) {
  budget_.tick();
  Val v = mode == Unfold::Full ? force(v0) : force_metas(v0);
  return std::visit(
      overloaded{
          [&](const value::Lam& x) -> TermPtr {
            return mk_lam(x.hint,
                          quote(depth + 1, apply_closure(x.body, vvar(depth)), mode),
                          x.icit);
          },
          [&](const value::Pi& x) -> TermPtr {
            return mk_pi(
                x.hint, quote(depth, x.domain, mode),
                quote(depth + 1, apply_closure(x.codomain, vvar(depth)), mode),
                x.icit);
          },
          [&](const value::Type& x) -> TermPtr { return mk_type(x.level.index); },
          [&](const value::Id& x) -> TermPtr {
            return mk_id(quote(depth, x.type, mode), quote(depth, x.lhs, mode),
                         quote(depth, x.rhs, mode));
          },
          [&](const value::Refl& x) -> TermPtr {
            return mk_refl(quote(depth, x.point, mode));
          },
          [&](const value::Rigid& x) -> TermPtr {
            TermPtr head = x.head.kind == Head::Kind::Local
                               ? mk_var(depth - x.head.level - 1)
                               : mk_global(x.head.name);
            return quote_spine(depth, std::move(head), x.spine, mode);
          },
          [&](const value::Flex& x) -> TermPtr {
            return quote_spine(depth, mk_meta(x.meta), x.spine, mode);
          },
          [&](const value::Glued& x) -> TermPtr {
            return quote_spine(depth, mk_global(x.name), x.spine, mode);
          },
      },
      v->node());
}

bool Evaluator::conv_spine(unsigned depth, const Spine& a, const Spine& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].kind != b[i].kind) return false;
    if (a[i].kind == Elim::Kind::App) {
      if (!conv(depth, a[i].arg, b[i].arg)) return false;
    } else {
      // Endpoints are determined by the path's type and need no comparison.
      if (!conv(depth, a[i].motive, b[i].motive)) return false;
      if (!conv(depth, a[i].base, b[i].base)) return false;
    }
  }
  return true;
}

bool Evaluator::conv(unsigned depth, const Val& a0, const Val& b0) {
  budget_.tick();
  Val a = force_metas(a0);
  Val b = force_metas(b0);
  if (a == b) return true;

  const auto* ga = a->as<value::Glued>();
  const auto* gb = b->as<value::Glued>();
  if (ga && gb) {
    if (ga->name == gb->name && conv_spine(depth, ga->spine, gb->spine))
      return true;
    if (ga->order >= gb->order)
      return conv(depth, ga->unfolded->force(*this), b);
    return conv(depth, a, gb->unfolded->force(*this));
  }
  if (ga) return conv(depth, ga->unfolded->force(*this), b);
  if (gb) return conv(depth, a, gb->unfolded->force(*this));

  // Eta for functions.
  const auto* la = a->as<value::Lam>();
  const auto* lb = b->as<value::Lam>();
  if (la || lb) {
    Val x = vvar(depth);
    Val ba = la ? apply_closure(la->body, x) : apply(a, x, lb->icit);
    Val bb = lb ? apply_closure(lb->body, x) : apply(b, x, la->icit);
    return conv(depth + 1, ba, bb);
  }

  return std::visit(
      overloaded{
          [&](const value::Pi& x) {
            const auto* y = b->as<value::Pi>();
            if (!y) return false;
            Val v = vvar(depth);
            return conv(depth, x.domain, y->domain) &&
                   conv(depth + 1, apply_closure(x.codomain, v),
                        apply_closure(y->codomain, v));
          },
          [&](const value::Type& x) {
            const auto* y = b->as<value::Type>();
            return y && x.level == y->level;
          },
          [&](const value::Id& x) {
            const auto* y = b->as<value::Id>();
            return y && conv(depth, x.type, y->type) &&
                   conv(depth, x.lhs, y->lhs) && conv(depth, x.rhs, y->rhs);
          },
          [&](const value::Refl& x) {
            const auto* y = b->as<value::Refl>();
            return y && conv(depth, x.point, y->point);
          },
          [&](const value::Rigid& x) {
            const auto* y = b->as<value::Rigid>();
            return y && x.head == y->head && conv_spine(depth, x.spine, y->spine);
          },
          [&](const value::Flex& x) {
            const auto* y = b->as<value::Flex>();
            return y && x.meta == y->meta && conv_spine(depth, x.spine, y->spine);
          },
          [&](const auto&) { return false; },
      },
      a->node());
}

Val eval(const GlobalEnv& globals, const Env& env, const TermPtr& t,
         StepBudget& budget) {
  Evaluator ev(globals, budget);
  return ev.eval(env, t);
}

TermPtr readback(const GlobalEnv& globals, unsigned depth, const Val& v,
                 StepBudget& budget, Unfold mode) {
  Evaluator ev(globals, budget);
  return ev.quote(depth, v, mode);
}

bool conv(const GlobalEnv& globals, unsigned depth, const Val& a, const Val& b,
          StepBudget& budget) {
  Evaluator ev(globals, budget);
  return ev.conv(depth, a, b);
}

}  // namespace hpt
