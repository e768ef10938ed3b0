#include "properties.hpp"

#include <chrono>
#include <functional>
#include <variant>

#include "hpt/elab.hpp"
#include "hpt/overloaded.hpp"
#include "support.hpp"

namespace hpt::test {

namespace {

int pick(std::mt19937& rng, int n) {
  return std::uniform_int_distribution<int>(0, n - 1)(rng);
}

const std::vector<std::string> kNames = {"x", "y", "p", "q'", "a-b", "f", "A", "concat",
                                         "par-concat", "whisk-L", "x1"};
const std::vector<std::string> kBinderNames = {"x", "y", "z", "p", "q'", "u-v"};

std::vector<Binder> random_binders(std::mt19937& rng, int depth, bool annotated) {
  std::vector<Binder> out;
  int groups = 1 + pick(rng, 2);
  for (int g = 0; g < groups; ++g) {
    Binder b;
    int names = 1 + pick(rng, 2);
    for (int i = 0; i < names; ++i) b.names.push_back(kBinderNames[pick(rng, kBinderNames.size())]);
    if (annotated || pick(rng, 2) == 0) {
      b.annotation = random_surface(rng, depth - 1);
      b.icit = pick(rng, 3) == 0 ? Icit::Implicit : Icit::Explicit;
    } else {
      b.names.resize(1);
    }
    out.push_back(std::move(b));
  }
  return out;
}

SurfacePtr leaf(std::mt19937& rng) {
  switch (pick(rng, 6)) {
    case 0: return make_surface(surface::Hole{});
    case 1: return make_surface(surface::TypeU{static_cast<unsigned>(pick(rng, 3))});
    case 2: return make_surface(surface::ReflSugar{nullptr});
    case 3:
      return make_surface(surface::Name{kNames[pick(rng, kNames.size())], true});
    default:
      return make_surface(surface::Name{kNames[pick(rng, kNames.size())], false});
  }
}

SurfacePtr name(const std::string& n) { return make_surface(surface::Name{n, false}); }

SurfacePtr app(SurfacePtr f, SurfacePtr a) {
  return make_surface(surface::App{std::move(f), std::move(a)});
}

}  // namespace

SurfacePtr random_surface(std::mt19937& rng, int depth) {
  if (depth <= 0 || pick(rng, 5) == 0) return leaf(rng);
  auto sub = [&] { return random_surface(rng, depth - 1); };
  switch (pick(rng, 10)) {
    case 0: return make_surface(surface::Lam{random_binders(rng, depth, false), sub()});
    case 1: return make_surface(surface::Pi{random_binders(rng, depth, true), sub()});
    case 2: return make_surface(surface::Arrow{sub(), sub()});
    case 3: return make_surface(surface::IdSugar{sub(), sub()});
    case 4: return make_surface(surface::ReflSugar{sub()});
    case 5: return make_surface(surface::JSugar{sub(), sub(), sub()});
    case 6: return app(app(name("concat"), sub()), sub());
    case 7: return app(app(name("par-concat"), sub()), sub());
    default: return app(sub(), sub());
  }
}

GlobalEnv prefix(const GlobalEnv& g, std::size_t count) {
  GlobalEnv out;
  for (std::size_t i = 0; i < count && i < g.entries().size(); ++i)
    out = out.with(g.entries()[i]);
  return out;
}

PropertyResult roundtrip_generated(std::size_t n, std::uint32_t seed) {
  PropertyResult r;
  std::mt19937 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    SurfacePtr t = random_surface(rng, 1 + static_cast<int>(i % 5));
    std::string printed = print_surface(t);
    ++r.cases;
    try {
      SurfacePtr back = parse_term(printed, "<generated>");
      if (!surface_eq(t, back)) r.fail("reparse differs: " + printed);
    } catch (const Error& e) {
      r.fail(printed + ": " + e.what());
    }
  }
  return r;
}

namespace {

SurfacePtr with_binders(const std::vector<Binder>& bs, SurfacePtr t) {
  if (bs.empty() || !t) return t;
  return make_surface(surface::Pi{bs, std::move(t)});
}

bool decl_eq(const SurfaceDecl& a, const SurfaceDecl& b) {
  if (a.node.index() != b.node.index() || a.name() != b.name()) return false;
  auto eq = [](const SurfacePtr& x, const SurfacePtr& y) {
    if (!x || !y) return !x && !y;
    return surface_eq(x, y);
  };
  return std::visit(
      overloaded{
          [&](const decl::Def& x) {
            const auto& y = std::get<decl::Def>(b.node);
            return eq(with_binders(x.binders, x.type), with_binders(y.binders, y.type)) &&
                   eq(with_binders(x.binders, x.body), with_binders(y.binders, y.body));
          },
          [&](const decl::Axiom& x) {
            const auto& y = std::get<decl::Axiom>(b.node);
            return eq(with_binders(x.binders, x.type), with_binders(y.binders, y.type));
          },
          [&](const decl::Check& x) { return eq(x.term, std::get<decl::Check>(b.node).term); },
          [&](const decl::Eval& x) { return eq(x.term, std::get<decl::Eval>(b.node).term); },
          [&](const decl::AssertDefeq& x) {
            const auto& y = std::get<decl::AssertDefeq>(b.node);
            return eq(x.lhs, y.lhs) && eq(x.rhs, y.rhs) && eq(x.type, y.type);
          },
      },
      a.node);
}

}  // namespace

PropertyResult roundtrip_corpus() {
  PropertyResult r;
  CorpusData data = bundled_corpus();
  std::vector<SourceFile> files = data.sources;
  files.push_back(data.assertions);
  for (const auto& f : files) {
    for (const auto& d : parse_file(f.text, f.name)) {
      ++r.cases;
      std::string printed = print_decl(d);
      try {
        auto back = parse_file(printed, "<printed>");
        if (back.size() != 1 || !decl_eq(d, back[0]))
          r.fail(f.name + ": reparse differs for " + printed);
      } catch (const Error& e) {
        r.fail(f.name + ": " + printed + ": " + e.what());
      }
    }
  }
  return r;
}

PropertyResult readback_idempotent(const GlobalEnv& g) {
  PropertyResult r;
  for (const auto& e : g.entries()) {
    for (const TermPtr& t : {e->type, e->body}) {
      if (!t) continue;
      for (Unfold mode : {Unfold::None, Unfold::Full}) {
        ++r.cases;
        StepBudget budget;
        Evaluator ev(g, budget);
        TermPtr once = ev.quote(0, ev.eval({}, t), mode);
        TermPtr twice = ev.quote(0, ev.eval({}, once), mode);
        if (!alpha_eq(once, twice))
          r.fail(e->name + ": readback of eval is not idempotent");
      }
    }
  }
  return r;
}

PropertyResult conv_equivalence(const GlobalEnv& g, std::size_t samples,
                                std::uint32_t seed) {
  PropertyResult r;
  const std::vector<std::string> pool = {
      "p", "q", "r", "p * q", "q * p", "refl (refl star)", "p * refl (refl star)",
      "(p * refl (refl star)) * refl (refl star)", "p * inv (refl (refl star))",
      "refl (refl star) * p", "inv p", "inv (inv p)", "concat-1-R p",
      "p * (q * r)", "(p * q) * r", "whisk-L (refl star) p", "whisk-R p (refl star)",
      "p ** refl (refl star)", "refl (refl star) ** q", "p ** q",
      "(fun (s : refl star = refl star) => s) p",
  };
  const std::string binders = "fun (p q r : refl star = refl star) => ";
  std::vector<Val> vals;
  StepBudget budget;
  Evaluator ev(g, budget);
  for (const auto& src : pool) {
    ElabTerm et = elab(g, binders + src);
    Val v = ev.eval({}, et.term);
    for (unsigned i = 0; i < 3; ++i) v = ev.apply(v, vvar(i));
    vals.push_back(v);
  }
  std::mt19937 rng(seed);
  auto c = [&](std::size_t a, std::size_t b) { return ev.conv(3, vals[a], vals[b]); };
  for (std::size_t i = 0; i < samples; ++i) {
    std::size_t a = pick(rng, vals.size()), b = pick(rng, vals.size()),
                d = pick(rng, vals.size());
    ++r.cases;
    if (!c(a, a)) r.fail("not reflexive: " + pool[a]);
    if (c(a, b) != c(b, a)) r.fail("not symmetric: " + pool[a] + " / " + pool[b]);
    if (c(a, b) && c(b, d) && !c(a, d))
      r.fail("not transitive: " + pool[a] + " / " + pool[b] + " / " + pool[d]);
  }
  return r;
}

PropertyResult subject_reduction(const GlobalEnv& g) {
  PropertyResult r;
  for (const auto& e : g.entries()) {
    if (!e->body) continue;
    ++r.cases;
    StepBudget budget;
    Evaluator ev(g, budget);
    try {
      // The body at its declared type, and in normal form.
      TermPtr n = normalize(g, e->body, e->type, budget);
      check_type(g, {}, n, e->type_value, budget);

      // Under the Pi telescope the applied global is inferable; its normal
      // form must infer (or check against) the same type.
      KernelCtx ctx;
      TermPtr head = mk_global(e->name);
      Val ty = e->type_value;
      while (const auto* pi = ev.force(ty)->as<value::Pi>()) {
        Val x = vvar(ctx.depth());
        ctx = ctx.bind(pi->hint, pi->domain);
        head = mk_app(shift(head, 0, 1), mk_var(0), pi->icit);
        ty = ev.apply_closure(pi->codomain, x);
      }
      Val inferred = infer_type(g, ctx, head, budget);
      TermPtr hn = normal_form(g, ctx, eval(g, ctx.env, head, budget), inferred, budget);
      if (hn->is<term::Lam>()) {
        check_type(g, ctx, hn, inferred, budget);
      } else if (!conv(g, ctx.depth(), infer_type(g, ctx, hn, budget), inferred, budget)) {
        r.fail(e->name + ": normal form infers a different type");
      }
    } catch (const Error& err) {
      r.fail(e->name + ": " + err.what());
    }
  }
  return r;
}

PropertyResult j_beta(const GlobalEnv& g, std::size_t n, std::uint32_t seed) {
  PropertyResult r;
  struct Point {
    std::string type, point;
    bool small = true;  // the carrier lives in Type, so path operations apply
  };
  const std::vector<Point> points = {
      {"A", "star"},
      {"star = star", "refl star"},
      {"refl star = refl star", "refl (refl star)"},
      {"Type", "A", false},
      {"A -> A", "transport (fun (z : A) => A) (refl star)"},
      {"star = star", "refl star * refl star"},
  };
  struct Motive {
    std::string body, base;
  };
  // `$X` is the carrier and `$a` the base point.
  const std::vector<Motive> motives = {
      {"$X", "$a"},
      {"y = y", "refl $a"},
      {"$a = y", "refl $a"},
      {"$a = y", "refl $a * refl $a"},
      {"e = e", "refl (refl $a)"},
      {"Type 1", "Type"},
      {"e * inv e = refl $a", "refl (refl $a)"},
  };
  const std::vector<std::string> paths = {"refl $a", "inv (refl $a)", "refl $a * refl $a",
                                          "transport (fun (z : $X) => $a = z) (refl $a) (refl $a)"};
  auto fill = [](std::string s, const Point& pt) {
    for (auto [from, to] : {std::pair{std::string("$a"), "(" + pt.point + ")"},
                            std::pair{std::string("$X"), "(" + pt.type + ")"}})
      for (std::size_t i = s.find(from); i != std::string::npos; i = s.find(from, i + to.size()))
        s.replace(i, from.size(), to);
    return s;
  };
  std::mt19937 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& pt = points[pick(rng, points.size())];
    const Motive& m = motives[pick(rng, pt.small ? motives.size() : 3)];
    const std::string& path = paths[pt.small ? pick(rng, paths.size()) : 0];
    std::string base = fill(m.base, pt);
    std::string term = fill("J (fun (y : $X) (e : $a = y) => " + m.body + ") (" + m.base +
                                ") (" + path + ")",
                            pt);
    ++r.cases;
    try {
      ElabTerm j = elab(g, term);
      ElabTerm b = elab(g, base);
      StepBudget budget;
      check_type(g, {}, j.term, eval(g, {}, j.type, budget), budget);
      Val jv = eval(g, {}, j.term, budget);
      Val bv = eval(g, {}, b.term, budget);
      if (!conv(g, 0, jv, bv, budget) ||
          !alpha_eq(normalize(g, j.term, j.type, budget), normalize(g, b.term, j.type, budget)))
        r.fail("no beta: " + term);
    } catch (const Error& e) {
      r.fail(term + ": " + e.what());
    }
  }
  return r;
}

PropertyResult core_recheck(const GlobalEnv& g) {
  PropertyResult r;
  GlobalEnv fresh;
  for (const auto& e : g.entries()) {
    ++r.cases;
    if (contains_meta(*e->type) || (e->body && contains_meta(*e->body))) {
      r.fail(e->name + ": elaborated term mentions a metavariable");
      continue;
    }
    try {
      StepBudget budget;
      fresh = check_decl(fresh, CoreDecl{e->name, e->type, e->body}, budget);
    } catch (const Error& err) {
      r.fail(e->name + ": " + err.what());
      return r;
    }
  }
  return r;
}

namespace {

struct Mutator {
  std::mt19937& rng;
  const GlobalEnv& env;
  std::size_t target;
  std::size_t seen = 0;

  TermPtr other_global(const std::string& name) {
    if (env.size() == 0 || pick(rng, 4) == 0) return mk_global("no-such-global");
    const auto& e = env.entries()[pick(rng, env.size())];
    return e->name == name ? mk_global("star") : mk_global(e->name);
  }

  TermPtr mutate(const TermPtr& t, unsigned depth) {
    int choice = pick(rng, 3);
    return std::visit(
        overloaded{
            [&](const term::Var& x) { return mk_var((x.index + 1) % (depth + 1)); },
            [&](const term::Global& x) { return other_global(x.name); },
            [&](const term::Lam& x) {
              return choice == 0 ? x.body
                                 : mk_lam(x.hint, x.body,
                                          x.icit == Icit::Explicit ? Icit::Implicit
                                                                   : Icit::Explicit);
            },
            [&](const term::App& x) {
              if (choice == 0) return x.fn;
              if (choice == 1) return mk_app(x.fn, mk_type(0), x.icit);
              return mk_app(x.arg, x.fn, x.icit);
            },
            [&](const term::Pi& x) {
              return mk_pi(x.hint, choice == 0 ? mk_type(0) : x.codomain, x.codomain, x.icit);
            },
            [&](const term::Type& x) { return mk_type(x.level.index + 1); },
            [&](const term::Id& x) {
              return choice == 0 ? mk_id(x.type, x.rhs, x.rhs) : mk_id(x.type, x.rhs, x.lhs);
            },
            [&](const term::Refl& x) {
              return choice == 0 ? mk_refl(mk_global("star")) : mk_refl(t);
            },
            [&](const term::J& x) {
              if (choice == 0) return mk_j(x.motive, x.path, x.endpoint, x.base);
              if (choice == 1) return mk_j(x.base, x.motive, x.endpoint, x.path);
              return mk_j(x.motive, x.base, x.endpoint, mk_refl(x.endpoint));
            },
            [&](const term::Meta&) { return t; },
        },
        t->node());
  }

  TermPtr walk(const TermPtr& t, unsigned depth) {
    if (seen++ == target) return mutate(t, depth);
    return std::visit(
        overloaded{
            [&](const term::Lam& x) { return mk_lam(x.hint, walk(x.body, depth + 1), x.icit); },
            [&](const term::App& x) {
              TermPtr f = walk(x.fn, depth);
              return mk_app(f, walk(x.arg, depth), x.icit);
            },
            [&](const term::Pi& x) {
              TermPtr d = walk(x.domain, depth);
              return mk_pi(x.hint, d, walk(x.codomain, depth + 1), x.icit);
            },
            [&](const term::Id& x) {
              TermPtr a = walk(x.type, depth);
              TermPtr l = walk(x.lhs, depth);
              return mk_id(a, l, walk(x.rhs, depth));
            },
            [&](const term::Refl& x) { return mk_refl(walk(x.point, depth)); },
            [&](const term::J& x) {
              TermPtr m = walk(x.motive, depth);
              TermPtr b = walk(x.base, depth);
              TermPtr e = walk(x.endpoint, depth);
              return mk_j(m, b, e, walk(x.path, depth));
            },
            [&](const auto&) { return t; },
        },
        t->node());
  }
};

}  // namespace

PropertyResult mutation_robustness(const GlobalEnv& g, std::size_t n,
                                   std::uint32_t seed) {
  PropertyResult r;
  std::mt19937 rng(seed);
  std::vector<std::size_t> defs;
  for (std::size_t i = 0; i < g.entries().size(); ++i)
    if (g.entries()[i]->body) defs.push_back(i);
  std::size_t rejected = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t index = defs[pick(rng, defs.size())];
    const auto& e = g.entries()[index];
    GlobalEnv before = prefix(g, index);
    Mutator m{rng, before, static_cast<std::size_t>(pick(rng, term_size(*e->body)))};
    TermPtr body = m.walk(e->body, 0);
    ++r.cases;
    auto start = std::chrono::steady_clock::now();
    try {
      StepBudget budget(5'000'000);
      check_decl(before, CoreDecl{e->name, e->type, body}, budget);
    } catch (const Error&) {
      ++rejected;
    } catch (const std::exception& ex) {
      r.fail(e->name + ": unexpected exception: " + ex.what());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    if (ms > 5000) r.fail(e->name + ": mutation took " + std::to_string(ms) + "ms");
  }
  r.detail = r.ok ? std::to_string(rejected) + " rejected, " +
                        std::to_string(n - rejected) + " accepted"
                  : r.detail;
  return r;
}

}  // namespace hpt::test
