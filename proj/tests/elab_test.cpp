#include <gtest/gtest.h>

#include "support.hpp"

using namespace hpt;
using namespace hpt::test;

namespace {

ErrorKind elab_error(const std::string& src) {
  try {
    elab(corpus_globals(), src);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

}  // namespace

TEST(Elab, InsertsImplicitArguments) {
  auto t = elab(corpus_globals(), "concat (refl star) (refl star)");
  EXPECT_EQ(pretty(t.term), "@concat A star star star (refl star) (refl star)");
  EXPECT_EQ(show(t.type), "star = star");
}

TEST(Elab, ExplicitAllDisablesInsertion) {
  auto t = elab(corpus_globals(), "@concat A star star star (refl star) (refl star)");
  EXPECT_EQ(show(t.type), "star = star");
}

TEST(Elab, HolesAreSolved) {
  auto t = elab(corpus_globals(), "fun (p : star = star) => refl _ * p");
  EXPECT_EQ(show(t.type), "(star = star) -> star = star");
  auto u = elab(corpus_globals(), "J (fun y e => star = y) (refl star) (refl _)");
  EXPECT_EQ(show(u.type), "star = star");
}

TEST(Elab, Errors) {
  EXPECT_EQ(elab_error("nope"), ErrorKind::UnboundName);
  EXPECT_EQ(elab_error("concat (refl star) (refl A)"), ErrorKind::TypeMismatch);
  EXPECT_EQ(elab_error("fun x => x"), ErrorKind::UnsolvedMeta);
}

TEST(Elab, ErrorsCarrySpans) {
  try {
    check_text(corpus_globals(), "def bad : star = star :=\n  refl A");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.span().start_line, 2u);
  }
}

TEST(Elab, UnifyClosedIsSymmetric) {
  const GlobalEnv& g = corpus_globals();
  auto lhs_of = [](MetaStore& m) {
    return mk_id(mk_global("A"), mk_meta(m.fresh({}, 0)), mk_global("star"));
  };
  auto rhs = mk_id(mk_global("A"), mk_global("star"), mk_global("star"));
  for (bool flip : {false, true}) {
    MetaStore m;
    StepBudget budget;
    TermPtr l = lhs_of(m);
    bool ok = flip ? unify_closed(g, m, rhs, l, budget) : unify_closed(g, m, l, rhs, budget);
    EXPECT_TRUE(ok);
    ASSERT_NE(m.solution(0), nullptr);
  }
  for (bool flip : {false, true}) {
    MetaStore m;
    StepBudget budget;
    auto a = mk_id(mk_global("A"), mk_global("star"), mk_global("star"));
    auto b = mk_type(0);
    EXPECT_FALSE(flip ? unify_closed(g, m, b, a, budget) : unify_closed(g, m, a, b, budget));
  }
}

TEST(Elab, RollbackUndoesSolutions) {
  MetaStore m;
  unsigned id = m.fresh({}, 0);
  auto mark = m.mark();
  m.solve(id, vtype(0));
  EXPECT_NE(m.solution(id), nullptr);
  m.rollback(mark);
  EXPECT_EQ(m.solution(id), nullptr);
}

// Elaborating the sugar-free print of an elaborated term gives it back.
TEST(Elab, Idempotent) {
  const GlobalEnv& g = corpus_globals();
  for (const auto& e : g.entries()) {
    if (!e->body) continue;
    auto ds = parse_file("def again : " + pretty(e->type) + " := " + pretty(e->body));
    StepBudget budget;
    CoreDecl d = elaborate_decl(g, ds.at(0), budget);
    EXPECT_TRUE(alpha_eq(d.type, e->type)) << e->name;
    EXPECT_TRUE(alpha_eq(d.body, e->body)) << e->name;
  }
}

// Normal forms of corpus statements print to text that elaborates back to
// the same term.
TEST(Elab, NormalFormsReparse) {
  const GlobalEnv& g = corpus_globals();
  for (const auto& e : g.entries()) {
    StepBudget budget;
    Val universe = infer_type(g, {}, e->type, budget);
    unsigned level = universe->as<value::Type>()->level.index;
    TermPtr n = normalize(g, e->type, mk_type(level), budget);
    auto ds = parse_file("axiom again : " + pretty(n));
    CoreDecl d = elaborate_decl(g, ds.at(0), budget);
    EXPECT_TRUE(alpha_eq(d.type, n)) << e->name << ": " << pretty(n);
  }
}
