#include <gtest/gtest.h>

#include "properties.hpp"
#include "support.hpp"

using namespace hpt;
using namespace hpt::test;

namespace {

const char* kBase =
    "axiom A : Type\n"
    "axiom star : A\n"
    "def concat {X : Type} {a b c : X} (p : a = b) (q : b = c) : a = c :=\n"
    "  J (fun c' q' => a = c') p q\n"
    "def inv {X : Type} {a b : X} (p : a = b) : b = a := J (fun b' p' => b' = a) (refl a) p\n";

const GlobalEnv& base() {
  static const GlobalEnv g = check_text({}, kBase);
  return g;
}

std::string nf_of(const std::string& src) { return show(nf(base(), elab(base(), src))); }

ErrorKind kernel_error(const GlobalEnv& g, const TermPtr& t) {
  StepBudget budget;
  try {
    infer_type(g, {}, t, budget);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

}  // namespace

// Hand-computed normal forms.
TEST(Defeq, ConcatComputesOnRefl) {
  EXPECT_EQ(nf_of("concat (refl star) (refl star)"), "refl star");
  EXPECT_EQ(nf_of("fun (p : star = star) => p * refl star"), "fun p => p");
  EXPECT_EQ(nf_of("fun (p : star = star) => refl star * p"),
            "fun p => J (fun y _ => star = y) (refl star) p");
}

TEST(Defeq, InverseOfRefl) {
  EXPECT_EQ(nf_of("inv (refl star)"), "refl star");
  EXPECT_EQ(nf_of("inv (inv (refl star))"), "refl star");
}

TEST(Defeq, EtaForFunctions) {
  StepBudget budget;
  auto f = elab(base(), "fun (h : A -> A) => h");
  auto g = elab(base(), "fun (h : A -> A) (x : A) => h x");
  EXPECT_TRUE(assert_defeq(base(), f.term, g.term, f.type, budget));
}

TEST(Defeq, DistinctNeutralsDiffer) {
  StepBudget budget;
  auto f = elab(base(), "fun (p q : star = star) => p");
  auto g = elab(base(), "fun (p q : star = star) => q");
  EXPECT_FALSE(assert_defeq(base(), f.term, g.term, f.type, budget));
}

TEST(Kernel, Universes) {
  StepBudget budget;
  Val t = infer_type({}, {}, mk_type(0), budget);
  EXPECT_EQ(show(readback({}, 0, t, budget)), "Type 1");
  Val pi = infer_type({}, {}, mk_pi("X", mk_type(0), mk_type(1)), budget);
  EXPECT_EQ(show(readback({}, 0, pi, budget)), "Type 2");
}

TEST(Kernel, UniversesAreNotCumulative) {
  StepBudget budget;
  EXPECT_THROW(check_type({}, {}, mk_type(0), eval({}, {}, mk_type(2), budget), budget),
               Error);
}

TEST(Kernel, UnannotatedLambdaIsNotInferable) {
  EXPECT_EQ(kernel_error({}, mk_lam("x", mk_var(0))), ErrorKind::KernelType);
}

TEST(Kernel, ScopeAndGlobals) {
  EXPECT_EQ(kernel_error({}, mk_var(0)), ErrorKind::KernelType);
  EXPECT_EQ(kernel_error({}, mk_global("nope")), ErrorKind::KernelType);
}

TEST(Kernel, RejectsIllTypedDeclaration) {
  StepBudget budget;
  CoreDecl d{"bad", mk_global("A"), mk_refl(mk_global("star"))};
  EXPECT_THROW(check_decl(base(), d, budget), Error);
}

TEST(Kernel, RejectsDuplicateName) {
  StepBudget budget;
  try {
    check_decl(base(), CoreDecl{"star", mk_global("A"), nullptr}, budget);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DuplicateName);
  }
}

TEST(Kernel, BudgetIsEnforced) {
  StepBudget budget(10);
  auto t = elab(base(), "inv (inv (inv (refl star)))");
  try {
    normalize(base(), t.term, t.type, budget);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}

TEST(Kernel, GluedGlobalsStayFolded) {
  StepBudget budget;
  auto t = elab(base(), "fun (p : star = star) => inv p");
  Val v = eval(base(), {}, t.term, budget);
  EXPECT_EQ(show(readback(base(), 0, v, budget, Unfold::None)), "fun p => inv p");
  EXPECT_EQ(show(readback(base(), 0, v, budget, Unfold::Full)),
            "fun p => J (fun b' _ => b' = star) (refl star) p");
}

TEST(Properties, ReadbackIdempotent) {
  auto r = readback_idempotent(corpus_globals());
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Properties, ConvIsAnEquivalence) {
  auto r = conv_equivalence(corpus_globals(), 500, 1);
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Properties, SubjectReduction) {
  auto r = subject_reduction(corpus_globals());
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Properties, JBeta) {
  auto r = j_beta(corpus_globals(), 100, 2);
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_EQ(r.cases, 100u);
}

TEST(Properties, CoreRecheck) {
  auto r = core_recheck(corpus_globals());
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Properties, MutationRobustness) {
  auto r = mutation_robustness(corpus_globals(), 50, 9);
  EXPECT_TRUE(r.ok) << r.detail;
}
