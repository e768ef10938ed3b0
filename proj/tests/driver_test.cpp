#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "support.hpp"

using namespace hpt;

namespace {

CheckReport check(const std::vector<SourceFile>& files) {
  Session s;
  CheckReport r;
  for (const auto& f : files) check_source(s, f, r);
  return r;
}

const char* kOk = "axiom A : Type\naxiom a : A\ndef idA (x : A) : A := x\n";

}  // namespace

TEST(Driver, CountsDeclarationsAndAssertions) {
  auto r = check({{"ok.hpt", std::string(kOk) + "#assert defeq idA a ~ a : A\n"}});
  EXPECT_EQ(r.declarations_checked, 3u);
  EXPECT_EQ(r.assertions_passed, 1u);
  EXPECT_EQ(r.assertions_failed, 0u);
  EXPECT_TRUE(r.ok());
}

TEST(Driver, FailedAssertionReportsNormalForms) {
  auto r = check({{"a.hpt", std::string(kOk) +
                                "axiom b : A\n#assert defeq a ~ b : A\ndef after : A := a\n"}});
  EXPECT_EQ(r.assertions_failed, 1u);
  EXPECT_EQ(r.declarations_checked, 5u);
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].span.start_line, 5u);
  EXPECT_FALSE(r.ok());
}

TEST(Driver, FilesAreIsolated) {
  auto r = check({{"bad.hpt", "def x : Type := nope\n"}, {"good.hpt", kOk}});
  EXPECT_EQ(r.files.size(), 2u);
  EXPECT_EQ(r.declarations_checked, 3u);
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].span.file, "bad.hpt");
}

TEST(Driver, RendersCaretExcerpt) {
  auto r = check({{"bad.hpt", "def x : Type :=\n  nope\n"}});
  std::string out = render_report(r, false);
  EXPECT_EQ(out,
            "bad.hpt:2:3: error: unbound name 'nope'\n"
            "    nope\n"
            "    ^~~~\n"
            "1 file, 0 declarations checked, 0 assertions passed, 0 failed\n");
  EXPECT_EQ(out.find("elapsed"), std::string::npos);
}

TEST(Driver, JsonFields) {
  auto r = check({{"bad.hpt", "def x : Type := nope\n"}});
  auto j = nlohmann::json::parse(report_json(r));
  for (const char* k : {"files", "declarations_checked", "assertions_passed",
                        "assertions_failed", "diagnostics", "elapsed_ms"})
    EXPECT_TRUE(j.contains(k)) << k;
  auto d = j["diagnostics"][0];
  EXPECT_EQ(d["severity"], "error");
  EXPECT_EQ(d["file"], "bad.hpt");
  EXPECT_EQ(d["line"], 1);
  EXPECT_EQ(d["col"], 17);
  EXPECT_EQ(d["message"], "unbound name 'nope'");
}

TEST(Driver, Deterministic) {
  auto a = check({{"f.hpt", std::string(kOk) + "def bad : A := idA\n"}});
  auto b = check({{"f.hpt", std::string(kOk) + "def bad : A := idA\n"}});
  EXPECT_EQ(render_report(a, false), render_report(b, false));
}

TEST(Driver, Eval) {
  Options o;
  o.open_corpus = true;
  auto r = run_eval("EH (refl (refl star)) (refl (refl star))", o);
  ASSERT_TRUE(r.value.has_value());
  EXPECT_EQ(*r.value, "refl (refl (refl star))");
  EXPECT_EQ(*r.type, "refl (refl star) = refl (refl star)");
  auto bad = run_eval("refl", o);
  EXPECT_FALSE(bad.value.has_value());
  EXPECT_EQ(exit_code(bad.report), 1);
}

TEST(Driver, CorpusReport) {
  std::string out = render_corpus(test::corpus_run(), false);
  EXPECT_NE(out.find("Theorem (Eckmann-Hilton)  EH (theorem)"), std::string::npos);
  EXPECT_NE(out.find("Theorem (Syllepsis)  syllepsis (theorem)"), std::string::npos);
  EXPECT_EQ(out.find("FAIL"), std::string::npos);
}
