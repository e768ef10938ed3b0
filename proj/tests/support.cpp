#include "support.hpp"

#include <variant>

namespace hpt::test {

const CorpusRun& corpus_run() {
  static const CorpusRun run = run_corpus(bundled_corpus(), Options{});
  return run;
}

const GlobalEnv& corpus_globals() { return corpus_run().session.globals; }

GlobalEnv check_text(const GlobalEnv& base, const std::string& text) {
  GlobalEnv g = base;
  for (const auto& d : parse_file(text, "<test>")) {
    StepBudget budget;
    g = check_decl(g, elaborate_decl(g, d, budget), budget);
  }
  return g;
}

ElabTerm elab(const GlobalEnv& globals, const std::string& text) {
  StepBudget budget;
  return elaborate_term(globals, parse_term(text, "<test>"), budget);
}

TermPtr nf(const GlobalEnv& globals, const ElabTerm& t) {
  StepBudget budget;
  return normalize(globals, t.term, t.type, budget);
}

std::string show(const TermPtr& t) { return pretty(t, {}, {.sugar = true}); }

}  // namespace hpt::test
