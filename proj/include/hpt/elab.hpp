#pragma once

// Elaboration of surface syntax into meta-free core terms: name resolution,
// implicit arguments, holes solved by pattern unification.

#include <optional>
#include <string>
#include <vector>

#include "hpt/core.hpp"
#include "hpt/kernel.hpp"
#include "hpt/surface.hpp"

namespace hpt {

class MetaStore : public MetaLookup {
 public:
  struct Entry {
    SourceSpan span;
    unsigned depth;
    std::optional<Val> solution;
  };

  unsigned fresh(SourceSpan span, unsigned depth);
  const Val* solution(unsigned id) const override;
  void solve(unsigned id, Val v);

  std::size_t size() const { return entries_.size(); }
  const Entry& at(unsigned id) const { return entries_.at(id); }

  // Solutions recorded after a mark can be undone.
  std::size_t mark() const { return trail_.size(); }
  void rollback(std::size_t mark);

 private:
  std::vector<Entry> entries_;
  std::vector<unsigned> trail_;
};

struct ElabTerm {
  TermPtr term;
  TermPtr type;
};

struct ElabAssertion {
  TermPtr lhs;
  TermPtr rhs;
  TermPtr type;
};

// Elaborates a `def` or `axiom`. The result is meta-free but not yet admitted;
// pass it to check_decl.
CoreDecl elaborate_decl(const GlobalEnv& globals, const SurfaceDecl& d,
                        StepBudget& budget);

// A closed term and its inferred type, both meta-free.
ElabTerm elaborate_term(const GlobalEnv& globals, const SurfacePtr& t,
                        StepBudget& budget);

ElabAssertion elaborate_assertion(const GlobalEnv& globals,
                                  const decl::AssertDefeq& a,
                                  StepBudget& budget);

// Exposed for tests: unify two closed types whose terms may mention metas of
// a fresh store, solving `?n` holes created by `metas`. Returns false on
// failure instead of throwing.
bool unify_closed(const GlobalEnv& globals, MetaStore& metas,
                  const TermPtr& lhs, const TermPtr& rhs, StepBudget& budget);

}  // namespace hpt
