#pragma once

// The trusted core: evaluation, readback, conversion and type checking of
// core terms against a table of checked global declarations.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hpt/core.hpp"
#include "hpt/error.hpp"
#include "hpt/value.hpp"

namespace hpt {

inline constexpr std::uint64_t kDefaultStepBudget = 100'000'000;

class StepBudget {
 public:
  explicit StepBudget(std::uint64_t limit = kDefaultStepBudget) : limit_(limit) {}
  void tick() {
    if (++used_ > limit_)
      throw Error(ErrorKind::BudgetExceeded, {},
                  "evaluation step budget of " + std::to_string(limit_) +
                      " exhausted");
  }
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

struct GlobalEntry {
  std::string name;
  TermPtr type;
  TermPtr body;  // null for axioms
  Val type_value;
  Val value;  // Glued for definitions, Rigid(Axiom) for axioms
  std::size_t order;
};

// Immutable table of checked declarations. Extending returns a new table that
// shares all existing entries.
class GlobalEnv {
 public:
  GlobalEnv();

  const GlobalEntry* find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }
  std::size_t size() const;
  // Entries in declaration order.
  const std::vector<std::shared_ptr<const GlobalEntry>>& entries() const;

  GlobalEnv with(std::shared_ptr<const GlobalEntry> entry) const;

 private:
  struct Table {
    std::vector<std::shared_ptr<const GlobalEntry>> order;
    std::map<std::string, std::shared_ptr<const GlobalEntry>, std::less<>> by_name;
  };
  std::shared_ptr<const Table> table_;
};

// Read access to metavariable solutions. The kernel evaluates with none.
class MetaLookup {
 public:
  virtual ~MetaLookup() = default;
  virtual const Val* solution(unsigned id) const = 0;
};

enum class Unfold { None, Full };

class Evaluator {
 public:
  Evaluator(const GlobalEnv& globals, StepBudget& budget,
            const MetaLookup* metas = nullptr)
      : globals_(globals), budget_(budget), metas_(metas) {}

  const GlobalEnv& globals() const { return globals_; }
  StepBudget& budget() { return budget_; }

  Val eval(const Env& env, const TermPtr& t);
  Val apply(const Val& fn, const Val& arg, Icit icit = Icit::Explicit);
  Val apply_closure(const Closure& c, const Val& arg);
  Val apply_spine(Val v, const Spine& spine);
  Val j(const Val& motive, const Val& base, const Val& endpoint,
        const Val& path);

  // Replaces solved metavariable heads; glued globals stay folded.
  Val force_metas(Val v);
  // Additionally unfolds glued globals at the head.
  Val force(Val v);

  // Untyped readback: beta-normal, eta-short. With Unfold::None globals stay
  // folded, which keeps terms close to what was written.
  TermPtr quote(unsigned depth, const Val& v, Unfold mode = Unfold::None);

  // Definitional equality, with eta for functions.
  bool conv(unsigned depth, const Val& a, const Val& b);

 private:
  TermPtr quote_spine(unsigned depth, TermPtr head, const Spine& spine,
                      Unfold mode);
  bool conv_spine(unsigned depth, const Spine& a, const Spine& b);

  const GlobalEnv& globals_;
  StepBudget& budget_;
  const MetaLookup* metas_;
};

// A typing context for core terms: one type per bound variable, by level.
struct KernelCtx {
  Env env;
  std::vector<Val> types;
  std::vector<std::string> names;

  unsigned depth() const { return static_cast<unsigned>(types.size()); }
  KernelCtx bind(const std::string& name, Val type) const;
  // Names with the innermost binder first, as `pretty` expects.
  std::vector<std::string> pretty_names() const;
};

Val eval(const GlobalEnv& globals, const Env& env, const TermPtr& t,
         StepBudget& budget);
TermPtr readback(const GlobalEnv& globals, unsigned depth, const Val& v,
                 StepBudget& budget, Unfold mode = Unfold::Full);
bool conv(const GlobalEnv& globals, unsigned depth, const Val& a, const Val& b,
          StepBudget& budget);

// Type-directed readback: fully unfolded, beta-normal and eta-long for Pi.
TermPtr normal_form(const GlobalEnv& globals, const KernelCtx& ctx,
                    const Val& v, const Val& type, StepBudget& budget);
// Normal form of a closed, well-typed term at its type.
TermPtr normalize(const GlobalEnv& globals, const TermPtr& t,
                  const TermPtr& type, StepBudget& budget);

Val infer_type(const GlobalEnv& globals, const KernelCtx& ctx, const TermPtr& t,
               StepBudget& budget);
void check_type(const GlobalEnv& globals, const KernelCtx& ctx,
                const TermPtr& t, const Val& type, StepBudget& budget);

GlobalEnv check_decl(const GlobalEnv& globals, const CoreDecl& d,
                     StepBudget& budget);
bool assert_defeq(const GlobalEnv& globals, const TermPtr& lhs,
                  const TermPtr& rhs, const TermPtr& type, StepBudget& budget);

// Builds the entry for an already checked declaration.
std::shared_ptr<const GlobalEntry> make_entry(const GlobalEnv& globals,
                                              const CoreDecl& d,
                                              StepBudget& budget);

}  // namespace hpt
