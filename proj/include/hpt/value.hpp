#pragma once

// Semantic domain for normalization by evaluation.

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include "hpt/core.hpp"

namespace hpt {

class Value;
using Val = std::shared_ptr<const Value>;

// Persistent cons-list environment; the innermost binder is the head.
struct EnvNode;
using Env = std::shared_ptr<const EnvNode>;
struct EnvNode {
  Val value;
  Env next;
  unsigned size;
};

inline Env env_extend(const Env& env, Val v) {
  unsigned size = env ? env->size + 1 : 1;
  return std::make_shared<const EnvNode>(EnvNode{std::move(v), env, size});
}
inline unsigned env_size(const Env& env) { return env ? env->size : 0; }
const Val& env_lookup(const Env& env, unsigned index);

struct Closure {
  Env env;
  TermPtr body;
};

class Evaluator;

// Memoized unfolding of a glued global. The thunk receives the evaluator
// that forces it so step budgets apply to lazy work as well.
class Lazy {
 public:
  explicit Lazy(std::function<Val(Evaluator&)> fn) : fn_(std::move(fn)) {}
  static std::shared_ptr<Lazy> ready(Val v) {
    auto l = std::make_shared<Lazy>(nullptr);
    l->value_ = std::move(v);
    l->done_ = true;
    return l;
  }
  const Val& force(Evaluator& ev) const;

 private:
  mutable std::mutex mutex_;
  mutable bool done_ = false;
  mutable Val value_;
  std::function<Val(Evaluator&)> fn_;
};
using LazyPtr = std::shared_ptr<const Lazy>;

struct Elim {
  enum class Kind : std::uint8_t { App, J };
  Kind kind;
  Icit icit = Icit::Explicit;
  Val arg;  // App
  Val motive, base, endpoint;  // J

  static Elim app(Val arg, Icit icit) {
    return Elim{Kind::App, icit, std::move(arg), nullptr, nullptr, nullptr};
  }
  static Elim j(Val motive, Val base, Val endpoint) {
    return Elim{Kind::J, Icit::Explicit, nullptr, std::move(motive),
                std::move(base), std::move(endpoint)};
  }
};
using Spine = std::vector<Elim>;

struct Head {
  enum class Kind : std::uint8_t { Local, Axiom };
  Kind kind;
  unsigned level = 0;  // Local: de Bruijn level
  std::string name;    // Axiom

  bool operator==(const Head& o) const {
    return kind == o.kind &&
           (kind == Kind::Local ? level == o.level : name == o.name);
  }
};

namespace value {
struct Lam {
  std::string hint;
  Icit icit;
  Closure body;
};
struct Pi {
  std::string hint;
  Icit icit;
  Val domain;
  Closure codomain;
};
struct Type {
  Level level;
};
struct Id {
  Val type, lhs, rhs;
};
struct Refl {
  Val point;
};
// Stuck on a local variable or an axiom.
struct Rigid {
  Head head;
  Spine spine;
};
// Stuck on an unsolved metavariable (elaboration only).
struct Flex {
  unsigned meta;
  Spine spine;
};
// A defined global applied to a spine, kept folded alongside its lazily
// computed unfolding.
struct Glued {
  std::string name;
  std::size_t order;  // declaration index; later globals unfold first
  Spine spine;
  LazyPtr unfolded;
};
}  // namespace value

class Value {
 public:
  using Node = std::variant<value::Lam, value::Pi, value::Type, value::Id,
                            value::Refl, value::Rigid, value::Flex,
                            value::Glued>;
  explicit Value(Node node) : node_(std::move(node)) {}
  const Node& node() const { return node_; }
  template <class T>
  const T* as() const {
    return std::get_if<T>(&node_);
  }

 private:
  Node node_;
};

template <class T>
Val make_value(T node) {
  return std::make_shared<const Value>(Value::Node(std::move(node)));
}

inline Val vvar(unsigned level) {
  return make_value(value::Rigid{Head{Head::Kind::Local, level, {}}, {}});
}
inline Val vtype(unsigned level) { return make_value(value::Type{Level{level}}); }

}  // namespace hpt
