#include <algorithm>
#include <cctype>
#include <set>
#include <string>

#include "hpt/core.hpp"
#include "hpt/overloaded.hpp"

namespace hpt {

namespace {

// Binding strength of printed forms, weakest first.
enum Prec : int {
  kTerm = 0,      // fun, Pi, arrow
  kEq = 1,        // a = b
  kStar = 2,      // a * b
  kStarStar = 3,  // a ** b
  kApp = 4,       // f a
  kAtom = 5,
};

const std::set<std::string, std::less<>>& keywords() {
  static const std::set<std::string, std::less<>> kw = {
      "def", "axiom", "fun", "Type", "refl", "J"};
  return kw;
}

bool occurs(const Term& t, unsigned index) {
  return std::visit(
      overloaded{
          [&](const term::Var& x) { return x.index == index; },
          [&](const term::Global&) { return false; },
          [&](const term::Type&) { return false; },
          [&](const term::Meta&) { return false; },
          [&](const term::Lam& x) { return occurs(*x.body, index + 1); },
          [&](const term::App& x) {
            return occurs(*x.fn, index) || occurs(*x.arg, index);
          },
          [&](const term::Pi& x) {
            return occurs(*x.domain, index) || occurs(*x.codomain, index + 1);
          },
          [&](const term::Id& x) {
            return occurs(*x.type, index) || occurs(*x.lhs, index) ||
                   occurs(*x.rhs, index);
          },
          [&](const term::Refl& x) { return occurs(*x.point, index); },
          [&](const term::J& x) {
            return occurs(*x.motive, index) || occurs(*x.base, index) ||
                   occurs(*x.endpoint, index) || occurs(*x.path, index);
          },
      },
      t.node());
}

void collect_globals(const Term& t, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const term::Global& x) { out.insert(x.name); },
                 [&](const term::Var&) {},
                 [&](const term::Type&) {},
                 [&](const term::Meta&) {},
                 [&](const term::Lam& x) { collect_globals(*x.body, out); },
                 [&](const term::App& x) {
                   collect_globals(*x.fn, out);
                   collect_globals(*x.arg, out);
                 },
                 [&](const term::Pi& x) {
                   collect_globals(*x.domain, out);
                   collect_globals(*x.codomain, out);
                 },
                 [&](const term::Id& x) {
                   collect_globals(*x.type, out);
                   collect_globals(*x.lhs, out);
                   collect_globals(*x.rhs, out);
                 },
                 [&](const term::Refl& x) { collect_globals(*x.point, out); },
                 [&](const term::J& x) {
                   collect_globals(*x.motive, out);
                   collect_globals(*x.base, out);
                   collect_globals(*x.endpoint, out);
                   collect_globals(*x.path, out);
                 },
             },
             t.node());
}

class Printer {
 public:
  Printer(const std::vector<std::string>& names, PrettyOptions options,
          const Term& root)
      : options_(options) {
    for (auto it = names.rbegin(); it != names.rend(); ++it)
      scope_.push_back(*it);
    collect_globals(root, reserved_);
  }

  std::string print(const TermPtr& t, int prec) {
    return std::visit(
        overloaded{
            [&](const term::Var& x) { return var_name(x.index); },
            [&](const term::Global& x) { return x.name; },
            [&](const term::Meta& x) { return "?" + std::to_string(x.id); },
            [&](const term::Type& x) {
              if (x.level.index == 0) return std::string("Type");
              return paren(prec > kApp,
                           "Type " + std::to_string(x.level.index));
            },
            [&](const term::Lam&) { return print_lam(t, prec); },
            [&](const term::Pi& x) { return print_pi(x, prec); },
            [&](const term::App&) { return print_app(t, prec); },
            [&](const term::Id& x) {
              return paren(prec > kEq,
                           print(x.lhs, kStar) + " = " + print(x.rhs, kStar));
            },
            [&](const term::Refl& x) {
              return paren(prec > kApp, "refl " + print(x.point, kAtom));
            },
            [&](const term::J& x) {
              return paren(prec > kApp, "J " + print(x.motive, kAtom) + " " +
                                            print(x.base, kAtom) + " " +
                                            print(x.path, kAtom));
            },
        },
        t->node());
  }

 private:
  static std::string paren(bool wrap, std::string s) {
    return wrap ? "(" + s + ")" : s;
  }

  std::string var_name(unsigned index) const {
    if (index >= scope_.size()) return "#" + std::to_string(index);
    return scope_[scope_.size() - 1 - index];
  }

  bool taken(const std::string& name) const {
    if (keywords().count(name) || reserved_.count(name)) return true;
    for (const auto& s : scope_)
      if (s == name) return true;
    return false;
  }

  std::string fresh(const std::string& hint, bool used) {
    if (!used) return "_";
    std::string base = (hint.empty() || hint == "_" || !is_identifier(hint))
                           ? std::string("x")
                           : hint;
    if (!taken(base)) return base;
    for (unsigned k = 1;; ++k) {
      std::string candidate = base + std::to_string(k);
      if (!taken(candidate)) return candidate;
    }
  }

  std::string print_lam(const TermPtr& t, int prec) {
    std::string out = "fun";
    std::size_t pushed = 0;
    TermPtr cur = t;
    while (const auto* lam = cur->as<term::Lam>()) {
      std::string name = fresh(lam->hint, occurs(*lam->body, 0));
      if (lam->icit == Icit::Implicit)
        out += " {" + name + " : _}";
      else
        out += " " + name;
      scope_.push_back(name);
      ++pushed;
      cur = lam->body;
    }
    out += " => " + print(cur, kTerm);
    scope_.resize(scope_.size() - pushed);
    return paren(prec > kTerm, out);
  }

  std::string print_pi(const term::Pi& pi, int prec) {
    bool dependent = occurs(*pi.codomain, 0);
    std::string out;
    if (dependent || pi.icit == Icit::Implicit) {
      std::string name = fresh(pi.hint, true);
      std::string dom = print(pi.domain, kTerm);
      out = pi.icit == Icit::Implicit ? "{" + name + " : " + dom + "}"
                                      : "(" + name + " : " + dom + ")";
      scope_.push_back(name);
      out += " -> " + print(pi.codomain, kTerm);
      scope_.pop_back();
    } else {
      out = print(pi.domain, kStar) + " -> ";
      scope_.push_back("_");
      out += print(pi.codomain, kTerm);
      scope_.pop_back();
    }
    return paren(prec > kTerm, out);
  }

  std::string print_app(const TermPtr& t, int prec) {
    std::vector<const term::App*> spine;
    TermPtr head = t;
    while (const auto* app = head->as<term::App>()) {
      spine.push_back(app);
      head = app->fn;
    }
    std::reverse(spine.begin(), spine.end());

    bool any_implicit = false;
    std::vector<TermPtr> explicit_args;
    for (const auto* app : spine) {
      if (app->icit == Icit::Implicit)
        any_implicit = true;
      else
        explicit_args.push_back(app->arg);
    }

    if (options_.sugar) {
      if (const auto* g = head->as<term::Global>();
          g && explicit_args.size() == 2) {
        if (g->name == "concat")
          return paren(prec > kStar, print(explicit_args[0], kStar) + " * " +
                                         print(explicit_args[1], kStarStar));
        if (g->name == "par-concat")
          return paren(prec > kStarStar, print(explicit_args[0], kStarStar) +
                                             " ** " +
                                             print(explicit_args[1], kApp));
      }
      std::string out = print(head, kApp);
      if (explicit_args.empty()) return out;
      for (const auto& a : explicit_args) out += " " + print(a, kAtom);
      return paren(prec > kApp, out);
    }

    bool name_head = head->is<term::Var>() || head->is<term::Global>();
    std::string out = (any_implicit && name_head) ? "@" + print(head, kAtom)
                                                  : print(head, kApp);
    for (const auto* app : spine) out += " " + print(app->arg, kAtom);
    return paren(prec > kApp, out);
  }

  PrettyOptions options_;
  std::vector<std::string> scope_;  // innermost last
  std::set<std::string> reserved_;
};

}  // namespace

bool is_keyword(const std::string& s) { return keywords().count(s) > 0; }

bool is_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0])))
    return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isalnum(c) || c == '_' || c == '\'') continue;
    // A dash only continues an identifier when followed by a letter or digit.
    if (c == '-' && i + 1 < s.size() &&
        std::isalnum(static_cast<unsigned char>(s[i + 1])))
      continue;
    return false;
  }
  return !is_keyword(s);
}

std::string pretty(const TermPtr& t, const std::vector<std::string>& names,
                   PrettyOptions options) {
  Printer printer(names, options, *t);
  return printer.print(t, kTerm);
}

}  // namespace hpt
