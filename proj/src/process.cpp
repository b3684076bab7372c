#include "proclang/process.hpp"

#include <map>

namespace proclang {

Process par_of(const std::vector<Process>& parts) {
  if (parts.empty()) return Process{};
  Process acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Par{acc, parts[i]};
  return acc;
}

Process restrict_all(const std::vector<Name>& names, Process body) {
  for (auto it = names.rbegin(); it != names.rend(); ++it) body = Restrict{*it, std::move(body)};
  return body;
}

Process output(std::optional<Term> subject, std::vector<Term> args,
               std::optional<Process> continuation) {
  return Output{std::move(subject), std::move(args), std::move(continuation)};
}

Process input(std::optional<Term> subject, std::vector<Pattern> patterns, Process body) {
  return Join{{InputAtom{std::move(subject), std::move(patterns)}}, std::move(body)};
}

namespace {

void pattern_binders(const Pattern& p, std::vector<Name>& out) {
  switch (p.kind()) {
    case PatternKind::kBinder:
      out.push_back(p.name());
      break;
    case PatternKind::kProtect:
      break;
    case PatternKind::kCompound:
      pattern_binders(p.left(), out);
      pattern_binders(p.right(), out);
      break;
  }
}

void add_term(const Term& t, const std::set<Name>& bound, std::set<Name>& out) {
  for (const Name& n : free_names(t)) {
    if (!bound.contains(n)) out.insert(n);
  }
}

void free_rec(const Process& p, const std::set<Name>& bound, std::set<Name>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Output>) {
          if (n.subject) add_term(*n.subject, bound, out);
          for (const Term& t : n.args) add_term(t, bound, out);
          if (n.continuation) free_rec(*n.continuation, bound, out);
        } else if constexpr (std::is_same_v<T, Join>) {
          for (const InputAtom& a : n.atoms) {
            if (a.subject) add_term(*a.subject, bound, out);
            for (const Pattern& pat : a.patterns) {
              for (const Name& m : free_names(pat)) {
                if (!bound.contains(m)) out.insert(m);
              }
            }
          }
          std::set<Name> inner = bound;
          for (const Name& b : join_binders(n)) inner.insert(b);
          free_rec(n.body, inner, out);
        } else if constexpr (std::is_same_v<T, Restrict>) {
          std::set<Name> inner = bound;
          inner.insert(n.name);
          free_rec(n.body, inner, out);
        } else if constexpr (std::is_same_v<T, Par>) {
          free_rec(n.left, bound, out);
          free_rec(n.right, bound, out);
        } else if constexpr (std::is_same_v<T, Cond>) {
          add_term(n.lhs, bound, out);
          add_term(n.rhs, bound, out);
          free_rec(n.then_branch, bound, out);
          free_rec(n.else_branch, bound, out);
        } else if constexpr (std::is_same_v<T, Repl>) {
          free_rec(n.body, bound, out);
        }
      },
      p.node());
}

void all_rec(const Process& p, std::set<Name>& out) {
  auto terms = [&](const Term& t) {
    for (const Name& n : free_names(t)) out.insert(n);
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Output>) {
          if (n.subject) terms(*n.subject);
          for (const Term& t : n.args) terms(t);
          if (n.continuation) all_rec(*n.continuation, out);
        } else if constexpr (std::is_same_v<T, Join>) {
          for (const InputAtom& a : n.atoms) {
            if (a.subject) terms(*a.subject);
            for (const Pattern& pat : a.patterns) {
              for (const Name& m : free_names(pat)) out.insert(m);
              for (const Name& m : binding_names(pat).names) out.insert(m);
            }
          }
          all_rec(n.body, out);
        } else if constexpr (std::is_same_v<T, Restrict>) {
          out.insert(n.name);
          all_rec(n.body, out);
        } else if constexpr (std::is_same_v<T, Par>) {
          all_rec(n.left, out);
          all_rec(n.right, out);
        } else if constexpr (std::is_same_v<T, Cond>) {
          terms(n.lhs);
          terms(n.rhs);
          all_rec(n.then_branch, out);
          all_rec(n.else_branch, out);
        } else if constexpr (std::is_same_v<T, Repl>) {
          all_rec(n.body, out);
        }
      },
      p.node());
}

// De Bruijn-style comparison: each side maps its bound names to the binding
// level that introduced them.
struct AlphaEnv {
  std::map<Name, int> left;
  std::map<Name, int> right;
  int level = 0;

  void bind(const Name& a, const Name& b) {
    left[a] = level;
    right[b] = level;
    ++level;
  }
};

bool name_eq(const Name& a, const Name& b, const AlphaEnv& env) {
  auto ia = env.left.find(a);
  auto ib = env.right.find(b);
  if (ia == env.left.end() && ib == env.right.end()) return a == b;
  if (ia == env.left.end() || ib == env.right.end()) return false;
  return ia->second == ib->second;
}

bool term_eq(const Term& a, const Term& b, const AlphaEnv& env) {
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return name_eq(a.name(), b.name(), env);
  return term_eq(a.left(), b.left(), env) && term_eq(a.right(), b.right(), env);
}

bool opt_term_eq(const std::optional<Term>& a, const std::optional<Term>& b,
                 const AlphaEnv& env) {
  if (a.has_value() != b.has_value()) return false;
  return !a || term_eq(*a, *b, env);
}

// Binders are compared positionally; protected names resolve in `outer`.
bool pattern_eq(const Pattern& a, const Pattern& b, const AlphaEnv& outer,
                std::vector<std::pair<Name, Name>>& binders) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case PatternKind::kBinder:
      binders.emplace_back(a.name(), b.name());
      return true;
    case PatternKind::kProtect:
      return name_eq(a.name(), b.name(), outer);
    case PatternKind::kCompound:
      return pattern_eq(a.left(), b.left(), outer, binders) &&
             pattern_eq(a.right(), b.right(), outer, binders);
  }
  return false;
}

bool alpha_rec(const Process& a, const Process& b, const AlphaEnv& env) {
  if (a.node().index() != b.node().index()) return false;
  if (const auto* x = a.as<Output>()) {
    const auto* y = b.as<Output>();
    if (!opt_term_eq(x->subject, y->subject, env)) return false;
    if (x->args.size() != y->args.size()) return false;
    for (std::size_t i = 0; i < x->args.size(); ++i) {
      if (!term_eq(x->args[i], y->args[i], env)) return false;
    }
    if (x->continuation.has_value() != y->continuation.has_value()) return false;
    return !x->continuation || alpha_rec(*x->continuation, *y->continuation, env);
  }
  if (const auto* x = a.as<Join>()) {
    const auto* y = b.as<Join>();
    if (x->atoms.size() != y->atoms.size()) return false;
    std::vector<std::pair<Name, Name>> binders;
    for (std::size_t i = 0; i < x->atoms.size(); ++i) {
      const InputAtom& ia = x->atoms[i];
      const InputAtom& ib = y->atoms[i];
      if (!opt_term_eq(ia.subject, ib.subject, env)) return false;
      if (ia.patterns.size() != ib.patterns.size()) return false;
      for (std::size_t k = 0; k < ia.patterns.size(); ++k) {
        if (!pattern_eq(ia.patterns[k], ib.patterns[k], env, binders)) return false;
      }
    }
    AlphaEnv inner = env;
    for (const auto& [l, r] : binders) inner.bind(l, r);
    return alpha_rec(x->body, y->body, inner);
  }
  if (const auto* x = a.as<Restrict>()) {
    const auto* y = b.as<Restrict>();
    AlphaEnv inner = env;
    inner.bind(x->name, y->name);
    return alpha_rec(x->body, y->body, inner);
  }
  if (const auto* x = a.as<Par>()) {
    const auto* y = b.as<Par>();
    return alpha_rec(x->left, y->left, env) && alpha_rec(x->right, y->right, env);
  }
  if (const auto* x = a.as<Cond>()) {
    const auto* y = b.as<Cond>();
    return term_eq(x->lhs, y->lhs, env) && term_eq(x->rhs, y->rhs, env) &&
           alpha_rec(x->then_branch, y->then_branch, env) &&
           alpha_rec(x->else_branch, y->else_branch, env);
  }
  if (const auto* x = a.as<Repl>()) {
    return alpha_rec(x->body, b.as<Repl>()->body, env);
  }
  return true;  // Null, Ok
}

void components_rec(const Process& p, std::vector<Process>& out) {
  if (const auto* par = p.as<Par>()) {
    components_rec(par->left, out);
    components_rec(par->right, out);
  } else if (!p.is<Null>()) {
    out.push_back(p);
  }
}

}  // namespace

std::vector<Name> join_binders(const Join& j) {
  std::vector<Name> out;
  for (const InputAtom& a : j.atoms) {
    for (const Pattern& p : a.patterns) pattern_binders(p, out);
  }
  return out;
}

std::set<Name> free_names(const Process& p) {
  std::set<Name> out;
  free_rec(p, {}, out);
  return out;
}

std::set<Name> all_names(const Process& p) {
  std::set<Name> out;
  all_rec(p, out);
  return out;
}

bool alpha_eq(const Process& a, const Process& b) { return alpha_rec(a, b, AlphaEnv{}); }

std::vector<Process> par_components(const Process& p) {
  std::vector<Process> out;
  components_rec(p, out);
  return out;
}

}  // namespace proclang
