#include "proclang/matching.hpp"

#include <sstream>
#include <stdexcept>

#include "proclang/syntax.hpp"

namespace proclang {

const Term* Substitution::find(const Name& n) const {
  auto it = map_.find(n);
  return it == map_.end() ? nullptr : &it->second;
}

std::set<Name> Substitution::domain() const {
  std::set<Name> out;
  for (const auto& [k, v] : map_) out.insert(k);
  return out;
}

std::set<Name> Substitution::range_names() const {
  std::set<Name> out;
  for (const auto& [k, v] : map_) {
    for (const Name& n : free_names(v)) out.insert(n);
  }
  return out;
}

bool Substitution::names_only() const {
  for (const auto& [k, v] : map_) {
    if (!v.is_leaf()) return false;
  }
  return true;
}

std::string Substitution::str() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [k, v] : map_) {
    if (!first) os << ", ";
    os << print(v) << '/' << k.str();
    first = false;
  }
  os << '}';
  return os.str();
}

Substitution union_disjoint(const Substitution& a, const Substitution& b) {
  Substitution out = a;
  for (const auto& [k, v] : b.bindings()) {
    if (out.contains(k)) {
      throw std::logic_error("union of substitutions with overlapping domain at " + k.str());
    }
    out.bind(k, v);
  }
  return out;
}

std::optional<Substitution> match_one(const Term& t, const Pattern& p) {
  switch (p.kind()) {
    case PatternKind::kBinder:
      return Substitution{{p.name(), t}};
    case PatternKind::kProtect:
      if (t.is_leaf() && t.name() == p.name()) return Substitution{};
      return std::nullopt;
    case PatternKind::kCompound: {
      if (t.is_leaf()) return std::nullopt;
      auto l = match_one(t.left(), p.left());
      if (!l) return std::nullopt;
      auto r = match_one(t.right(), p.right());
      if (!r) return std::nullopt;
      return union_disjoint(*l, *r);
    }
  }
  return std::nullopt;
}

std::optional<Substitution> poly_match(const std::vector<Term>& ts, const std::vector<Pattern>& ps) {
  if (ts.size() != ps.size()) return std::nullopt;
  Substitution acc;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    auto s = match_one(ts[i], ps[i]);
    if (!s) return std::nullopt;
    acc = union_disjoint(acc, *s);
  }
  return acc;
}

Term apply(const Substitution& s, const Term& t) {
  if (t.is_leaf()) {
    const Term* img = s.find(t.name());
    return img ? *img : t;
  }
  return Term::compound(apply(s, t.left()), apply(s, t.right()));
}

Pattern apply(const Substitution& s, const Pattern& p) {
  switch (p.kind()) {
    case PatternKind::kBinder:
      return p;
    case PatternKind::kProtect: {
      const Term* img = s.find(p.name());
      return img ? protect_term(*img) : p;
    }
    case PatternKind::kCompound:
      return Pattern::compound(apply(s, p.left()), apply(s, p.right()));
  }
  return p;
}

std::optional<Term> instantiate(const Substitution& s, const Pattern& p) {
  switch (p.kind()) {
    case PatternKind::kBinder: {
      const Term* img = s.find(p.name());
      if (!img) return std::nullopt;
      return *img;
    }
    case PatternKind::kProtect:
      return Term(p.name());
    case PatternKind::kCompound: {
      auto l = instantiate(s, p.left());
      auto r = instantiate(s, p.right());
      if (!l || !r) return std::nullopt;
      return Term::compound(*l, *r);
    }
  }
  return std::nullopt;
}

namespace {

Pattern rename_binders(const Pattern& p, const Substitution& renames) {
  switch (p.kind()) {
    case PatternKind::kBinder: {
      const Term* img = renames.find(p.name());
      return img ? Pattern::binder(img->name()) : p;
    }
    case PatternKind::kProtect:
      return p;
    case PatternKind::kCompound:
      return Pattern::compound(rename_binders(p.left(), renames), rename_binders(p.right(), renames));
  }
  return p;
}

class Applier {
 public:
  Applier(const Substitution& s, const Process& p) : avoid_(all_names(p)) {
    for (const auto& [k, v] : s.bindings()) {
      avoid_.insert(k);
      for (const Name& n : free_names(v)) avoid_.insert(n);
    }
  }

  Process run(const Substitution& s, const Process& p) {
    if (s.empty()) return p;
    return std::visit(
        [&](const auto& n) -> Process {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Null> || std::is_same_v<T, Ok>) {
            return p;
          } else if constexpr (std::is_same_v<T, Output>) {
            Output o;
            if (n.subject) o.subject = apply(s, *n.subject);
            for (const Term& t : n.args) o.args.push_back(apply(s, t));
            if (n.continuation) o.continuation = run(s, *n.continuation);
            return o;
          } else if constexpr (std::is_same_v<T, Join>) {
            return join(s, n);
          } else if constexpr (std::is_same_v<T, Restrict>) {
            Substitution inner = s;
            inner.erase(n.name);
            if (inner.empty()) return p;
            Name bound = n.name;
            if (inner.range_names().contains(bound)) {
              bound = freshen(n.name);
              inner.bind(n.name, Term(bound));
            }
            return Restrict{bound, run(inner, n.body)};
          } else if constexpr (std::is_same_v<T, Par>) {
            return Par{run(s, n.left), run(s, n.right)};
          } else if constexpr (std::is_same_v<T, Cond>) {
            return Cond{apply(s, n.lhs), apply(s, n.rhs), run(s, n.then_branch), run(s, n.else_branch)};
          } else if constexpr (std::is_same_v<T, Repl>) {
            return Repl{run(s, n.body)};
          }
        },
        p.node());
  }

 private:
  Process join(const Substitution& s, const Join& j) {
    Substitution inner = s;
    const std::vector<Name> binders = join_binders(j);
    for (const Name& b : binders) inner.erase(b);
    const std::set<Name> range = inner.range_names();
    Substitution renames;
    for (const Name& b : binders) {
      if (range.contains(b)) {
        const Name b2 = freshen(b);
        renames.bind(b, Term(b2));
        inner.bind(b, Term(b2));
      }
    }
    Join out;
    for (const InputAtom& a : j.atoms) {
      InputAtom na;
      if (a.subject) na.subject = apply(s, *a.subject);
      for (const Pattern& pat : a.patterns) na.patterns.push_back(rename_binders(apply(s, pat), renames));
      out.atoms.push_back(std::move(na));
    }
    out.body = run(inner, j.body);
    return out;
  }

  Name freshen(const Name& n) {
    for (std::uint32_t c = 1;; ++c) {
      Name candidate = Name::fresh(n.base(), c);
      if (avoid_.insert(candidate).second) return candidate;
    }
  }

  std::set<Name> avoid_;
};

}  // namespace

Process apply(const Substitution& s, const Process& p) {
  if (s.empty()) return p;
  Applier applier(s, p);
  return applier.run(s, p);
}

}  // namespace proclang
