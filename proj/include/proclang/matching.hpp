#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "proclang/process.hpp"

namespace proclang {

/// Finite map from names to terms, printed `{t1/x1, t2/x2}`.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const Name, Term>> init) : map_(init) {}

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  bool contains(const Name& n) const { return map_.contains(n); }
  const Term* find(const Name& n) const;
  void bind(const Name& n, Term t) { map_.insert_or_assign(n, std::move(t)); }
  void erase(const Name& n) { map_.erase(n); }

  const std::map<Name, Term>& bindings() const { return map_; }
  std::set<Name> domain() const;
  /// Names occurring in the image terms.
  std::set<Name> range_names() const;
  /// True when every image is a single name.
  bool names_only() const;

  std::string str() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<Name, Term> map_;
};

/// `{t//p}`: nullopt when undefined.
std::optional<Substitution> match_one(const Term& t, const Pattern& p);
/// Componentwise match of equal-length sequences.
std::optional<Substitution> poly_match(const std::vector<Term>& ts, const std::vector<Pattern>& ps);

/// Throws std::logic_error when the domains overlap.
Substitution union_disjoint(const Substitution& a, const Substitution& b);

Term apply(const Substitution& s, const Term& t);
/// Acts on protected names only: `s#x = protect_term(s(x))`. Binders are
/// binding occurrences and stay as they are.
Pattern apply(const Substitution& s, const Pattern& p);
/// Capture-avoiding. Colliding binders are renamed to the fresh name with
/// the same base and the lowest unused counter.
Process apply(const Substitution& s, const Process& p);

/// The term a pattern denotes once its binders take their images under s;
/// nullopt when some binder is outside the domain.
std::optional<Term> instantiate(const Substitution& s, const Pattern& p);

}  // namespace proclang
