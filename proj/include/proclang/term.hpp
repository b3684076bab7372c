#pragma once

#include <compare>
#include <memory>
#include <set>
#include <string>
#include <utility>

#include "proclang/name.hpp"

namespace proclang {

/// A name or a left-associated compound `s * t`. Tree shape is identity:
/// `a*(b*c)` and `(a*b)*c` are different terms.
class Term {
 public:
  Term() = default;
  explicit Term(Name leaf) : name_(std::move(leaf)) {}

  static Term compound(Term left, Term right);

  bool is_leaf() const { return kids_ == nullptr; }
  const Name& name() const { return name_; }
  const Term& left() const { return kids_->first; }
  const Term& right() const { return kids_->second; }

  std::size_t depth() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  Name name_;
  std::shared_ptr<const std::pair<Term, Term>> kids_;
};

enum class PatternKind { kBinder, kProtect, kCompound };

/// Intensional pattern: binder `x`, protected name `#a`, or compound `p * q`.
class Pattern {
 public:
  Pattern() = default;

  static Pattern binder(Name n) { return Pattern(PatternKind::kBinder, std::move(n)); }
  static Pattern protect(Name n) { return Pattern(PatternKind::kProtect, std::move(n)); }
  static Pattern compound(Pattern left, Pattern right);

  PatternKind kind() const { return kind_; }
  bool is_binder() const { return kind_ == PatternKind::kBinder; }
  bool is_protect() const { return kind_ == PatternKind::kProtect; }
  bool is_compound() const { return kind_ == PatternKind::kCompound; }
  const Name& name() const { return name_; }
  const Pattern& left() const { return kids_->first; }
  const Pattern& right() const { return kids_->second; }

  friend bool operator==(const Pattern& a, const Pattern& b);
  friend std::strong_ordering operator<=>(const Pattern& a, const Pattern& b);

 private:
  Pattern(PatternKind kind, Name n) : kind_(kind), name_(std::move(n)) {}

  PatternKind kind_ = PatternKind::kBinder;
  Name name_;
  std::shared_ptr<const std::pair<Pattern, Pattern>> kids_;
};

/// Pattern grades, ordered NO < NM < I.
enum class Matching { kNO, kNM, kI };

std::set<Name> free_names(const Term& t);
/// Protected names only; binders are not free.
std::set<Name> free_names(const Pattern& p);

struct BinderScan {
  std::set<Name> names;
  bool duplicate = false;
};

BinderScan binding_names(const Pattern& p);

bool well_formed_pattern(const Pattern& p, Matching grade);

/// Lifts a term into a binder-free pattern: leaves become `#a`.
Pattern protect_term(const Term& t);

}  // namespace proclang
