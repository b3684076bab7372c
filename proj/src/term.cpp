#include "proclang/term.hpp"

#include <algorithm>
#include <array>

namespace proclang {

std::string Name::str() const {
  switch (origin_) {
    case NameOrigin::kSource:
      return base_;
    case NameOrigin::kReserved:
      return base_ + "$" + std::to_string(counter_);
    case NameOrigin::kFresh:
      return base_ + "'" + std::to_string(counter_);
  }
  return base_;
}

bool is_keyword(const std::string& word) {
  static constexpr std::array<const char*, 5> kKeywords = {"nu", "if", "then", "else", "ok"};
  return std::any_of(kKeywords.begin(), kKeywords.end(),
                     [&](const char* k) { return word == k; });
}

Term Term::compound(Term left, Term right) {
  Term t;
  t.kids_ = std::make_shared<const std::pair<Term, Term>>(std::move(left), std::move(right));
  return t;
}

std::size_t Term::depth() const {
  if (is_leaf()) return 1;
  return 1 + std::max(left().depth(), right().depth());
}

bool operator==(const Term& a, const Term& b) {
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.name_ == b.name_;
  if (a.kids_ == b.kids_) return true;
  return a.left() == b.left() && a.right() == b.right();
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  // leaves sort before compounds
  if (a.is_leaf() != b.is_leaf()) {
    return a.is_leaf() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a.is_leaf()) return a.name_ <=> b.name_;
  if (auto c = a.left() <=> b.left(); c != 0) return c;
  return a.right() <=> b.right();
}

Pattern Pattern::compound(Pattern left, Pattern right) {
  Pattern p;
  p.kind_ = PatternKind::kCompound;
  p.kids_ = std::make_shared<const std::pair<Pattern, Pattern>>(std::move(left), std::move(right));
  return p;
}

bool operator==(const Pattern& a, const Pattern& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != PatternKind::kCompound) return a.name_ == b.name_;
  if (a.kids_ == b.kids_) return true;
  return a.left() == b.left() && a.right() == b.right();
}

std::strong_ordering operator<=>(const Pattern& a, const Pattern& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.kind_ != PatternKind::kCompound) return a.name_ <=> b.name_;
  if (auto c = a.left() <=> b.left(); c != 0) return c;
  return a.right() <=> b.right();
}

namespace {

void collect(const Term& t, std::set<Name>& out) {
  if (t.is_leaf()) {
    out.insert(t.name());
    return;
  }
  collect(t.left(), out);
  collect(t.right(), out);
}

void collect_protected(const Pattern& p, std::set<Name>& out) {
  switch (p.kind()) {
    case PatternKind::kBinder:
      return;
    case PatternKind::kProtect:
      out.insert(p.name());
      return;
    case PatternKind::kCompound:
      collect_protected(p.left(), out);
      collect_protected(p.right(), out);
      return;
  }
}

void collect_binders(const Pattern& p, BinderScan& scan) {
  switch (p.kind()) {
    case PatternKind::kBinder:
      if (!scan.names.insert(p.name()).second) scan.duplicate = true;
      return;
    case PatternKind::kProtect:
      return;
    case PatternKind::kCompound:
      collect_binders(p.left(), scan);
      collect_binders(p.right(), scan);
      return;
  }
}

}  // namespace

std::set<Name> free_names(const Term& t) {
  std::set<Name> out;
  collect(t, out);
  return out;
}

std::set<Name> free_names(const Pattern& p) {
  std::set<Name> out;
  collect_protected(p, out);
  return out;
}

BinderScan binding_names(const Pattern& p) {
  BinderScan scan;
  collect_binders(p, scan);
  return scan;
}

bool well_formed_pattern(const Pattern& p, Matching grade) {
  switch (grade) {
    case Matching::kNO:
      if (!p.is_binder()) return false;
      break;
    case Matching::kNM:
      if (p.is_compound()) return false;
      break;
    case Matching::kI:
      break;
  }
  return !binding_names(p).duplicate;
}

Pattern protect_term(const Term& t) {
  if (t.is_leaf()) return Pattern::protect(t.name());
  return Pattern::compound(protect_term(t.left()), protect_term(t.right()));
}

}  // namespace proclang
