#include "proclang/generate.hpp"

#include <algorithm>

namespace proclang {

namespace {

const std::vector<std::string> kBinderPool{"x", "y", "z", "w", "v", "u", "s", "r", "q"};

class Generator {
 public:
  Generator(std::mt19937& rng, const FeatureVector& l, const GenOptions& o) : rng_(rng), lang_(l), opt_(o) {
    for (const auto& c : o.channels) scope_.push_back(Name::source(c));
  }

  Process process(std::size_t budget) {
    if (budget <= 1) return leaf();
    switch (pick(10)) {
      case 0:
      case 1:
      case 2:
        return out(budget);
      case 3:
      case 4:
      case 5:
        return join(budget);
      case 6:
      case 7: {
        const std::size_t left = 1 + pick(budget - 1);
        return Par{process(left), process(budget - left)};
      }
      case 8:
        if (opt_.restriction) return restrict(budget);
        return out(budget);
      default:
        if (opt_.conditionals && pick(2) == 0) return cond(budget);
        if (opt_.replication) return Repl{guarded(budget - 1)};
        return join(budget);
    }
  }

  Term term(std::size_t depth = 2) {
    if (lang_.matching == Matching::kI && depth > 0 && pick(4) == 0) {
      return Term::compound(term(depth - 1), term(depth - 1));
    }
    return Term(name());
  }

 private:
  std::size_t pick(std::size_t n) { return n == 0 ? 0 : std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  Name name() { return scope_[pick(scope_.size())]; }

  Process leaf() {
    switch (pick(4)) {
      case 0:
        return Ok{};
      case 1:
        return Process{};
      default:
        return out(1);
    }
  }

  std::optional<Term> subject() {
    if (lang_.medium == Medium::kD) return std::nullopt;
    return lang_.matching == Matching::kI ? term(1) : Term(name());
  }

  std::size_t arity() { return lang_.arity == Arity::kM ? 1 : 1 + pick(3); }

  Process out(std::size_t budget) {
    Output o;
    o.subject = subject();
    const std::size_t n = arity();
    for (std::size_t i = 0; i < n; ++i) o.args.push_back(term());
    if (lang_.sync == Synchronism::kS) o.continuation = budget > 1 ? process(budget - 1) : leaf_no_out();
    return o;
  }

  Process leaf_no_out() { return pick(2) == 0 ? Process{Ok{}} : Process{}; }

  Pattern pattern(std::vector<Name>& binders, std::size_t depth = 2) {
    switch (lang_.matching) {
      case Matching::kNO:
        return Pattern::binder(binder(binders));
      case Matching::kNM:
        if (pick(3) == 0) return Pattern::protect(name());
        return Pattern::binder(binder(binders));
      case Matching::kI:
        if (depth > 0 && pick(3) == 0) return Pattern::compound(pattern(binders, depth - 1), pattern(binders, depth - 1));
        if (pick(3) == 0) return Pattern::protect(name());
        return Pattern::binder(binder(binders));
    }
    return Pattern::binder(binder(binders));
  }

  Name binder(std::vector<Name>& binders) {
    std::vector<Name> free;
    for (const auto& b : kBinderPool) {
      Name n = Name::source(b);
      if (std::find(binders.begin(), binders.end(), n) == binders.end()) free.push_back(n);
    }
    Name n = free.empty() ? Name::source("x" + std::to_string(binders.size())) : free[pick(free.size())];
    binders.push_back(n);
    return n;
  }

  Process join(std::size_t budget) {
    Join j;
    std::vector<Name> binders;
    const std::size_t atoms = lang_.coord == Coordination::kB ? 1 : 1 + pick(3);
    for (std::size_t i = 0; i < atoms; ++i) {
      InputAtom a;
      a.subject = subject();
      const std::size_t n = arity();
      for (std::size_t k = 0; k < n; ++k) a.patterns.push_back(pattern(binders));
      j.atoms.push_back(std::move(a));
    }
    const std::size_t saved = scope_.size();
    scope_.insert(scope_.end(), binders.begin(), binders.end());
    j.body = budget > 1 ? process(budget - 1) : leaf();
    scope_.resize(saved);
    return j;
  }

  Process restrict(std::size_t budget) {
    static const std::vector<std::string> kRestrictPool{"d", "e", "f", "a", "b"};
    const Name n = Name::source(kRestrictPool[pick(kRestrictPool.size())]);
    scope_.push_back(n);
    Process body = process(budget - 1);
    scope_.pop_back();
    return Restrict{n, body};
  }

  Process cond(std::size_t budget) {
    const std::size_t left = budget > 2 ? 1 + pick(budget - 2) : 1;
    const Term lhs = lang_.matching == Matching::kI ? term(1) : Term(name());
    const Term rhs = lang_.matching == Matching::kI ? term(1) : Term(name());
    return Cond{lhs, rhs, process(left), process(budget > left + 1 ? budget - left - 1 : 1)};
  }

  // Replicated bodies start with an input so exploration stays finite more
  // often than not.
  Process guarded(std::size_t budget) { return join(std::max<std::size_t>(budget, 2)); }

  std::mt19937& rng_;
  FeatureVector lang_;
  GenOptions opt_;
  std::vector<Name> scope_;
};

}  // namespace

Process random_process(std::mt19937& rng, const FeatureVector& l, const GenOptions& o) {
  Generator g(rng, l, o);
  return g.process(o.size);
}

}  // namespace proclang
