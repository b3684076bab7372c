#include "proclang/language.hpp"

#include <array>
#include <stdexcept>

#include "proclang/syntax.hpp"

namespace proclang {

namespace {

const char* sync_str(Synchronism s) { return s == Synchronism::kA ? "A" : "S"; }
const char* arity_str(Arity a) { return a == Arity::kM ? "M" : "P"; }
const char* medium_str(Medium m) { return m == Medium::kD ? "D" : "C"; }
const char* coord_str(Coordination c) { return c == Coordination::kB ? "B" : "J"; }
const char* matching_str(Matching m) {
  switch (m) {
    case Matching::kNO:
      return "NO";
    case Matching::kNM:
      return "NM";
    case Matching::kI:
      return "I";
  }
  return "?";
}

std::vector<std::string> split_fields(std::string_view text) {
  if (text.size() < 3 || text.substr(0, 2) != "L[" || text.back() != ']') {
    throw std::invalid_argument("language must look like L[A,M,D,NO,B]: " + std::string(text));
  }
  std::string_view body = text.substr(2, text.size() - 3);
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = body.find(',', start);
    std::string f(body.substr(start, comma == std::string_view::npos ? body.npos : comma - start));
    // tolerate spaces after commas
    while (!f.empty() && f.front() == ' ') f.erase(f.begin());
    while (!f.empty() && f.back() == ' ') f.pop_back();
    fields.push_back(f);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (fields.size() != 5) {
    throw std::invalid_argument("language needs exactly five features: " + std::string(text));
  }
  return fields;
}

template <class E, std::size_t N>
std::optional<E> pick(const std::string& field, const std::array<std::pair<const char*, E>, N>& table,
                      bool allow_dash, std::string_view text) {
  if (allow_dash && field == "-") return std::nullopt;
  for (const auto& [label, value] : table) {
    if (field == label) return value;
  }
  throw std::invalid_argument("unknown feature '" + field + "' in " + std::string(text));
}

constexpr std::array<std::pair<const char*, Synchronism>, 2> kSync{{{"A", Synchronism::kA}, {"S", Synchronism::kS}}};
constexpr std::array<std::pair<const char*, Arity>, 2> kArity{{{"M", Arity::kM}, {"P", Arity::kP}}};
constexpr std::array<std::pair<const char*, Medium>, 2> kMedium{{{"D", Medium::kD}, {"C", Medium::kC}}};
constexpr std::array<std::pair<const char*, Matching>, 3> kMatching{
    {{"NO", Matching::kNO}, {"NM", Matching::kNM}, {"I", Matching::kI}}};
constexpr std::array<std::pair<const char*, Coordination>, 2> kCoord{
    {{"B", Coordination::kB}, {"J", Coordination::kJ}}};

}  // namespace

std::string FeatureVector::str() const {
  return std::string("L[") + sync_str(sync) + "," + arity_str(arity) + "," + medium_str(medium) +
         "," + matching_str(matching) + "," + coord_str(coord) + "]";
}

FeatureVector FeatureVector::parse(std::string_view text) {
  const auto f = split_fields(text);
  FeatureVector l;
  l.sync = *pick(f[0], kSync, false, text);
  l.arity = *pick(f[1], kArity, false, text);
  l.medium = *pick(f[2], kMedium, false, text);
  l.matching = *pick(f[3], kMatching, false, text);
  l.coord = *pick(f[4], kCoord, false, text);
  return l;
}

std::vector<FeatureVector> FeatureVector::all() {
  std::vector<FeatureVector> out;
  for (auto s : {Synchronism::kA, Synchronism::kS}) {
    for (auto a : {Arity::kM, Arity::kP}) {
      for (auto m : {Medium::kD, Medium::kC}) {
        for (auto p : {Matching::kNO, Matching::kNM, Matching::kI}) {
          for (auto c : {Coordination::kB, Coordination::kJ}) out.push_back({s, a, m, p, c});
        }
      }
    }
  }
  return out;
}

LanguageFilter LanguageFilter::parse(std::string_view text) {
  const auto f = split_fields(text);
  LanguageFilter filter;
  filter.sync = pick(f[0], kSync, true, text);
  filter.arity = pick(f[1], kArity, true, text);
  filter.medium = pick(f[2], kMedium, true, text);
  filter.matching = pick(f[3], kMatching, true, text);
  filter.coord = pick(f[4], kCoord, true, text);
  return filter;
}

bool LanguageFilter::matches(const FeatureVector& l) const {
  return (!sync || *sync == l.sync) && (!arity || *arity == l.arity) &&
         (!medium || *medium == l.medium) && (!matching || *matching == l.matching) &&
         (!coord || *coord == l.coord);
}

bool feature_leq(const FeatureVector& lo, const FeatureVector& hi) {
  return lo.sync <= hi.sync && lo.arity <= hi.arity && lo.medium <= hi.medium &&
         lo.matching <= hi.matching && lo.coord <= hi.coord;
}

std::string format_violation(const Violation& v) {
  return (v.path.empty() ? std::string("/") : v.path) + ": " + v.rule + ": " + v.detail;
}

namespace {

class Validator {
 public:
  explicit Validator(const FeatureVector& l) : lang_(l) {}

  std::vector<Violation> run(const Process& p) {
    visit(p, "");
    return std::move(out_);
  }

 private:
  void report(const std::string& path, const char* rule, std::string detail) {
    out_.push_back({path, rule, std::move(detail)});
  }

  void check_terms_are_names(const std::string& path, const Term& t, const char* what) {
    if (lang_.matching != Matching::kI && !t.is_leaf()) {
      report(path, "compound-term", std::string(what) + " `" + print(t) +
                                        "` is compound outside an intensional language");
    }
  }

  void check_subject(const std::string& path, const std::optional<Term>& subject) {
    if (lang_.medium == Medium::kD) {
      if (subject) report(path, "dataspace-subject", "channel `" + print(*subject) + "` in a dataspace language");
      return;
    }
    if (!subject) {
      report(path, "missing-channel", "no channel in a channel-based language");
      return;
    }
    check_terms_are_names(path, *subject, "channel");
  }

  void check_arity(const std::string& path, std::size_t n) {
    if (lang_.arity == Arity::kM && n != 1) {
      report(path, "monadic-arity", "sequence of length " + std::to_string(n) + " in a monadic language");
    }
  }

  void visit(const Process& p, const std::string& path) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Output>) {
            const std::string here = path + "/out";
            if (lang_.sync == Synchronism::kA && n.continuation) {
              report(here, "async-continuation", "output has a continuation in an asynchronous language");
            }
            if (lang_.sync == Synchronism::kS && !n.continuation) {
              report(here, "sync-continuation", "output lacks a continuation in a synchronous language");
            }
            check_subject(here, n.subject);
            check_arity(here, n.args.size());
            for (const Term& t : n.args) check_terms_are_names(here, t, "argument");
            if (n.continuation) visit(*n.continuation, here + ".cont");
          } else if constexpr (std::is_same_v<T, Join>) {
            const std::string here = path + "/join";
            if (lang_.coord == Coordination::kB && n.atoms.size() != 1) {
              report(here, "binary-join", "join of " + std::to_string(n.atoms.size()) +
                                              " inputs in a binary language");
            }
            std::set<Name> seen;
            for (std::size_t i = 0; i < n.atoms.size(); ++i) {
              const std::string at = here + ".atom" + std::to_string(i);
              const InputAtom& a = n.atoms[i];
              check_subject(at, a.subject);
              check_arity(at, a.patterns.size());
              for (const Pattern& pat : a.patterns) {
                if (!well_formed_pattern(pat, Matching::kI)) {
                  report(at, "repeated-binder", "pattern `" + print(pat) + "` repeats a binding name");
                } else if (!well_formed_pattern(pat, lang_.matching)) {
                  report(at, "pattern-grade", "pattern `" + print(pat) + "` not allowed in " + lang_.str());
                }
                for (const Name& b : binding_names(pat).names) {
                  if (!seen.insert(b).second) {
                    report(at, "repeated-binder", "binding name " + b.str() + " occurs twice in one input");
                  }
                }
              }
            }
            visit(n.body, here + ".body");
          } else if constexpr (std::is_same_v<T, Restrict>) {
            visit(n.body, path + "/nu");
          } else if constexpr (std::is_same_v<T, Par>) {
            visit(n.left, path + "/par.l");
            visit(n.right, path + "/par.r");
          } else if constexpr (std::is_same_v<T, Cond>) {
            check_terms_are_names(path + "/if", n.lhs, "test term");
            check_terms_are_names(path + "/if", n.rhs, "test term");
            visit(n.then_branch, path + "/if.then");
            visit(n.else_branch, path + "/if.else");
          } else if constexpr (std::is_same_v<T, Repl>) {
            visit(n.body, path + "/repl");
          }
        },
        p.node());
  }

  FeatureVector lang_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate_process(const Process& p, const FeatureVector& l) {
  return Validator(l).run(p);
}

}  // namespace proclang
