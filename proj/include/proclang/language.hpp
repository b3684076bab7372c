#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "proclang/process.hpp"

namespace proclang {

enum class Synchronism { kA, kS };
enum class Arity { kM, kP };
enum class Medium { kD, kC };
enum class Coordination { kB, kJ };

/// One of the 48 calculi, rendered `L[A,M,D,NO,B]`.
struct FeatureVector {
  Synchronism sync = Synchronism::kA;
  Arity arity = Arity::kM;
  Medium medium = Medium::kD;
  Matching matching = Matching::kNO;
  Coordination coord = Coordination::kB;

  std::string str() const;
  /// Throws std::invalid_argument on anything but an exact `L[...]` name.
  static FeatureVector parse(std::string_view text);
  static std::vector<FeatureVector> all();

  friend auto operator<=>(const FeatureVector&, const FeatureVector&) = default;
};

/// `L[-,M,-,-,B]` style filter; a dash matches any value.
struct LanguageFilter {
  std::optional<Synchronism> sync;
  std::optional<Arity> arity;
  std::optional<Medium> medium;
  std::optional<Matching> matching;
  std::optional<Coordination> coord;

  static LanguageFilter parse(std::string_view text);
  bool matches(const FeatureVector& l) const;
};

/// Pointwise A<=S, M<=P, D<=C, NO<=NM<=I, B<=J.
bool feature_leq(const FeatureVector& lo, const FeatureVector& hi);

struct Violation {
  std::string path;  // e.g. "/par.r/join.body/out"
  std::string rule;
  std::string detail;
};

std::vector<Violation> validate_process(const Process& p, const FeatureVector& l);

std::string format_violation(const Violation& v);

}  // namespace proclang
