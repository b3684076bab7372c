#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proclang/encodings.hpp"
#include "proclang/explore.hpp"

namespace proclang {

enum class Criterion {
  kCompositionality,
  kNameInvariance,
  kOperationalCorrespondence,
  kDivergenceReflection,
  kSuccessSensitivity,
};

enum class Status { kPass, kFail, kInconclusive };

const char* criterion_name(Criterion c);
const char* status_name(Status s);

/// Outcome of one bounded check. A fail carries a witness trace (printed
/// states or processes); an inconclusive verdict carries the bound it hit.
struct Verdict {
  Criterion criterion = Criterion::kCompositionality;
  Status status = Status::kPass;
  std::vector<std::string> witness;
  std::string note;
  std::optional<ExploreBounds> bound;

  std::string str() const;
};

struct CheckOptions {
  ExploreBounds bounds;
  int jobs = 1;
};

Verdict check_success_sensitivity(const Encoding& e, const Process& p, const CheckOptions& o = {});
Verdict check_divergence_reflection(const Encoding& e, const Process& p, const CheckOptions& o = {});
/// Compares observation profiles in place of behavioural equivalence; the
/// verdict note says so.
Verdict check_operational_correspondence(const Encoding& e, const Process& p, const CheckOptions& o = {});
/// Injective substitutions are checked up to structural congruence, others
/// up to observation profiles.
Verdict check_name_invariance(const Encoding& e, const Process& p, const std::vector<Substitution>& sigmas,
                              const CheckOptions& o = {});
Verdict check_compositionality(const Encoding& e);

/// Identity, a swap of the first two free names, and a merge of them.
std::vector<Substitution> sample_substitutions(const Process& p);

/// The four per-process criteria on one source process, in a fixed order.
std::vector<Verdict> check_process(const Encoding& e, const Process& p, const CheckOptions& o = {});

/// True when every printed state of a trace parses and each one reaches the
/// next in a single reduction step of `l`.
bool witness_replays(const std::vector<std::string>& trace, const FeatureVector& l,
                     std::size_t max_repl_unfold = 3);

}  // namespace proclang
