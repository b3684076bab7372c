#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "proclang/congruence.hpp"
#include "proclang/language.hpp"
#include "proclang/matching.hpp"

namespace proclang {

/// Where a participant of a redex lives: a top-level thread, or a thread of
/// a virtual copy of a replicated thread, possibly nested. Printed as `t3`
/// or `t1/c0/t2` (thread 2 of copy 0 of the replication at thread 1).
struct ParticipantRef {
  std::vector<std::size_t> path;  // thread, copy, thread, copy, thread...

  std::string str() const;
  friend auto operator<=>(const ParticipantRef&, const ParticipantRef&) = default;
};

struct Redex {
  ParticipantRef join;
  std::vector<ParticipantRef> outputs;  // outputs[i] feeds atom i
  Substitution sigma;
  std::size_t degree = 0;
};

struct Transition {
  Redex redex;
  CanonicalState successor;
};

/// All one-step reductions of a canonical state, deduplicated by
/// (substitution, degree, successor) and sorted by degree, substitution and
/// successor key. `max_repl_unfold` bounds the copies taken from each
/// replicated thread within one redex.
std::vector<Transition> enumerate_transitions(const CanonicalState& s, const FeatureVector& l,
                                              std::size_t max_repl_unfold = 3);

std::vector<Redex> enumerate_redexes(const CanonicalState& s, const FeatureVector& l,
                                     std::size_t max_repl_unfold = 3);

/// Successor for a redex returned by enumerate_redexes on the same state.
/// Throws std::invalid_argument for a redex that does not belong to `s`.
CanonicalState step(const CanonicalState& s, const Redex& r, const FeatureVector& l,
                    std::size_t max_repl_unfold = 3);

/// The participant family {S_0, .., S_k} of the coordination-degree
/// argument: S_0 joins on k distinct channels (no channels in a dataspace
/// language) and continues with `ok`, S_j sends on channel j. All k+1 are
/// needed for the single reduction. Throws std::invalid_argument when k == 0,
/// or k > 1 in a binary language.
std::vector<Process> coordination_degree_demo(std::size_t k, const FeatureVector& l);

}  // namespace proclang
