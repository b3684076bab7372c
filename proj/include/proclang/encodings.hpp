#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "proclang/language.hpp"

namespace proclang {

/// Mints reserved names `base$N` with one counter per translation, so the
/// numbering follows the pre-order of the source tree.
class ReservedNames {
 public:
  Name next(const std::string& base) { return Name::reserved(base, ++counter_); }

 private:
  std::uint32_t counter_ = 0;
};

using Recurse = std::function<Process(const Process&)>;

/// A translation given clause by clause: `clause(P, sub, names)` produces the
/// image of the top constructor of P, calling `sub` for immediate
/// subprocesses. The validator relies on that shape to audit
/// compositionality.
struct Encoding {
  std::string method;
  FeatureVector source;
  FeatureVector target;
  std::function<Process(const Process&, const Recurse&, ReservedNames&)> clause;
  /// Maps a source name to the target names standing for it.
  std::function<std::vector<Name>(const Name&)> rename_policy;
  /// Bases of the reserved names the clauses may mint or mention.
  std::vector<std::string> reserved;
};

/// Validates P against the source language (std::invalid_argument on
/// violations or on reserved names in P), translates, and checks the result
/// against the target language (std::logic_error if a clause is broken).
Process translate(const Encoding& e, const Process& p);

/// Translation without the validity checks, for negative controls and
/// hole-marker audits.
Process translate_unchecked(const Encoding& e, const Process& p);

/// Homomorphic clause for every constructor; a starting point for others.
Process homomorphic_clause(const Process& p, const Recurse& sub);

Encoding identity_encoding(const FeatureVector& l);

/// Feature-wise embedding of a language into a larger one. Throws
/// std::invalid_argument unless feature_leq(from, to).
Encoding embed_leq_encoding(const FeatureVector& from, const FeatureVector& to);
Process embed_leq(const Process& p, const FeatureVector& from, const FeatureVector& to);

/// Synchronous to asynchronous, binary: L[S,M,C,NO,B] -> L[A,M,C,NO,B].
Encoding sync_async_binary();
/// Synchronous to asynchronous, joining: L[S,M,C,NO,J] -> L[A,M,C,NO,J].
Encoding sync_async_joining();
/// Joins flattened into input chains: L[A,M,C,NO,J] -> L[A,M,C,NO,B].
/// Known to be invalid.
Encoding naive_join_flatten();

Process encode_sync_async_binary(const Process& p);
Process encode_sync_async_joining(const Process& p);
Process encode_naive_join_flatten(const Process& p);

}  // namespace proclang
