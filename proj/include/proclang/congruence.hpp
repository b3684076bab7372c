#pragma once

#include <map>
#include <string>
#include <vector>

#include "proclang/process.hpp"

namespace proclang {

/// Normal form of a process under structural congruence without the
/// replication axiom: hoisted, canonically named restrictions over a sorted
/// multiset of threads (outputs, joins, replications, `ok`).
///
/// Every bound name is renamed to a positional label `b'k`; counters already
/// used by free names of the same base are skipped. Two processes are
/// congruent iff their `key`s are equal.
struct CanonicalState {
  std::vector<Name> restricted;
  std::vector<Process> threads;
  Process process;
  std::string key;

  bool has_ok() const;
};

CanonicalState normalize(const Process& p);

/// normalize(a).key == normalize(b).key. Sound for full congruence, complete
/// without replication unfolding.
bool struct_eq(const Process& a, const Process& b);

/// Splits a canonical process `(nu l1)..(nu ln)(T1 | .. | Tm)` back into its
/// restricted labels and threads.
void split_canonical(const Process& canonical, std::vector<Name>& restricted,
                     std::vector<Process>& threads);

/// Renames every occurrence of the mapped names, binders included. Only
/// sound when no capture can arise (all bound names distinct).
Process rename_everywhere(const Process& p, const std::map<Name, Name>& renames);

}  // namespace proclang
