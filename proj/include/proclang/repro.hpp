#pragma once

#include <string>
#include <vector>

#include "proclang/explore.hpp"

namespace proclang {

struct ReproOptions {
  ExploreBounds bounds;
  int jobs = 1;
  std::size_t k = 4;  // participants for thm1-degree
};

struct ReproResult {
  bool passed = true;
  bool truncated = false;
  std::string report;
};

/// intro-join, thm1-degree, sec5-sync-async, sec8-deadlock,
/// thm4-poly-separation, thm8-namematch-witness.
const std::vector<std::string>& repro_ids();

/// Bundled source texts of a case with their languages, as `L[..]: text`.
std::vector<std::pair<FeatureVector, std::string>> repro_processes(const std::string& id,
                                                                   const ReproOptions& o = {});

/// Throws std::invalid_argument for an unknown id.
ReproResult run_repro(const std::string& id, const ReproOptions& o = {});

}  // namespace proclang
