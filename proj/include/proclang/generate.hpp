#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "proclang/language.hpp"

namespace proclang {

struct GenOptions {
  std::size_t size = 8;  // rough number of constructors
  std::vector<std::string> channels{"a", "b", "c"};
  bool conditionals = true;
  bool replication = false;
  bool restriction = true;
};

/// A random process valid in `l`. Deterministic for a given engine state.
Process random_process(std::mt19937& rng, const FeatureVector& l, const GenOptions& o = {});

}  // namespace proclang
