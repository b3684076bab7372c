#include <stdexcept>

#include "proclang/reduction.hpp"

namespace proclang {

namespace {

std::string nth(const char* letters, std::size_t i, const char* fallback) {
  const std::string pool(letters);
  if (i < pool.size()) return std::string(1, pool[i]);
  return fallback + std::to_string(i + 1);
}

}  // namespace

std::vector<Process> coordination_degree_demo(std::size_t k, const FeatureVector& l) {
  if (k == 0) throw std::invalid_argument("coordination demo needs k >= 1");
  if (k > 1 && l.coord == Coordination::kB) {
    throw std::invalid_argument("a binary language cannot join " + std::to_string(k) + " inputs");
  }
  const bool chan = l.medium == Medium::kC;
  const bool sync = l.sync == Synchronism::kS;
  Join head;
  std::vector<Process> out{Process{}};
  for (std::size_t j = 0; j < k; ++j) {
    std::optional<Term> channel;
    if (chan) channel = Term(Name::source("c" + std::to_string(j + 1)));
    head.atoms.push_back({channel, {Pattern::binder(Name::source(nth("xyzwv", j, "x")))}});
    std::optional<Process> cont;
    if (sync) cont = Process{};
    out.push_back(output(channel, {Term(Name::source(nth("abcde", j, "a")))}, cont));
  }
  head.body = Ok{};
  out[0] = head;
  return out;
}

}  // namespace proclang
