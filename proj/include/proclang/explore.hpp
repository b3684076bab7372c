#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "proclang/reduction.hpp"

namespace proclang {

struct ExploreBounds {
  std::size_t max_states = 20000;
  std::size_t max_depth = 200;
  std::size_t max_repl_unfold = 3;
};

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t degree = 0;
  std::string sigma;
};

struct StateNode {
  CanonicalState state;
  std::size_t depth = 0;
  std::size_t transitions = 0;  // successors found, whether or not they were kept
  bool expanded = false;        // every successor is in the graph
  std::optional<std::size_t> parent;
  std::optional<std::size_t> parent_edge;
};

/// BFS graph over canonical states. State ids follow discovery order and
/// edges are stored in the order they were found, so the dump is stable.
struct StateGraph {
  std::vector<StateNode> states;
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> out;  // edge ids per state
  bool hit_state_bound = false;
  bool hit_depth_bound = false;
  ExploreBounds bounds;

  bool truncated() const { return hit_state_bound || hit_depth_bound; }
};

/// Single-threaded reference exploration.
StateGraph explore_serial(const Process& p, const FeatureVector& l, const ExploreBounds& b = {});

/// Level-synchronous exploration: successors of a whole frontier are
/// computed on `jobs` OpenMP threads, then merged in frontier order. The
/// result is identical to explore_serial.
StateGraph explore_parallel(const Process& p, const FeatureVector& l, const ExploreBounds& b,
                            int jobs);

/// explore_serial for jobs <= 1, explore_parallel otherwise.
StateGraph explore(const Process& p, const FeatureVector& l, const ExploreBounds& b = {}, int jobs = 1);

struct ObservationProfile {
  bool may_succeed = false;
  bool reaches_stuck_without_success = false;
  bool has_cycle = false;
  /// A cycle, or a depth-truncated state without `ok`.
  bool diverges_within_bound = false;
  bool bound_hit = false;
  std::optional<std::size_t> max_degree_seen;
  std::size_t explored_states = 0;

  /// The coarse comparison used in place of behavioural equivalence:
  /// success, stuck-without-success and proven divergence.
  bool same_behaviour(const ObservationProfile& o) const {
    return may_succeed == o.may_succeed &&
           reaches_stuck_without_success == o.reaches_stuck_without_success &&
           has_cycle == o.has_cycle;
  }

  std::string str() const;
};

/// Profile of the whole graph, as seen from the initial state.
ObservationProfile observations(const StateGraph& g);

/// Profile of every state, each computed over the states reachable from it.
/// explored_states is left at 0 there.
std::vector<ObservationProfile> node_profiles(const StateGraph& g);

/// States that lie on a cycle (a strongly connected component with an
/// internal edge).
std::vector<std::size_t> cycle_states(const StateGraph& g);

/// State ids on the BFS-tree path from the initial state to `target`.
std::vector<std::size_t> path_to(const StateGraph& g, std::size_t target);

/// Printed states along path_to.
std::vector<std::string> trace_to(const StateGraph& g, std::size_t target);

/// `state <id> <form>` lines followed by `<from> -> <to> degree=k sigma={...}`.
std::string dump_graph(const StateGraph& g);

}  // namespace proclang
