#include "proclang/explore.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace proclang {

namespace {

class Builder {
 public:
  Builder(const Process& p, const FeatureVector& l, const ExploreBounds& b) : lang_(l) {
    graph_.bounds = b;
    add_state(normalize(p), 0, std::nullopt);
  }

  const FeatureVector& lang() const { return lang_; }
  const ExploreBounds& bounds() const { return graph_.bounds; }
  const StateGraph& graph() const { return graph_; }

  std::vector<std::size_t> initial_frontier() const { return {0}; }

  std::vector<Transition> successors(std::size_t id) const {
    return enumerate_transitions(graph_.states[id].state, lang_, graph_.bounds.max_repl_unfold);
  }

  // Merges the successors of one state; returns newly discovered ids.
  void merge(std::size_t id, std::vector<Transition>&& ts, std::vector<std::size_t>& next) {
    StateNode& node = graph_.states[id];
    node.transitions = ts.size();
    if (node.depth >= graph_.bounds.max_depth) {
      if (!ts.empty()) graph_.hit_depth_bound = true;
      node.expanded = ts.empty();
      return;
    }
    bool complete = true;
    for (Transition& t : ts) {
      std::size_t to;
      auto it = index_.find(t.successor.key);
      if (it != index_.end()) {
        to = it->second;
      } else if (graph_.states.size() >= graph_.bounds.max_states) {
        graph_.hit_state_bound = true;
        complete = false;
        continue;
      } else {
        to = add_state(std::move(t.successor), graph_.states[id].depth + 1, id);
        graph_.states[to].parent_edge = graph_.edges.size();
        next.push_back(to);
      }
      graph_.out[id].push_back(graph_.edges.size());
      graph_.edges.push_back({id, to, t.redex.degree, t.redex.sigma.str()});
    }
    graph_.states[id].expanded = complete;
  }

  StateGraph take() { return std::move(graph_); }

 private:
  std::size_t add_state(CanonicalState s, std::size_t depth, std::optional<std::size_t> parent) {
    const std::size_t id = graph_.states.size();
    index_.emplace(s.key, id);
    StateNode node;
    node.state = std::move(s);
    node.depth = depth;
    node.parent = parent;
    graph_.states.push_back(std::move(node));
    graph_.out.emplace_back();
    return id;
  }

  FeatureVector lang_;
  StateGraph graph_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace

StateGraph explore_serial(const Process& p, const FeatureVector& l, const ExploreBounds& b) {
  Builder builder(p, l, b);
  std::vector<std::size_t> frontier = builder.initial_frontier();
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t id : frontier) builder.merge(id, builder.successors(id), next);
    frontier = std::move(next);
  }
  return builder.take();
}

StateGraph explore_parallel(const Process& p, const FeatureVector& l, const ExploreBounds& b, int jobs) {
  Builder builder(p, l, b);
  std::vector<std::size_t> frontier = builder.initial_frontier();
  while (!frontier.empty()) {
    std::vector<std::vector<Transition>> found(frontier.size());
    const long n = static_cast<long>(frontier.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs) if (n > 1)
    for (long i = 0; i < n; ++i) {
      found[static_cast<std::size_t>(i)] = builder.successors(frontier[static_cast<std::size_t>(i)]);
    }
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) builder.merge(frontier[i], std::move(found[i]), next);
    frontier = std::move(next);
  }
  return builder.take();
}

StateGraph explore(const Process& p, const FeatureVector& l, const ExploreBounds& b, int jobs) {
  if (jobs <= 1) return explore_serial(p, l, b);
  return explore_parallel(p, l, b, jobs);
}

std::string ObservationProfile::str() const {
  std::ostringstream os;
  os << "may_succeed=" << (may_succeed ? "true" : "false")
     << " stuck_without_success=" << (reaches_stuck_without_success ? "true" : "false")
     << " cycle=" << (has_cycle ? "true" : "false")
     << " diverges=" << (diverges_within_bound ? "true" : "false")
     << " bound_hit=" << (bound_hit ? "true" : "false") << " max_degree=";
  if (max_degree_seen) {
    os << *max_degree_seen;
  } else {
    os << "none";
  }
  os << " states=" << explored_states;
  return os.str();
}

namespace {

// Iterative Tarjan. Components come out sinks first.
std::vector<std::vector<std::size_t>> strongly_connected(const StateGraph& g) {
  const std::size_t n = g.states.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  std::size_t counter = 0;
  std::vector<std::pair<std::size_t, std::size_t>> work;  // node, next edge position
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    work.push_back({root, 0});
    while (!work.empty()) {
      auto& [v, pos] = work.back();
      if (pos == 0 && index[v] == kUnset) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (pos < g.out[v].size()) {
        const std::size_t w = g.edges[g.out[v][pos]].to;
        ++pos;
        if (index[w] == kUnset) {
          work.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        while (true) {
          const std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
          if (w == v) break;
        }
        comps.push_back(std::move(comp));
      }
      const std::size_t done = v;
      work.pop_back();
      if (!work.empty()) {
        const std::size_t parent = work.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return comps;
}

bool stuck_without_success(const StateNode& s) {
  return s.transitions == 0 && s.expanded && !s.state.has_ok();
}

bool depth_truncated_without_success(const StateGraph& g, const StateNode& s) {
  return s.depth >= g.bounds.max_depth && s.transitions > 0 && !s.state.has_ok();
}

}  // namespace

std::vector<ObservationProfile> node_profiles(const StateGraph& g) {
  const std::size_t n = g.states.size();
  const auto comps = strongly_connected(g);
  std::vector<std::size_t> comp_of(n);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (std::size_t v : comps[c]) comp_of[v] = c;
  }
  std::vector<ObservationProfile> per_comp(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    ObservationProfile& p = per_comp[c];
    p.has_cycle = comps[c].size() > 1;
    for (std::size_t v : comps[c]) {
      const StateNode& s = g.states[v];
      p.may_succeed |= s.state.has_ok();
      p.reaches_stuck_without_success |= stuck_without_success(s);
      p.diverges_within_bound |= depth_truncated_without_success(g, s);
      p.bound_hit |= !s.expanded;
      for (std::size_t e : g.out[v]) {
        const Edge& edge = g.edges[e];
        p.max_degree_seen = std::max(p.max_degree_seen.value_or(0), edge.degree);
        if (edge.to == v) p.has_cycle = true;
        const std::size_t d = comp_of[edge.to];
        if (d == c) continue;
        // sinks first: d is already final
        const ObservationProfile& q = per_comp[d];
        p.may_succeed |= q.may_succeed;
        p.reaches_stuck_without_success |= q.reaches_stuck_without_success;
        p.has_cycle |= q.has_cycle;
        p.diverges_within_bound |= q.diverges_within_bound;
        p.bound_hit |= q.bound_hit;
        if (q.max_degree_seen) p.max_degree_seen = std::max(p.max_degree_seen.value_or(0), *q.max_degree_seen);
      }
    }
    p.diverges_within_bound |= p.has_cycle;
  }
  std::vector<ObservationProfile> out(n);
  for (std::size_t v = 0; v < n; ++v) out[v] = per_comp[comp_of[v]];
  return out;
}

std::vector<std::size_t> cycle_states(const StateGraph& g) {
  std::vector<std::size_t> out;
  for (const auto& comp : strongly_connected(g)) {
    bool cyclic = comp.size() > 1;
    for (std::size_t e : g.out[comp.front()]) cyclic |= g.edges[e].to == comp.front();
    if (cyclic) out.insert(out.end(), comp.begin(), comp.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

ObservationProfile observations(const StateGraph& g) {
  ObservationProfile p = node_profiles(g).front();
  p.bound_hit = g.truncated();
  p.explored_states = g.states.size();
  return p;
}

std::vector<std::size_t> path_to(const StateGraph& g, std::size_t target) {
  std::vector<std::size_t> path;
  std::optional<std::size_t> cur = target;
  while (cur) {
    path.push_back(*cur);
    cur = g.states[*cur].parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<std::string> trace_to(const StateGraph& g, std::size_t target) {
  std::vector<std::string> out;
  for (std::size_t id : path_to(g, target)) out.push_back(g.states[id].state.key);
  return out;
}

std::string dump_graph(const StateGraph& g) {
  std::ostringstream os;
  for (std::size_t i = 0; i < g.states.size(); ++i) os << "state " << i << ' ' << g.states[i].state.key << '\n';
  for (const Edge& e : g.edges) {
    os << e.from << " -> " << e.to << " degree=" << e.degree << " sigma=" << e.sigma << '\n';
  }
  return os.str();
}

}  // namespace proclang
