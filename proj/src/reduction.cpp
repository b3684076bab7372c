#include "proclang/reduction.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace proclang {

std::string ParticipantRef::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) os << '/';
    os << (i % 2 == 0 ? 't' : 'c') << path[i];
  }
  return os.str();
}

namespace {

constexpr std::size_t kMaxNesting = 2;

// One virtual copy of a replicated thread.
struct Instance {
  int parent = -1;                  // enclosing instance, -1 for a top-level replication
  std::size_t owner_thread = 0;     // index of the Repl thread inside the parent
  std::size_t copy = 0;
  std::vector<Name> temps;
  std::vector<Process> threads;
  ParticipantRef ref;               // path to the Repl thread, without the copy
};

struct Participant {
  ParticipantRef ref;
  int instance = -1;                // -1 for a top-level thread
  std::size_t thread = 0;
  const Process* proc = nullptr;
};

class Enumerator {
 public:
  Enumerator(const CanonicalState& s, const FeatureVector& l, std::size_t cap)
      : state_(s), lang_(l), cap_(cap), avoid_(all_names(s.process)) {
    for (std::size_t i = 0; i < s.threads.size(); ++i) {
      const Process& t = s.threads[i];
      ParticipantRef ref{{i}};
      if (t.is<Output>() || t.is<Join>()) {
        add_participant(ref, -1, i, t);
      } else if (const auto* r = t.as<Repl>()) {
        unfold(*r, ref, -1, i, 1);
      }
    }
  }

  std::vector<Transition> run() {
    std::vector<Transition> out;
    std::map<std::tuple<std::size_t, std::string, std::string>, bool> seen;
    for (std::size_t j = 0; j < parts_.size(); ++j) {
      const auto* join = parts_[j].proc->as<Join>();
      if (join == nullptr) continue;
      std::vector<std::size_t> chosen;
      assign(j, *join, 0, Substitution{}, chosen, [&](const std::vector<std::size_t>& outs,
                                                      const Substitution& sigma) {
        if (!copies_form_prefix(j, outs)) return;
        Transition t;
        t.redex.join = parts_[j].ref;
        for (std::size_t o : outs) t.redex.outputs.push_back(parts_[o].ref);
        t.redex.sigma = sigma;
        t.redex.degree = outs.size() + 1;
        t.successor = build(j, outs, sigma);
        auto key = std::make_tuple(t.redex.degree, sigma.str(), t.successor.key);
        if (seen.emplace(key, true).second) out.push_back(std::move(t));
      });
    }
    std::sort(out.begin(), out.end(), [](const Transition& a, const Transition& b) {
      const std::string sa = a.redex.sigma.str();
      const std::string sb = b.redex.sigma.str();
      return std::tie(a.redex.degree, sa, a.successor.key) <
             std::tie(b.redex.degree, sb, b.successor.key);
    });
    return out;
  }

  const std::vector<Participant>& participants() const { return parts_; }

  std::optional<Transition> replay(const Redex& r) {
    auto find = [&](const ParticipantRef& ref) -> std::optional<std::size_t> {
      for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i].ref == ref) return i;
      }
      return std::nullopt;
    };
    const auto j = find(r.join);
    if (!j || !parts_[*j].proc->is<Join>()) return std::nullopt;
    const Join& join = *parts_[*j].proc->as<Join>();
    if (join.atoms.size() != r.outputs.size()) return std::nullopt;
    std::vector<std::size_t> outs;
    Substitution sigma;
    for (std::size_t i = 0; i < r.outputs.size(); ++i) {
      const auto o = find(r.outputs[i]);
      if (!o || *o == *j || std::find(outs.begin(), outs.end(), *o) != outs.end()) return std::nullopt;
      auto m = fits(join.atoms[i], *parts_[*o].proc);
      if (!m) return std::nullopt;
      sigma = union_disjoint(sigma, *m);
      outs.push_back(*o);
    }
    Transition t;
    t.redex = r;
    t.redex.sigma = sigma;
    t.redex.degree = outs.size() + 1;
    t.successor = build(*j, outs, sigma);
    return t;
  }

 private:
  Name mint() {
    while (true) {
      Name n = Name::fresh("u", ++counter_);
      if (avoid_.insert(n).second) return n;
    }
  }

  void add_participant(const ParticipantRef& ref, int instance, std::size_t thread, const Process& p) {
    parts_.push_back({ref, instance, thread, &p});
  }

  void unfold(const Repl& r, const ParticipantRef& ref, int parent, std::size_t owner, std::size_t level) {
    std::vector<Name> labels;
    std::vector<Process> threads;
    split_canonical(r.body, labels, threads);
    for (std::size_t c = 0; c < cap_; ++c) {
      Instance inst;
      inst.parent = parent;
      inst.owner_thread = owner;
      inst.copy = c;
      inst.ref = ref;
      std::map<Name, Name> renames;
      for (const Name& l : labels) {
        const Name t = mint();
        renames[l] = t;
        inst.temps.push_back(t);
      }
      for (const Process& t : threads) inst.threads.push_back(rename_everywhere(t, renames));
      instances_.push_back(std::move(inst));
    }
    // Participants point into instance storage; reserve would not survive
    // nested pushes, so collect after all instances of this level exist.
    const std::size_t first = instances_.size() - cap_;
    for (std::size_t c = 0; c < cap_; ++c) {
      const std::size_t id = first + c;
      for (std::size_t k = 0; k < instances_[id].threads.size(); ++k) {
        ParticipantRef child = ref;
        child.path.push_back(c);
        child.path.push_back(k);
        pending_.push_back({child, static_cast<int>(id), k, level});
      }
    }
    if (parent == -1) flush_pending();
  }

  void flush_pending() {
    while (!pending_.empty()) {
      const Pending p = pending_.front();
      pending_.erase(pending_.begin());
      const Process& t = instances_[static_cast<std::size_t>(p.instance)].threads[p.thread];
      if (t.is<Output>() || t.is<Join>()) {
        parts_.push_back({p.ref, p.instance, p.thread, nullptr});
      } else if (const auto* r = t.as<Repl>()) {
        if (p.level < kMaxNesting) unfold(*r, p.ref, p.instance, p.thread, p.level + 1);
      }
    }
    // Instance storage is stable now; resolve process pointers.
    for (Participant& part : parts_) {
      if (part.instance >= 0) {
        part.proc = &instances_[static_cast<std::size_t>(part.instance)].threads[part.thread];
      }
    }
  }

  std::optional<Substitution> fits(const InputAtom& atom, const Process& candidate) const {
    const auto* out = candidate.as<Output>();
    if (out == nullptr) return std::nullopt;
    if (lang_.medium == Medium::kC || atom.subject || out->subject) {
      if (!atom.subject || !out->subject || !(*atom.subject == *out->subject)) return std::nullopt;
    }
    return poly_match(out->args, atom.patterns);
  }

  template <class Emit>
  void assign(std::size_t j, const Join& join, std::size_t atom, const Substitution& acc,
              std::vector<std::size_t>& chosen, const Emit& emit) {
    if (atom == join.atoms.size()) {
      emit(chosen, acc);
      return;
    }
    for (std::size_t o = 0; o < parts_.size(); ++o) {
      if (o == j || std::find(chosen.begin(), chosen.end(), o) != chosen.end()) continue;
      auto m = fits(join.atoms[atom], *parts_[o].proc);
      if (!m) continue;
      chosen.push_back(o);
      assign(j, join, atom + 1, union_disjoint(acc, *m), chosen, emit);
      chosen.pop_back();
    }
  }

  std::set<std::size_t> used_instances(std::size_t j, const std::vector<std::size_t>& outs) const {
    std::set<std::size_t> used;
    auto mark = [&](int inst) {
      while (inst >= 0) {
        used.insert(static_cast<std::size_t>(inst));
        inst = instances_[static_cast<std::size_t>(inst)].parent;
      }
    };
    mark(parts_[j].instance);
    for (std::size_t o : outs) mark(parts_[o].instance);
    return used;
  }

  // Copies of one replication are interchangeable; only accept redexes that
  // use copies 0..m-1 so each redex is produced once.
  bool copies_form_prefix(std::size_t j, const std::vector<std::size_t>& outs) const {
    const std::set<std::size_t> used = used_instances(j, outs);
    for (std::size_t id : used) {
      const Instance& inst = instances_[id];
      if (inst.copy == 0) continue;
      const std::size_t prev = id - 1;
      if (!used.contains(prev)) return false;
    }
    return true;
  }

  CanonicalState build(std::size_t j, const std::vector<std::size_t>& outs, const Substitution& sigma) {
    std::set<std::pair<int, std::size_t>> consumed;
    consumed.insert({parts_[j].instance, parts_[j].thread});
    for (std::size_t o : outs) consumed.insert({parts_[o].instance, parts_[o].thread});

    std::vector<Name> restricted = state_.restricted;
    std::vector<Process> threads;
    for (std::size_t i = 0; i < state_.threads.size(); ++i) {
      if (!consumed.contains({-1, i})) threads.push_back(state_.threads[i]);
    }
    for (std::size_t id : used_instances(j, outs)) {
      const Instance& inst = instances_[id];
      restricted.insert(restricted.end(), inst.temps.begin(), inst.temps.end());
      for (std::size_t k = 0; k < inst.threads.size(); ++k) {
        if (!consumed.contains({static_cast<int>(id), k})) threads.push_back(inst.threads[k]);
      }
    }
    for (std::size_t o : outs) {
      const Output& out = *parts_[o].proc->as<Output>();
      if (out.continuation) threads.push_back(*out.continuation);
    }
    threads.push_back(apply(sigma, parts_[j].proc->as<Join>()->body));
    return normalize(restrict_all(restricted, par_of(threads)));
  }

  struct Pending {
    ParticipantRef ref;
    int instance;
    std::size_t thread;
    std::size_t level;
  };

  const CanonicalState& state_;
  FeatureVector lang_;
  std::size_t cap_;
  std::set<Name> avoid_;
  std::uint32_t counter_ = 0;
  std::vector<Instance> instances_;
  std::vector<Participant> parts_;
  std::vector<Pending> pending_;
};

}  // namespace

std::vector<Transition> enumerate_transitions(const CanonicalState& s, const FeatureVector& l,
                                              std::size_t max_repl_unfold) {
  return Enumerator(s, l, max_repl_unfold).run();
}

std::vector<Redex> enumerate_redexes(const CanonicalState& s, const FeatureVector& l,
                                     std::size_t max_repl_unfold) {
  std::vector<Redex> out;
  for (Transition& t : enumerate_transitions(s, l, max_repl_unfold)) out.push_back(std::move(t.redex));
  return out;
}

CanonicalState step(const CanonicalState& s, const Redex& r, const FeatureVector& l,
                    std::size_t max_repl_unfold) {
  Enumerator e(s, l, max_repl_unfold);
  auto t = e.replay(r);
  if (!t) throw std::invalid_argument("redex " + r.join.str() + " does not apply to this state");
  return std::move(t->successor);
}

}  // namespace proclang
