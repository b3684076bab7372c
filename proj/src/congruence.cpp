#include "proclang/congruence.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "proclang/syntax.hpp"

namespace proclang {

namespace {

// `!P` offers `ok` as soon as P does, since !P == P | !P.
bool offers_ok(const Process& t) {
  if (t.is<Ok>()) return true;
  if (const auto* r = t.as<Repl>()) {
    std::vector<Name> labels;
    std::vector<Process> inner;
    split_canonical(r->body, labels, inner);
    return std::any_of(inner.begin(), inner.end(), offers_ok);
  }
  return false;
}

}  // namespace

bool CanonicalState::has_ok() const { return std::any_of(threads.begin(), threads.end(), offers_ok); }

namespace {

Term rename_term(const Term& t, const std::map<Name, Name>& m) {
  if (t.is_leaf()) {
    auto it = m.find(t.name());
    return it == m.end() ? t : Term(it->second);
  }
  return Term::compound(rename_term(t.left(), m), rename_term(t.right(), m));
}

Pattern rename_pattern(const Pattern& p, const std::map<Name, Name>& m) {
  if (p.is_compound()) {
    return Pattern::compound(rename_pattern(p.left(), m), rename_pattern(p.right(), m));
  }
  auto it = m.find(p.name());
  if (it == m.end()) return p;
  return p.is_binder() ? Pattern::binder(it->second) : Pattern::protect(it->second);
}

}  // namespace

Process rename_everywhere(const Process& p, const std::map<Name, Name>& m) {
  if (m.empty()) return p;
  return std::visit(
      [&](const auto& n) -> Process {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Null> || std::is_same_v<T, Ok>) {
          return p;
        } else if constexpr (std::is_same_v<T, Output>) {
          Output o;
          if (n.subject) o.subject = rename_term(*n.subject, m);
          for (const Term& t : n.args) o.args.push_back(rename_term(t, m));
          if (n.continuation) o.continuation = rename_everywhere(*n.continuation, m);
          return o;
        } else if constexpr (std::is_same_v<T, Join>) {
          Join j;
          for (const InputAtom& a : n.atoms) {
            InputAtom na;
            if (a.subject) na.subject = rename_term(*a.subject, m);
            for (const Pattern& pat : a.patterns) na.patterns.push_back(rename_pattern(pat, m));
            j.atoms.push_back(std::move(na));
          }
          j.body = rename_everywhere(n.body, m);
          return j;
        } else if constexpr (std::is_same_v<T, Restrict>) {
          auto it = m.find(n.name);
          return Restrict{it == m.end() ? n.name : it->second, rename_everywhere(n.body, m)};
        } else if constexpr (std::is_same_v<T, Par>) {
          return Par{rename_everywhere(n.left, m), rename_everywhere(n.right, m)};
        } else if constexpr (std::is_same_v<T, Cond>) {
          return Cond{rename_term(n.lhs, m), rename_term(n.rhs, m), rename_everywhere(n.then_branch, m),
                      rename_everywhere(n.else_branch, m)};
        } else if constexpr (std::is_same_v<T, Repl>) {
          return Repl{rename_everywhere(n.body, m)};
        }
      },
      p.node());
}

void split_canonical(const Process& canonical, std::vector<Name>& restricted,
                     std::vector<Process>& threads) {
  Process cur = canonical;
  while (const auto* r = cur.as<Restrict>()) {
    restricted.push_back(r->name);
    cur = r->body;
  }
  threads = par_components(cur);
}

namespace {

bool mentions(const Term& t, const std::set<Name>& names) {
  if (t.is_leaf()) return names.contains(t.name());
  return mentions(t.left(), names) || mentions(t.right(), names);
}

void term_names(const Term& t, std::set<Name>& out) {
  if (t.is_leaf()) {
    out.insert(t.name());
    return;
  }
  term_names(t.left(), out);
  term_names(t.right(), out);
}

// Free names once every resolvable conditional is resolved, with the rule
// Canonicalizer::collect applies. `open` holds the input binders in scope.
std::set<Name> live_names(const Process& p, const std::set<Name>& open) {
  std::set<Name> out;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Output>) {
          if (n.subject) term_names(*n.subject, out);
          for (const Term& t : n.args) term_names(t, out);
          if (n.continuation) out.merge(live_names(*n.continuation, open));
        } else if constexpr (std::is_same_v<T, Join>) {
          const std::vector<Name> bs = join_binders(n);
          std::set<Name> inner = open;
          inner.insert(bs.begin(), bs.end());
          for (const InputAtom& a : n.atoms) {
            if (a.subject) term_names(*a.subject, out);
            for (const Pattern& pat : a.patterns) {
              const auto fn = free_names(pat);
              out.insert(fn.begin(), fn.end());
            }
          }
          std::set<Name> body = live_names(n.body, inner);
          for (const Name& b : bs) body.erase(b);
          out.merge(body);
        } else if constexpr (std::is_same_v<T, Restrict>) {
          out = live_names(n.body, open);
          out.erase(n.name);
        } else if constexpr (std::is_same_v<T, Par>) {
          out = live_names(n.left, open);
          out.merge(live_names(n.right, open));
        } else if constexpr (std::is_same_v<T, Cond>) {
          if (n.lhs == n.rhs) {
            out = live_names(n.then_branch, open);
          } else if (!mentions(n.lhs, open) && !mentions(n.rhs, open)) {
            out = live_names(n.else_branch, open);
          } else {
            term_names(n.lhs, out);
            term_names(n.rhs, out);
            out.merge(live_names(n.then_branch, open));
            out.merge(live_names(n.else_branch, open));
          }
        } else if constexpr (std::is_same_v<T, Repl>) {
          out = live_names(n.body, open);
        }
      },
      p.node());
  return out;
}

// Gives every binder a unique temporary name so later renamings never capture.
class Uniquifier {
 public:
  explicit Uniquifier(std::set<Name> avoid) : avoid_(std::move(avoid)) {}

  Process run(const Process& p, const std::map<Name, Name>& env) {
    return std::visit(
        [&](const auto& n) -> Process {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Null> || std::is_same_v<T, Ok>) {
            return p;
          } else if constexpr (std::is_same_v<T, Output>) {
            Output o;
            if (n.subject) o.subject = rename_term(*n.subject, env);
            for (const Term& t : n.args) o.args.push_back(rename_term(t, env));
            if (n.continuation) o.continuation = run(*n.continuation, env);
            return o;
          } else if constexpr (std::is_same_v<T, Join>) {
            std::map<Name, Name> inner = env;
            std::map<Name, Name> binders;
            for (const Name& b : join_binders(n)) {
              const Name t = mint();
              binders[b] = t;
              inner[b] = t;
            }
            Join j;
            for (const InputAtom& a : n.atoms) {
              InputAtom na;
              if (a.subject) na.subject = rename_term(*a.subject, env);
              for (const Pattern& pat : a.patterns) {
                na.patterns.push_back(rename_binders_and_protects(pat, binders, env));
              }
              j.atoms.push_back(std::move(na));
            }
            j.body = run(n.body, inner);
            return j;
          } else if constexpr (std::is_same_v<T, Restrict>) {
            std::map<Name, Name> inner = env;
            const Name t = mint();
            inner[n.name] = t;
            return Restrict{t, run(n.body, inner)};
          } else if constexpr (std::is_same_v<T, Par>) {
            return Par{run(n.left, env), run(n.right, env)};
          } else if constexpr (std::is_same_v<T, Cond>) {
            return Cond{rename_term(n.lhs, env), rename_term(n.rhs, env), run(n.then_branch, env),
                        run(n.else_branch, env)};
          } else if constexpr (std::is_same_v<T, Repl>) {
            return Repl{run(n.body, env)};
          }
        },
        p.node());
  }

 private:
  static Pattern rename_binders_and_protects(const Pattern& p, const std::map<Name, Name>& binders,
                                             const std::map<Name, Name>& outer) {
    switch (p.kind()) {
      case PatternKind::kBinder:
        return Pattern::binder(binders.at(p.name()));
      case PatternKind::kProtect: {
        auto it = outer.find(p.name());
        return it == outer.end() ? p : Pattern::protect(it->second);
      }
      case PatternKind::kCompound:
        return Pattern::compound(rename_binders_and_protects(p.left(), binders, outer),
                                 rename_binders_and_protects(p.right(), binders, outer));
    }
    return p;
  }

  Name mint() {
    while (true) {
      Name n = Name::fresh("t", ++counter_);
      if (!avoid_.contains(n)) return n;
    }
  }

  std::set<Name> avoid_;
  std::uint32_t counter_ = 0;
};

struct Level {
  std::vector<Name> labels;
  std::vector<Process> threads;
  Process process;
};

class Canonicalizer {
 public:
  explicit Canonicalizer(const std::set<Name>& free) {
    for (const Name& n : free) {
      if (n.origin() == NameOrigin::kFresh && n.base() == "b") taken_.insert(n.counter());
    }
  }

  Level canon(const Process& p, std::size_t depth, const std::set<Name>& open) {
    std::vector<Name> restricted;
    std::vector<Process> raw;
    collect(p, open, restricted, raw);

    // (nu a)P == P when a is not free in P.
    std::vector<std::set<Name>> fns;
    fns.reserve(raw.size());
    std::set<Name> used;
    for (const Process& t : raw) {
      fns.push_back(live_names(t, open));
      used.insert(fns.back().begin(), fns.back().end());
    }
    std::vector<Name> kept;
    for (const Name& r : restricted) {
      if (used.contains(r)) kept.push_back(r);
    }

    const std::size_t inner_depth = depth + kept.size();
    std::vector<Process> threads;
    threads.reserve(raw.size());
    for (const Process& t : raw) threads.push_back(canon_thread(t, inner_depth, open));

    const std::vector<Name> order = label_order(kept, threads, fns);
    std::map<Name, Name> relabel;
    Level out;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Name l = label(depth + i + 1);
      relabel[order[i]] = l;
      out.labels.push_back(l);
    }
    std::vector<std::pair<std::string, Process>> keyed;
    keyed.reserve(threads.size());
    for (const Process& t : threads) {
      Process renamed = rename_everywhere(t, relabel);
      keyed.emplace_back(print(renamed), std::move(renamed));
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [k, t] : keyed) out.threads.push_back(std::move(t));
    out.process = restrict_all(out.labels, par_of(out.threads));
    return out;
  }

 private:
  Name label(std::size_t k) {
    // k-th counter not taken by a free `b'N`
    while (label_cache_.size() < k) {
      std::uint32_t next = label_cache_.empty() ? 1 : label_cache_.back() + 1;
      while (taken_.contains(next)) ++next;
      label_cache_.push_back(next);
    }
    return Name::fresh("b", label_cache_[k - 1]);
  }

  void collect(const Process& p, const std::set<Name>& open, std::vector<Name>& restricted,
               std::vector<Process>& threads) {
    if (p.is<Null>()) return;
    if (const auto* par = p.as<Par>()) {
      collect(par->left, open, restricted, threads);
      collect(par->right, open, restricted, threads);
    } else if (const auto* r = p.as<Restrict>()) {
      restricted.push_back(r->name);
      collect(r->body, open, restricted, threads);
    } else if (const auto* c = p.as<Cond>()) {
      if (c->lhs == c->rhs) {
        collect(c->then_branch, open, restricted, threads);
      } else if (!mentions(c->lhs, open) && !mentions(c->rhs, open)) {
        collect(c->else_branch, open, restricted, threads);
      } else {
        threads.push_back(p);
      }
    } else {
      threads.push_back(p);
    }
  }

  Process canon_thread(const Process& t, std::size_t depth, const std::set<Name>& open) {
    if (const auto* o = t.as<Output>()) {
      if (!o->continuation) return t;
      Output out = *o;
      out.continuation = canon(*o->continuation, depth, open).process;
      return out;
    }
    if (const auto* j = t.as<Join>()) {
      std::map<Name, Name> binders;
      std::set<Name> inner_open = open;
      std::size_t k = depth;
      for (const Name& b : join_binders(*j)) {
        const Name l = label(++k);
        binders[b] = l;
        inner_open.insert(l);
      }
      Join out;
      for (const InputAtom& a : j->atoms) {
        InputAtom na;
        na.subject = a.subject;
        for (const Pattern& pat : a.patterns) na.patterns.push_back(rename_pattern(pat, binders));
        out.atoms.push_back(std::move(na));
      }
      out.body = canon(rename_everywhere(j->body, binders), k, inner_open).process;
      return out;
    }
    if (const auto* r = t.as<Repl>()) {
      return Repl{canon(r->body, depth, open).process};
    }
    if (const auto* c = t.as<Cond>()) {
      return Cond{c->lhs, c->rhs, canon(c->then_branch, depth, open).process,
                  canon(c->else_branch, depth, open).process};
    }
    return t;
  }

  // Canonical order of the restricted names of one level: connected
  // components by shared threads, each labelled by colour refinement with
  // individualisation, keeping the lexicographically least rendering.
  std::vector<Name> label_order(const std::vector<Name>& names, const std::vector<Process>& threads,
                                const std::vector<std::set<Name>>& fns) {
    if (names.empty()) return {};
    const std::size_t n = names.size();
    std::map<Name, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[names[i]] = i;

    std::vector<std::vector<std::size_t>> thread_names(threads.size());
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t t = 0; t < threads.size(); ++t) {
      for (const Name& m : fns[t]) {
        auto it = index.find(m);
        if (it != index.end()) thread_names[t].push_back(it->second);
      }
      for (std::size_t k = 1; k < thread_names[t].size(); ++k) {
        parent[find(thread_names[t][k])] = find(thread_names[t][0]);
      }
    }

    struct Component {
      std::vector<std::size_t> members;
      std::vector<std::size_t> threads;
      std::string key;
      std::vector<std::size_t> order;
    };
    std::map<std::size_t, Component> comps;
    for (std::size_t i = 0; i < n; ++i) comps[find(i)].members.push_back(i);
    for (std::size_t t = 0; t < threads.size(); ++t) {
      if (!thread_names[t].empty()) comps[find(thread_names[t][0])].threads.push_back(t);
    }

    std::vector<Component> list;
    for (auto& [root, c] : comps) {
      LocalLabeler labeler(names, threads, c.members, c.threads);
      std::tie(c.key, c.order) = labeler.best();
      list.push_back(std::move(c));
    }
    std::stable_sort(list.begin(), list.end(),
                     [](const Component& a, const Component& b) { return a.key < b.key; });
    std::vector<Name> out;
    for (const Component& c : list) {
      for (std::size_t i : c.order) out.push_back(names[i]);
    }
    return out;
  }

  class LocalLabeler {
   public:
    LocalLabeler(const std::vector<Name>& names, const std::vector<Process>& threads,
                 const std::vector<std::size_t>& members, const std::vector<std::size_t>& thread_ids)
        : names_(names), threads_(threads), members_(members), thread_ids_(thread_ids) {
      for (std::size_t k = 0; k < members_.size(); ++k) local_[names_[members_[k]]] = k;
      for (std::size_t t : thread_ids_) {
        std::vector<std::size_t> ms;
        for (const Name& m : free_names(threads_[t])) {
          auto it = local_.find(m);
          if (it != local_.end()) ms.push_back(it->second);
        }
        uses_.push_back(std::move(ms));
      }
    }

    // Returns the least rendering and the member indices in label order.
    std::pair<std::string, std::vector<std::size_t>> best() {
      std::vector<int> colors(members_.size(), 0);
      refine(colors);
      search(colors);
      std::vector<std::size_t> order(members_.size());
      for (std::size_t k = 0; k < members_.size(); ++k) {
        order[static_cast<std::size_t>(best_colors_[k])] = members_[k];
      }
      return {best_key_, order};
    }

   private:
    std::string render(std::size_t thread_pos, const std::vector<int>& colors, long self) const {
      const NameRenderer r = [&](const Name& m) -> std::string {
        auto it = local_.find(m);
        if (it == local_.end()) return m.str();
        if (static_cast<long>(it->second) == self) return "@";
        return "%" + std::to_string(colors[it->second]);
      };
      return print(threads_[thread_ids_[thread_pos]], r);
    }

    static int count_distinct(const std::vector<int>& colors) {
      std::set<int> s(colors.begin(), colors.end());
      return static_cast<int>(s.size());
    }

    void refine(std::vector<int>& colors) const {
      int classes = count_distinct(colors);
      while (true) {
        std::vector<std::pair<int, std::vector<std::string>>> sigs(members_.size());
        for (std::size_t k = 0; k < members_.size(); ++k) sigs[k].first = colors[k];
        for (std::size_t t = 0; t < thread_ids_.size(); ++t) {
          for (std::size_t k : uses_[t]) {
            sigs[k].second.push_back(render(t, colors, static_cast<long>(k)));
          }
        }
        for (auto& s : sigs) std::sort(s.second.begin(), s.second.end());
        std::vector<std::pair<int, std::vector<std::string>>> sorted = sigs;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t k = 0; k < members_.size(); ++k) {
          colors[k] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sigs[k]) -
                                       sorted.begin());
        }
        const int next = static_cast<int>(sorted.size());
        if (next == classes) return;
        classes = next;
      }
    }

    void search(const std::vector<int>& colors) {
      std::map<int, std::vector<std::size_t>> cells;
      for (std::size_t k = 0; k < colors.size(); ++k) cells[colors[k]].push_back(k);
      const std::vector<std::size_t>* target = nullptr;
      for (const auto& [c, ks] : cells) {
        if (ks.size() > 1) {
          target = &ks;
          break;
        }
      }
      if (target == nullptr) {
        std::vector<std::string> rendered;
        for (std::size_t t = 0; t < thread_ids_.size(); ++t) rendered.push_back(render(t, colors, -1));
        std::sort(rendered.begin(), rendered.end());
        std::string key;
        for (const auto& s : rendered) key += s + "\n";
        if (!have_best_ || key < best_key_) {
          best_key_ = std::move(key);
          best_colors_ = colors;
          have_best_ = true;
        }
        return;
      }
      const int cell_color = colors[target->front()];
      for (std::size_t chosen : *target) {
        std::vector<std::pair<int, int>> split(colors.size());
        for (std::size_t k = 0; k < colors.size(); ++k) {
          split[k] = {colors[k], (colors[k] == cell_color && k != chosen) ? 1 : 0};
        }
        std::vector<std::pair<int, int>> sorted = split;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> next(colors.size());
        for (std::size_t k = 0; k < colors.size(); ++k) {
          next[k] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), split[k]) - sorted.begin());
        }
        refine(next);
        search(next);
      }
    }

    const std::vector<Name>& names_;
    const std::vector<Process>& threads_;
    const std::vector<std::size_t>& members_;
    const std::vector<std::size_t>& thread_ids_;
    std::map<Name, std::size_t> local_;
    std::vector<std::vector<std::size_t>> uses_;
    std::string best_key_;
    std::vector<int> best_colors_;
    bool have_best_ = false;
  };

  std::set<std::uint32_t> taken_;
  std::vector<std::uint32_t> label_cache_;
};

}  // namespace

CanonicalState normalize(const Process& p) {
  const std::set<Name> free = free_names(p);
  Uniquifier uniq(all_names(p));
  const Process unique = uniq.run(p, {});
  Canonicalizer canon(free);
  Level top = canon.canon(unique, 0, {});
  CanonicalState s;
  s.restricted = std::move(top.labels);
  s.threads = std::move(top.threads);
  s.process = std::move(top.process);
  s.key = print(s.process);
  return s;
}

bool struct_eq(const Process& a, const Process& b) { return normalize(a).key == normalize(b).key; }

}  // namespace proclang
