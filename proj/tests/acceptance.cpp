// Acceptance gate: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "oracles.hpp"
#include "proclang/cli.hpp"
#include "proclang/encodings.hpp"
#include "proclang/explore.hpp"
#include "proclang/generate.hpp"
#include "proclang/reduction.hpp"
#include "proclang/repro.hpp"
#include "proclang/syntax.hpp"
#include "proclang/validator.hpp"

using namespace proclang;
namespace fs = std::filesystem;

namespace {

const std::string kOmega = "(nu d)(!(d(x) >> d<x>) | d<a>)";

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

FeatureVector lang(const char* s) { return FeatureVector::parse(s); }

// 1. The intro reduction, compared against a hand-substituted reduct.
Outcome intro_join() {
  Outcome o;
  const FeatureVector l = lang("L[S,M,C,NO,J]");
  const Process source = parse_process("m<a>.p1<m>.0 | n<b>.p2<n>.0 | (m(x) | n(y)) >> q<x>.q<y>.0");
  const auto s = normalize(source);
  const auto ts = enumerate_transitions(s, l);
  o.expect(ts.size() == 1, "expected exactly one transition, got " + std::to_string(ts.size()));
  if (ts.size() != 1) return o;
  o.expect(ts[0].redex.degree == 3, "degree " + std::to_string(ts[0].redex.degree));
  // The state names binders by position; map them back to the source join.
  const Join* original = nullptr;
  for (const Process& t : par_components(source)) original = t.as<Join>() ? t.as<Join>() : original;
  const Join* canonical = nullptr;
  for (const Process& t : s.threads) canonical = t.as<Join>() ? t.as<Join>() : canonical;
  if (!original || !canonical) {
    o.fail("join thread missing");
    return o;
  }
  const auto src = join_binders(*original);
  const auto lab = join_binders(*canonical);
  Substitution sigma;
  for (std::size_t i = 0; i < src.size() && i < lab.size(); ++i) {
    if (const Term* t = ts[0].redex.sigma.find(lab[i])) sigma.bind(src[i], *t);
  }
  o.expect(ts[0].redex.sigma.size() == 2 && sigma.str() == "{a/x, b/y}", "sigma " + ts[0].redex.sigma.str());
  const auto expected = normalize(parse_process("p1<m>.0 | p2<n>.0 | q<a>.q<b>.0"));
  o.expect(ts[0].successor.key == expected.key, "reduct " + ts[0].successor.key);
  const auto r = run_repro("intro-join");
  o.expect(r.passed, "repro intro-join failed");
  return o;
}

// 2. match_one and poly_match against matching on token streams.
Outcome match_oracle() {
  Outcome o;
  const std::vector<std::string> alphabet{"a", "b", "c"};
  auto image = [](const Substitution& s) {
    std::map<std::string, std::string> m;
    for (const auto& [k, v] : s.bindings()) {
      std::string joined;
      for (const auto& t : oracle::tokens(v)) joined += (joined.empty() ? "" : " ") + t;
      m[k.str()] = joined;
    }
    return m;
  };
  auto lib = [](auto&& f) -> std::optional<Substitution> {
    try {
      return f();
    } catch (const std::logic_error&) {
      return std::nullopt;
    }
  };
  const auto terms = oracle::all_terms(3, alphabet);
  const auto patterns = oracle::all_patterns(3, alphabet);
  std::size_t pairs = 0;
  for (const Pattern& p : patterns) {
    for (const Term& t : terms) {
      ++pairs;
      const auto want = oracle::naive_match(t, p);
      const auto got = lib([&] { return match_one(t, p); });
      const std::string where = print(t) + " against " + print(p);
      if (want.ill_formed) {
        o.expect(!got, "ill-formed pattern matched: " + where);
        continue;
      }
      o.expect(got.has_value() == want.defined, "definedness differs: " + where);
      if (got && want.defined) o.expect(image(*got) == want.bindings, "substitution differs: " + where);
    }
  }
  // Pairs of depth <= 2 for the sequence form.
  const auto t2 = oracle::all_terms(2, alphabet);
  const auto p2 = oracle::all_patterns(2, alphabet);
  for (const Pattern& pa : p2) {
    for (const Pattern& pb : p2) {
      for (const Term& ta : t2) {
        for (const Term& tb : t2) {
          const auto ma = oracle::naive_match(ta, pa);
          const auto mb = oracle::naive_match(tb, pb);
          bool clash = false;
          for (const auto& [k, v] : ma.bindings) clash |= mb.bindings.contains(k);
          const auto got = lib([&] { return poly_match({ta, tb}, {pa, pb}); });
          if (ma.ill_formed || mb.ill_formed || clash) {
            o.expect(!got, "ill-formed sequence matched");
            continue;
          }
          const bool defined = ma.defined && mb.defined;
          o.expect(got.has_value() == defined, "poly_match definedness differs");
          if (got && defined) {
            auto want = ma.bindings;
            want.insert(mb.bindings.begin(), mb.bindings.end());
            o.expect(image(*got) == want, "poly_match substitution differs");
          }
        }
      }
    }
  }
  o.expect(!poly_match({terms[0]}, {patterns[0], patterns[1]}), "unequal arity matched");
  o.detail = o.pass ? std::to_string(pairs) + " term/pattern pairs" : o.detail;
  return o;
}

// 3. normalize is invariant under random applications of the axioms.
Outcome congruence() {
  Outcome o;
  std::mt19937 rng(1234);
  const auto all = FeatureVector::all();
  GenOptions g;
  std::size_t failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto& l = all[rng() % all.size()];
    g.size = 4 + rng() % 10;
    const Process p = random_process(rng, l, g);
    oracle::CongruenceRewriter rw(rng);
    const Process q = rw.rewrite(p, 1 + static_cast<int>(rng() % 12));
    if (normalize(p).key != normalize(q).key) {
      if (failures++ == 0) {
        std::string axioms;
        for (const auto& a : rw.log()) axioms += " " + a;
        o.fail(print(p) + "  vs  " + print(q) + "  after" + axioms);
      }
    }
  }
  if (failures) o.detail = std::to_string(failures) + " failures, first: " + o.detail;
  return o;
}

// 4. Every participant of the degree-(k+1) family is needed.
Outcome coordination_degree() {
  Outcome o;
  for (std::size_t k = 1; k <= 5; ++k) {
    const FeatureVector l = lang("L[A,M,C,NO,J]");
    const auto parts = coordination_degree_demo(k, l);
    o.expect(parts.size() == k + 1, "family size");
    const auto ts = enumerate_transitions(normalize(par_of(parts)), l);
    bool success = false;
    for (const auto& t : ts) success |= t.redex.degree == k + 1 && t.successor.has_ok();
    o.expect(success, "k=" + std::to_string(k) + ": no degree-" + std::to_string(k + 1) + " step to success");
    for (std::size_t j = 0; j <= k; ++j) {
      std::vector<Process> rest = parts;
      rest.erase(rest.begin() + static_cast<long>(j));
      o.expect(enumerate_redexes(normalize(par_of(rest)), l).empty(),
               "k=" + std::to_string(k) + ": deleting S" + std::to_string(j) + " leaves a redex");
    }
  }
  return o;
}

std::vector<std::pair<std::string, Process>> corpus(const std::string& name, const FeatureVector& l) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(fs::path(PROCLANG_CORPUS_DIR) / name)) {
    if (e.path().extension() == ".proc") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, Process>> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    const Process p = parse_process(ss.str());
    if (!validate_process(p, l).empty()) throw std::runtime_error(f.string() + " is not in " + l.str());
    out.emplace_back(f.filename().string(), p);
  }
  return out;
}

std::set<std::size_t> join_sizes(const Process& p) {
  std::set<std::size_t> out;
  std::function<void(const Process&)> walk = [&](const Process& q) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Join>) {
            out.insert(n.atoms.size());
            walk(n.body);
          } else if constexpr (std::is_same_v<T, Output>) {
            if (n.continuation) walk(*n.continuation);
          } else if constexpr (std::is_same_v<T, Restrict> || std::is_same_v<T, Repl>) {
            walk(n.body);
          } else if constexpr (std::is_same_v<T, Par>) {
            walk(n.left);
            walk(n.right);
          } else if constexpr (std::is_same_v<T, Cond>) {
            walk(n.then_branch);
            walk(n.else_branch);
          }
        },
        q.node());
  };
  walk(p);
  return out;
}

// 5. The joining sync-async encoding over the shipped corpus.
Outcome sync_async_corpus() {
  Outcome o;
  const Encoding e = sync_async_joining();
  const auto entries = corpus("sync-async", e.source);
  o.expect(entries.size() >= 20, "corpus has " + std::to_string(entries.size()) + " entries");
  std::set<std::size_t> sizes;
  for (const auto& [name, p] : entries) sizes.merge(join_sizes(p));
  o.expect(sizes.contains(1) && sizes.contains(2) && sizes.contains(3), "corpus lacks 1-, 2- or 3-atom joins");
  const auto comp = check_compositionality(e);
  o.expect(comp.status == Status::kPass, comp.str());
  std::size_t verdicts = 1;
  for (const auto& [name, p] : entries) {
    for (const auto& v : check_process(e, p)) {
      ++verdicts;
      o.expect(v.status == Status::kPass, name + ": " + v.str());
    }
  }
  if (o.pass) o.detail = std::to_string(entries.size()) + " entries, " + std::to_string(verdicts) + " verdicts";
  return o;
}

// 6. The deadlock of the naive join flattening.
Outcome deadlock() {
  Outcome o;
  const FeatureVector src = lang("L[A,M,C,NO,J]");
  const Process soup = parse_process("(c1(w) | c2(x)) >> ok | (c2(y) | c1(z)) >> " + kOmega + " | c1<a> | c2<b>");
  const auto sp = observations(explore(soup, src));
  o.expect(sp.may_succeed && !sp.reaches_stuck_without_success && sp.has_cycle && sp.diverges_within_bound &&
               !sp.bound_hit,
           "source profile " + sp.str());
  const Encoding e = naive_join_flatten();
  const auto tp = observations(explore(translate(e, soup), e.target));
  o.expect(tp.reaches_stuck_without_success, "target profile " + tp.str());
  const auto v = check_operational_correspondence(e, soup);
  o.expect(v.status == Status::kFail, "operational correspondence: " + v.str());
  o.expect(!v.witness.empty() && witness_replays(v.witness, e.target), "witness does not replay");
  o.expect(run_repro("sec8-deadlock").passed, "repro sec8-deadlock failed");
  return o;
}

// A parallel composition of small random processes over two channels, drawn
// until it has at least one redex.
Process reactive_soup(std::mt19937& rng, const FeatureVector& l) {
  GenOptions g;
  g.channels = {"a", "b"};
  for (;;) {
    g.replication = rng() % 3 == 0;
    std::vector<Process> parts;
    const std::size_t n = 2 + rng() % 3;
    for (std::size_t k = 0; k < n; ++k) {
      g.size = 2 + rng() % 4;
      parts.push_back(random_process(rng, l, g));
    }
    Process p = par_of(parts);
    if (!enumerate_redexes(normalize(p), l).empty()) return p;
  }
}

// 7. Embeddings along each feature edge preserve redexes and steps.
Outcome embeddings() {
  Outcome o;
  struct EdgeCase {
    const char* name;
    std::function<void(FeatureVector&, FeatureVector&)> set;
  };
  const std::vector<EdgeCase> edges{
      {"A->S", [](FeatureVector& lo, FeatureVector& hi) { lo.sync = Synchronism::kA, hi.sync = Synchronism::kS; }},
      {"M->P", [](FeatureVector& lo, FeatureVector& hi) { lo.arity = Arity::kM, hi.arity = Arity::kP; }},
      {"D->C", [](FeatureVector& lo, FeatureVector& hi) { lo.medium = Medium::kD, hi.medium = Medium::kC; }},
      {"NO->NM", [](FeatureVector& lo, FeatureVector& hi) { lo.matching = Matching::kNO, hi.matching = Matching::kNM; }},
      {"NM->I", [](FeatureVector& lo, FeatureVector& hi) { lo.matching = Matching::kNM, hi.matching = Matching::kI; }},
      {"B->J",
       [](FeatureVector& lo, FeatureVector& hi) { lo.coord = Coordination::kB, hi.coord = Coordination::kJ; }},
  };
  std::mt19937 rng(77);
  const auto all = FeatureVector::all();
  ExploreBounds b;
  b.max_states = 40;
  std::size_t compared = 0;
  for (const auto& edge : edges) {
    for (int i = 0; i < 200; ++i) {
      FeatureVector lo = all[rng() % all.size()];
      FeatureVector hi = lo;
      edge.set(lo, hi);
      const Process p = reactive_soup(rng, lo);
      const StateGraph graph = explore(p, lo, b);
      for (const StateNode& node : graph.states) {
        const auto src = enumerate_transitions(node.state, lo);
        const auto tgt = enumerate_transitions(normalize(embed_leq(node.state.process, lo, hi)), hi);
        const std::string where = std::string(edge.name) + " " + lo.str() + " state " + node.state.key;
        ++compared;
        if (src.size() != tgt.size()) {
          o.fail(where + ": " + std::to_string(src.size()) + " vs " + std::to_string(tgt.size()) + " transitions");
          continue;
        }
        std::vector<bool> used(tgt.size(), false);
        for (const auto& s : src) {
          const std::string want = normalize(embed_leq(s.successor.process, lo, hi)).key;
          bool found = false;
          for (std::size_t j = 0; j < tgt.size() && !found; ++j) {
            if (used[j] || tgt[j].redex.degree != s.redex.degree || tgt[j].redex.sigma.str() != s.redex.sigma.str() ||
                tgt[j].successor.key != want) {
              continue;
            }
            used[j] = found = true;
          }
          o.expect(found, where + ": no target step for " + s.redex.sigma.str() + " -> " + s.successor.key);
        }
      }
    }
  }
  if (o.pass) o.detail = "1200 processes, " + std::to_string(compared) + " states compared";
  return o;
}

// 8. Validation decisions on fixtures for all 48 languages.
Outcome validation_fixtures() {
  Outcome o;
  const auto all = FeatureVector::all();
  for (const auto& l : all) {
    auto pos = oracle::FixtureShape::exercising(l);
    auto neg = pos;
    neg.sync = l.sync == Synchronism::kA ? Synchronism::kS : Synchronism::kA;
    o.expect(pos.valid_in(l) && !neg.valid_in(l), "fixture oracle is inconsistent for " + l.str());
    o.expect(validate_process(parse_process(pos.text()), l).empty(), l.str() + " rejects " + pos.text());
    o.expect(!validate_process(parse_process(neg.text()), l).empty(), l.str() + " accepts " + neg.text());
    for (const auto& other : all) {
      const auto shape = oracle::FixtureShape::exercising(other);
      o.expect(validate_process(parse_process(shape.text()), l).empty() == shape.valid_in(l),
               l.str() + " decides " + shape.text() + " wrongly");
    }
  }
  if (o.pass) o.detail = "48 x 48 fixture decisions";
  return o;
}

// 9. The separation witnesses run as displayed.
Outcome separation_witnesses() {
  Outcome o;
  const FeatureVector l4 = lang("L[A,P,D,NO,B]");
  const Process p4 = parse_process("<a,b> | (x,y).ok");
  o.expect(validate_process(p4, l4).empty(), "thm4 pair is not in " + l4.str());
  const auto t4 = enumerate_transitions(normalize(p4), l4);
  o.expect(t4.size() == 1 && t4[0].successor.key == "ok", "thm4 pair does not reduce to ok");

  const FeatureVector l8 = lang("L[A,M,D,NM,B]");
  const Process p = parse_process("<a>");
  const Process q = parse_process("(#a).(<b> | ok)");
  const auto t8 = enumerate_transitions(normalize(Par{p, q}), l8);
  o.expect(t8.size() == 1 && t8[0].successor.has_ok(), "thm8 pair does not reach success");
  const Substitution swap{{Name::source("a"), Term(Name::source("b"))}, {Name::source("b"), Term(Name::source("a"))}};
  o.expect(enumerate_redexes(normalize(Par{apply(swap, p), q}), l8).empty(), "swapped thm8 pair still reduces");
  o.expect(run_repro("thm4-poly-separation").passed && run_repro("thm8-namematch-witness").passed,
           "separation repro cases failed");
  return o;
}

struct CliRun {
  int code;
  std::string out;
  std::string graph;
};

CliRun explore_cli(const FeatureVector& l, const std::string& text, int jobs, const fs::path& graph) {
  const std::vector<std::string> args{"proclang", "--lang", l.str(), "--jobs", std::to_string(jobs),
                                      "--graph-out", graph.string(), "explore"};
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(text);
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  std::ifstream f(graph);
  std::stringstream g;
  g << f.rdbuf();
  return {code, out.str(), g.str()};
}

// 10. Graph dumps do not depend on the run or the thread count.
Outcome determinism() {
  Outcome o;
  std::vector<std::pair<FeatureVector, std::string>> cases;
  for (const auto& id : repro_ids()) {
    for (auto& c : repro_processes(id)) cases.push_back(std::move(c));
  }
  const std::vector<std::pair<std::string, FeatureVector>> corpora{
      {"sync-async", lang("L[S,M,C,NO,J]")}, {"naive-join", lang("L[A,M,C,NO,J]")}, {"leq", lang("L[A,M,D,NO,B]")}};
  for (const auto& [dir, l] : corpora) {
    for (const auto& [name, p] : corpus(dir, l)) cases.emplace_back(l, print(p));
  }
  const fs::path graph = fs::temp_directory_path() / ("proclang_acceptance_" + std::to_string(::getpid()) + ".txt");
  for (const auto& [l, text] : cases) {
    const CliRun ref = explore_cli(l, text, 1, graph);
    o.expect(!ref.graph.empty(), "no graph for " + text);
    for (int jobs : {1, 4, 4}) {
      const CliRun again = explore_cli(l, text, jobs, graph);
      o.expect(again.code == ref.code && again.out == ref.out && again.graph == ref.graph,
               "explore differs with --jobs " + std::to_string(jobs) + " on " + text);
    }
  }
  fs::remove(graph);
  if (o.pass) o.detail = std::to_string(cases.size()) + " cases, 4 runs each";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"intro reduction", 1, intro_join},
      {"match oracle", 30, match_oracle},
      {"structural congruence", 30, congruence},
      {"coordination degree", 10, coordination_degree},
      {"sync-async corpus validity", 300, sync_async_corpus},
      {"naive join deadlock", 30, deadlock},
      {"feature embeddings", 120, embeddings},
      {"language fixtures", 5, validation_fixtures},
      {"separation witnesses", 5, separation_witnesses},
      {"determinism", 600, determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.pass && secs > c.limit_s) r.fail("took longer than " + std::to_string(static_cast<int>(c.limit_s)) + " s");
    failed += !r.pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (r.pass ? "PASS" : "FAIL") << ' ' << (i + 1) << ' ' << c.name << " (" << secs << " s)";
    if (!r.detail.empty()) line << ": " << r.detail;
    std::cout << line.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
