#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "proclang/explore.hpp"
#include "proclang/generate.hpp"
#include "proclang/reduction.hpp"

using namespace proclang;
using namespace testing_helpers;

namespace {

const char* kOmega = "(nu d)(!(d(x) >> d<x>) | d<a>)";

std::vector<Transition> transitions(const std::string& p, const std::string& l) {
  return enumerate_transitions(normalize(P(p)), L(l));
}

}  // namespace

TEST_SUITE("congruence") {
  TEST_CASE("normalize examples") {
    CHECK(key("0 | (n<a> | 0)") == key("n<a>"));
    CHECK(normalize(P("if a=a then ok else 0")).threads.size() == 1);
    CHECK(normalize(P("if a=a then ok else 0")).has_ok());
    CHECK(key("if a=b then ok else n<a>") == key("n<a>"));
    CHECK(key("(nu a)(nu b)(a<b> | b<a>)") == key("(nu b)(nu a)(a<b> | b<a>)"));
    CHECK(key("(nu a) 0") == key("0"));
    CHECK(key("0") == "0");
  }

  TEST_CASE("struct_eq examples") {
    CHECK(struct_eq(P("n<a> | m<b>"), P("m<b> | n<a>")));
    CHECK_FALSE(struct_eq(P("!n<a>"), P("n<a> | !n<a>")));
    CHECK(struct_eq(P("(nu a)a<b>"), P("(nu c)c<b>")));
    CHECK_FALSE(struct_eq(P("(nu a)a<b>"), P("a<b>")));
    CHECK(struct_eq(P("n(x).x<a>"), P("n(y).y<a>")));
    CHECK_FALSE(struct_eq(P("n(x).x<a>"), P("n(y).a<y>")));
    CHECK(struct_eq(P("(nu a)(n<a> | m<b>)"), P("m<b> | (nu c)n<c>")));
    CHECK_FALSE(struct_eq(P("(nu a)(n<a> | m<a>)"), P("(nu a)n<a> | (nu c)m<c>")));
  }

  TEST_CASE("restricted names are told apart by structure") {
    CHECK(struct_eq(P("(nu r, s)(r<s> | s<a>)"), P("(nu u, v)(v<a> | u<v>)")));
    CHECK_FALSE(struct_eq(P("(nu r, s)(r<s> | s<a>)"), P("(nu r, s)(r<s> | r<a>)")));
    CHECK(struct_eq(P("(nu r)(nu s)(r<a> | s<a>)"), P("(nu s)(s<a> | (nu r)r<a>)")));
  }

  TEST_CASE("conditionals under input binders stay put") {
    const auto s = normalize(P("n(x).if x = a then ok else 0"));
    CHECK(s.key.find("if") != std::string::npos);
    CHECK(key("n(x).if x = x then ok else 0") == key("n(y).ok"));
  }

  TEST_CASE("restrictions used only by a dropped branch are collected") {
    CHECK(key("(nu d)n<a>.if d = b then d<a>.0 else ok") == key("n<a>.ok"));
    CHECK(key("<a>.(nu b)(nu f)(#b).<b>.if f = b then <b>.0 else <b>.ok") == key("<a>.(nu b)(#b).<b>.<b>.ok"));
    const auto s = normalize(P("(nu d)(y).!(q*(#a*#a), y*z).if a = a then 0 else (<d*(y*d)> | <z, c, q>)"));
    CHECK(normalize(s.process).key == s.key);
  }

  TEST_CASE("bound labels skip free fresh counters") {
    const auto s = normalize(P("(nu b) (b<b'1>)"));
    CHECK(s.key == "(nu b'2)b'2<b'1>");
  }

  TEST_CASE("normalize is idempotent") {
    std::mt19937 rng(11);
    GenOptions o;
    o.replication = true;
    for (const auto& l : FeatureVector::all()) {
      for (int i = 0; i < 20; ++i) {
        const Process p = random_process(rng, l, o);
        const auto s = normalize(p);
        CAPTURE(print(p));
        CHECK(normalize(s.process).key == s.key);
        CHECK(print(s.process) == s.key);
        CHECK(struct_eq(P(s.key), p));
      }
    }
  }
}

TEST_SUITE("reduction") {
  TEST_CASE("single pair in a dataspace") {
    const auto ts = transitions("<a> | (x) >> ok", "L[A,M,D,NO,J]");
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].redex.degree == 2);
    CHECK(ts[0].redex.sigma.str() == "{a/b'1}");
    CHECK(ts[0].successor.key == "ok");
  }

  TEST_CASE("two assignments of outputs to atoms") {
    const auto ts = transitions("<a>.p<a>.0 | <b>.q<b>.0 | ((x) | (y)) >> r<x>.0", "L[S,M,D,NO,J]");
    REQUIRE(ts.size() == 2);
    std::set<std::string> sigmas;
    for (const auto& t : ts) {
      CHECK(t.redex.degree == 3);
      sigmas.insert(t.redex.sigma.str());
    }
    CHECK(sigmas == std::set<std::string>{"{a/b'1, b/b'2}", "{b/b'1, a/b'2}"});
  }

  TEST_CASE("intro join") {
    const std::string l = "L[S,M,C,NO,J]";
    const auto s = normalize(P("m<a>.p1<m>.0 | n<b>.p2<n>.0 | (m(x) | n(y)) >> q<x>.q<y>.0"));
    const auto rs = enumerate_redexes(s, L(l));
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].degree == 3);
    // Binders carry their canonical labels, in atom order.
    CHECK(rs[0].sigma.str() == "{a/b'1, b/b'2}");
    CHECK(step(s, rs[0], L(l)).key == key("p1<m>.0 | p2<n>.0 | q<a>.q<b>.0"));
  }

  TEST_CASE("binary synchronous pair") {
    const auto ts = transitions("a<b>.p<b>.0 | a(x).q<x>.0", "L[S,M,C,NO,B]");
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].successor.key == key("p<b>.0 | q<b>.0"));
  }

  TEST_CASE("replicated server keeps its replication") {
    const auto ts = transitions("!(a(x) >> ok) | a<b>", "L[A,M,C,NO,J]");
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].successor.key == key("!(a(x) >> ok) | ok"));
    CHECK(ts[0].redex.join.str() == "t0/c0/t0");
  }

  TEST_CASE("channels must agree") {
    CHECK(transitions("m<a> | n(x).ok", "L[A,M,C,NO,B]").empty());
    CHECK(transitions("<a,b> | (x).ok", "L[A,P,D,NO,B]").empty());
    CHECK(transitions("<a> | (#b).ok", "L[A,M,D,NM,B]").empty());
    CHECK(transitions("<a*b> | (x*#b).ok", "L[A,M,D,I,B]").size() == 1);
  }

  TEST_CASE("redexes under restriction and scope") {
    const auto ts = transitions("(nu r)(a<r> | r(y).ok) | a(x).x<b>", "L[A,M,C,NO,B]");
    REQUIRE(ts.size() == 1);
    const auto next = enumerate_transitions(ts[0].successor, L("L[A,M,C,NO,B]"));
    REQUIRE(next.size() == 1);
    CHECK(next[0].successor.key == "ok");
  }

  TEST_CASE("replicated join needs several copies") {
    const auto ts = transitions("!((a(x) | a(y)) >> ok) | a<c> | a<d> | a<e> | a<f>", "L[A,M,C,NO,J]");
    REQUIRE_FALSE(ts.empty());
    for (const auto& t : ts) CHECK(t.redex.degree == 3);
  }

  TEST_CASE("step rejects a foreign redex") {
    const auto a = normalize(P("n<a> | n(x).ok"));
    const auto b = normalize(P("m<a> | m(x).0 | m(y).ok"));
    const FeatureVector l = L("L[A,M,C,NO,B]");
    const auto rb = enumerate_redexes(b, l);
    REQUIRE(rb.size() == 2);
    CHECK_THROWS_AS(step(a, rb[1], l), std::invalid_argument);
  }

  TEST_CASE("coordination degree family") {
    const FeatureVector l = L("L[A,M,C,NO,J]");
    const auto two = coordination_degree_demo(2, l);
    REQUIRE(two.size() == 3);
    const auto ts = enumerate_transitions(normalize(par_of(two)), l);
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].redex.degree == 3);
    CHECK(ts[0].successor.key == "ok");
    CHECK(enumerate_redexes(normalize(par_of({two[0], two[2]})), l).empty());
    const auto one = coordination_degree_demo(1, L("L[A,M,C,NO,B]"));
    const auto t1 = enumerate_transitions(normalize(par_of(one)), L("L[A,M,C,NO,B]"));
    REQUIRE(t1.size() == 1);
    CHECK(t1[0].redex.degree == 2);
    CHECK_THROWS_AS(coordination_degree_demo(0, l), std::invalid_argument);
    CHECK_THROWS_AS(coordination_degree_demo(2, L("L[A,M,C,NO,B]")), std::invalid_argument);
  }
}

TEST_SUITE("explore") {
  TEST_CASE("ok alone") {
    const auto g = explore(P("ok"), L("L[A,M,D,NO,B]"));
    CHECK(g.states.size() == 1);
    CHECK(g.edges.empty());
    const auto o = observations(g);
    CHECK(o.may_succeed);
    CHECK_FALSE(o.reaches_stuck_without_success);
    CHECK_FALSE(o.has_cycle);
  }

  TEST_CASE("stuck after one step") {
    const auto g = explore(P("<a> | (x) >> 0"), L("L[A,M,D,NO,J]"));
    CHECK(g.states.size() == 2);
    const auto o = observations(g);
    CHECK_FALSE(o.may_succeed);
    CHECK(o.reaches_stuck_without_success);
    CHECK(o.max_degree_seen == 2u);
  }

  TEST_CASE("omega cycles in one step") {
    const auto g = explore(P(kOmega), L("L[A,M,C,NO,J]"));
    CHECK(g.states.size() == 1);
    CHECK(g.edges.size() == 1);
    CHECK(g.edges[0].from == g.edges[0].to);
    const auto o = observations(g);
    CHECK(o.has_cycle);
    CHECK(o.diverges_within_bound);
    CHECK_FALSE(o.bound_hit);
    CHECK(cycle_states(g) == std::vector<std::size_t>{0});
  }

  TEST_CASE("deadlock soup and its flattening") {
    const std::string soup = std::string("(c1(w) | c2(x)) >> ok | (c2(y) | c1(z)) >> ") + kOmega + " | c1<a> | c2<b>";
    const auto src = observations(explore(P(soup), L("L[A,M,C,NO,J]")));
    CHECK(src.may_succeed);
    CHECK(src.has_cycle);
    CHECK_FALSE(src.reaches_stuck_without_success);
    const auto flat = observations(
        explore(P("c1(w).c2(x).ok | c2(y).c1(z)." + std::string(kOmega) + " | c1<a> | c2<b>"), L("L[A,M,C,NO,B]")));
    CHECK(flat.may_succeed);
    CHECK(flat.has_cycle);
    CHECK(flat.reaches_stuck_without_success);
  }

  TEST_CASE("bounds truncate honestly") {
    const Process counter = P("!(n(x) >> (n<x*x> | n<x*x>)) | n<a>");
    ExploreBounds b;
    b.max_states = 5;
    const auto g = explore(counter, L("L[A,M,C,I,J]"), b);
    CHECK(g.hit_state_bound);
    CHECK(g.states.size() == 5);
    CHECK(observations(g).bound_hit);
    b.max_states = 1000;
    b.max_depth = 3;
    const auto d = explore(counter, L("L[A,M,C,I,J]"), b);
    CHECK(d.hit_depth_bound);
    CHECK(observations(d).diverges_within_bound);
    CHECK_FALSE(observations(d).has_cycle);
  }

  TEST_CASE("traces follow the search tree") {
    const auto g = explore(P("a<b> | a(x).x<c> | b(y).ok"), L("L[A,M,C,NO,B]"));
    std::size_t target = g.states.size();
    for (std::size_t i = 0; i < g.states.size(); ++i) {
      if (g.states[i].state.has_ok()) target = i;
    }
    REQUIRE(target < g.states.size());
    const auto path = path_to(g, target);
    CHECK(path.front() == 0);
    CHECK(path.back() == target);
    const auto trace = trace_to(g, target);
    CHECK(trace.size() == path.size());
    CHECK(trace.back() == "ok");
  }

  TEST_CASE("node profiles agree with the graph profile at the root") {
    const auto g = explore(P("n<a> | n(x).ok | n(y).0"), L("L[A,M,C,NO,B]"));
    const auto all = node_profiles(g);
    REQUIRE(all.size() == g.states.size());
    const auto root = observations(g);
    CHECK(all[0].may_succeed == root.may_succeed);
    CHECK(all[0].reaches_stuck_without_success == root.reaches_stuck_without_success);
    CHECK(root.may_succeed);
    CHECK(root.reaches_stuck_without_success);
  }

  TEST_CASE("dump format") {
    const auto g = explore(P("n<a> | n(x).ok"), L("L[A,M,C,NO,B]"));
    CHECK(dump_graph(g) == "state 0 n(b'1).ok | n<a>\nstate 1 ok\n0 -> 1 degree=2 sigma={a/b'1}\n");
  }

  TEST_CASE("parallel exploration matches the serial reference") {
    std::mt19937 rng(5);
    GenOptions o;
    o.replication = true;
    o.size = 10;
    ExploreBounds b;
    b.max_states = 400;
    for (const auto& l : FeatureVector::all()) {
      for (int i = 0; i < 4; ++i) {
        const Process p = random_process(rng, l, o);
        CAPTURE(print(p));
        const std::string serial = dump_graph(explore_serial(p, l, b));
        CHECK(dump_graph(explore_parallel(p, l, b, 4)) == serial);
        CHECK(dump_graph(explore_parallel(p, l, b, 2)) == serial);
      }
    }
  }
}
