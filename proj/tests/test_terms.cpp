#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "proclang/matching.hpp"
#include "proclang/term.hpp"

using namespace proclang;
using namespace testing_helpers;

TEST_SUITE("core-terms") {
  TEST_CASE("free names of terms and patterns") {
    CHECK(free_names(T("a*b")) == std::set<Name>{N("a"), N("b")});
    CHECK(free_names(Pat("#a*x")) == std::set<Name>{N("a")});
    CHECK(free_names(Pat("x")).empty());
  }

  TEST_CASE("binding names") {
    const auto s = binding_names(Pat("x*#a*y"));
    CHECK(s.names == std::set<Name>{N("x"), N("y")});
    CHECK_FALSE(s.duplicate);
    const Pattern xx = Pattern::compound(Pattern::binder(N("x")), Pattern::binder(N("x")));
    CHECK(binding_names(xx).duplicate);
    CHECK_THROWS_AS(Pat("x*x"), ParseError);
    CHECK(binding_names(Pat("#a")).names.empty());
  }

  TEST_CASE("well-formedness by grade") {
    CHECK(well_formed_pattern(Pat("x"), Matching::kNO));
    CHECK_FALSE(well_formed_pattern(Pat("#a"), Matching::kNO));
    CHECK(well_formed_pattern(Pat("#a"), Matching::kNM));
    CHECK_FALSE(well_formed_pattern(Pat("x*#b"), Matching::kNM));
    CHECK(well_formed_pattern(Pat("x*#b"), Matching::kI));
    CHECK_FALSE(well_formed_pattern(Pattern::compound(Pattern::binder(N("x")), Pattern::binder(N("x"))), Matching::kI));
  }

  TEST_CASE("protect_term") {
    CHECK(protect_term(T("a")) == Pat("#a"));
    CHECK(protect_term(T("a*b")) == Pat("#a*#b"));
    CHECK(protect_term(T("(a*b)*c")) == Pat("(#a*#b)*#c"));
    CHECK(print(protect_term(T("(a*b)*c"))) == "#a*#b*#c");
  }

  TEST_CASE("compound shape is identity") {
    CHECK(T("a*b*c") == T("(a*b)*c"));
    CHECK_FALSE(T("a*(b*c)") == T("(a*b)*c"));
    CHECK(T("a*(b*c)").depth() == 3);
  }

  TEST_CASE("exhaustive properties over depth 3") {
    const std::vector<std::string> alphabet{"a", "b", "c"};
    const auto patterns = oracle::all_patterns(3, alphabet);
    const auto terms = oracle::all_terms(3, alphabet);
    REQUIRE(patterns.size() == 1770);
    REQUIRE(terms.size() == 147);
    for (const Pattern& p : patterns) {
      // Binder and protected leaves partition the leaves.
      std::size_t binders = 0, protects = 0;
      for (const auto& tok : oracle::tokens(p)) {
        binders += tok[0] == '?';
        protects += tok[0] == '#';
      }
      const auto scan = binding_names(p);
      CHECK(scan.duplicate == (scan.names.size() != binders));
      CHECK(free_names(p).size() <= protects);
      if (well_formed_pattern(p, Matching::kNO)) CHECK(well_formed_pattern(p, Matching::kNM));
      if (well_formed_pattern(p, Matching::kNM)) CHECK(well_formed_pattern(p, Matching::kI));
    }
    for (const Term& t : terms) {
      const Pattern p = protect_term(t);
      CHECK(binding_names(p).names.empty());
      const auto m = match_one(t, p);
      REQUIRE(m.has_value());
      CHECK(m->empty());
    }
  }
}
