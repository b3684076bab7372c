#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "proclang/encodings.hpp"
#include "proclang/generate.hpp"

using namespace proclang;
using namespace testing_helpers;

TEST_SUITE("language") {
  TEST_CASE("feature vector names") {
    CHECK(FeatureVector::all().size() == 48);
    for (const auto& l : FeatureVector::all()) CHECK(FeatureVector::parse(l.str()) == l);
    CHECK(L("L[S,P,C,I,J]").str() == "L[S,P,C,I,J]");
    CHECK_THROWS_AS(L("L[S,P,C,I]"), std::invalid_argument);
    CHECK_THROWS_AS(L("L[X,P,C,I,J]"), std::invalid_argument);
    CHECK_THROWS_AS(L("L[-,P,C,I,J]"), std::invalid_argument);
  }

  TEST_CASE("filters") {
    const auto f = LanguageFilter::parse("L[-,M,-,-,B]");
    CHECK(f.matches(L("L[S,M,C,I,B]")));
    CHECK_FALSE(f.matches(L("L[S,P,C,I,B]")));
    std::size_t n = 0;
    for (const auto& l : FeatureVector::all()) n += f.matches(l);
    CHECK(n == 12);
  }

  TEST_CASE("validation examples") {
    auto rules = [](const std::string& p, const std::string& l) {
      std::vector<std::string> out;
      for (const auto& v : validate_process(P(p), L(l))) out.push_back(v.rule);
      return out;
    };
    CHECK(rules("a<b>.0", "L[A,M,C,NO,B]") == std::vector<std::string>{"async-continuation"});
    CHECK(rules("(m(x) | n(y)) >> ok", "L[A,M,C,NO,B]") == std::vector<std::string>{"binary-join"});
    CHECK(rules("(m(x) | n(y)) >> ok", "L[S,P,C,I,B]") == std::vector<std::string>{"binary-join"});
    CHECK(rules("<a*b>", "L[A,M,D,I,B]").empty());
    CHECK(rules("<a*b>", "L[A,M,D,NM,B]") == std::vector<std::string>{"compound-term"});
    CHECK(rules("n<a>", "L[A,M,D,NO,B]") == std::vector<std::string>{"dataspace-subject"});
    CHECK(rules("<a>", "L[A,M,C,NO,B]") == std::vector<std::string>{"missing-channel"});
    CHECK(rules("n<a>", "L[S,M,C,NO,B]") == std::vector<std::string>{"sync-continuation"});
    CHECK(rules("<a,b>", "L[A,M,D,NO,B]") == std::vector<std::string>{"monadic-arity"});
    CHECK(rules("(#a).ok", "L[A,M,D,NO,B]") == std::vector<std::string>{"pattern-grade"});
    const auto v = validate_process(P("m<a> | (m(x) | n(y)) >> a<b>.0"), L("L[A,M,C,NO,B]"));
    REQUIRE(v.size() == 2);
    CHECK(v[0].path == "/par.r/join");
    CHECK(v[1].path == "/par.r/join.body/out");
    CHECK(format_violation(v[0]).rfind("/par.r/join: binary-join: ", 0) == 0);
  }

  TEST_CASE("feature_leq examples") {
    CHECK(feature_leq(L("L[A,M,D,NO,B]"), L("L[S,P,C,I,J]")));
    CHECK_FALSE(feature_leq(L("L[S,M,D,NO,B]"), L("L[A,M,D,NO,J]")));
    CHECK(feature_leq(L("L[S,P,C,NM,J]"), L("L[S,P,C,NM,J]")));
    CHECK(feature_leq(L("L[A,M,D,NO,B]"), L("L[A,M,D,NM,B]")));
    CHECK_FALSE(feature_leq(L("L[A,M,D,I,B]"), L("L[A,M,D,NM,B]")));
  }

  TEST_CASE("feature_leq is a partial order over all pairs") {
    const auto all = FeatureVector::all();
    std::size_t related = 0;
    for (const auto& a : all) {
      CHECK(feature_leq(a, a));
      for (const auto& b : all) {
        if (feature_leq(a, b)) ++related;
        if (feature_leq(a, b) && feature_leq(b, a)) CHECK(a == b);
        for (const auto& c : all) {
          if (feature_leq(a, b) && feature_leq(b, c)) CHECK(feature_leq(a, c));
        }
      }
    }
    // 3^4 pairs on the four two-point chains, 6 on the three-point one.
    CHECK(related == 81 * 6);
  }

  TEST_CASE("fixtures decide exactly as their shape says") {
    for (const auto& shape_lang : FeatureVector::all()) {
      const auto shape = oracle::FixtureShape::exercising(shape_lang);
      const Process p = P(shape.text());
      for (const auto& l : FeatureVector::all()) {
        CAPTURE(shape.text());
        CAPTURE(l.str());
        CHECK(validate_process(p, l).empty() == shape.valid_in(l));
      }
    }
  }

  TEST_CASE("embedding a valid process lands in the larger language") {
    std::mt19937 rng(7);
    const auto all = FeatureVector::all();
    for (const auto& lo : all) {
      for (const auto& hi : all) {
        if (!feature_leq(lo, hi)) continue;
        for (int i = 0; i < 3; ++i) {
          const Process p = random_process(rng, lo);
          REQUIRE(validate_process(p, lo).empty());
          CAPTURE(print(p));
          CAPTURE(hi.str());
          CHECK(validate_process(embed_leq(p, lo, hi), hi).empty());
        }
      }
    }
  }
}
