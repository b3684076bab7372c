#pragma once

#include <string>

#include "proclang/congruence.hpp"
#include "proclang/language.hpp"
#include "proclang/syntax.hpp"

namespace testing_helpers {

inline proclang::Name N(const std::string& s) { return proclang::Name::source(s); }
inline proclang::Term T(const std::string& s) { return proclang::parse_term(s); }
inline proclang::Pattern Pat(const std::string& s) { return proclang::parse_pattern(s); }
inline proclang::Process P(const std::string& s) { return proclang::parse_process(s); }
inline proclang::FeatureVector L(const std::string& s) { return proclang::FeatureVector::parse(s); }
inline std::string key(const std::string& s) { return proclang::normalize(P(s)).key; }

}  // namespace testing_helpers
