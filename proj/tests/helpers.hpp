#pragma once

#include <string>

#include "tropmod/textio.hpp"

namespace testing_util {

inline tropmod::Puiseux S(const std::string& s, const tropmod::ExtensionHandle& ext = nullptr) {
  return tropmod::parse_series(s, ext);
}

inline tropmod::PlanePoly P(const std::string& s, std::vector<std::string> vars = {"x", "y"},
                            const tropmod::ExtensionHandle& ext = nullptr) {
  tropmod::ParseOptions o;
  o.vars = std::move(vars);
  o.ext = ext;
  return tropmod::parse_poly(s, o);
}

inline tropmod::Rational Q(const std::string& s) { return tropmod::parse_rational(s); }

}  // namespace testing_util
