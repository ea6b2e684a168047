#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tropmod/mpoly.hpp"

namespace tropmod {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  size_t position() const { return pos_; }

 private:
  size_t pos_;
};

struct ParseOptions {
  // Variable order of the result; empty means order of first appearance.
  std::vector<std::string> vars;
  // Minimum number of variables; missing ones are taken from {x, y} defaults.
  size_t min_vars = 2;
  ExtensionHandle ext;
};

bool is_allowed_variable(const std::string& name);

PlanePoly parse_poly(const std::string& text, const ParseOptions& opts = {});
Puiseux parse_series(const std::string& text, const ExtensionHandle& ext = nullptr);

// Parses "name: u^2-u+1" or "u^2-u+1" into an extension.
ExtensionHandle parse_adjoin(const std::string& text);

}  // namespace tropmod
