#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropmod/exactnum.hpp"

namespace tropmod {

using Exponent = std::vector<int>;

// Sparse polynomial over a coefficient ring C with named variables.
// Exponents may be negative (Laurent) for residue-level computations.
template <class C>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static Poly constant(std::vector<std::string> vars, const C& c) {
    Poly p(std::move(vars));
    p.add_term(Exponent(p.vars_.size(), 0), c);
    return p;
  }
  static Poly variable(std::vector<std::string> vars, size_t idx) {
    Poly p(std::move(vars));
    Exponent e(p.vars_.size(), 0);
    e.at(idx) = 1;
    p.add_term(e, C(1));
    return p;
  }
  static Poly monomial(std::vector<std::string> vars, Exponent e, const C& c) {
    Poly p(std::move(vars));
    p.add_term(e, c);
    return p;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  size_t nvars() const { return vars_.size(); }
  const std::map<Exponent, C>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  std::optional<size_t> var_index(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    return std::nullopt;
  }

  void add_term(const Exponent& e, const C& c) {
    if (tropmod::is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (tropmod::is_zero(it->second)) terms_.erase(it);
    }
  }

  C coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? C() : it->second;
  }

  int total_degree() const {
    int d = 0;
    for (auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }
  int degree_in(size_t i) const {
    int d = 0;
    for (auto& [e, c] : terms_) d = std::max(d, e[i]);
    return d;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    adopt_vars(o);
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    adopt_vars(o);
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.vars_.empty() ? b.vars_ : a.vars_);
    if (!a.vars_.empty() && !b.vars_.empty() && a.vars_ != b.vars_)
      throw DomainError("polynomial variable lists differ");
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) {
        Exponent e(ea.size());
        for (size_t i = 0; i < ea.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const C& c) const {
    Poly r(vars_);
    for (auto& [e, x] : terms_) r.add_term(e, x * c);
    return r;
  }
  Poly pow(int k) const {
    Poly r = constant(vars_, C(1)), b = *this;
    while (k > 0) {
      if (k & 1) r *= b;
      k >>= 1;
      if (k) b *= b;
    }
    return r;
  }
  Poly shifted_monomial(const Exponent& m) const {
    Poly r(vars_);
    for (auto& [e, c] : terms_) {
      Exponent n = e;
      for (size_t i = 0; i < n.size(); ++i) n[i] += m[i];
      r.terms_.emplace(n, c);
    }
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (auto& [e, c] : a.terms_) {
      if (it->first != e || it->second != c) return false;
      ++it;
    }
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Replaces variable i by subs[i]; all subs share one target variable list.
  Poly compose(const std::vector<Poly>& subs, const std::vector<std::string>& target) const {
    if (subs.size() != vars_.size()) throw DomainError("compose: wrong number of substitutions");
    std::vector<std::vector<Poly>> powers(subs.size());
    auto power = [&](size_t i, int k) -> const Poly& {
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(constant(target, C(1)));
      while ((int)cache.size() <= k) cache.push_back(cache.back() * subs[i]);
      return cache[k];
    };
    Poly r(target);
    for (auto& [e, c] : terms_) {
      Poly term = constant(target, c);
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 0) throw DomainError("compose: negative exponent");
        if (e[i] > 0) term *= power(i, e[i]);
      }
      r += term;
    }
    return r;
  }

  // Evaluates with values in a ring V; conv maps coefficients into V.
  template <class V>
  V evaluate(const std::vector<V>& vals, const std::function<V(const C&)>& conv) const {
    V total = V();
    for (auto& [e, c] : terms_) {
      V term = conv(c);
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (e[i] < 0) throw DomainError("evaluate: negative exponent");
        term = term * vals[i].pow(e[i]);
      }
      total = total + term;
    }
    return total;
  }

  Poly renamed(std::vector<std::string> vars) const {
    Poly r = *this;
    r.vars_ = std::move(vars);
    return r;
  }

  // Monomials sorted for display: higher total degree first, then lexicographically larger.
  std::vector<std::pair<Exponent, C>> display_order() const {
    std::vector<std::pair<Exponent, C>> v(terms_.begin(), terms_.end());
    std::stable_sort(v.begin(), v.end(), [](auto& a, auto& b) {
      int da = 0, db = 0;
      for (int k : a.first) da += k;
      for (int k : b.first) db += k;
      if (da != db) return da > db;
      return a.first > b.first;
    });
    return v;
  }

 private:
  void adopt_vars(const Poly& o) {
    if (vars_.empty()) {
      vars_ = o.vars_;
    } else if (!o.vars_.empty() && vars_ != o.vars_) {
      throw DomainError("polynomial variable lists differ");
    }
  }

  std::vector<std::string> vars_;
  std::map<Exponent, C> terms_;
};

using PlanePoly = Poly<Puiseux>;
using ResiduePoly = Poly<FieldElem>;
using SymPoly = Poly<Rational>;

std::string monomial_string(const std::vector<std::string>& vars, const Exponent& e);
std::string to_string(const PlanePoly& p);
std::string to_string(const ResiduePoly& p);
std::string to_string(const SymPoly& p);

// -val(c_a) for every support point.
std::map<Exponent, Rational> heights(const PlanePoly& g);

// Terms maximizing -val(c_a) + <w, a>, with initial coefficients.
ResiduePoly init_form(const PlanePoly& g, const std::vector<Rational>& w);

// var -> newvar - A t^{-l}.
PlanePoly shift_substitute(const PlanePoly& g, const std::string& var, const Puiseux& A,
                           const Rational& l, const std::string& newvar);
// xvar -> newvar - A t^{-l} yvar.
PlanePoly skew_substitute(const PlanePoly& g, const std::string& xvar, const std::string& yvar,
                          const Puiseux& A, const Rational& l, const std::string& newvar);

// Affine form a_0 + sum a_i v_i in the target variables.
struct AffineMap {
  std::vector<std::string> target;
  // One affine polynomial per source variable.
  std::vector<PlanePoly> images;
};

PlanePoly affine_compose(const PlanePoly& g, const AffineMap& psi);

struct Rescaling {
  Rational a, b, c;  // g' = t^c g(t^a x, t^b y)
  bool is_identity() const { return sgn(a) == 0 && sgn(b) == 0 && sgn(c) == 0; }
};
PlanePoly apply_rescaling(const PlanePoly& g, const Rescaling& r);
PlanePoly undo_rescaling(const PlanePoly& g, const Rescaling& r);
// Moves the cell whose marked support points are `cell` to height 0.
std::pair<PlanePoly, Rescaling> rescale_normalize(const PlanePoly& g, const std::vector<Exponent>& cell);

// Dense univariate polynomials over the residue field, coefficient k at x^k.
using UPoly = std::vector<FieldElem>;
void trim(UPoly& p);
int degree(const UPoly& p);
UPoly uadd(const UPoly& a, const UPoly& b);
UPoly umul(const UPoly& a, const UPoly& b);
std::pair<UPoly, UPoly> udivmod(UPoly a, const UPoly& b);
UPoly ugcd(UPoly a, UPoly b);
UPoly uderivative(const UPoly& p);
FieldElem ueval(const UPoly& p, const FieldElem& x);
FieldElem uresultant(const UPoly& a, const UPoly& b);
FieldElem udiscriminant(const UPoly& p);
// Multiplicity of x0 as a root.
int root_order(const UPoly& p, const FieldElem& x0);
// Roots in the field generated by the coefficients (and ext, if given), sorted.
std::vector<FieldElem> field_roots(const UPoly& p, const ExtensionHandle& ext);

// Symbolic univariate: polynomials whose coefficients are SymPoly.
SymPoly sym_determinant(std::vector<std::vector<SymPoly>> m, const std::vector<std::string>& vars);
// Sylvester resultant of sum a_i x^i and sum b_j x^j with symbolic coefficients.
SymPoly sym_resultant(const std::vector<SymPoly>& a, const std::vector<SymPoly>& b,
                      const std::vector<std::string>& vars);

// Exact quotient h / b in the Laurent ring when it exists.
std::optional<ResiduePoly> exact_divide(const ResiduePoly& h, const ResiduePoly& b);

FieldElem sym_eval(const SymPoly& p, const std::vector<FieldElem>& vals);
Puiseux sym_eval(const SymPoly& p, const std::vector<Puiseux>& vals);

}  // namespace tropmod
