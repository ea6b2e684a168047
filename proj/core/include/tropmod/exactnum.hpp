#pragma once

#include <gmpxx.h>

#include <compare>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropmod {

using Rational = mpq_class;
using Integer = mpz_class;

// Errors raised for mathematically invalid requests (exit code 1 in the CLI).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requests outside the supported fragment (second extension, unsupported cell shape, ...).
class Unsupported : public DomainError {
 public:
  using DomainError::DomainError;
};

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);
Integer floor_of(const Rational& q);

// Q(u) with u^2 + c1*u + c0 = 0, the polynomial irreducible over Q.
class QuadraticExtension {
 public:
  QuadraticExtension(Rational c1, Rational c0, std::string name);
  const Rational& c1() const { return c1_; }
  const Rational& c0() const { return c0_; }
  const std::string& name() const { return name_; }
  Rational discriminant() const { return c1_ * c1_ - 4 * c0_; }
  std::string minpoly_string() const;

 private:
  Rational c1_, c0_;
  std::string name_;
};

using ExtensionHandle = std::shared_ptr<const QuadraticExtension>;

// Rational roots of x^2 + c1 x + c0 (empty when irreducible).
std::vector<Rational> rational_roots_monic_quadratic(const Rational& c1, const Rational& c0);

// Builds an extension; throws DomainError listing the rational roots if reducible.
ExtensionHandle make_extension(const Rational& c1, const Rational& c0, const std::string& name = "u");

// Holds the single extension that may be adjoined during a computation.
class Session {
 public:
  ExtensionHandle adjoin_quadratic(const Rational& c1, const Rational& c0,
                                   const std::string& name = "u");
  const ExtensionHandle& extension() const { return ext_; }

 private:
  ExtensionHandle ext_;
};

// a + b*u in Q or Q(u).
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(long v) : a_(v) {}
  FieldElem(int v) : a_(v) {}
  FieldElem(Rational v) : a_(std::move(v)) { a_.canonicalize(); }
  FieldElem(Rational a, Rational b, ExtensionHandle ext);

  static FieldElem generator(const ExtensionHandle& ext);

  const Rational& rational_part() const { return a_; }
  const Rational& extension_part() const { return b_; }
  const ExtensionHandle& extension() const { return ext_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  bool is_one() const { return is_rational() && a_ == 1; }

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o);
  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }

  FieldElem inverse() const;
  FieldElem pow(long e) const;
  // Conjugate under u -> -c1 - u.
  FieldElem conjugate() const;
  Rational norm() const;

  friend bool operator==(const FieldElem& x, const FieldElem& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const FieldElem& x, const FieldElem& y) { return !(x == y); }
  // Total order: lexicographic on (rational part, extension part).
  friend bool operator<(const FieldElem& x, const FieldElem& y) {
    if (x.a_ != y.a_) return x.a_ < y.a_;
    return x.b_ < y.b_;
  }

  std::string str() const;

 private:
  static ExtensionHandle common(const FieldElem& x, const FieldElem& y);
  Rational a_, b_;
  ExtensionHandle ext_;
};

std::ostream& operator<<(std::ostream& os, const FieldElem& f);

// Square root inside the field of x, if it exists (rational x only; may use the extension).
std::optional<FieldElem> field_sqrt(const FieldElem& x, const ExtensionHandle& ext);

struct PuiseuxTerm {
  Rational exp;
  FieldElem coef;
};

// Finite generalized Puiseux series sum c_q t^q with sorted distinct exponents.
class Puiseux {
 public:
  Puiseux() = default;
  Puiseux(long c) : Puiseux(FieldElem(c)) {}
  Puiseux(int c) : Puiseux(FieldElem(c)) {}
  Puiseux(const Rational& c) : Puiseux(FieldElem(c)) {}
  Puiseux(const FieldElem& c);
  static Puiseux monomial(const FieldElem& c, const Rational& q);
  static Puiseux t_power(const Rational& q) { return monomial(FieldElem(1), q); }
  static Puiseux from_terms(std::vector<PuiseuxTerm> terms);

  const std::vector<PuiseuxTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_single_term() const { return terms_.size() == 1; }

  // nullopt stands for +infinity.
  std::optional<Rational> val() const;
  const Rational& valuation() const;
  const FieldElem& init() const;
  Integer denominator_bound() const;
  // Coefficient of t^q (zero if absent).
  FieldElem coefficient(const Rational& q) const;

  Puiseux operator-() const;
  Puiseux& operator+=(const Puiseux& o);
  Puiseux& operator-=(const Puiseux& o);
  Puiseux& operator*=(const Puiseux& o);
  friend Puiseux operator+(Puiseux a, const Puiseux& b) { return a += b; }
  friend Puiseux operator-(Puiseux a, const Puiseux& b) { return a -= b; }
  friend Puiseux operator*(const Puiseux& a, const Puiseux& b);
  Puiseux pow(long e) const;
  // Exact division by a single-term series.
  Puiseux divided_by(const Puiseux& d) const;
  Puiseux scaled(const FieldElem& c) const;
  Puiseux shifted(const Rational& q) const;

  friend bool operator==(const Puiseux& x, const Puiseux& y);
  friend bool operator!=(const Puiseux& x, const Puiseux& y) { return !(x == y); }
  friend bool operator<(const Puiseux& x, const Puiseux& y);

  std::string str() const;

 private:
  std::vector<PuiseuxTerm> terms_;
};

std::ostream& operator<<(std::ostream& os, const Puiseux& p);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const FieldElem& f) { return f.is_zero(); }
inline bool is_zero(const Puiseux& p) { return p.is_zero(); }

}  // namespace tropmod
