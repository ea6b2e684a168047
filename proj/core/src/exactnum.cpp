#include "tropmod/exactnum.hpp"

#include <algorithm>
#include <sstream>

namespace tropmod {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw DomainError("not a rational number: " + text);
  q.canonicalize();
  if (sgn(q.get_den()) == 0) throw DomainError("zero denominator: " + text);
  return q;
}

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

QuadraticExtension::QuadraticExtension(Rational c1, Rational c0, std::string name)
    : c1_(std::move(c1)), c0_(std::move(c0)), name_(std::move(name)) {}

std::string QuadraticExtension::minpoly_string() const {
  std::ostringstream os;
  os << name_ << "^2";
  auto term = [&](const Rational& c, const std::string& mono) {
    if (sgn(c) == 0) return;
    os << (sgn(c) > 0 ? "+" : "-");
    Rational a = abs(c);
    if (mono.empty()) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << mono;
    }
  };
  term(c1_, name_);
  term(c0_, "");
  return os.str();
}

namespace {

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  Integer n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(rn, rd);
}

}  // namespace

std::vector<Rational> rational_roots_monic_quadratic(const Rational& c1, const Rational& c0) {
  Rational disc = c1 * c1 - 4 * c0;
  auto s = rational_sqrt(disc);
  if (!s) return {};
  Rational r1 = (-c1 - *s) / 2, r2 = (-c1 + *s) / 2;
  r1.canonicalize();
  r2.canonicalize();
  if (r1 == r2) return {r1};
  return {r1, r2};
}

ExtensionHandle make_extension(const Rational& c1, const Rational& c0, const std::string& name) {
  auto roots = rational_roots_monic_quadratic(c1, c0);
  if (!roots.empty()) {
    std::string msg = "minimal polynomial is reducible over Q; rational roots:";
    for (auto& r : roots) msg += " " + to_string(r);
    throw DomainError(msg);
  }
  return std::make_shared<const QuadraticExtension>(c1, c0, name);
}

ExtensionHandle Session::adjoin_quadratic(const Rational& c1, const Rational& c0,
                                          const std::string& name) {
  if (ext_) throw Unsupported("a quadratic extension is already adjoined");
  ext_ = make_extension(c1, c0, name);
  return ext_;
}

FieldElem::FieldElem(Rational a, Rational b, ExtensionHandle ext)
    : a_(std::move(a)), b_(std::move(b)), ext_(std::move(ext)) {
  a_.canonicalize();
  b_.canonicalize();
  if (sgn(b_) != 0 && !ext_) throw DomainError("extension part without an extension");
}

FieldElem FieldElem::generator(const ExtensionHandle& ext) { return FieldElem(0, 1, ext); }

ExtensionHandle FieldElem::common(const FieldElem& x, const FieldElem& y) {
  if (!x.ext_) return y.ext_;
  if (!y.ext_ || x.ext_ == y.ext_) return x.ext_;
  if (x.ext_->c1() == y.ext_->c1() && x.ext_->c0() == y.ext_->c0()) return x.ext_;
  throw Unsupported("elements from two different quadratic extensions");
}

FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  ext_ = common(*this, o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  ext_ = common(*this, o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  ext_ = common(*this, o);
  if (sgn(b_) == 0 && sgn(o.b_) == 0) {
    a_ *= o.a_;
    return *this;
  }
  // u^2 = -c1 u - c0
  Rational bd = b_ * o.b_;
  Rational na = a_ * o.a_ - bd * ext_->c0();
  Rational nb = a_ * o.b_ + b_ * o.a_ - bd * ext_->c1();
  a_ = na;
  b_ = nb;
  return *this;
}

FieldElem FieldElem::conjugate() const {
  if (sgn(b_) == 0) return *this;
  return FieldElem(a_ - b_ * ext_->c1(), -b_, ext_);
}

Rational FieldElem::norm() const {
  if (sgn(b_) == 0) return a_ * a_;
  FieldElem n = *this * conjugate();
  return n.a_;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  if (sgn(b_) == 0) return FieldElem(Rational(1) / a_);
  Rational n = norm();
  FieldElem c = conjugate();
  return FieldElem(c.a_ / n, c.b_ / n, ext_);
}

FieldElem& FieldElem::operator/=(const FieldElem& o) { return *this *= o.inverse(); }

FieldElem FieldElem::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElem r(1), b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::string FieldElem::str() const {
  if (sgn(b_) == 0) return a_.get_str();
  std::string u = ext_ ? ext_->name() : "u";
  std::string bpart;
  Rational ab = abs(b_);
  bpart = (ab == 1 ? "" : ab.get_str() + "*") + u;
  if (sgn(a_) == 0) return (sgn(b_) < 0 ? "-" : "") + bpart;
  return a_.get_str() + (sgn(b_) < 0 ? "-" : "+") + bpart;
}

std::ostream& operator<<(std::ostream& os, const FieldElem& f) { return os << f.str(); }

std::optional<FieldElem> field_sqrt(const FieldElem& x, const ExtensionHandle& ext) {
  if (!x.is_rational()) return std::nullopt;
  if (auto s = rational_sqrt(x.rational_part())) return FieldElem(*s);
  if (!ext) return std::nullopt;
  // (2u + c1)^2 = delta
  Rational delta = ext->discriminant();
  auto s = rational_sqrt(x.rational_part() / delta);
  if (!s) return std::nullopt;
  return FieldElem(*s * ext->c1(), 2 * *s, ext);
}

Puiseux::Puiseux(const FieldElem& c) {
  if (!c.is_zero()) terms_.push_back({Rational(0), c});
}

Puiseux Puiseux::monomial(const FieldElem& c, const Rational& q) {
  Puiseux p;
  if (!c.is_zero()) {
    Rational e = q;
    e.canonicalize();
    p.terms_.push_back({e, c});
  }
  return p;
}

Puiseux Puiseux::from_terms(std::vector<PuiseuxTerm> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const PuiseuxTerm& a, const PuiseuxTerm& b) { return a.exp < b.exp; });
  Puiseux p;
  for (auto& t : terms) {
    t.exp.canonicalize();
    if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
      p.terms_.back().coef += t.coef;
      if (p.terms_.back().coef.is_zero()) p.terms_.pop_back();
    } else if (!t.coef.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

std::optional<Rational> Puiseux::val() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().exp;
}

const Rational& Puiseux::valuation() const {
  if (terms_.empty()) throw DomainError("valuation of zero is +infinity");
  return terms_.front().exp;
}

const FieldElem& Puiseux::init() const {
  if (terms_.empty()) throw DomainError("no initial term");
  return terms_.front().coef;
}

Integer Puiseux::denominator_bound() const {
  Integer n = 1;
  for (auto& t : terms_) mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), t.exp.get_den_mpz_t());
  return n;
}

FieldElem Puiseux::coefficient(const Rational& q) const {
  for (auto& t : terms_)
    if (t.exp == q) return t.coef;
  return FieldElem();
}

Puiseux Puiseux::operator-() const {
  Puiseux r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

namespace {

std::vector<PuiseuxTerm> merge(const std::vector<PuiseuxTerm>& a, const std::vector<PuiseuxTerm>& b,
                               bool subtract) {
  std::vector<PuiseuxTerm> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].exp < b[j].exp)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].exp < a[i].exp) {
      out.push_back({b[j].exp, subtract ? -b[j].coef : b[j].coef});
      ++j;
    } else {
      FieldElem c = subtract ? a[i].coef - b[j].coef : a[i].coef + b[j].coef;
      if (!c.is_zero()) out.push_back({a[i].exp, c});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Puiseux& Puiseux::operator+=(const Puiseux& o) {
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

Puiseux& Puiseux::operator-=(const Puiseux& o) {
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

Puiseux operator*(const Puiseux& a, const Puiseux& b) {
  if (a.is_zero() || b.is_zero()) return Puiseux();
  std::vector<PuiseuxTerm> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (auto& x : a.terms_)
    for (auto& y : b.terms_) prod.push_back({x.exp + y.exp, x.coef * y.coef});
  return Puiseux::from_terms(std::move(prod));
}

Puiseux& Puiseux::operator*=(const Puiseux& o) {
  *this = *this * o;
  return *this;
}

Puiseux Puiseux::pow(long e) const {
  if (e < 0) {
    if (!is_single_term()) throw DomainError("negative power of a non-monomial series");
    return monomial(terms_[0].coef.pow(e), terms_[0].exp * e);
  }
  Puiseux r(1), b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Puiseux Puiseux::divided_by(const Puiseux& d) const {
  if (d.is_zero()) throw DomainError("division by zero");
  if (!d.is_single_term()) throw DomainError("division by a series with more than one term");
  FieldElem inv = d.terms_[0].coef.inverse();
  Puiseux r = *this;
  for (auto& t : r.terms_) {
    t.exp -= d.terms_[0].exp;
    t.coef *= inv;
  }
  return r;
}

Puiseux Puiseux::scaled(const FieldElem& c) const {
  if (c.is_zero()) return Puiseux();
  Puiseux r = *this;
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

Puiseux Puiseux::shifted(const Rational& q) const {
  Puiseux r = *this;
  for (auto& t : r.terms_) t.exp += q;
  return r;
}

bool operator==(const Puiseux& x, const Puiseux& y) {
  if (x.terms_.size() != y.terms_.size()) return false;
  for (size_t i = 0; i < x.terms_.size(); ++i)
    if (x.terms_[i].exp != y.terms_[i].exp || x.terms_[i].coef != y.terms_[i].coef) return false;
  return true;
}

bool operator<(const Puiseux& x, const Puiseux& y) {
  size_t n = std::min(x.terms_.size(), y.terms_.size());
  for (size_t i = 0; i < n; ++i) {
    if (x.terms_[i].exp != y.terms_[i].exp) return x.terms_[i].exp < y.terms_[i].exp;
    if (x.terms_[i].coef != y.terms_[i].coef) return x.terms_[i].coef < y.terms_[i].coef;
  }
  return x.terms_.size() < y.terms_.size();
}

namespace {

std::string t_power_string(const Rational& q) {
  if (q == 1) return "t";
  if (sgn(q) >= 0 && q.get_den() == 1) return "t^" + q.get_str();
  return "t^(" + q.get_str() + ")";
}

}  // namespace

std::string Puiseux::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& t : terms_) {
    const FieldElem& c = t.coef;
    bool zero_exp = sgn(t.exp) == 0;
    std::string piece;
    bool negative = false;
    if (c.is_rational()) {
      Rational a = c.rational_part();
      negative = sgn(a) < 0;
      Rational aa = abs(a);
      if (zero_exp) {
        piece = aa.get_str();
      } else {
        piece = (aa == 1 ? "" : aa.get_str() + "*") + t_power_string(t.exp);
      }
    } else if (sgn(c.rational_part()) == 0) {
      negative = sgn(c.extension_part()) < 0;
      FieldElem pos = negative ? -c : c;
      piece = pos.str();
      if (!zero_exp) piece += "*" + t_power_string(t.exp);
    } else {
      piece = "(" + c.str() + ")";
      if (!zero_exp) piece += "*" + t_power_string(t.exp);
    }
    if (first) {
      out += (negative ? "-" : "") + piece;
    } else {
      out += (negative ? " - " : " + ") + piece;
    }
    first = false;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Puiseux& p) { return os << p.str(); }

}  // namespace tropmod
