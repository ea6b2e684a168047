#include "tropmod/mpoly.hpp"

#include <numeric>
#include <sstream>

namespace tropmod {

std::string monomial_string(const std::vector<std::string>& vars, const Exponent& e) {
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (e[i] != 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

namespace {

// Shared printer: coef_str returns (is_negative, text, needs_parens_when_multiplied).
template <class C, class F>
std::string poly_string(const Poly<C>& p, F coef_str) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto& [e, c] : p.display_order()) {
    auto [neg, text, compound] = coef_str(c);
    std::string mono = monomial_string(p.vars(), e);
    std::string piece;
    if (mono.empty()) {
      piece = compound ? "(" + text + ")" : text;
    } else if (!compound && text == "1") {
      piece = mono;
    } else {
      piece = (compound ? "(" + text + ")" : text) + "*" + mono;
    }
    if (first) {
      out += (neg ? "-" : "") + piece;
    } else {
      out += (neg ? " - " : " + ") + piece;
    }
    first = false;
  }
  return out;
}

}  // namespace

std::string to_string(const PlanePoly& p) {
  return poly_string(p, [](const Puiseux& c) -> std::tuple<bool, std::string, bool> {
    if (c.is_single_term()) {
      const auto& t = c.terms()[0];
      if (t.coef.is_rational() || sgn(t.coef.rational_part()) == 0) {
        bool neg = t.coef.is_rational() ? sgn(t.coef.rational_part()) < 0
                                        : sgn(t.coef.extension_part()) < 0;
        Puiseux pos = neg ? -c : c;
        return {neg, pos.str(), false};
      }
    }
    return {false, c.str(), true};
  });
}

std::string to_string(const ResiduePoly& p) {
  return poly_string(p, [](const FieldElem& c) -> std::tuple<bool, std::string, bool> {
    if (c.is_rational()) {
      bool neg = sgn(c.rational_part()) < 0;
      return {neg, Rational(abs(c.rational_part())).get_str(), false};
    }
    if (sgn(c.rational_part()) == 0) {
      bool neg = sgn(c.extension_part()) < 0;
      return {neg, (neg ? -c : c).str(), false};
    }
    return {false, c.str(), true};
  });
}

std::string to_string(const SymPoly& p) {
  return poly_string(p, [](const Rational& c) -> std::tuple<bool, std::string, bool> {
    return {sgn(c) < 0, Rational(abs(c)).get_str(), false};
  });
}

std::map<Exponent, Rational> heights(const PlanePoly& g) {
  std::map<Exponent, Rational> h;
  for (auto& [e, c] : g.terms()) h[e] = -c.valuation();
  return h;
}

ResiduePoly init_form(const PlanePoly& g, const std::vector<Rational>& w) {
  if (g.is_zero()) throw DomainError("init_form of the zero polynomial");
  if (w.size() != g.nvars()) throw DomainError("init_form: weight dimension mismatch");
  std::optional<Rational> best;
  std::vector<std::pair<Exponent, FieldElem>> keep;
  for (auto& [e, c] : g.terms()) {
    Rational v = -c.valuation();
    for (size_t i = 0; i < e.size(); ++i) v += w[i] * e[i];
    if (!best || v > *best) {
      best = v;
      keep.clear();
    }
    if (v == *best) keep.push_back({e, c.init()});
  }
  ResiduePoly r(g.vars());
  for (auto& [e, c] : keep) r.add_term(e, c);
  return r;
}

namespace {

std::vector<std::string> replace_name(std::vector<std::string> vars, size_t i, const std::string& n) {
  for (size_t k = 0; k < vars.size(); ++k)
    if (k != i && vars[k] == n) throw DomainError("variable name already in use: " + n);
  vars[i] = n;
  return vars;
}

}  // namespace

PlanePoly shift_substitute(const PlanePoly& g, const std::string& var, const Puiseux& A,
                           const Rational& l, const std::string& newvar) {
  auto idx = g.var_index(var);
  if (!idx) throw DomainError("unknown variable: " + var);
  if (A.is_zero()) throw DomainError("shift by zero");
  auto target = replace_name(g.vars(), *idx, newvar);
  std::vector<PlanePoly> subs;
  for (size_t i = 0; i < g.nvars(); ++i) subs.push_back(PlanePoly::variable(target, i));
  subs[*idx] -= PlanePoly::constant(target, A * Puiseux::t_power(-l));
  return g.compose(subs, target);
}

PlanePoly skew_substitute(const PlanePoly& g, const std::string& xvar, const std::string& yvar,
                          const Puiseux& A, const Rational& l, const std::string& newvar) {
  auto xi = g.var_index(xvar);
  auto yi = g.var_index(yvar);
  if (!xi || !yi) throw DomainError("unknown variable in skew substitution");
  if (A.is_zero()) throw DomainError("shift by zero");
  auto target = replace_name(g.vars(), *xi, newvar);
  std::vector<PlanePoly> subs;
  for (size_t i = 0; i < g.nvars(); ++i) subs.push_back(PlanePoly::variable(target, i));
  subs[*xi] -= PlanePoly::variable(target, *yi).scaled(A * Puiseux::t_power(-l));
  return g.compose(subs, target);
}

namespace {

Puiseux puiseux_det(std::vector<std::vector<Puiseux>> m) {
  // Small matrices only; cofactor expansion.
  size_t n = m.size();
  if (n == 0) return Puiseux(1);
  if (n == 1) return m[0][0];
  Puiseux total;
  for (size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Puiseux>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<Puiseux> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    Puiseux c = m[0][j] * puiseux_det(minor);
    if (j % 2) total -= c; else total += c;
  }
  return total;
}

}  // namespace

PlanePoly affine_compose(const PlanePoly& g, const AffineMap& psi) {
  if (psi.images.size() != g.nvars()) throw DomainError("affine map: wrong number of images");
  size_t n = psi.target.size();
  std::vector<std::vector<Puiseux>> lin;
  for (auto& img : psi.images) {
    if (img.vars() != psi.target) throw DomainError("affine map: image variables differ");
    if (img.total_degree() > 1) throw DomainError("affine map: image is not affine");
    std::vector<Puiseux> row(n);
    for (size_t k = 0; k < n; ++k) {
      Exponent e(n, 0);
      e[k] = 1;
      row[k] = img.coefficient(e);
    }
    lin.push_back(row);
  }
  if (lin.size() != n || puiseux_det(lin).is_zero())
    throw DomainError("affine map is not invertible");
  return g.compose(psi.images, psi.target);
}

PlanePoly apply_rescaling(const PlanePoly& g, const Rescaling& r) {
  if (g.nvars() != 2) throw DomainError("rescaling needs a bivariate polynomial");
  PlanePoly out(g.vars());
  for (auto& [e, c] : g.terms()) out.add_term(e, c.shifted(r.c + r.a * e[0] + r.b * e[1]));
  return out;
}

PlanePoly undo_rescaling(const PlanePoly& g, const Rescaling& r) {
  return apply_rescaling(g, Rescaling{-r.a, -r.b, -r.c});
}

std::pair<PlanePoly, Rescaling> rescale_normalize(const PlanePoly& g,
                                                  const std::vector<Exponent>& cell) {
  if (cell.size() < 3) throw DomainError("rescale_normalize needs a 2-cell");
  // Solve h(a) + <a, V> = M on three affinely independent points.
  auto h = heights(g);
  const Exponent* p0 = &cell[0];
  const Exponent* p1 = nullptr;
  const Exponent* p2 = nullptr;
  for (size_t i = 1; i < cell.size() && !p2; ++i) {
    if (!p1) {
      p1 = &cell[i];
      continue;
    }
    long cross = (long)((*p1)[0] - (*p0)[0]) * (cell[i][1] - (*p0)[1]) -
                 (long)((*p1)[1] - (*p0)[1]) * (cell[i][0] - (*p0)[0]);
    if (cross != 0) p2 = &cell[i];
  }
  if (!p2) throw DomainError("rescale_normalize: cell is not 2-dimensional");
  auto hv = [&](const Exponent& e) {
    auto it = h.find(e);
    if (it == h.end()) throw DomainError("cell point outside the support");
    return it->second;
  };
  // V solves (p1-p0).V = h0-h1, (p2-p0).V = h0-h2.
  Rational a11 = (*p1)[0] - (*p0)[0], a12 = (*p1)[1] - (*p0)[1];
  Rational a21 = (*p2)[0] - (*p0)[0], a22 = (*p2)[1] - (*p0)[1];
  Rational r1 = hv(*p0) - hv(*p1), r2 = hv(*p0) - hv(*p2);
  Rational det = a11 * a22 - a12 * a21;
  Rational vx = (r1 * a22 - a12 * r2) / det;
  Rational vy = (a11 * r2 - a21 * r1) / det;
  Rational M = hv(*p0) + vx * (*p0)[0] + vy * (*p0)[1];
  Rescaling r{-vx, -vy, M};
  PlanePoly out = apply_rescaling(g, r);
  for (auto& [e, c] : out.terms())
    if (sgn(c.valuation()) < 0) throw DomainError("rescale_normalize: cell is not a subdivision cell");
  for (auto& e : cell)
    if (sgn(out.coefficient(e).valuation()) != 0)
      throw DomainError("rescale_normalize: cell is not a subdivision cell");
  return {out, r};
}

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree(const UPoly& p) {
  for (int i = (int)p.size() - 1; i >= 0; --i)
    if (!p[i].is_zero()) return i;
  return -1;
}

UPoly uadd(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

std::pair<UPoly, UPoly> udivmod(UPoly a, const UPoly& b0) {
  UPoly b = b0;
  trim(a);
  trim(b);
  if (b.empty()) throw DomainError("polynomial division by zero");
  int db = degree(b);
  UPoly q;
  if (degree(a) >= db) q.assign(degree(a) - db + 1, FieldElem());
  FieldElem lead_inv = b[db].inverse();
  while (degree(a) >= db) {
    int da = degree(a);
    FieldElem c = a[da] * lead_inv;
    q[da - db] = c;
    for (int i = 0; i <= db; ++i) a[da - db + i] -= c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = udivmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  FieldElem inv = a.back().inverse();
  for (auto& c : a) c *= inv;
  return a;
}

UPoly uderivative(const UPoly& p) {
  UPoly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * FieldElem((long)i));
  trim(d);
  return d;
}

FieldElem ueval(const UPoly& p, const FieldElem& x) {
  FieldElem r;
  for (int i = (int)p.size() - 1; i >= 0; --i) r = r * x + p[i];
  return r;
}

namespace {

FieldElem field_det(std::vector<std::vector<FieldElem>> m) {
  size_t n = m.size();
  FieldElem det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return FieldElem();
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    FieldElem inv = m[c][c].inverse();
    for (size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      FieldElem f = m[r][c] * inv;
      for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

template <class T>
std::vector<std::vector<T>> sylvester(const std::vector<T>& a, const std::vector<T>& b) {
  int n = (int)a.size() - 1, s = (int)b.size() - 1;
  int size = n + s;
  std::vector<std::vector<T>> m(size, std::vector<T>(size));
  // Rows: s shifted copies of a, n shifted copies of b; highest coefficient first.
  for (int r = 0; r < s; ++r)
    for (int k = 0; k <= n; ++k) m[r][r + k] = a[n - k];
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= s; ++k) m[s + r][r + k] = b[s - k];
  return m;
}

}  // namespace

FieldElem uresultant(const UPoly& a0, const UPoly& b0) {
  UPoly a = a0, b = b0;
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return FieldElem();
  if (a.size() == 1 && b.size() == 1) return FieldElem(1);
  return field_det(sylvester(a, b));
}

FieldElem udiscriminant(const UPoly& p0) {
  UPoly p = p0;
  trim(p);
  int n = degree(p);
  if (n < 1) throw DomainError("discriminant of a constant");
  if (n == 1) return FieldElem(1);
  FieldElem r = uresultant(p, uderivative(p)) / p[n];
  if ((n * (n - 1) / 2) % 2) r = -r;
  return r;
}

int root_order(const UPoly& p0, const FieldElem& x0) {
  UPoly p = p0;
  trim(p);
  if (p.empty()) throw DomainError("root order in the zero polynomial");
  int k = 0;
  UPoly lin{-x0, FieldElem(1)};
  while (true) {
    auto [q, r] = udivmod(p, lin);
    if (!r.empty()) return k;
    p = q;
    ++k;
  }
}

namespace {

std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> d;
  if (n == 0) return d;
  for (Integer k = 1; k * k <= n; ++k)
    if (n % k == 0) {
      d.push_back(k);
      if (k * k != n) d.push_back(n / k);
    }
  return d;
}

bool all_rational(const UPoly& p) {
  for (auto& c : p)
    if (!c.is_rational()) return false;
  return true;
}

}  // namespace

std::vector<FieldElem> field_roots(const UPoly& p0, const ExtensionHandle& ext) {
  UPoly p = p0;
  trim(p);
  std::vector<FieldElem> roots;
  auto add_root = [&](const FieldElem& r) {
    for (auto& x : roots)
      if (x == r) return;
    roots.push_back(r);
  };
  while (degree(p) > 0) {
    int d = degree(p);
    if (d == 1) {
      add_root(-p[0] / p[1]);
      break;
    }
    if (d == 2) {
      FieldElem a = p[2], b = p[1], c = p[0];
      FieldElem disc = b * b - FieldElem(4) * a * c;
      if (auto s = field_sqrt(disc, ext)) {
        add_root((-b - *s) / (FieldElem(2) * a));
        add_root((-b + *s) / (FieldElem(2) * a));
      }
      break;
    }
    if (!all_rational(p)) break;
    // Rational root search on the integer-scaled polynomial.
    Integer den = 1;
    for (auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational_part().get_den_mpz_t());
    std::vector<Integer> ints;
    for (auto& c : p) ints.push_back(Rational(c.rational_part() * den).get_num());
    size_t low = 0;
    while (ints[low] == 0) ++low;
    if (low > 0) {
      add_root(FieldElem(0));
      p.erase(p.begin(), p.begin() + low);
      continue;
    }
    bool found = false;
    for (auto& num : divisors(ints.front())) {
      for (auto& dd : divisors(ints.back())) {
        for (int sign : {1, -1}) {
          FieldElem cand(Rational(num * sign, dd));
          if (ueval(p, cand).is_zero()) {
            add_root(cand);
            p = udivmod(p, UPoly{-cand, FieldElem(1)}).first;
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

SymPoly sym_determinant(std::vector<std::vector<SymPoly>> m, const std::vector<std::string>& vars) {
  size_t n = m.size();
  if (n == 0) return SymPoly::constant(vars, Rational(1));
  if (n == 1) return m[0][0];
  SymPoly total(vars);
  for (size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<SymPoly>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<SymPoly> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    SymPoly c = m[0][j] * sym_determinant(std::move(minor), vars);
    if (j % 2) total -= c; else total += c;
  }
  return total;
}

SymPoly sym_resultant(const std::vector<SymPoly>& a, const std::vector<SymPoly>& b,
                      const std::vector<std::string>& vars) {
  auto m = sylvester(a, b);
  for (auto& row : m)
    for (auto& e : row)
      if (e.vars().empty()) e = SymPoly(vars);
  return sym_determinant(std::move(m), vars);
}

std::optional<ResiduePoly> exact_divide(const ResiduePoly& h, const ResiduePoly& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (h.is_zero()) return ResiduePoly(h.vars());
  size_t n = h.nvars();
  auto min_exp = [n](const ResiduePoly& p) {
    Exponent m(n, 0);
    bool first = true;
    for (auto& [e, c] : p.terms()) {
      for (size_t i = 0; i < n; ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
      first = false;
    }
    return m;
  };
  Exponent mh = min_exp(h), mb = min_exp(b);
  for (auto& k : mh) k = -k;
  for (auto& k : mb) k = -k;
  ResiduePoly r = h.shifted_monomial(mh);
  ResiduePoly d = b.shifted_monomial(mb);
  auto [lte, ltc] = *d.terms().rbegin();
  ResiduePoly q(h.vars());
  while (!r.is_zero()) {
    auto [re, rc] = *r.terms().rbegin();
    Exponent qe(n);
    for (size_t i = 0; i < n; ++i) {
      qe[i] = re[i] - lte[i];
      if (qe[i] < 0) return std::nullopt;
    }
    FieldElem qc = rc / ltc;
    q.add_term(qe, qc);
    r -= d.shifted_monomial(qe).scaled(qc);
  }
  // h = m_h^{-1} * d * m_b^{-1}... restore the monomial shifts.
  Exponent back(n);
  for (size_t i = 0; i < n; ++i) back[i] = -mh[i] + mb[i];
  return q.shifted_monomial(back);
}

FieldElem sym_eval(const SymPoly& p, const std::vector<FieldElem>& vals) {
  std::vector<std::vector<FieldElem>> pw(vals.size(), std::vector<FieldElem>{FieldElem(1)});
  FieldElem total;
  for (auto& [e, c] : p.terms()) {
    FieldElem term(c);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      while ((int)pw[i].size() <= e[i]) pw[i].push_back(pw[i].back() * vals[i]);
      term *= pw[i][e[i]];
    }
    total += term;
  }
  return total;
}

Puiseux sym_eval(const SymPoly& p, const std::vector<Puiseux>& vals) {
  std::vector<std::vector<Puiseux>> pw(vals.size(), std::vector<Puiseux>{Puiseux(1)});
  Puiseux total;
  for (auto& [e, c] : p.terms()) {
    Puiseux term(c);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      while ((int)pw[i].size() <= e[i]) pw[i].push_back(pw[i].back() * vals[i]);
      term *= pw[i][e[i]];
    }
    total += term;
  }
  return total;
}

}  // namespace tropmod
