#pragma once

#include <stdexcept>
#include <vector>

#include "planefol/bipoly.hpp"

namespace planefol {

// Thrown when a local intersection is not isolated (common branch at the point).
struct LocalInfinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Local intersection multiplicity dim_K O_0 / (p, q) at the origin, via the
// classical recursive reduction (restrict to y = 0, peel off y factors,
// cancel leading terms of the restrictions).  Exact over any number field.
inline long intersection_multiplicity_origin(BiPoly p, BiPoly q, int depth = 0) {
  if (depth > 512) throw LocalInfinite("intersection multiplicity recursion overflow");
  if (!p.eval(FieldElement::zero(p.F), FieldElement::zero(p.F)).is_zero()) return 0;
  if (!q.eval(FieldElement::zero(q.F), FieldElement::zero(q.F)).is_zero()) return 0;
  if (p.is_zero() || q.is_zero())
    throw LocalInfinite("zero polynomial in local intersection");
  for (int guard = 0; guard < 4096; ++guard) {
    UPoly a = p.at_y0(), b = q.at_y0();
    if (a.is_zero() && b.is_zero())
      throw LocalInfinite("common factor y at the point");
    if (a.is_zero()) {
      // p = y * p1 ; I(p,q) = I(y,q) + I(p1,q), and I(y,q) = ord_x q(x,0)
      BiPoly p1 = p.divexact_y(1);
      long o = b.ord();
      return o + intersection_multiplicity_origin(std::move(p1), std::move(q), depth + 1);
    }
    if (b.is_zero()) {
      BiPoly q1 = q.divexact_y(1);
      long o = a.ord();
      return o + intersection_multiplicity_origin(std::move(p), std::move(q1), depth + 1);
    }
    // cancel the higher-degree restriction against the lower one
    if (a.deg() > b.deg()) {
      std::swap(a, b);
      std::swap(p, q);
    }
    FieldElement c = b.lc() / a.lc();
    int k = b.deg() - a.deg();
    q = q - p.mul_upoly(UPoly::monomial(p.F, k, c));
    // q(x,0) lost its leading term; loop
  }
  throw LocalInfinite("local intersection reduction did not terminate");
}

// Determinant by Gaussian elimination over the field.
inline FieldElement det_field(std::vector<std::vector<FieldElement>> m, const NFPtr& F) {
  const int n = (int)m.size();
  FieldElement det = FieldElement::one(F);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!m[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return FieldElement::zero(F);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det = det * m[col][col];
    FieldElement inv = m[col][col].inverse();
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      FieldElement f = m[r][col] * inv;
      for (int cc = col; cc < n; ++cc) m[r][cc] = m[r][cc] - f * m[col][cc];
    }
  }
  return det;
}

// Sylvester resultant of two univariate coefficient vectors with *formal*
// degrees np, nq (leading entries may be zero); needed so that evaluation of
// a bivariate resultant commutes with specialization of x.
inline FieldElement sylvester_resultant(const std::vector<FieldElement>& pc, int np,
                                        const std::vector<FieldElement>& qc, int nq,
                                        const NFPtr& F) {
  if (np == 0 && nq == 0) return FieldElement::one(F);
  auto get = [&](const std::vector<FieldElement>& v, int i) {
    return (i >= 0 && i < (int)v.size()) ? v[i] : FieldElement::zero(F);
  };
  if (np == 0) return get(pc, 0).pow(nq);
  if (nq == 0) return get(qc, 0).pow(np);
  const int n = np + nq;
  std::vector<std::vector<FieldElement>> m(n, std::vector<FieldElement>(n, FieldElement::zero(F)));
  for (int r = 0; r < nq; ++r)
    for (int i = 0; i <= np; ++i) m[r][r + i] = get(pc, np - i);
  for (int r = 0; r < np; ++r)
    for (int i = 0; i <= nq; ++i) m[nq + r][r + i] = get(qc, nq - i);
  return det_field(std::move(m), F);
}

// Lagrange interpolation through (nodes[i], values[i]), exact over K.
inline UPoly lagrange_interpolate(const std::vector<FieldElement>& nodes,
                                  const std::vector<FieldElement>& values,
                                  const NFPtr& F) {
  UPoly result(F);
  const int n = (int)nodes.size();
  for (int i = 0; i < n; ++i) {
    UPoly li = UPoly::constant(F, FieldElement::one(F));
    FieldElement denom = FieldElement::one(F);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      li = li * UPoly(F, {-nodes[j], FieldElement::one(F)});
      denom = denom * (nodes[i] - nodes[j]);
    }
    result = result + li * (values[i] / denom);
  }
  return result;
}

// Res_y(p, q) as a polynomial in x, by evaluation at x = 0..D with formal
// Sylvester determinants, then interpolation.  Exact.
inline UPoly resultant_y(const BiPoly& p, const BiPoly& q) {
  const NFPtr& F = p.F;
  int np = p.deg_y(), nq = q.deg_y();
  if (np < 0 || nq < 0) return UPoly(F);  // resultant with the zero polynomial
  int dxp = std::max(p.deg_x(), 0), dxq = std::max(q.deg_x(), 0);
  int D = np * dxq + nq * dxp;
  std::vector<FieldElement> nodes, values;
  nodes.reserve(D + 1);
  for (int k = 0; k <= D; ++k) {
    FieldElement x0 = FieldElement::from_rational(F, Rational(k));
    std::vector<FieldElement> pc(np + 1, FieldElement::zero(F)),
        qc(nq + 1, FieldElement::zero(F));
    for (int j = 0; j <= np; ++j) pc[j] = p.coeff_y(j).eval(x0);
    for (int j = 0; j <= nq; ++j) qc[j] = q.coeff_y(j).eval(x0);
    nodes.push_back(x0);
    values.push_back(sylvester_resultant(pc, np, qc, nq, F));
  }
  return lagrange_interpolate(nodes, values, F);
}

// ---------- truncated power series over K ----------

struct PSeries {
  NFPtr F;
  int N;  // number of stored coefficients (orders 0..N-1)
  std::vector<FieldElement> c;

  PSeries(NFPtr f, int n) : F(std::move(f)), N(n), c(n, FieldElement::zero(F)) {}

  static PSeries from_upoly(const UPoly& u, int n) {
    PSeries s(u.F, n);
    for (int i = 0; i < n && i <= u.deg(); ++i) s.c[i] = u.c[i];
    return s;
  }

  int ord() const {
    for (int i = 0; i < N; ++i)
      if (!c[i].is_zero()) return i;
    return N;  // vanishes to at least the truncation order
  }

  PSeries operator+(const PSeries& o) const {
    PSeries r(F, N);
    for (int i = 0; i < N; ++i) r.c[i] = c[i] + o.c[i];
    return r;
  }
  PSeries operator-(const PSeries& o) const {
    PSeries r(F, N);
    for (int i = 0; i < N; ++i) r.c[i] = c[i] - o.c[i];
    return r;
  }
  PSeries operator*(const PSeries& o) const {
    PSeries r(F, N);
    for (int i = 0; i < N; ++i) {
      if (c[i].is_zero()) continue;
      for (int j = 0; j + i < N; ++j)
        if (!o.c[j].is_zero()) r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
    }
    return r;
  }

  // Multiplicative inverse; requires a unit constant term.
  PSeries inverse() const {
    if (c[0].is_zero()) throw DivisionByZero("series inverse: zero constant term");
    PSeries r(F, N);
    FieldElement i0 = c[0].inverse();
    r.c[0] = i0;
    for (int k = 1; k < N; ++k) {
      FieldElement s = FieldElement::zero(F);
      for (int j = 1; j <= k; ++j)
        if (!c[j].is_zero()) s = s + c[j] * r.c[k - j];
      r.c[k] = -(i0 * s);
    }
    return r;
  }
};

// Evaluate a bivariate polynomial at (x = the series "x", y = phi(x)).
inline PSeries bipoly_eval_series(const BiPoly& p, const PSeries& phi) {
  const NFPtr& F = p.F;
  int N = phi.N;
  PSeries acc(F, N);
  for (int j = p.deg_y(); j >= 0; --j) {
    acc = acc * phi;
    PSeries coef = PSeries::from_upoly(p.coeff_y(j), N);
    acc = acc + coef;
  }
  return acc;
}

// Solve g(x, phi(x)) = 0 with phi(0) = 0 by Newton iteration, truncated to N
// coefficients.  Requires g(0,0) = 0 and g_y(0,0) != 0 (smooth graph branch).
inline PSeries solve_branch_series(const BiPoly& g, int N) {
  const NFPtr& F = g.F;
  // dg/dy
  BiPoly gy(F);
  for (int j = 1; j <= g.deg_y(); ++j) {
    if ((int)gy.yc.size() <= j - 1) gy.yc.resize(j, UPoly(F));
    gy.yc[j - 1] = g.coeff_y(j) * FieldElement::from_rational(F, Rational(j));
  }
  gy.trim();
  PSeries phi(F, N);
  int steps = 1;
  while ((1 << steps) < N + 1) ++steps;
  for (int it = 0; it <= steps + 1; ++it) {
    PSeries val = bipoly_eval_series(g, phi);
    PSeries der = bipoly_eval_series(gy, phi);
    phi = phi - val * der.inverse();
  }
  // verification: g(x, phi) must vanish to the truncation order
  PSeries check = bipoly_eval_series(g, phi);
  if (check.ord() < N)
    throw std::logic_error("branch series did not converge (non-smooth branch?)");
  return phi;
}

}  // namespace planefol
