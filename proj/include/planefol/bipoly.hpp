#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "planefol/homogpoly.hpp"
#include "planefol/upoly.hpp"

namespace planefol {

// Dense bivariate polynomial over K: coefficients of y^i are UPoly in x.
struct BiPoly {
  NFPtr F;
  std::vector<UPoly> yc;

  explicit BiPoly(NFPtr f) : F(std::move(f)) {}

  void trim() {
    while (!yc.empty() && yc.back().is_zero()) yc.pop_back();
  }
  bool is_zero() const { return yc.empty(); }
  int deg_y() const { return (int)yc.size() - 1; }
  int deg_x() const {
    int d = -1;
    for (const auto& u : yc) d = std::max(d, u.deg());
    return d;
  }
  int total_deg() const {
    int d = -1;
    for (int j = 0; j < (int)yc.size(); ++j)
      if (!yc[j].is_zero()) d = std::max(d, yc[j].deg() + j);
    return d;
  }
  const UPoly& lead_y() const { return yc.back(); }
  UPoly coeff_y(int j) const {
    return (j >= 0 && j < (int)yc.size()) ? yc[j] : UPoly(F);
  }

  // Dehomogenize a homogeneous polynomial in the chart where variable `chart`
  // is 1; x is the lower-index remaining variable, y the higher-index one.
  static BiPoly from_homog(const HomogPoly& h, int chart) {
    int vx, vy;
    if (chart == 0) {
      vx = 1;
      vy = 2;
    } else if (chart == 1) {
      vx = 0;
      vy = 2;
    } else {
      vx = 0;
      vy = 1;
    }
    BiPoly r(h.F);
    for (const auto& [m, a] : h.terms) {
      int i = m[vx], j = m[vy];
      if ((int)r.yc.size() <= j) r.yc.resize(j + 1, UPoly(h.F));
      if ((int)r.yc[j].c.size() <= i) r.yc[j].c.resize(i + 1, FieldElement::zero(h.F));
      r.yc[j].c[i] = r.yc[j].c[i] + a;
    }
    for (auto& u : r.yc) u.trim();
    r.trim();
    return r;
  }

  // Lift to another number field through t -> image (coefficients mapped).
  BiPoly mapped(const NFPtr& target, const FieldElement& image_of_t) const {
    BiPoly r(target);
    r.yc.reserve(yc.size());
    for (const auto& u : yc) {
      UPoly v(target);
      v.c.reserve(u.c.size());
      for (const auto& a : u.c) v.c.push_back(map_element(a, target, image_of_t));
      v.trim();
      r.yc.push_back(std::move(v));
    }
    r.trim();
    return r;
  }

  BiPoly operator-() const {
    BiPoly r = *this;
    for (auto& u : r.yc) u = -u;
    return r;
  }
  BiPoly operator+(const BiPoly& o) const {
    BiPoly r(F);
    r.yc.resize(std::max(yc.size(), o.yc.size()), UPoly(F));
    for (size_t i = 0; i < yc.size(); ++i) r.yc[i] = r.yc[i] + yc[i];
    for (size_t i = 0; i < o.yc.size(); ++i) r.yc[i] = r.yc[i] + o.yc[i];
    r.trim();
    return r;
  }
  BiPoly operator-(const BiPoly& o) const { return *this + (-o); }
  BiPoly operator*(const BiPoly& o) const {
    BiPoly r(F);
    if (is_zero() || o.is_zero()) return r;
    r.yc.assign(yc.size() + o.yc.size() - 1, UPoly(F));
    for (size_t i = 0; i < yc.size(); ++i) {
      if (yc[i].is_zero()) continue;
      for (size_t j = 0; j < o.yc.size(); ++j) r.yc[i + j] = r.yc[i + j] + yc[i] * o.yc[j];
    }
    r.trim();
    return r;
  }
  BiPoly mul_upoly(const UPoly& u) const {
    BiPoly r = *this;
    for (auto& v : r.yc) v = v * u;
    r.trim();
    return r;
  }
  BiPoly mul_scalar(const FieldElement& a) const {
    BiPoly r = *this;
    for (auto& v : r.yc) v = v * a;
    r.trim();
    return r;
  }

  // p(x, 0) and p(0, y).
  UPoly at_y0() const { return yc.empty() ? UPoly(F) : yc[0]; }
  UPoly at_x0() const {
    UPoly r(F);
    r.c.resize(yc.size(), FieldElement::zero(F));
    for (size_t j = 0; j < yc.size(); ++j) r.c[j] = yc[j].coeff(0);
    r.trim();
    return r;
  }

  FieldElement eval(const FieldElement& x0, const FieldElement& y0) const {
    FieldElement s = FieldElement::zero(F);
    for (int j = deg_y(); j >= 0; --j) s = s * y0 + yc[j].eval(x0);
    return s;
  }

  // Substitute x -> given value, leaving a univariate polynomial in y.
  UPoly eval_x(const FieldElement& x0) const {
    UPoly r(F);
    r.c.resize(yc.size(), FieldElement::zero(F));
    for (size_t j = 0; j < yc.size(); ++j) r.c[j] = yc[j].eval(x0);
    r.trim();
    return r;
  }

  BiPoly swap_xy() const {
    BiPoly r(F);
    for (size_t j = 0; j < yc.size(); ++j)
      for (size_t i = 0; i < yc[j].c.size(); ++i) {
        if (yc[j].c[i].is_zero()) continue;
        if (r.yc.size() <= i) r.yc.resize(i + 1, UPoly(F));
        if (r.yc[i].c.size() <= j) r.yc[i].c.resize(j + 1, FieldElement::zero(F));
        r.yc[i].c[j] = yc[j].c[i];
      }
    for (auto& u : r.yc) u.trim();
    r.trim();
    return r;
  }

  // Translate: p(x + x0, y + y0).
  BiPoly shift(const FieldElement& x0, const FieldElement& y0) const {
    BiPoly r = *this;
    if (!x0.is_zero())
      for (auto& u : r.yc) u = u.shift(x0);
    if (!y0.is_zero()) {
      int n = r.deg_y();
      for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) r.yc[j] = r.yc[j] + r.yc[j + 1] * y0;
    }
    r.trim();
    return r;
  }

  BiPoly mul_x() const {
    BiPoly r = *this;
    for (auto& u : r.yc)
      if (!u.is_zero()) u.c.insert(u.c.begin(), FieldElement::zero(F));
    return r;
  }
  BiPoly mul_y() const {
    BiPoly r(F);
    r.yc.reserve(yc.size() + 1);
    r.yc.push_back(UPoly(F));
    for (const auto& u : yc) r.yc.push_back(u);
    r.trim();
    return r;
  }

  BiPoly partial_x() const {
    BiPoly r(F);
    r.yc.reserve(yc.size());
    for (const auto& u : yc) r.yc.push_back(u.derivative());
    r.trim();
    return r;
  }
  BiPoly partial_y() const {
    BiPoly r(F);
    for (int j = 1; j < (int)yc.size(); ++j)
      r.yc.push_back(yc[j] * FieldElement::from_rational(F, Rational(j)));
    r.trim();
    return r;
  }

  // Substitute x -> x - c*y (shear change of coordinates).
  BiPoly shear_x(const FieldElement& c) const {
    if (c.is_zero()) return *this;
    BiPoly xmincy(F);  // x - c*y
    xmincy.yc.resize(2, UPoly(F));
    xmincy.yc[0] = UPoly::monomial(F, 1, FieldElement::one(F));
    xmincy.yc[1] = UPoly::constant(F, -c);
    int dx = deg_x();
    std::vector<BiPoly> pows;
    BiPoly one(F);
    one.yc = {UPoly::constant(F, FieldElement::one(F))};
    pows.push_back(one);
    for (int i = 1; i <= std::max(dx, 0); ++i) pows.push_back(pows[i - 1] * xmincy);
    BiPoly r(F);
    for (int j = 0; j < (int)yc.size(); ++j)
      for (int i = 0; i < (int)yc[j].c.size(); ++i) {
        if (yc[j].c[i].is_zero()) continue;
        BiPoly term = pows[i].mul_scalar(yc[j].c[i]);
        for (int k = 0; k < j; ++k) term = term.mul_y();
        r = r + term;
      }
    return r;
  }

  // Divide out the largest possible power of y.
  BiPoly divexact_y(int k) const {
    BiPoly r(F);
    r.yc.assign(yc.begin() + k, yc.end());
    return r;
  }

  // Content (monic gcd in K[x] of the y-coefficients) and primitive part.
  UPoly content() const {
    UPoly g(F);
    for (const auto& u : yc) {
      g = UPoly::gcd(g, u);
      if (g.deg() == 0 && !g.is_zero()) break;
    }
    return g;
  }
  BiPoly primitive_part() const {
    if (is_zero()) return *this;
    UPoly cont = content();
    BiPoly r(F);
    r.yc.reserve(yc.size());
    for (const auto& u : yc) r.yc.push_back(u.is_zero() ? u : UPoly::exact_div(u, cont));
    r.trim();
    return r;
  }

  // Pseudo-remainder of a by b with respect to y (deg_y b >= 1).
  static BiPoly prem_y(BiPoly a, const BiPoly& b) {
    int db = b.deg_y();
    const UPoly& lb = b.lead_y();
    while (!a.is_zero() && a.deg_y() >= db) {
      int k = a.deg_y() - db;
      UPoly la = a.lead_y();
      // a := lb*a - la*y^k*b
      BiPoly t1 = a.mul_upoly(lb);
      BiPoly t2(b.F);
      t2.yc.assign(b.yc.size() + k, UPoly(b.F));
      for (size_t j = 0; j < b.yc.size(); ++j) t2.yc[j + k] = b.yc[j] * la;
      a = t1 - t2;
    }
    return a;
  }

  // gcd in K[x,y], normalized: primitive in y, leading coefficient (of the
  // leading y-term) monic.
  static BiPoly gcd(BiPoly a, BiPoly b) {
    if (a.is_zero()) return normalize(b);
    if (b.is_zero()) return normalize(a);
    if (a.deg_y() == 0 && b.deg_y() == 0) {
      BiPoly r(a.F);
      r.yc = {UPoly::gcd(a.yc[0], b.yc[0])};
      return r;
    }
    if (a.deg_y() == 0) return gcd_with_univ(b, a.yc[0]);
    if (b.deg_y() == 0) return gcd_with_univ(a, b.yc[0]);
    UPoly ca = a.content(), cb = b.content();
    UPoly cont = UPoly::gcd(ca, cb);
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.deg_y() < b.deg_y()) std::swap(a, b);
    while (!b.is_zero() && b.deg_y() > 0) {
      BiPoly r = prem_y(a, b).primitive_part();
      a = std::move(b);
      b = std::move(r);
    }
    BiPoly g(a.F);
    if (!b.is_zero()) {
      // last nonzero remainder is univariate in x; primitive parts were taken,
      // so the y-parts are coprime
      g.yc = {UPoly::constant(a.F, FieldElement::one(a.F))};
    } else {
      g = a;
    }
    g = g.mul_upoly(cont);
    return normalize(g);
  }

 private:
  static BiPoly normalize(BiPoly p) {
    if (p.is_zero()) return p;
    return p.mul_scalar(p.lead_y().lc().inverse());
  }
  static BiPoly gcd_with_univ(const BiPoly& a, const UPoly& u) {
    BiPoly r(a.F);
    r.yc = {UPoly::gcd(a.content(), u)};
    return r;
  }
};

// gcd of homogeneous trivariate polynomials (up to scalar; output monic in the
// graded-lex sense).  Route: strip monomial content, dehomogenize at Z = 1,
// bivariate primitive-PRS gcd, rehomogenize.
inline HomogPoly homog_gcd(const HomogPoly& f, const HomogPoly& g) {
  if (f.is_zero()) return g.is_zero() ? g : g.monic();
  if (g.is_zero()) return f.monic();
  Monomial mf = f.min_exponents(), mg = g.min_exponents();
  Monomial common = {std::min(mf[0], mg[0]), std::min(mf[1], mg[1]),
                     std::min(mf[2], mg[2])};
  auto strip = [](const HomogPoly& p, const Monomial& s) {
    HomogPoly r(p.F, p.d - s[0] - s[1] - s[2]);
    for (const auto& [m, a] : p.terms) r.terms[{m[0] - s[0], m[1] - s[1], m[2] - s[2]}] = a;
    return r;
  };
  HomogPoly f1 = strip(f, mf), g1 = strip(g, mg);
  // f1, g1 have zero minimal exponent in every variable, in particular Z.
  BiPoly bf = BiPoly::from_homog(f1, 2), bg = BiPoly::from_homog(g1, 2);
  BiPoly h = BiPoly::gcd(bf, bg);
  int D = h.total_deg();
  HomogPoly hh(f.F, D + common[0] + common[1] + common[2]);
  for (int j = 0; j <= h.deg_y(); ++j)
    for (int i = 0; i <= h.yc[j].deg(); ++i) {
      const FieldElement& a = h.yc[j].c[i];
      if (a.is_zero()) continue;
      hh.terms[{i + common[0], j + common[1], D - i - j + common[2]}] = a;
    }
  return hh.monic();
}

}  // namespace planefol
