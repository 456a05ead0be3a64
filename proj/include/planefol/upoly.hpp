#pragma once

#include <utility>
#include <vector>

#include "planefol/numberfield.hpp"

namespace planefol {

// Dense univariate polynomial over a number field K, ascending coefficients.
struct UPoly {
  NFPtr F;
  std::vector<FieldElement> c;

  explicit UPoly(NFPtr field) : F(std::move(field)) {}
  UPoly(NFPtr field, std::vector<FieldElement> coeffs) : F(std::move(field)), c(std::move(coeffs)) {
    trim();
  }
  static UPoly constant(const NFPtr& f, const FieldElement& a) {
    UPoly p(f);
    if (!a.is_zero()) p.c = {a};
    return p;
  }
  static UPoly monomial(const NFPtr& f, int k, const FieldElement& a) {
    UPoly p(f);
    if (!a.is_zero()) {
      p.c.assign(k + 1, FieldElement::zero(f));
      p.c[k] = a;
    }
    return p;
  }
  static UPoly from_qpoly(const NFPtr& f, const QPoly& q) {
    UPoly p(f);
    for (const auto& a : q.c) p.c.push_back(FieldElement::from_rational(f, a));
    p.trim();
    return p;
  }

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int deg() const { return (int)c.size() - 1; }
  const FieldElement& lc() const { return c.back(); }
  FieldElement coeff(int i) const {
    return (i >= 0 && i < (int)c.size()) ? c[i] : FieldElement::zero(F);
  }

  bool operator==(const UPoly& o) const {
    if (c.size() != o.c.size()) return false;
    for (size_t i = 0; i < c.size(); ++i)
      if (c[i] != o.c[i]) return false;
    return true;
  }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& a : r.c) a = -a;
    return r;
  }
  UPoly operator+(const UPoly& o) const {
    UPoly r(F);
    r.c.resize(std::max(c.size(), o.c.size()), FieldElement::zero(F));
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = r.c[i] + c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] = r.c[i] + o.c[i];
    r.trim();
    return r;
  }
  UPoly operator-(const UPoly& o) const { return *this + (-o); }
  UPoly operator*(const UPoly& o) const {
    UPoly r(F);
    if (is_zero() || o.is_zero()) return r;
    r.c.assign(c.size() + o.c.size() - 1, FieldElement::zero(F));
    for (size_t i = 0; i < c.size(); ++i) {
      if (c[i].is_zero()) continue;
      for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
    }
    r.trim();
    return r;
  }
  UPoly operator*(const FieldElement& a) const {
    UPoly r = *this;
    for (auto& x : r.c) x = x * a;
    r.trim();
    return r;
  }

  static std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw DivisionByZero("UPoly division by zero");
    UPoly q(a.F), r = a;
    FieldElement li = b.lc().inverse();
    if (r.deg() >= b.deg()) q.c.assign(r.deg() - b.deg() + 1, FieldElement::zero(a.F));
    while (!r.is_zero() && r.deg() >= b.deg()) {
      FieldElement f = r.lc() * li;
      int k = r.deg() - b.deg();
      q.c[k] = f;
      for (int i = 0; i <= b.deg(); ++i) r.c[i + k] = r.c[i + k] - f * b.c[i];
      r.trim();
    }
    q.trim();
    return {q, r};
  }
  static UPoly exact_div(const UPoly& a, const UPoly& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw std::logic_error("UPoly exact_div: not divisible");
    return q;
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    return *this * lc().inverse();
  }

  static UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = divrem(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  UPoly derivative() const {
    UPoly r(F);
    for (int i = 1; i <= deg(); ++i)
      r.c.push_back(c[i] * Rational(i));
    r.trim();
    return r;
  }

  UPoly squarefree_part() const {
    if (deg() < 1) return *this;
    UPoly g = gcd(*this, derivative());
    if (g.deg() == 0) return monic();
    return exact_div(*this, g).monic();
  }

  FieldElement eval(const FieldElement& x) const {
    FieldElement v = FieldElement::zero(F);
    for (int i = deg(); i >= 0; --i) v = v * x + c[i];
    return v;
  }

  int ord() const {  // order of vanishing at 0; -1 for the zero polynomial
    for (size_t i = 0; i < c.size(); ++i)
      if (!c[i].is_zero()) return (int)i;
    return -1;
  }

  // Taylor shift x -> x + a (in-place Horner scheme).
  UPoly shift(const FieldElement& a) const {
    UPoly r = *this;
    for (int i = 0; i < deg(); ++i)
      for (int j = deg() - 1; j >= i; --j) r.c[j] = r.c[j] + a * r.c[j + 1];
    return r;
  }
};

}  // namespace planefol
