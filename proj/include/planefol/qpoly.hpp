#pragma once

#include <algorithm>
#include <cassert>
#include <string>
#include <utility>
#include <vector>

#include "planefol/rational.hpp"

namespace planefol {

// Dense univariate polynomial over Q, coefficients in ascending order.
// The zero polynomial has an empty coefficient vector and degree -1.
struct QPoly {
  std::vector<Rational> c;

  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }
  static QPoly constant(const Rational& a) {
    QPoly p;
    if (sgn(a) != 0) p.c = {a};
    return p;
  }
  // x^k
  static QPoly monomial(int k, const Rational& a = Rational(1)) {
    QPoly p;
    if (sgn(a) != 0) {
      p.c.assign(k + 1, Rational(0));
      p.c[k] = a;
    }
    return p;
  }

  void trim() {
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int deg() const { return (int)c.size() - 1; }
  const Rational& lc() const { return c.back(); }
  Rational coeff(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : Rational(0); }

  bool operator==(const QPoly& o) const { return c == o.c; }

  QPoly operator-() const {
    QPoly r = *this;
    for (auto& a : r.c) a = -a;
    return r;
  }
  QPoly operator+(const QPoly& o) const {
    QPoly r;
    r.c.resize(std::max(c.size(), o.c.size()), Rational(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    r.trim();
    return r;
  }
  QPoly operator-(const QPoly& o) const { return *this + (-o); }
  QPoly operator*(const QPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    QPoly r;
    r.c.assign(c.size() + o.c.size() - 1, Rational(0));
    for (size_t i = 0; i < c.size(); ++i) {
      if (sgn(c[i]) == 0) continue;
      for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    }
    r.trim();
    return r;
  }
  QPoly operator*(const Rational& a) const {
    QPoly r = *this;
    for (auto& x : r.c) x *= a;
    r.trim();
    return r;
  }

  // Euclidean division; divisor must be nonzero.
  static std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw DivisionByZero("QPoly division by zero");
    QPoly q, r = a;
    if (r.deg() >= b.deg()) q.c.assign(r.deg() - b.deg() + 1, Rational(0));
    while (!r.is_zero() && r.deg() >= b.deg()) {
      Rational f = r.lc() / b.lc();
      int k = r.deg() - b.deg();
      q.c[k] = f;
      for (int i = 0; i <= b.deg(); ++i) r.c[i + k] -= f * b.c[i];
      r.trim();
    }
    q.trim();
    return {q, r};
  }
  static QPoly exact_div(const QPoly& a, const QPoly& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw std::logic_error("QPoly exact_div: not divisible");
    return q;
  }

  QPoly derivative() const {
    QPoly r;
    for (int i = 1; i <= deg(); ++i) r.c.push_back(c[i] * i);
    r.trim();
    return r;
  }

  Rational eval(const Rational& x) const {
    Rational v(0);
    for (int i = deg(); i >= 0; --i) v = v * x + c[i];
    return v;
  }

  QPoly monic() const {
    if (is_zero()) return {};
    return *this * (Rational(1) / lc());
  }

  // Monic gcd.
  static QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
      auto r = divrem(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  // Extended Euclid: returns (g, u, w) monic g = u*a + w*b.
  static std::tuple<QPoly, QPoly, QPoly> xgcd(QPoly a, QPoly b) {
    QPoly u0 = constant(Rational(1)), u1;
    QPoly w0, w1 = constant(Rational(1));
    while (!b.is_zero()) {
      auto [q, r] = divrem(a, b);
      a = std::move(b);
      b = std::move(r);
      QPoly u2 = u0 - q * u1, w2 = w0 - q * w1;
      u0 = std::move(u1);
      u1 = std::move(u2);
      w0 = std::move(w1);
      w1 = std::move(w2);
    }
    if (a.is_zero()) return {a, u0, w0};
    Rational inv = Rational(1) / a.lc();
    return {a * inv, u0 * inv, w0 * inv};
  }

  // Ascending-power rendering, e.g. "1 - 2*t + t^3"; variable name configurable.
  std::string str(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int i = 0; i <= deg(); ++i) {
      if (sgn(c[i]) == 0) continue;
      Rational a = c[i];
      std::string sign;
      if (first) {
        if (sgn(a) < 0) {
          sign = "-";
          a = -a;
        }
      } else {
        sign = sgn(a) < 0 ? " - " : " + ";
        if (sgn(a) < 0) a = -a;
      }
      std::string term;
      if (i == 0) {
        term = rat_str(a);
      } else {
        std::string pw = (i == 1) ? var : var + "^" + std::to_string(i);
        term = (a == 1) ? pw : rat_str(a) + "*" + pw;
      }
      out += sign + term;
      first = false;
    }
    return out;
  }
};

}  // namespace planefol
