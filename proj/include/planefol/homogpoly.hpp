#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "planefol/numberfield.hpp"

namespace planefol {

// Exponent triple (i,j,k), i+j+k = deg.
using Monomial = std::array<int, 3>;

// Graded-lex with X > Y > Z, largest first (so map iteration starts at the
// leading term and serialization order is canonical).
struct MonoGrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = a[0] + a[1] + a[2], db = b[0] + b[1] + b[2];
    if (da != db) return da > db;
    return a > b;  // lex on (i,j,k)
  }
};

// Sparse homogeneous polynomial in X,Y,Z over a number field.
// Zero polynomial: empty term map with a conventional degree.
struct HomogPoly {
  NFPtr F;
  int d = 0;
  std::map<Monomial, FieldElement, MonoGrlexGreater> terms;

  HomogPoly() = default;
  HomogPoly(NFPtr field, int degree) : F(std::move(field)), d(degree) {}

  static HomogPoly zero(const NFPtr& f, int degree) { return HomogPoly(f, degree); }
  static HomogPoly monomial(const NFPtr& f, Monomial m, const FieldElement& a) {
    HomogPoly p(f, m[0] + m[1] + m[2]);
    if (!a.is_zero()) p.terms[m] = a;
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(const Monomial& m, const FieldElement& a) {
    if (a.is_zero()) return;
    if (m[0] + m[1] + m[2] != d) throw std::logic_error("monomial degree mismatch");
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms[m] = a;
    } else {
      it->second = it->second + a;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  FieldElement coeff(const Monomial& m) const {
    auto it = terms.find(m);
    return it == terms.end() ? FieldElement::zero(F) : it->second;
  }

  bool operator==(const HomogPoly& o) const {
    if (d != o.d || terms.size() != o.terms.size()) return false;
    auto it = terms.begin(), jt = o.terms.begin();
    for (; it != terms.end(); ++it, ++jt)
      if (it->first != jt->first || it->second != jt->second) return false;
    return true;
  }

  HomogPoly operator-() const {
    HomogPoly r = *this;
    for (auto& [m, a] : r.terms) a = -a;
    return r;
  }
  HomogPoly operator+(const HomogPoly& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (d != o.d) throw std::logic_error("degree mismatch in +");
    HomogPoly r = *this;
    for (const auto& [m, a] : o.terms) r.add_term(m, a);
    return r;
  }
  HomogPoly operator-(const HomogPoly& o) const { return *this + (-o); }
  HomogPoly operator*(const HomogPoly& o) const {
    HomogPoly r(F, d + o.d);
    for (const auto& [m, a] : terms)
      for (const auto& [m2, b] : o.terms)
        r.add_term({m[0] + m2[0], m[1] + m2[1], m[2] + m2[2]}, a * b);
    return r;
  }
  HomogPoly operator*(const FieldElement& a) const {
    HomogPoly r(F, d);
    if (a.is_zero()) return r;
    for (const auto& [m, b] : terms) {
      FieldElement v = b * a;
      if (!v.is_zero()) r.terms[m] = v;
    }
    return r;
  }

  // Partial derivative; result homogeneous of degree d-1.
  HomogPoly partial(int var) const {
    HomogPoly r(F, d > 0 ? d - 1 : 0);
    for (const auto& [m, a] : terms) {
      if (m[var] == 0) continue;
      Monomial m2 = m;
      m2[var] -= 1;
      r.add_term(m2, a * Rational(m[var]));
    }
    return r;
  }

  FieldElement eval(const FieldElement& x, const FieldElement& y,
                    const FieldElement& z) const {
    FieldElement s = FieldElement::zero(F);
    for (const auto& [m, a] : terms)
      s = s + a * x.pow(m[0]) * y.pow(m[1]) * z.pow(m[2]);
    return s;
  }

  const FieldElement& leading_coeff() const {
    if (is_zero()) throw std::logic_error("leading_coeff of zero");
    return terms.begin()->second;
  }
  HomogPoly monic() const {
    if (is_zero()) return *this;
    return *this * leading_coeff().inverse();
  }

  // Exact division by a single divisor (a single polynomial generates its
  // principal ideal's Groebner basis, so the division remainder is zero iff
  // divisible).  Returns nullopt when not divisible.
  std::optional<HomogPoly> divided_by(const HomogPoly& g) const {
    if (g.is_zero()) throw DivisionByZero("division by zero polynomial");
    if (is_zero()) return zero(F, 0);
    if (d < g.d) return std::nullopt;
    HomogPoly q(F, d - g.d), r = *this;
    const Monomial& lm = g.terms.begin()->first;
    const FieldElement li = g.leading_coeff().inverse();
    while (!r.is_zero()) {
      const auto& [m, a] = *r.terms.begin();
      Monomial qm = {m[0] - lm[0], m[1] - lm[1], m[2] - lm[2]};
      if (qm[0] < 0 || qm[1] < 0 || qm[2] < 0) return std::nullopt;
      FieldElement qc = a * li;
      q.add_term(qm, qc);
      r = r - g * HomogPoly::monomial(F, qm, qc);
    }
    return q;
  }
  bool divides(const HomogPoly& f) const { return f.divided_by(*this).has_value(); }

  // Substitute linear forms for the variables (entirely symbolic).
  // subs[v] is the linear form replacing variable v, given by 3 coefficients.
  HomogPoly substitute_linear(const std::array<std::array<FieldElement, 3>, 3>& subs) const {
    // cache powers of the three forms
    std::array<HomogPoly, 3> forms;
    for (int v = 0; v < 3; ++v) {
      HomogPoly L(F, 1);
      L.add_term({1, 0, 0}, subs[v][0]);
      L.add_term({0, 1, 0}, subs[v][1]);
      L.add_term({0, 0, 1}, subs[v][2]);
      forms[v] = L;
    }
    std::array<std::vector<HomogPoly>, 3> pows;
    for (int v = 0; v < 3; ++v) {
      pows[v].push_back(HomogPoly::monomial(F, {0, 0, 0}, FieldElement::one(F)));
      for (int e = 1; e <= d; ++e) pows[v].push_back(pows[v][e - 1] * forms[v]);
    }
    HomogPoly r(F, d);
    for (const auto& [m, a] : terms)
      r = r + (pows[0][m[0]] * pows[1][m[1]] * pows[2][m[2]]) * a;
    return r;
  }

  // Minimal exponent of each variable across terms (monomial content).
  Monomial min_exponents() const {
    Monomial mn = {d, d, d};
    for (const auto& [m, a] : terms)
      for (int v = 0; v < 3; ++v) mn[v] = std::min(mn[v], m[v]);
    return mn;
  }

  std::string str(const std::array<std::string, 3>& vars = {"X", "Y", "Z"}) const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, a] : terms) {
      std::string mono;
      for (int v = 0; v < 3; ++v) {
        if (m[v] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars[v];
        if (m[v] > 1) mono += "^" + std::to_string(m[v]);
      }
      std::string cs = a.str();
      bool neg = false;
      if (a.is_rational() && sgn(a.rational_value()) < 0) {
        neg = true;
        cs = (-a).str();
      }
      std::string term;
      if (mono.empty()) {
        term = (a.is_rational() ? cs : "(" + cs + ")");
      } else if (a.is_rational() && (cs == "1")) {
        term = mono;
      } else if (a.is_rational()) {
        term = cs + "*" + mono;
      } else {
        term = "(" + cs + ")*" + mono;
      }
      if (first) {
        out += (neg ? "-" : "") + term;
        first = false;
      } else {
        out += (neg ? " - " : " + ") + term;
      }
    }
    return out;
  }
};

}  // namespace planefol
