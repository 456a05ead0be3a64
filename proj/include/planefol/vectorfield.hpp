#pragma once

#include <array>
#include <optional>
#include <string>

#include "planefol/bipoly.hpp"
#include "planefol/homogpoly.hpp"

namespace planefol {

struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroForm : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidDegree : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// v = A dX + B dY + C dZ with A,B,C homogeneous of common degree d.
struct HomogVectorField {
  HomogPoly A, B, C;
  int d = 0;

  HomogVectorField() = default;
  HomogVectorField(HomogPoly a, HomogPoly b, HomogPoly c)
      : A(std::move(a)), B(std::move(b)), C(std::move(c)), d(A.d) {
    if (B.d != d || C.d != d) throw std::logic_error("component degree mismatch");
  }

  const NFPtr& field() const { return A.F; }
  const HomogPoly& comp(int i) const { return i == 0 ? A : (i == 1 ? B : C); }

  bool operator==(const HomogVectorField& o) const {
    return A == o.A && B == o.B && C == o.C;
  }

  // v applied to a polynomial: A f_X + B f_Y + C f_Z.
  HomogPoly apply(const HomogPoly& f) const {
    return A * f.partial(0) + B * f.partial(1) + C * f.partial(2);
  }
};

// P dX + Q dY + S dZ, degree d+1, radial contraction zero.
struct HomogOneForm {
  HomogPoly P, Q, S;
};

inline HomogPoly divergence(const HomogVectorField& v) {
  return v.A.partial(0) + v.B.partial(1) + v.C.partial(2);
}

// The radial field R = X dX + Y dY + Z dZ times a polynomial G.
inline HomogVectorField radial_times(const HomogPoly& G) {
  const NFPtr& F = G.F;
  auto mul_var = [&](int var) {
    HomogPoly r(F, G.d + 1);
    for (const auto& [m, a] : G.terms) {
      Monomial m2 = m;
      m2[var] += 1;
      r.terms[m2] = a;
    }
    return r;
  };
  return HomogVectorField(mul_var(0), mul_var(1), mul_var(2));
}

// v + G*R with G = -div(v)/(d+2): the unique divergence-free representative.
inline HomogVectorField normalize_div_free(const HomogVectorField& v) {
  HomogPoly div = divergence(v);
  if (div.is_zero()) return v;
  HomogPoly G = div * FieldElement::from_rational(v.field(), Rational(-1, v.d + 2));
  HomogVectorField gr = radial_times(G);
  return HomogVectorField(v.A + gr.A, v.B + gr.B, v.C + gr.C);
}

// 3x3 projective transformation (matrix modulo scalars).
struct ProjTransform {
  NFPtr F;
  std::array<std::array<FieldElement, 3>, 3> m;

  explicit ProjTransform(NFPtr f) : F(std::move(f)) {
    for (auto& row : m)
      for (auto& e : row) e = FieldElement::zero(F);
  }
  static ProjTransform identity(const NFPtr& f) {
    ProjTransform t(f);
    for (int i = 0; i < 3; ++i) t.m[i][i] = FieldElement::one(f);
    return t;
  }
  static ProjTransform diagonal(const NFPtr& f, const FieldElement& a,
                                const FieldElement& b, const FieldElement& c) {
    ProjTransform t(f);
    t.m[0][0] = a;
    t.m[1][1] = b;
    t.m[2][2] = c;
    return t;
  }
  // Permutation matrix: maps e_j to e_{perm[j]} (column j has a 1 in row perm[j]).
  static ProjTransform permutation(const NFPtr& f, const std::array<int, 3>& perm) {
    ProjTransform t(f);
    for (int j = 0; j < 3; ++j) t.m[perm[j]][j] = FieldElement::one(f);
    return t;
  }

  FieldElement det() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }

  ProjTransform adjugate() const {
    ProjTransform r(F);
    auto co = [&](int i, int j) {
      int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      return m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1];
    };
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = co(j, i);
    return r;
  }

  ProjTransform compose(const ProjTransform& o) const {  // this ∘ o
    ProjTransform r(F);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        FieldElement s = FieldElement::zero(F);
        for (int k = 0; k < 3; ++k) s = s + m[i][k] * o.m[k][j];
        r.m[i][j] = s;
      }
    return r;
  }

  std::array<FieldElement, 3> apply(const std::array<FieldElement, 3>& p) const {
    std::array<FieldElement, 3> r = {FieldElement::zero(F), FieldElement::zero(F),
                                     FieldElement::zero(F)};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) r[i] = r[i] + m[i][k] * p[k];
    return r;
  }

  // Scale so the first nonzero entry (row-major) is 1: canonical representative
  // of the projective class.
  ProjTransform normalized() const {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (!m[i][j].is_zero()) {
          FieldElement inv = m[i][j].inverse();
          ProjTransform r(F);
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) r.m[a][b] = m[a][b] * inv;
          return r;
        }
    throw SingularMatrix("zero matrix");
  }

  std::string key() const {  // canonical string for set membership
    ProjTransform n = normalized();
    std::string s;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s += n.m[i][j].str() + ";";
    return s;
  }

  bool proportional_to(const ProjTransform& o) const { return key() == o.key(); }

  bool is_diagonal() const {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j && !m[i][j].is_zero()) return false;
    return true;
  }
  // Monomial = exactly one nonzero entry per row and per column.
  bool is_monomial(std::array<int, 3>* perm_out = nullptr) const {
    std::array<int, 3> perm = {-1, -1, -1};
    for (int j = 0; j < 3; ++j) {
      int cnt = 0, row = -1;
      for (int i = 0; i < 3; ++i)
        if (!m[i][j].is_zero()) {
          ++cnt;
          row = i;
        }
      if (cnt != 1) return false;
      perm[j] = row;
    }
    if (perm[0] == perm[1] || perm[1] == perm[2] || perm[0] == perm[2]) return false;
    if (perm_out) *perm_out = perm;
    return true;
  }
};

// φ_*v: the field w with w(φ(p)) = Dφ·v(p).  For linear φ this is
// M · v(M⁻¹ x), computed symbolically with the adjugate and exact division
// by det^d.
inline HomogVectorField pushforward(const ProjTransform& phi, const HomogVectorField& v) {
  const NFPtr& F = v.field();
  FieldElement dt = phi.det();
  if (dt.is_zero()) throw SingularMatrix("pushforward by singular matrix");
  ProjTransform adj = phi.adjugate();
  // substitute x -> adj * x into each component
  std::array<std::array<FieldElement, 3>, 3> subs;
  for (int var = 0; var < 3; ++var)
    for (int j = 0; j < 3; ++j) subs[var][j] = adj.m[var][j];
  std::array<HomogPoly, 3> comp_sub;
  for (int i = 0; i < 3; ++i) comp_sub[i] = v.comp(i).substitute_linear(subs);
  // w_i = (1/det^d) * sum_k M[i][k] * comp_sub[k]
  FieldElement scale = dt.pow(v.d).inverse();
  std::array<HomogPoly, 3> w;
  for (int i = 0; i < 3; ++i) {
    HomogPoly s = HomogPoly::zero(F, v.d);
    for (int k = 0; k < 3; ++k) s = s + comp_sub[k] * phi.m[i][k];
    w[i] = s * scale;
  }
  return HomogVectorField(w[0], w[1], w[2]);
}

// λ with w = λ v, if any.
inline std::optional<FieldElement> proportional_scalar(const HomogVectorField& v,
                                                       const HomogVectorField& w) {
  const HomogPoly* vs[3] = {&v.A, &v.B, &v.C};
  const HomogPoly* ws[3] = {&w.A, &w.B, &w.C};
  std::optional<FieldElement> lambda;
  for (int i = 0; i < 3; ++i) {
    if (vs[i]->is_zero() != ws[i]->is_zero()) return std::nullopt;
    if (vs[i]->is_zero()) continue;
    if (vs[i]->terms.size() != ws[i]->terms.size()) return std::nullopt;
    auto it = vs[i]->terms.begin();
    auto jt = ws[i]->terms.begin();
    for (; it != vs[i]->terms.end(); ++it, ++jt) {
      if (it->first != jt->first) return std::nullopt;
      FieldElement ratio = jt->second / it->second;
      if (!lambda)
        lambda = ratio;
      else if (!(*lambda == ratio))
        return std::nullopt;
    }
  }
  if (!lambda) lambda = FieldElement::one(v.field());  // both zero fields
  return lambda;
}

// ω = (BZ−CY) dX + (CX−AZ) dY + (AY−BX) dZ divided by the gcd of the three
// coefficients; the saturated 1-form of the foliation.
inline HomogOneForm dual_one_form(const HomogVectorField& v) {
  const NFPtr& F = v.field();
  auto times_var = [&](const HomogPoly& p, int var) {
    HomogPoly r(F, p.d + 1);
    for (const auto& [m, a] : p.terms) {
      Monomial m2 = m;
      m2[var] += 1;
      r.terms[m2] = a;
    }
    return r;
  };
  HomogPoly P = times_var(v.B, 2) - times_var(v.C, 1);
  HomogPoly Q = times_var(v.C, 0) - times_var(v.A, 2);
  HomogPoly S = times_var(v.A, 1) - times_var(v.B, 0);
  if (P.is_zero() && Q.is_zero() && S.is_zero())
    throw ZeroForm("vector field is proportional to the radial field");
  // divide by the (monic) gcd of the three coefficients
  HomogPoly g = homog_gcd(homog_gcd(P, Q), S);
  if (g.d > 0) {
    P = P.is_zero() ? HomogPoly::zero(F, P.d - g.d) : *P.divided_by(g);
    Q = Q.is_zero() ? HomogPoly::zero(F, Q.d - g.d) : *Q.divided_by(g);
    S = S.is_zero() ? HomogPoly::zero(F, S.d - g.d) : *S.divided_by(g);
  }
  return HomogOneForm{P, Q, S};
}

inline HomogVectorField jouanolou(int d, const NFPtr& F = NumberField::rationals()) {
  if (d < 1) throw InvalidDegree("jouanolou: degree must be >= 1");
  FieldElement one = FieldElement::one(F);
  HomogPoly A = HomogPoly::monomial(F, {0, 0, d}, one);
  HomogPoly B = HomogPoly::monomial(F, {d, 0, 0}, one);
  HomogPoly C = HomogPoly::monomial(F, {0, d, 0}, one);
  return HomogVectorField(A, B, C);
}

}  // namespace planefol
