#pragma once

#include <algorithm>
#include <optional>

#include "planefol/localalg.hpp"
#include "planefol/vectorfield.hpp"

namespace planefol {

struct NonIsolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotSingular : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateBB : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One singular point (or Galois orbit of points) of a plane foliation.
// `point` is normalized so that the first nonzero coordinate is 1.  When
// split = false the record stands for the whole fiber of conjugate points over
// an x-coordinate, with `milnor` the aggregate multiplicity per conjugate.
struct SingularityRecord {
  NFPtr field;
  std::array<FieldElement, 3> point;
  long milnor = 1;
  bool split = true;
  bool reduced = false;
  std::optional<FieldElement> eigen_ratio;
  std::optional<FieldElement> bb;
};

struct SingOptions {
  int max_field_degree = 64;
};

namespace detail_sing {

inline HomogPoly times_var(const HomogPoly& p, int var) {
  HomogPoly r(p.F, p.d + 1);
  for (const auto& [m, a] : p.terms) {
    Monomial m2 = m;
    m2[var] += 1;
    r.terms[m2] = a;
  }
  return r;
}

inline QPoly to_qpoly(const UPoly& u) {
  QPoly q;
  q.c.reserve(u.c.size());
  for (const auto& a : u.c) q.c.push_back(a.rational_value());
  return q;
}

// Q[t]/(m) for an irreducible monic m, together with its canonical root:
// rational for degree 1, the generator t otherwise.  Cyclotomic polynomials
// are recognized so the field carries its cyclotomic(n) tag (needed later to
// compare roots of unity living in different fields).
inline std::pair<NFPtr, FieldElement> field_and_root(const QPoly& m) {
  QPoly mm = m.monic();
  if (mm.deg() == 1) {
    NFPtr Q = NumberField::rationals();
    return {Q, FieldElement::from_rational(Q, -mm.coeff(0))};
  }
  unsigned long deg = (unsigned long)mm.deg();
  for (unsigned long k = 3; k <= 2 * deg * deg + 12; ++k) {
    if (euler_phi(k) != deg) continue;
    if (cyclotomic_minpoly(k) == mm) {
      NFPtr K = NumberField::cyclotomic(k);
      return {K, FieldElement::gen(K)};
    }
  }
  NFPtr K = NumberField::create(mm);
  return {K, FieldElement::gen(K)};
}

}  // namespace detail_sing

// The dual 1-form before saturation; its zero set is where v is proportional
// to the radial field.
inline HomogOneForm raw_one_form(const HomogVectorField& v) {
  using detail_sing::times_var;
  HomogPoly P = times_var(v.B, 2) - times_var(v.C, 1);
  HomogPoly Q = times_var(v.C, 0) - times_var(v.A, 2);
  HomogPoly S = times_var(v.A, 1) - times_var(v.B, 0);
  return HomogOneForm{P, Q, S};
}

// Throws unless the singular scheme is finite (no common factor of the dual
// form's coefficients).
inline void require_isolated(const HomogVectorField& v) {
  HomogOneForm w = raw_one_form(v);
  if (w.P.is_zero() && w.Q.is_zero() && w.S.is_zero())
    throw ZeroForm("vector field is proportional to the radial field");
  HomogPoly g = homog_gcd(homog_gcd(w.P, w.Q), w.S);
  if (g.d > 0)
    throw NonIsolated("singular scheme has a one-dimensional component: " + g.str());
}

// Affine equations of the singular locus in the chart where coordinate
// `chart` equals 1: the point (x:y:1)-style conditions A/X = B/Y = C/Z
// written without denominators.
inline std::pair<BiPoly, BiPoly> chart_system(const HomogVectorField& v, int chart) {
  if (chart == 2) {
    BiPoly c = BiPoly::from_homog(v.C, 2);
    return {BiPoly::from_homog(v.A, 2) - c.mul_x(), BiPoly::from_homog(v.B, 2) - c.mul_y()};
  }
  if (chart == 1) {
    BiPoly b = BiPoly::from_homog(v.B, 1);
    return {BiPoly::from_homog(v.A, 1) - b.mul_x(), BiPoly::from_homog(v.C, 1) - b.mul_y()};
  }
  BiPoly a = BiPoly::from_homog(v.A, 0);
  return {BiPoly::from_homog(v.B, 0) - a.mul_x(), BiPoly::from_homog(v.C, 0) - a.mul_y()};
}

inline BiPoly bipoly_to_field(const BiPoly& b, const NFPtr& K) {
  if (b.F->same_as(*K)) return b;
  if (!b.F->is_q()) throw FieldMismatch("cannot embed a nontrivial field implicitly");
  return b.mapped(K, FieldElement::zero(K));
}

inline std::array<FieldElement, 3> normalize_point(std::array<FieldElement, 3> p) {
  for (int i = 0; i < 3; ++i)
    if (!p[i].is_zero()) {
      FieldElement inv = p[i].inverse();
      for (int j = 0; j < 3; ++j) p[j] = p[j] * inv;
      return p;
    }
  throw std::invalid_argument("zero projective point");
}

// Local data at the origin of an affine system (p, q): Milnor number,
// eigenvalue ratio, reducedness, Baum-Bott value of the linear part.
inline SingularityRecord local_data_affine(const BiPoly& p, const BiPoly& q) {
  const NFPtr& K = p.F;
  FieldElement z = FieldElement::zero(K);
  if (!p.eval(z, z).is_zero() || !q.eval(z, z).is_zero())
    throw NotSingular("affine system does not vanish at the point");
  SingularityRecord rec;
  rec.field = K;
  rec.milnor = intersection_multiplicity_origin(p, q);
  // Jacobian of (p, q) at the origin
  FieldElement j11 = p.coeff_y(0).coeff(1), j12 = p.coeff_y(1).coeff(0);
  FieldElement j21 = q.coeff_y(0).coeff(1), j22 = q.coeff_y(1).coeff(0);
  FieldElement tr = j11 + j22;
  FieldElement det = j11 * j22 - j12 * j21;
  if (det.is_zero()) {
    if (tr.is_zero()) {
      rec.reduced = false;  // both eigenvalues vanish
    } else {
      rec.reduced = true;  // saddle-node: eigenvalues (0, tr)
      rec.eigen_ratio = FieldElement::zero(K);
    }
    return rec;  // bb absent outside the nondegenerate case
  }
  FieldElement bbv = tr * tr / det;
  rec.bb = bbv;
  rec.reduced = true;
  // The eigenvalue ratio r satisfies r + 1/r + 2 = tr^2/det, i.e.
  // r^2 + (2 - c) r + 1 = 0 with c = bb.  Not reduced exactly when r is a
  // positive rational, i.e. c rational, c^2 - 4c a rational square, c >= 4.
  if (bbv.is_rational()) {
    Rational c = bbv.rational_value();
    Rational disc = c * c - c * 4;
    Rational root;
    if (rat_is_square(disc, &root)) {
      if (c >= 4) rec.reduced = false;
      Rational r1 = (c - 2 + root) / 2, r2 = (c - 2 - root) / 2;
      Rational pick = (abs(r1) >= abs(r2)) ? r1 : r2;  // normalize so |ratio| >= 1
      rec.eigen_ratio = FieldElement::from_rational(K, pick);
    }
  }
  if (!rec.eigen_ratio) {
    // equal eigenvalues are detectable in any field
    if ((tr * tr - det * 4).is_zero()) rec.eigen_ratio = FieldElement::one(K);
  }
  return rec;
}

namespace detail_sing {

// Chart-local coordinates of a normalized projective point for chart_system's
// variable order.
inline std::pair<FieldElement, FieldElement> chart_coords(
    const std::array<FieldElement, 3>& p, int chart) {
  if (chart == 0) return {p[1], p[2]};
  if (chart == 1) return {p[0], p[2]};
  return {p[0], p[1]};
}

inline std::pair<BiPoly, BiPoly> shifted_system(const HomogVectorField& v,
                                                const std::array<FieldElement, 3>& pt) {
  std::array<FieldElement, 3> p = normalize_point(pt);
  const NFPtr& K = p[0].field();
  int chart = 0;
  while (p[chart].is_zero()) ++chart;
  auto [a, b] = chart_system(v, chart);
  auto [lx, ly] = chart_coords(p, chart);
  BiPoly ak = bipoly_to_field(a, K), bk = bipoly_to_field(b, K);
  return {ak.shift(lx, ly), bk.shift(lx, ly)};
}

// Emit one record for the point (x0, y0) in chart-`chart` coordinates over K.
inline SingularityRecord make_record(const HomogVectorField& v, const NFPtr& K,
                                     const FieldElement& x0, const FieldElement& y0,
                                     int chart) {
  std::array<FieldElement, 3> pt;
  FieldElement one = FieldElement::one(K);
  if (chart == 2)
    pt = {x0, y0, one};
  else if (chart == 1)
    pt = {x0, one, y0};
  else
    pt = {one, x0, y0};
  auto [ps, qs] = shifted_system(v, pt);
  SingularityRecord rec = local_data_affine(ps, qs);  // throws NotSingular if wrong
  rec.point = normalize_point(pt);
  return rec;
}

struct AffineSolution {
  NFPtr field;
  FieldElement x, y;
};

// Solve an affine system (p, q) over Q by elimination: resultant in y,
// factorization over Q, then recovery of y over each root field.  A shear
// x -> x + c*y is retried until every x-fiber is a single reduced point
// (i.e. x is a primitive element); only finitely many shears can fail.
// Returns nullopt when every shear fails.
inline std::optional<std::vector<AffineSolution>> solve_affine_system(
    const BiPoly& p, const BiPoly& q, int max_field_degree) {
  const NFPtr Q = NumberField::rationals();
  if (p.is_zero() || q.is_zero()) {
    if (p.is_zero() && q.is_zero()) throw NonIsolated("affine system vanishes identically");
    // one equation only: its zero set is a curve unless it is a nonzero constant
    const BiPoly& nz = p.is_zero() ? q : p;
    if (nz.total_deg() > 0) throw NonIsolated("affine system degenerates to one equation");
    return std::vector<AffineSolution>{};  // no solutions
  }
  if (p.total_deg() == 0 || q.total_deg() == 0) return std::vector<AffineSolution>{};
  for (int sh = 0; sh <= 12; ++sh) {
    FieldElement c = FieldElement::from_rational(Q, Rational(sh));
    BiPoly ps = p.shear_x(c), qs = q.shear_x(c);
    UPoly Ru = resultant_y(ps, qs);
    if (Ru.is_zero()) throw NonIsolated("vanishing eliminant: common curve");
    QPoly R = to_qpoly(Ru);
    std::vector<AffineSolution> sols;
    bool ok = true;
    for (const auto& [m, mult] : factor_qpoly(R, max_field_degree)) {
      (void)mult;
      if (m.deg() < 1) continue;
      if (m.deg() == 1) {
        // rational x-fiber: split the fiber completely by factoring in y over Q
        FieldElement x0 = FieldElement::from_rational(Q, -m.monic().coeff(0));
        UPoly u = UPoly::gcd(ps.eval_x(x0), qs.eval_x(x0));
        if (u.is_zero()) throw NonIsolated("line of common zeros");
        if (u.deg() == 0) continue;  // no actual solution above this root
        for (const auto& [my, emult] : factor_qpoly(to_qpoly(u), max_field_degree)) {
          (void)emult;
          if (my.deg() < 1) continue;
          auto [K, y0] = field_and_root(my);
          FieldElement xk = FieldElement::from_rational(K, x0.rational_value());
          FieldElement xo = xk - FieldElement::from_rational(K, Rational(sh)) * y0;
          sols.push_back({K, xo, y0});
        }
      } else {
        auto [K, x0] = field_and_root(m);
        BiPoly pk = bipoly_to_field(ps, K), qk = bipoly_to_field(qs, K);
        UPoly u = UPoly::gcd(pk.eval_x(x0), qk.eval_x(x0));
        if (u.is_zero()) throw NonIsolated("line of common zeros");
        if (u.deg() == 0) continue;
        UPoly h = u.squarefree_part();
        if (h.deg() != 1) {
          ok = false;  // x not a primitive element at this shear; retry
          break;
        }
        FieldElement y0 = -h.coeff(0) / h.coeff(1);
        FieldElement xo = x0 - FieldElement::from_rational(K, Rational(sh)) * y0;
        sols.push_back({K, xo, y0});
      }
    }
    if (ok) return sols;
  }
  return std::nullopt;
}

inline bool solve_finite_chart(const HomogVectorField& v, const BiPoly& p,
                               const BiPoly& q, const SingOptions& opt,
                               std::vector<SingularityRecord>& out) {
  auto sols = solve_affine_system(p, q, opt.max_field_degree);
  if (!sols) return false;
  for (const auto& s : *sols) out.push_back(make_record(v, s.field, s.x, s.y, 2));
  return true;
}

// Fallback when no shear splits everything: aggregate unsplit fibers.
inline void solve_finite_chart_aggregate(const HomogVectorField& v, const BiPoly& p,
                                         const BiPoly& q, const SingOptions& opt,
                                         std::vector<SingularityRecord>& out) {
  const NFPtr Q = NumberField::rationals();
  UPoly Ru = resultant_y(p, q);
  if (Ru.is_zero()) throw NonIsolated("vanishing eliminant: common curve in chart");
  for (const auto& [m, mult] : factor_qpoly(to_qpoly(Ru), opt.max_field_degree)) {
    if (m.deg() < 1) continue;
    auto [K, x0] = field_and_root(m);
    BiPoly pk = bipoly_to_field(p, K), qk = bipoly_to_field(q, K);
    UPoly u = UPoly::gcd(pk.eval_x(x0), qk.eval_x(x0));
    if (u.is_zero()) throw NonIsolated("vertical line of singular points");
    if (u.deg() == 0) continue;
    UPoly h = u.squarefree_part();
    if (h.deg() == 1) {
      FieldElement y0 = -h.coeff(0) / h.coeff(1);
      out.push_back(make_record(v, K, x0, y0, 2));
    } else {
      // the fiber over x0 is a cluster we cannot present in one field
      SingularityRecord rec;
      rec.field = K;
      rec.point = {x0, FieldElement::zero(K), FieldElement::one(K)};
      rec.point = normalize_point(rec.point);
      rec.split = false;
      rec.milnor = mult;  // resultant multiplicity: total over the fiber
      out.push_back(rec);
    }
  }
}

}  // namespace detail_sing

// All singular points of v, each presented over one number field; Galois
// conjugates share a record.  Deterministic ordering.
inline std::vector<SingularityRecord> singular_points(const HomogVectorField& v,
                                                      const SingOptions& opt = {}) {
  using namespace detail_sing;
  if (!v.field()->is_q())
    throw FieldMismatch("singular point enumeration expects a field over Q");
  require_isolated(v);
  const NFPtr Q = NumberField::rationals();
  std::vector<SingularityRecord> recs;

  // points with Z != 0
  auto [p2, q2] = chart_system(v, 2);
  if (!solve_finite_chart(v, p2, q2, opt, recs))
    solve_finite_chart_aggregate(v, p2, q2, opt, recs);

  // points on Z = 0 with Y != 0: chart Y = 1 restricted to its y (= Z) = 0
  auto [p1, q1] = chart_system(v, 1);
  UPoly a1 = p1.at_y0(), b1 = q1.at_y0();
  QPoly g1 = QPoly::gcd(to_qpoly(a1), to_qpoly(b1));
  if (g1.is_zero()) throw NonIsolated("the line Z = 0 is contained in the singular scheme");
  if (g1.deg() >= 1)
    for (const auto& [m, mult] : factor_qpoly(g1, opt.max_field_degree)) {
      (void)mult;
      if (m.deg() < 1) continue;
      auto [K, x0] = field_and_root(m);
      recs.push_back(make_record(v, K, x0, FieldElement::zero(K), 1));
    }

  // the point (1:0:0)
  auto [p0, q0] = chart_system(v, 0);
  FieldElement z = FieldElement::zero(Q);
  if (p0.eval(z, z).is_zero() && q0.eval(z, z).is_zero())
    recs.push_back(make_record(v, Q, z, z, 0));

  std::sort(recs.begin(), recs.end(),
            [](const SingularityRecord& a, const SingularityRecord& b) {
              std::string fa = a.field->str(), fb = b.field->str();
              if (fa != fb) return fa < fb;
              for (int i = 0; i < 3; ++i) {
                std::string sa = a.point[i].str(), sb = b.point[i].str();
                if (sa != sb) return sa < sb;
              }
              return false;
            });
  return recs;
}

// Total degree of the singular scheme: sum of Milnor numbers counted over all
// Galois conjugates (d^2 + d + 1 for isolated singularities).
inline long singular_scheme_degree(const HomogVectorField& v, const SingOptions& opt = {}) {
  long total = 0;
  for (const auto& rec : singular_points(v, opt)) total += rec.milnor * rec.field->degree;
  return total;
}

// Milnor number of v at a given singular point.
inline long milnor_at(const HomogVectorField& v, const std::array<FieldElement, 3>& pt) {
  auto [p, q] = detail_sing::shifted_system(v, pt);
  FieldElement z = FieldElement::zero(p.F);
  if (!p.eval(z, z).is_zero() || !q.eval(z, z).is_zero())
    throw NotSingular("point is not singular for v");
  return intersection_multiplicity_origin(p, q);
}

// Full local record at a given singular point.
inline SingularityRecord local_data(const HomogVectorField& v,
                                    const std::array<FieldElement, 3>& pt) {
  auto [p, q] = detail_sing::shifted_system(v, pt);
  SingularityRecord rec = local_data_affine(p, q);
  rec.point = normalize_point(pt);
  return rec;
}

}  // namespace planefol
