#pragma once

#include "planefol/singular.hpp"

namespace planefol {

struct InvariantCurve : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotInvariant : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A reduced (squarefree) projective plane curve {f = 0} of degree m.
struct CurveOnP2 {
  HomogPoly f;
  int m;

  explicit CurveOnP2(HomogPoly poly) : f(std::move(poly)), m(f.d) {
    if (f.is_zero() || m < 1) throw std::invalid_argument("curve equation must be nonzero of degree >= 1");
    HomogPoly g = homog_gcd(homog_gcd(f.partial(0), f.partial(1)), f.partial(2));
    if (homog_gcd(f, g).d > 0) throw std::invalid_argument("curve equation is not squarefree");
  }
};

inline HomogPoly homog_to_field(const HomogPoly& h, const NFPtr& K) {
  if (h.F->same_as(*K)) return h;
  if (!h.F->is_q()) throw FieldMismatch("cannot embed a nontrivial field implicitly");
  HomogPoly r(K, h.d);
  for (const auto& [m, a] : h.terms) r.terms[m] = FieldElement::from_rational(K, a.rational_value());
  return r;
}

// f | v(f): every irreducible component of {f=0} is invariant by the foliation.
inline bool is_invariant_curve(const HomogVectorField& v, const CurveOnP2& C) {
  HomogPoly vf = v.apply(homog_to_field(C.f, v.field()));
  if (vf.is_zero()) return true;
  return homog_to_field(C.f, v.field()).divides(vf);
}

// One point of a zero-dimensional intersection scheme, with its local length.
struct ZeroRecord {
  NFPtr field;
  std::array<FieldElement, 3> point;
  long mult = 1;
};

// The common zero scheme of two homogeneous f, g over Q with no shared
// component: points split over number fields, local intersection
// multiplicities attached.
inline std::vector<ZeroRecord> common_zeros(const HomogPoly& f, const HomogPoly& g,
                                            const SingOptions& opt = {}) {
  using namespace detail_sing;
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("common_zeros of a zero polynomial");
  if (!f.F->is_q() || !g.F->is_q())
    throw FieldMismatch("common zero enumeration expects polynomials over Q");
  if (homog_gcd(f, g).d > 0) throw NonIsolated("curves share a component");
  const NFPtr Q = NumberField::rationals();
  std::vector<ZeroRecord> out;

  auto local_mult = [&](int chart, const NFPtr& K, const FieldElement& x0,
                        const FieldElement& y0) {
    BiPoly fk = bipoly_to_field(BiPoly::from_homog(f, chart), K).shift(x0, y0);
    BiPoly gk = bipoly_to_field(BiPoly::from_homog(g, chart), K).shift(x0, y0);
    return intersection_multiplicity_origin(fk, gk);
  };
  auto push = [&](int chart, const NFPtr& K, const FieldElement& x0, const FieldElement& y0) {
    ZeroRecord rec;
    rec.field = K;
    FieldElement one = FieldElement::one(K);
    if (chart == 2)
      rec.point = {x0, y0, one};
    else if (chart == 1)
      rec.point = {x0, one, y0};
    else
      rec.point = {one, x0, y0};
    rec.point = normalize_point(rec.point);
    rec.mult = local_mult(chart, K, x0, y0);
    out.push_back(std::move(rec));
  };

  // zeros with Z != 0
  auto sols = solve_affine_system(BiPoly::from_homog(f, 2), BiPoly::from_homog(g, 2),
                                  opt.max_field_degree);
  if (!sols) throw std::runtime_error("common_zeros: no shear separates the solutions");
  for (const auto& s : *sols) push(2, s.field, s.x, s.y);

  // zeros on Z = 0, Y != 0
  UPoly a1 = BiPoly::from_homog(f, 1).at_y0(), b1 = BiPoly::from_homog(g, 1).at_y0();
  QPoly g1 = QPoly::gcd(to_qpoly(a1), to_qpoly(b1));
  if (g1.is_zero()) throw NonIsolated("the line Z = 0 lies in both curves");
  if (g1.deg() >= 1)
    for (const auto& [mm, mult] : factor_qpoly(g1, opt.max_field_degree)) {
      (void)mult;
      if (mm.deg() < 1) continue;
      auto [K, x0] = field_and_root(mm);
      push(1, K, x0, FieldElement::zero(K));
    }

  // the point (1:0:0)
  FieldElement z = FieldElement::zero(Q);
  if (BiPoly::from_homog(f, 0).eval(z, z).is_zero() &&
      BiPoly::from_homog(g, 0).eval(z, z).is_zero())
    push(0, Q, z, z);

  std::sort(out.begin(), out.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
    std::string fa = a.field->str(), fb = b.field->str();
    if (fa != fb) return fa < fb;
    for (int i = 0; i < 3; ++i) {
      std::string sa = a.point[i].str(), sb = b.point[i].str();
      if (sa != sb) return sa < sb;
    }
    return false;
  });
  return out;
}

struct IndexReport {
  std::vector<ZeroRecord> points;  // mult = local index
  long total = 0;
};

// Tangency index of v along a non-invariant curve: local lengths of
// O/(f, v(f)) at the tangency points; total m(m+d-1).
inline IndexReport tang(const HomogVectorField& v, const CurveOnP2& C,
                        const SingOptions& opt = {}) {
  if (is_invariant_curve(v, C)) throw InvariantCurve("curve is invariant; tang undefined");
  HomogPoly vf = v.apply(C.f);
  if (homog_gcd(C.f, vf).d > 0)
    throw InvariantCurve("an irreducible component of the curve is invariant");
  IndexReport rep;
  rep.points = common_zeros(C.f, vf, opt);
  for (const auto& r : rep.points) rep.total += r.mult * r.field->degree;
  return rep;
}

// Vanishing order of the restriction of v to the smooth invariant curve C at
// a point of Sing(F) on C; see z_index.
namespace detail_sing {

inline long restriction_order(const HomogVectorField& v, const CurveOnP2& C,
                              const SingularityRecord& rec, int truncation) {
  const NFPtr& K = rec.field;
  int chart = 0;
  while (rec.point[chart].is_zero()) ++chart;
  auto [lx, ly] = chart_coords(rec.point, chart);
  HomogPoly fk = homog_to_field(C.f, K);
  BiPoly g = BiPoly::from_homog(fk, chart).shift(lx, ly);
  auto [pp, qq] = shifted_system(v, rec.point);
  FieldElement gx = g.coeff_y(0).coeff(1), gy = g.coeff_y(1).coeff(0);
  BiPoly gsel(K), vsel(K);
  if (!gy.is_zero()) {
    gsel = g;       // branch y = phi(x), velocity = x-component
    vsel = pp;
  } else if (!gx.is_zero()) {
    gsel = g.swap_xy();  // branch x = psi(y), velocity = y-component
    vsel = qq.swap_xy();
  } else {
    throw std::invalid_argument("invariant curve is singular at a point; only smooth curves are supported");
  }
  PSeries phi = solve_branch_series(gsel, truncation);
  long ord = bipoly_eval_series(vsel, phi).ord();
  if (ord >= truncation)
    throw std::runtime_error("restriction of v vanishes to the truncation order");
  return ord;
}

}  // namespace detail_sing

// Z index of v along an invariant smooth curve: per-point vanishing orders of
// the restricted vector field; total m(d+2-m).
inline IndexReport z_index(const HomogVectorField& v, const CurveOnP2& C,
                           const SingOptions& opt = {}) {
  if (!is_invariant_curve(v, C)) throw NotInvariant("curve is not invariant; Z index undefined");
  IndexReport rep;
  int expected = C.m * (v.d + 2 - C.m);
  int N = 2 * std::max(expected, 1) + 2;
  for (const auto& rec : singular_points(v, opt)) {
    if (!rec.split)
      throw std::runtime_error("z_index: unsplit singular cluster on the curve");
    HomogPoly fk = homog_to_field(C.f, rec.field);
    if (!fk.eval(rec.point[0], rec.point[1], rec.point[2]).is_zero()) continue;
    long ord = detail_sing::restriction_order(v, C, rec, N);
    // truncation-order sufficiency: recompute at doubled order
    if (detail_sing::restriction_order(v, C, rec, 2 * N) != ord)
      throw std::logic_error("z_index truncation order was insufficient");
    ZeroRecord zr;
    zr.field = rec.field;
    zr.point = rec.point;
    zr.mult = ord;
    rep.points.push_back(std::move(zr));
    rep.total += ord * rec.field->degree;
  }
  return rep;
}

// Closed-form totals for a smooth degree-m curve: (tangency, Z).
inline std::pair<long, long> expected_totals(int d, int m) {
  if (d < 0 || m < 1) throw std::invalid_argument("expected_totals: need d >= 0, m >= 1");
  return {(long)m * (m + d - 1), (long)m * (d + 2 - m)};
}

}  // namespace planefol
