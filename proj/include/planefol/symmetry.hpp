#pragma once

#include <map>
#include <numeric>
#include <set>

#include "planefol/indices.hpp"
#include "planefol/snf.hpp"

namespace planefol {

struct InfiniteDiagonal : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateConfiguration : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SplittingFieldCap : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAGroup : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotPreserving : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// diag(l^a, l^b, l^c) with l a primitive n-th root of unity.
struct ExpGen {
  long n = 1;
  std::array<long, 3> e = {0, 0, 0};
};

struct DiagonalStabilizer {
  bool finite = false;
  long order = 0;                  // when finite
  std::vector<ExpGen> generators;  // modulo the scalar direction (1,1,1)
};

struct SymmetryGroup {
  NFPtr field;         // cyclotomic field containing all matrix entries
  long root_order = 1; // order of the root of unity generating the entries
  std::vector<ProjTransform> elements;  // normalized projective representatives
  long order = 0;
  std::string completeness = "complete";  // or "monomial_only"
};

namespace detail_sym {

using detail::u64;
using detail::addm;
using detail::subm;
using detail::mulm;
using detail::powm;
using detail::invm;

// Exponent functionals of the support: a diagonal diag(t0,t1,t2) scales the
// monomial X^iY^jZ^k of component r by t^(-f) with f the functional below, so
// preservation up to scalar is the vanishing of all functional differences.
inline std::vector<std::array<long, 3>> support_functionals(const HomogVectorField& v) {
  std::vector<std::array<long, 3>> fs;
  for (int comp = 0; comp < 3; ++comp)
    for (const auto& [m, a] : v.comp(comp).terms) {
      (void)a;
      std::array<long, 3> f = {m[0], m[1], m[2]};
      f[comp] -= 1;
      fs.push_back(f);
    }
  return fs;
}

inline std::vector<std::vector<Integer>> difference_matrix(
    const std::vector<std::array<long, 3>>& fs) {
  std::vector<std::vector<Integer>> rows;
  for (size_t r = 1; r < fs.size(); ++r)
    rows.push_back({Integer(fs[r][0] - fs[0][0]), Integer(fs[r][1] - fs[0][1]),
                    Integer(fs[r][2] - fs[0][2])});
  return rows;
}

inline long to_long(const Integer& z) { return mpz_get_si(z.get_mpz_t()); }

}  // namespace detail_sym

// The group of diagonal projective transformations preserving v up to scalar,
// from the Smith normal form of the support-difference lattice.  The scalar
// direction (1,1,1) always lies in the kernel, so the quotient is finite
// exactly when the difference matrix has rank 2.
inline DiagonalStabilizer diagonal_stabilizer(const HomogVectorField& v) {
  using namespace detail_sym;
  auto fs = support_functionals(v);
  DiagonalStabilizer ds;
  if (fs.size() <= 1) return ds;  // everything diagonal preserves v: infinite
  SmithNF s = smith_normal_form(difference_matrix(fs));
  if (s.rank > 2) throw std::logic_error("scalar direction missing from kernel");
  if (s.rank < 2) return ds;  // positive-rank solution torus
  ds.finite = true;
  ds.order = 1;
  for (int i = 0; i < 2; ++i) {
    long d = to_long(s.d[i][i]);
    ds.order *= d;
    if (d > 1) {
      ExpGen g;
      g.n = d;
      for (int r = 0; r < 3; ++r) {
        long e = to_long(s.v[r][i]) % d;
        if (e < 0) e += d;
        g.e[r] = e;
      }
      ds.generators.push_back(g);
    }
  }
  return ds;
}

namespace detail_sym {

inline FieldElement root_power(const NFPtr& K, long L, long e) {
  e %= L;
  if (e < 0) e += L;
  if (L <= 1) return FieldElement::one(K);
  if (L == 2) return e ? FieldElement::from_rational(K, Rational(-1)) : FieldElement::one(K);
  return FieldElement::gen(K).pow(e);
}

// Solve M x == b over Q/Z given the SNF of M; returns a particular solution
// (coset representative), or nullopt when inconsistent.
inline std::optional<std::array<Rational, 3>> solve_congruences(const SmithNF& s,
                                                               const std::vector<Rational>& b) {
  const int m = (int)b.size();
  std::vector<Rational> ub(m, Rational(0));
  for (int i = 0; i < m; ++i)
    for (int r = 0; r < m; ++r)
      if (sgn(s.u[i][r]) != 0) ub[i] += Rational(s.u[i][r]) * b[r];
  std::array<Rational, 3> y = {Rational(0), Rational(0), Rational(0)};
  for (int i = 0; i < m; ++i) {
    Integer d = (i < 3 && i < (int)s.d.size()) ? s.d[i][i] : Integer(0);
    ub[i].canonicalize();
    if (sgn(d) != 0) {
      y[i] = ub[i] / Rational(d);
    } else {
      // zero row: consistency requires an integral right-hand side
      if (ub[i].get_den() != 1) return std::nullopt;
    }
  }
  std::array<Rational, 3> x = {Rational(0), Rational(0), Rational(0)};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c)
      if (sgn(s.v[r][c]) != 0) x[r] += Rational(s.v[r][c]) * y[c];
    // reduce mod 1
    Rational f = x[r] - Rational(mpz_class(x[r].get_num() / x[r].get_den()));
    if (sgn(f) < 0) f += 1;
    f.canonicalize();
    x[r] = f;
  }
  return x;
}

inline long lcm_long(long a, long b) { return std::lcm(a, b); }

// Group closure of a generator set of projective transforms (finite input
// expected); throws NotAGroup if the closure exceeds the cap.
inline std::vector<ProjTransform> close_group(const NFPtr& K,
                                              std::vector<ProjTransform> gens,
                                              size_t cap = 4096) {
  std::vector<ProjTransform> elems;
  std::map<std::string, size_t> seen;
  auto add = [&](const ProjTransform& t) {
    ProjTransform n = t.normalized();
    std::string k = n.key();
    if (seen.count(k)) return false;
    seen[k] = elems.size();
    elems.push_back(n);
    return true;
  };
  add(ProjTransform::identity(K));
  for (const auto& g : gens) add(g);
  bool changed = true;
  while (changed) {
    changed = false;
    size_t sz = elems.size();
    for (size_t i = 0; i < sz; ++i)
      for (size_t j = 0; j < sz; ++j) {
        if (add(elems[i].compose(elems[j]))) changed = true;
        if (elems.size() > cap) throw NotAGroup("group closure exceeded the element cap");
      }
  }
  return elems;
}

}  // namespace detail_sym

// The subgroup of monomial projective transformations (permutation times
// diagonal) preserving v up to scalar.
inline SymmetryGroup monomial_stabilizer(const HomogVectorField& v) {
  using namespace detail_sym;
  if (!v.field()->is_q())
    throw FieldMismatch("monomial stabilizer expects a field over Q");
  if (!divergence(v).is_zero())
    throw std::invalid_argument("monomial_stabilizer: normalize_div_free first");
  DiagonalStabilizer ds = diagonal_stabilizer(v);
  if (!ds.finite) throw InfiniteDiagonal("diagonal stabilizer has positive rank");

  auto fs = support_functionals(v);
  SmithNF snf = smith_normal_form(difference_matrix(fs));
  const NFPtr Q = NumberField::rationals();

  // for every coordinate permutation P, solve (P D)_* v ~ v for a diagonal D:
  // equivalently D_* v ~ pushforward(P^{-1}, v), an inhomogeneous congruence
  // system over the same difference lattice
  static const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}, {2, 1, 0}}};
  struct PermSol {
    std::array<int, 3> perm;
    std::array<Rational, 3> x;
  };
  std::vector<PermSol> sols;
  for (const auto& pa : perms) {
    std::array<int, 3> perm = {pa[0], pa[1], pa[2]};
    ProjTransform P = ProjTransform::permutation(Q, perm);
    HomogVectorField w = pushforward(P.adjugate(), v);  // P^{-1} up to scalar
    // supports must agree and coefficient ratios must be +-1
    std::vector<Rational> ratios;
    bool match = true;
    for (int comp = 0; comp < 3 && match; ++comp) {
      const auto& tv = v.comp(comp).terms;
      const auto& tw = w.comp(comp).terms;
      if (tv.size() != tw.size()) {
        match = false;
        break;
      }
      auto it = tv.begin();
      auto jt = tw.begin();
      for (; it != tv.end(); ++it, ++jt) {
        if (it->first != jt->first) {
          match = false;
          break;
        }
        ratios.push_back(jt->second.rational_value() / it->second.rational_value());
      }
    }
    if (!match) continue;
    std::vector<Rational> b;
    bool pm_ok = true;
    for (size_t r = 1; r < ratios.size(); ++r) {
      Rational rho = ratios[0] / ratios[r];  // l^{(f_r - f_0) . x} must equal rho
      rho.canonicalize();
      if (rho == 1)
        b.push_back(Rational(0));
      else if (rho == -1)
        b.push_back(Rational(1, 2));
      else {
        pm_ok = false;  // a rational root of unity is +-1; no solution
        break;
      }
    }
    if (!pm_ok) continue;
    auto x = solve_congruences(snf, b);
    if (x) sols.push_back({perm, *x});
  }

  // common cyclotomic field for all entries
  long L = 1;
  for (const auto& g : ds.generators) L = lcm_long(L, g.n);
  for (const auto& s : sols)
    for (const auto& xr : s.x) L = lcm_long(L, (long)mpz_get_si(Rational(xr).get_den().get_mpz_t()));
  NFPtr K = NumberField::cyclotomic((unsigned long)L);

  std::vector<ProjTransform> gens;
  for (const auto& g : ds.generators)
    gens.push_back(ProjTransform::diagonal(K, root_power(K, L, g.e[0] * (L / g.n)),
                                           root_power(K, L, g.e[1] * (L / g.n)),
                                           root_power(K, L, g.e[2] * (L / g.n))));
  for (const auto& s : sols) {
    ProjTransform D(K);
    for (int j = 0; j < 3; ++j) {
      Rational xr = s.x[j];
      long num = (long)mpz_get_si(Rational(xr * L).get_num().get_mpz_t());
      D.m[j][j] = root_power(K, L, num);
    }
    gens.push_back(ProjTransform::permutation(K, s.perm).compose(D));
  }

  SymmetryGroup G;
  G.field = K;
  G.root_order = L;
  G.elements = close_group(K, std::move(gens));
  G.order = (long)G.elements.size();
  G.completeness = "monomial_only";
  return G;
}

// lambda with v = A dX + lambda^2 A(Y,Z,X) dY + lambda A(Z,X,Y) dZ and
// lambda^3 = 1, when v has this cyclic structure.
inline std::optional<FieldElement> fixT_structure_check(const HomogVectorField& v) {
  const NFPtr& F = v.field();
  // A(Y,Z,X): substitute X -> Y, Y -> Z, Z -> X
  auto cyc = [&](const HomogPoly& p) {
    std::array<std::array<FieldElement, 3>, 3> subs;
    FieldElement z = FieldElement::zero(F), o = FieldElement::one(F);
    subs[0] = {z, o, z};  // X -> Y
    subs[1] = {z, z, o};  // Y -> Z
    subs[2] = {o, z, z};  // Z -> X
    return p.substitute_linear(subs);
  };
  HomogPoly a1 = cyc(v.A), a2 = cyc(a1);
  auto ratio = [&](const HomogPoly& target, const HomogPoly& base) -> std::optional<FieldElement> {
    if (target.is_zero() && base.is_zero()) return FieldElement::one(F);
    if (target.is_zero() != base.is_zero()) return std::nullopt;
    if (target.terms.size() != base.terms.size()) return std::nullopt;
    std::optional<FieldElement> r;
    auto it = target.terms.begin();
    auto jt = base.terms.begin();
    for (; it != target.terms.end(); ++it, ++jt) {
      if (it->first != jt->first) return std::nullopt;
      FieldElement q = it->second / jt->second;
      if (!r)
        r = q;
      else if (!(*r == q))
        return std::nullopt;
    }
    return r;
  };
  auto mu = ratio(v.B, a1);  // lambda^2
  auto nu = ratio(v.C, a2);  // lambda
  if (!mu || !nu) return std::nullopt;
  FieldElement l = *nu;
  if (!(l * l == *mu)) return std::nullopt;
  if (!(l.pow(3) == FieldElement::one(F))) return std::nullopt;
  return l;
}

// ---------- embedding singular points in one cyclotomic field ----------

struct EmbeddedPoints {
  bool ok = false;  // false when some record is unsplit or non-cyclotomic
  NFPtr field;
  long root_order = 1;
  std::vector<std::array<FieldElement, 3>> pts;
  std::vector<long> mu;
};

inline EmbeddedPoints embed_singular_points(const HomogVectorField& v,
                                            const SingOptions& opt = {}) {
  using detail_sym::lcm_long;
  EmbeddedPoints out;
  auto recs = singular_points(v, opt);
  long L = 1;
  for (const auto& r : recs) {
    if (!r.split) return out;
    if (r.field->is_q()) continue;
    if (!r.field->cyclotomic_n) return out;
    L = lcm_long(L, (long)*r.field->cyclotomic_n);
  }
  if (euler_phi((unsigned long)L) > (unsigned long)opt.max_field_degree)
    throw SplittingFieldCap("common cyclotomic field exceeds the degree cap");
  NFPtr K = NumberField::cyclotomic((unsigned long)L);
  for (const auto& r : recs) {
    if (r.field->is_q()) {
      std::array<FieldElement, 3> p;
      for (int i = 0; i < 3; ++i)
        p[i] = FieldElement::from_rational(K, r.point[i].rational_value());
      out.pts.push_back(normalize_point(p));
      out.mu.push_back(r.milnor);
    } else {
      long k = (long)*r.field->cyclotomic_n;
      for (long j = 1; j < k; ++j) {
        if (std::gcd(j, k) != 1) continue;
        FieldElement im = detail_sym::root_power(K, L, j * (L / k));
        std::array<FieldElement, 3> p;
        for (int i = 0; i < 3; ++i) p[i] = map_element(r.point[i], K, im);
        out.pts.push_back(normalize_point(p));
        out.mu.push_back(r.milnor);
      }
    }
  }
  out.ok = true;
  out.field = K;
  out.root_order = L;
  return out;
}

// ---------- complete frame search ----------

namespace detail_sym {

// solve 3x3 linear system A c = rhs over K (unique solution expected)
inline std::array<FieldElement, 3> solve3(const NFPtr& K,
                                          std::array<std::array<FieldElement, 3>, 3> a,
                                          std::array<FieldElement, 3> rhs) {
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    while (piv < 3 && a[piv][col].is_zero()) ++piv;
    if (piv == 3) throw SingularMatrix("frame system is singular");
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    FieldElement inv = a[col][col].inverse();
    for (int c = 0; c < 3; ++c) a[col][c] = a[col][c] * inv;
    rhs[col] = rhs[col] * inv;
    for (int r = 0; r < 3; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      FieldElement f = a[r][col];
      for (int c = 0; c < 3; ++c) a[r][c] = a[r][c] - f * a[col][c];
      rhs[r] = rhs[r] - f * rhs[col];
    }
  }
  return rhs;
}

// transform sending the standard frame e1,e2,e3,e1+e2+e3 to p1..p4
inline ProjTransform frame_transform(const NFPtr& K,
                                     const std::array<std::array<FieldElement, 3>, 4>& p) {
  std::array<std::array<FieldElement, 3>, 3> cols;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) cols[r][c] = p[c][r];  // matrix [p1|p2|p3]
  std::array<FieldElement, 3> cs = solve3(K, cols, p[3]);
  ProjTransform t(K);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) t.m[r][c] = p[c][r] * cs[c];
  return t;
}

inline FieldElement det3(const std::array<FieldElement, 3>& a,
                         const std::array<FieldElement, 3>& b,
                         const std::array<FieldElement, 3>& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// ----- mod-p screening -----

struct ModPContext {
  u64 p = 0;
  u64 zeta = 0;  // element of multiplicative order L
  std::vector<std::array<u64, 3>> pts;
  std::map<std::array<u64, 3>, int> index;
};

inline u64 fe_mod_p(const FieldElement& a, u64 zeta, u64 p, bool* fail) {
  u64 acc = 0, zp = 1;
  for (const Rational& c : a.coeffs()) {
    Rational cc = c;
    cc.canonicalize();
    Integer num = cc.get_num(), den = cc.get_den();
    u64 dm = mpz_fdiv_ui(den.get_mpz_t(), p);
    if (dm == 0) {
      *fail = true;
      return 0;
    }
    u64 nm = mpz_fdiv_ui(num.get_mpz_t(), p);
    acc = addm(acc, mulm(mulm(nm, invm(dm, p), p), zp, p), p);
    zp = mulm(zp, zeta, p);
  }
  return acc;
}

inline std::optional<std::array<u64, 3>> normalize_mod_p(std::array<u64, 3> v, u64 p) {
  for (int i = 0; i < 3; ++i)
    if (v[i] != 0) {
      u64 inv = invm(v[i], p);
      for (int j = 0; j < 3; ++j) v[j] = mulm(v[j], inv, p);
      return v;
    }
  return std::nullopt;
}

// Build a reduction of the embedded point set modulo a prime p == 1 (mod L)
// under which all points stay distinct; tries successive primes.
inline ModPContext build_modp(const EmbeddedPoints& emb, u64 seed_k) {
  long L = emb.root_order;
  for (u64 k = seed_k;; ++k) {
    u64 p = (u64)L * k + 1;
    if (p < 1000003) continue;
    Integer pz(   (unsigned long)p);
    if (!mpz_probab_prime_p(pz.get_mpz_t(), 30)) continue;
    // generator of F_p^*
    u64 pm1 = p - 1;
    std::vector<u64> prime_facs;
    u64 t = pm1;
    for (u64 q = 2; q * q <= t; ++q)
      if (t % q == 0) {
        prime_facs.push_back(q);
        while (t % q == 0) t /= q;
      }
    if (t > 1) prime_facs.push_back(t);
    u64 g = 0;
    for (u64 cand = 2; cand < p; ++cand) {
      bool ok = true;
      for (u64 q : prime_facs)
        if (powm(cand, pm1 / q, p) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        g = cand;
        break;
      }
    }
    ModPContext ctx;
    ctx.p = p;
    ctx.zeta = powm(g, pm1 / (u64)L, p);
    bool fail = false;
    for (const auto& pt : emb.pts) {
      std::array<u64, 3> r;
      for (int i = 0; i < 3; ++i) {
        r[i] = fe_mod_p(pt[i], ctx.zeta, p, &fail);
        if (fail) break;
      }
      if (fail) break;
      auto n = normalize_mod_p(r, p);
      if (!n) {
        fail = true;
        break;
      }
      if (ctx.index.count(*n)) {
        fail = true;  // collision: points not distinct mod p
        break;
      }
      ctx.index[*n] = (int)ctx.pts.size();
      ctx.pts.push_back(*n);
    }
    if (!fail) return ctx;
  }
}

using Mat3p = std::array<std::array<u64, 3>, 3>;

inline std::optional<Mat3p> frame_transform_modp(const ModPContext& ctx,
                                                 const std::array<int, 4>& idx) {
  u64 p = ctx.p;
  // solve [p1 p2 p3] c = p4 by Cramer
  const auto& a = ctx.pts[idx[0]];
  const auto& b = ctx.pts[idx[1]];
  const auto& c = ctx.pts[idx[2]];
  const auto& d = ctx.pts[idx[3]];
  auto det = [&](const std::array<u64, 3>& x, const std::array<u64, 3>& y,
                 const std::array<u64, 3>& z) {
    u64 s1 = mulm(x[0], subm(mulm(y[1], z[2], p), mulm(y[2], z[1], p), p), p);
    u64 s2 = mulm(x[1], subm(mulm(y[0], z[2], p), mulm(y[2], z[0], p), p), p);
    u64 s3 = mulm(x[2], subm(mulm(y[0], z[1], p), mulm(y[1], z[0], p), p), p);
    return addm(subm(s1, s2, p), s3, p);
  };
  u64 D = det(a, b, c);
  if (D == 0) return std::nullopt;
  u64 Di = invm(D, p);
  u64 c1 = mulm(det(d, b, c), Di, p);
  u64 c2 = mulm(det(a, d, c), Di, p);
  u64 c3 = mulm(det(a, b, d), Di, p);
  if (c1 == 0 || c2 == 0 || c3 == 0) return std::nullopt;
  Mat3p m;
  for (int r = 0; r < 3; ++r) {
    m[r][0] = mulm(a[r], c1, p);
    m[r][1] = mulm(b[r], c2, p);
    m[r][2] = mulm(c[r], c3, p);
  }
  return m;
}

inline Mat3p mat3p_mul(const Mat3p& x, const Mat3p& y, u64 p) {
  Mat3p r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      u64 s = 0;
      for (int k = 0; k < 3; ++k) s = addm(s, mulm(x[i][k], y[k][j], p), p);
      r[i][j] = s;
    }
  return r;
}

inline Mat3p mat3p_adj(const Mat3p& m, u64 p) {
  Mat3p r;
  auto co = [&](int i, int j) {
    int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    return subm(mulm(m[i1][j1], m[i2][j2], p), mulm(m[i1][j2], m[i2][j1], p), p);
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = co(j, i);
  return r;
}

}  // namespace detail_sym

// Complete automorphism group via the singular-point frame search: every
// projective automorphism permutes Sing(F), hence maps a fixed base frame of
// four points in general position to another such frame.
inline SymmetryGroup frame_search_full(const HomogVectorField& v, const SingOptions& opt = {},
                                       long max_frame_candidates = 500000) {
  using namespace detail_sym;
  EmbeddedPoints emb = embed_singular_points(v, opt);
  if (!emb.ok) {
    SymmetryGroup mono = monomial_stabilizer(v);
    mono.completeness = "monomial_only";
    return mono;
  }
  const NFPtr& K = emb.field;
  const int s = (int)emb.pts.size();

  // exact collinearity table
  std::vector<std::vector<std::vector<bool>>> coll(
      s, std::vector<std::vector<bool>>(s, std::vector<bool>(s, false)));
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j)
      for (int k = j + 1; k < s; ++k) {
        bool c = det3(emb.pts[i], emb.pts[j], emb.pts[k]).is_zero();
        coll[i][j][k] = coll[i][k][j] = coll[j][i][k] = coll[j][k][i] = coll[k][i][j] =
            coll[k][j][i] = c;
      }
  auto general_position = [&](int a, int b, int c, int d) {
    return !coll[a][b][c] && !coll[a][b][d] && !coll[a][c][d] && !coll[b][c][d];
  };

  // base frame: first 4-tuple in general position
  std::array<int, 4> base = {-1, -1, -1, -1};
  for (int a = 0; a < s && base[0] < 0; ++a)
    for (int b = a + 1; b < s && base[0] < 0; ++b)
      for (int c = b + 1; c < s && base[0] < 0; ++c)
        for (int d = c + 1; d < s && base[0] < 0; ++d)
          if (general_position(a, b, c, d)) base = {a, b, c, d};
  if (base[0] < 0)
    throw DegenerateConfiguration("no four singular points in general position");

  long tuples = (long)s * (s - 1) * (s - 2) * (s - 3);
  if (tuples > max_frame_candidates)
    throw std::runtime_error("frame candidate budget exceeded");

  // two independent mod-p screens to make false negatives implausible
  ModPContext ctx1 = build_modp(emb, 2), ctx2 = build_modp(emb, ctx1.p / emb.root_order + 1);

  auto screen = [&](const ModPContext& ctx, const std::array<int, 4>& idx) {
    auto mt = frame_transform_modp(ctx, idx);
    auto mb = frame_transform_modp(ctx, base);
    if (!mt || !mb) return true;  // degenerate reduction: pass to the exact stage
    Mat3p phi = mat3p_mul(*mt, mat3p_adj(*mb, ctx.p), ctx.p);
    for (int i = 0; i < (int)ctx.pts.size(); ++i) {
      std::array<u64, 3> im{};
      for (int r = 0; r < 3; ++r) {
        u64 acc = 0;
        for (int c = 0; c < 3; ++c) acc = addm(acc, mulm(phi[r][c], ctx.pts[i][c], ctx.p), ctx.p);
        im[r] = acc;
      }
      auto n = normalize_mod_p(im, ctx.p);
      if (!n || !ctx.index.count(*n)) return false;
    }
    return true;
  };

  HomogVectorField vk(homog_to_field(v.A, K), homog_to_field(v.B, K), homog_to_field(v.C, K));
  std::array<std::array<FieldElement, 3>, 4> base_pts = {emb.pts[base[0]], emb.pts[base[1]],
                                                         emb.pts[base[2]], emb.pts[base[3]]};
  ProjTransform base_t = frame_transform(K, base_pts);
  ProjTransform base_inv = base_t.adjugate();

  std::map<std::string, ProjTransform> found;
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b)
      for (int c = 0; c < s; ++c)
        for (int d = 0; d < s; ++d) {
          if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
          if (!general_position(a, b, c, d)) continue;
          std::array<int, 4> idx = {a, b, c, d};
          if (!screen(ctx1, idx) || !screen(ctx2, idx)) continue;
          // exact verification
          std::array<std::array<FieldElement, 3>, 4> tp = {emb.pts[a], emb.pts[b], emb.pts[c],
                                                           emb.pts[d]};
          ProjTransform phi(K);
          try {
            phi = frame_transform(K, tp).compose(base_inv);
          } catch (const SingularMatrix&) {
            continue;
          }
          if (phi.det().is_zero()) continue;
          if (!proportional_scalar(vk, pushforward(phi, vk))) continue;
          ProjTransform n = phi.normalized();
          found.emplace(n.key(), n);
        }

  SymmetryGroup G;
  G.field = K;
  G.root_order = emb.root_order;
  for (auto& [k, t] : found) {
    (void)k;
    G.elements.push_back(t);
  }
  G.order = (long)G.elements.size();
  G.completeness = "complete";
  return G;
}

// ---------- verification and classification ----------

struct FixedPointInfo {
  std::array<FieldElement, 3> point;
  bool singular = false;
  std::optional<long> tangency_k;        // for regular fixed points
  std::optional<bool> exponents_match;   // generator exponents look like (0,1,k+1)
};

struct ClassifyReport {
  std::string type;  // A, B, C1, C2, D1, D2, E, F, G, H, I, J
  std::optional<long> n, m, k, s;
  std::vector<FixedPointInfo> p2reg_profile;
};

namespace detail_sym {

inline long discrete_log(const FieldElement& u, const NFPtr& K, long L) {
  FieldElement z = root_power(K, L, 1), acc = FieldElement::one(K);
  for (long e = 0; e < L; ++e) {
    if (acc == u) return e;
    acc = acc * z;
  }
  throw std::logic_error("matrix entry is not a power of the root of unity");
}

// local tangency order of the line through a regular point p in the direction
// of v(p); nullopt when the line is invariant
inline std::optional<long> tangent_line_order(const HomogVectorField& vk,
                                              const std::array<FieldElement, 3>& p) {
  const NFPtr& K = vk.field();
  std::array<FieldElement, 3> w = {vk.A.eval(p[0], p[1], p[2]), vk.B.eval(p[0], p[1], p[2]),
                                   vk.C.eval(p[0], p[1], p[2])};
  // line through p and w: cross product coefficients
  std::array<FieldElement, 3> l = {p[1] * w[2] - p[2] * w[1], p[2] * w[0] - p[0] * w[2],
                                   p[0] * w[1] - p[1] * w[0]};
  HomogPoly lf(K, 1);
  Monomial ms[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int i = 0; i < 3; ++i)
    if (!l[i].is_zero()) lf.terms[ms[i]] = l[i];
  if (lf.is_zero()) return std::nullopt;  // w proportional to p: p singular actually
  HomogPoly vl = vk.apply(lf);
  int chart = 0;
  std::array<FieldElement, 3> np = normalize_point(p);
  while (np[chart].is_zero()) ++chart;
  auto [lx, ly] = detail_sing::chart_coords(np, chart);
  BiPoly lb = BiPoly::from_homog(lf, chart).shift(lx, ly);
  BiPoly vb = BiPoly::from_homog(vl, chart).shift(lx, ly);
  try {
    return intersection_multiplicity_origin(lb, vb);
  } catch (const LocalInfinite&) {
    return std::nullopt;  // invariant line
  }
}

}  // namespace detail_sym

inline ClassifyReport verify_and_classify(const HomogVectorField& v, const SymmetryGroup& G) {
  using namespace detail_sym;
  const NFPtr& K = G.field;
  const long L = G.root_order;

  // group axioms on the element list
  std::set<std::string> keys;
  for (const auto& t : G.elements) keys.insert(t.key());
  if ((long)keys.size() != G.order) throw NotAGroup("duplicate elements");
  if (!keys.count(ProjTransform::identity(K).key())) throw NotAGroup("identity missing");
  for (const auto& a : G.elements)
    for (const auto& b : G.elements)
      if (!keys.count(a.compose(b).key())) throw NotAGroup("closure fails");

  // every element preserves the foliation
  HomogVectorField vk(homog_to_field(v.A, K), homog_to_field(v.B, K), homog_to_field(v.C, K));
  for (const auto& t : G.elements)
    if (!proportional_scalar(vk, pushforward(t, vk)))
      throw NotPreserving("an element does not preserve the foliation");

  ClassifyReport rep;

  bool abelian = true;
  for (size_t i = 0; i < G.elements.size() && abelian; ++i)
    for (size_t j = i + 1; j < G.elements.size(); ++j)
      if (G.elements[i].compose(G.elements[j]).key() !=
          G.elements[j].compose(G.elements[i]).key()) {
        abelian = false;
        break;
      }

  bool all_monomial = true;
  std::set<std::array<int, 3>> perm_set;
  std::vector<std::array<long, 2>> diag_classes;  // (b-a, c-a) exponents mod L
  for (const auto& t : G.elements) {
    std::array<int, 3> perm;
    if (!t.is_monomial(&perm)) {
      all_monomial = false;
      break;
    }
    perm_set.insert(perm);
    if (t.is_diagonal()) {
      long a = discrete_log(t.m[0][0], K, L);
      long b = discrete_log(t.m[1][1], K, L);
      long c = discrete_log(t.m[2][2], K, L);
      long e1 = ((b - a) % L + L) % L, e2 = ((c - a) % L + L) % L;
      diag_classes.push_back({e1, e2});
    }
  }

  if (abelian) {
    rep.type = "A";
  } else if (all_monomial) {
    // structure of the diagonal part as a subgroup of (Z/L)^2
    std::vector<std::vector<Integer>> rows;
    for (const auto& dc : diag_classes) rows.push_back({Integer(dc[0]), Integer(dc[1])});
    rows.push_back({Integer(L), Integer(0)});
    rows.push_back({Integer(0), Integer(L)});
    SmithNF s = smith_normal_form(rows);
    long a1 = s.rank > 0 ? to_long(s.invariants[0]) : L;
    long a2 = s.rank > 1 ? to_long(s.invariants[1]) : L;
    long n = L / a1, m = L / a2;  // diagonal part = Z/n x Z/m, m | n
    size_t nperm = perm_set.size();
    if (nperm == 3) {
      rep.type = (n == m) ? "C1" : "C2";
    } else if (nperm == 6) {
      rep.type = (n == m) ? "D1" : "D2";
    } else {
      rep.type = "B";  // fixes a coordinate point
    }
    if (nperm == 3 || nperm == 6) {
      rep.n = n;
      rep.m = m;
      long k = (m > 0) ? n / m : n;
      rep.k = k;
      if (n != m && n > 1) {
        // find a diagonal element with exponents (s, 1)/n modulo scalars
        for (const auto& dc : diag_classes) {
          if (dc[0] % (L / n) != 0 || dc[1] % (L / n) != 0) continue;
          long h1 = dc[0] / (L / n), h2 = dc[1] / (L / n);
          if (h2 % n == 1 % n) {
            long sv = ((h1 % n) + n) % n;
            if (((sv * sv - sv + 1) % k) == 0) {
              rep.s = sv;
              break;
            }
            if (!rep.s) rep.s = sv;
          }
        }
      }
    }
  } else {
    switch (G.order) {
      case 36: rep.type = "E"; break;
      case 72: rep.type = "F"; break;
      case 216: rep.type = "G"; break;
      case 60: rep.type = "H"; break;
      case 360: rep.type = "I"; break;
      case 168: rep.type = "J"; break;
      default: rep.type = "B"; break;
    }
  }

  // p2reg profile: coordinate fixed points of diagonal elements with three
  // distinct characters.  The singular test and tangency order depend only on
  // the point, so cache them per chart.
  std::array<std::optional<std::pair<bool, std::optional<long>>>, 3> point_cache;
  auto point_data = [&](int i) {
    if (!point_cache[i]) {
      std::array<FieldElement, 3> p = {FieldElement::zero(K), FieldElement::zero(K),
                                       FieldElement::zero(K)};
      p[i] = FieldElement::one(K);
      auto [pc, qc] = chart_system(vk, i);
      FieldElement z = FieldElement::zero(K);
      bool sing = pc.eval(z, z).is_zero() && qc.eval(z, z).is_zero();
      std::optional<long> k;
      if (!sing) k = tangent_line_order(vk, p);
      point_cache[i] = {sing, k};
    }
    return *point_cache[i];
  };
  std::set<std::string> profiled;
  for (const auto& t : G.elements) {
    if (!t.is_diagonal()) continue;
    long a = discrete_log(t.m[0][0], K, L), b = discrete_log(t.m[1][1], K, L),
         c = discrete_log(t.m[2][2], K, L);
    long o = L / std::gcd(L, std::gcd(((b - a) % L + L) % L, ((c - a) % L + L) % L));
    if (o < 2) continue;  // scalar
    long eb = ((b - a) % L + L) % L, ec = ((c - a) % L + L) % L;
    if (eb % L == 0 || ec % L == 0 || eb == ec) continue;  // a line of fixed points
    for (int i = 0; i < 3; ++i) {
      std::array<FieldElement, 3> p = {FieldElement::zero(K), FieldElement::zero(K),
                                       FieldElement::zero(K)};
      p[i] = FieldElement::one(K);
      std::string pk = std::to_string(i) + "@" + t.key();
      if (profiled.count(pk)) continue;
      profiled.insert(pk);
      FixedPointInfo info;
      info.point = p;
      auto [sing, tk] = point_data(i);
      info.singular = sing;
      if (!info.singular) {
        info.tangency_k = tk;
        if (info.tangency_k) {
          // exponents at the fixed point, normalized to (0, x, y) mod o
          long m0 = (i == 0) ? a : (i == 1) ? b : c;
          std::array<long, 2> rest;
          int idx = 0;
          for (int j = 0; j < 3; ++j)
            if (j != i) rest[idx++] = (((j == 0 ? a : j == 1 ? b : c) - m0) % o + o) % o;
          long kk = *info.tangency_k;
          bool match = false;
          for (int swp = 0; swp < 2; ++swp) {
            long x = rest[swp], y = rest[1 - swp];
            if (std::gcd(x, o) == 1) {
              // u with u*x == 1 (mod o); check u*y == k+1
              long u = 0;
              for (long cand = 1; cand < o; ++cand)
                if ((cand * x) % o == 1 % o) {
                  u = cand;
                  break;
                }
              if (o == 1) u = 0;
              if (((u * y) % o) == (((kk + 1) % o + o) % o)) {
                match = true;
                break;
              }
            }
          }
          info.exponents_match = match;
        }
      }
      rep.p2reg_profile.push_back(std::move(info));
    }
  }

  return rep;
}

// ---------- orbit decomposition ----------

struct OrbitInfo {
  std::array<FieldElement, 3> representative;
  long orbit_size = 0;
  long stabilizer_size = 0;
  long milnor = 1;
};

// Orbits of the group action on the embedded singular points, with exact
// stabilizer sizes (orbit-stabilizer cross-check material).
inline std::vector<OrbitInfo> orbit_decomposition(const HomogVectorField& v,
                                                  const SymmetryGroup& G,
                                                  const SingOptions& opt = {}) {
  EmbeddedPoints emb = embed_singular_points(v, opt);
  if (!emb.ok) throw std::runtime_error("orbit decomposition needs fully split points");
  if (!emb.field->same_as(*G.field))
    throw FieldMismatch("group and points live in different fields");
  auto key_of = [&](const std::array<FieldElement, 3>& p) {
    auto n = normalize_point(p);
    return n[0].str() + ";" + n[1].str() + ";" + n[2].str();
  };
  std::map<std::string, int> index;
  for (int i = 0; i < (int)emb.pts.size(); ++i) index[key_of(emb.pts[i])] = i;
  std::vector<bool> used(emb.pts.size(), false);
  std::vector<OrbitInfo> orbits;
  for (int i = 0; i < (int)emb.pts.size(); ++i) {
    if (used[i]) continue;
    OrbitInfo info;
    info.representative = emb.pts[i];
    info.milnor = emb.mu[i];
    std::set<int> orbit;
    long stab = 0;
    for (const auto& t : G.elements) {
      auto im = key_of(t.apply(emb.pts[i]));
      auto it = index.find(im);
      if (it == index.end()) throw std::logic_error("group does not permute the singular points");
      orbit.insert(it->second);
      if (it->second == i) ++stab;
    }
    for (int j : orbit) used[j] = true;
    info.orbit_size = (long)orbit.size();
    info.stabilizer_size = stab;
    orbits.push_back(std::move(info));
  }
  return orbits;
}

}  // namespace planefol
