#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "planefol/qpoly.hpp"

// Univariate factorization over Q: Yun squarefree split, then classical
// Zassenhaus (factor mod p, Hensel lift, subset recombination).  Desk-scale:
// degrees are capped at 64 by callers.

namespace planefol {

struct FactorizationCap : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// ---------- arithmetic mod a word-sized prime ----------

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 addm(u64 a, u64 b, u64 p) { return (a + b) % p; }
inline u64 subm(u64 a, u64 b, u64 p) { return (a + p - b) % p; }
inline u64 mulm(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }
inline u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}
inline u64 invm(u64 a, u64 p) { return powm(a % p, p - 2, p); }

// Dense poly over F_p, ascending coefficients, trimmed.
using PPoly = std::vector<u64>;

inline void ptrim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int pdeg(const PPoly& a) { return (int)a.size() - 1; }

inline PPoly pmul(const PPoly& a, const PPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  PPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (u64)(((u128)a[i] * b[j] + r[i + j]) % p);
  }
  ptrim(r);
  return r;
}

inline PPoly pscale(PPoly a, u64 c, u64 p) {
  for (auto& x : a) x = mulm(x, c, p);
  ptrim(a);
  return a;
}

inline PPoly psub(const PPoly& a, const PPoly& b, u64 p) {
  PPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = subm(r[i], b[i], p);
  ptrim(r);
  return r;
}

inline PPoly prem(PPoly a, const PPoly& b, u64 p) {
  u64 li = invm(b.back(), p);
  while (pdeg(a) >= pdeg(b)) {
    u64 f = mulm(a.back(), li, p);
    int k = pdeg(a) - pdeg(b);
    for (int i = 0; i <= pdeg(b); ++i) a[i + k] = subm(a[i + k], mulm(f, b[i], p), p);
    ptrim(a);
  }
  return a;
}

inline PPoly pgcd(PPoly a, PPoly b, u64 p) {
  while (!b.empty()) {
    PPoly r = prem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) a = pscale(a, invm(a.back(), p), p);
  return a;
}

inline PPoly pderiv(const PPoly& a, u64 p) {
  PPoly r;
  for (int i = 1; i <= pdeg(a); ++i) r.push_back(mulm(a[i], i % p, p));
  ptrim(r);
  return r;
}

inline PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& f, u64 p) {
  return prem(pmul(a, b, p), f, p);
}

inline PPoly ppowmod(PPoly a, const Integer& e, const PPoly& f, u64 p) {
  PPoly r = {1};
  a = prem(std::move(a), f, p);
  for (long i = (long)mpz_sizeinbase(e.get_mpz_t(), 2) - 1; i >= 0; --i) {
    r = pmulmod(r, r, f, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = pmulmod(r, a, f, p);
  }
  return r;
}

// Distinct-degree + Cantor–Zassenhaus equal-degree factorization of a monic
// squarefree f mod p (p odd).  Deterministically seeded.
inline std::vector<PPoly> pfactor_sqfree(const PPoly& f, u64 p) {
  std::vector<PPoly> out;
  std::vector<std::pair<PPoly, int>> stages;  // (product of irred of degree k, k)
  auto pdiv_exact = [&](const PPoly& a, const PPoly& b) {
    // both monic, b | a
    PPoly q(a.size() - b.size() + 1, 0), r = a;
    while (pdeg(r) >= pdeg(b)) {
      u64 c = r.back();
      int k = pdeg(r) - pdeg(b);
      q[k] = c;
      for (int i = 0; i <= pdeg(b); ++i) r[i + k] = subm(r[i + k], mulm(c, b[i], p), p);
      ptrim(r);
    }
    return q;
  };
  PPoly rest = f;
  PPoly h = {0, 1};  // x
  for (int k = 1; pdeg(rest) >= 2 * k; ++k) {
    h = ppowmod(h, Integer((unsigned long)p), rest, p);  // x^(p^k) mod rest
    PPoly g = pgcd(psub(h, PPoly{0, 1}, p), rest, p);
    if (pdeg(g) > 0) {
      stages.push_back({g, k});
      rest = pdiv_exact(rest, g);
      h = prem(h, rest, p);
    }
  }
  if (pdeg(rest) > 0) stages.push_back({rest, pdeg(rest)});

  std::mt19937_64 rng(0xC0FFEEULL ^ (u64)p);
  // equal-degree split
  std::vector<std::pair<PPoly, int>> work = stages;
  while (!work.empty()) {
    auto [u, k] = work.back();
    work.pop_back();
    if (pdeg(u) == k) {
      out.push_back(u);
      continue;
    }
    // e = (p^k - 1)/2
    Integer pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), (unsigned long)p, (unsigned long)k);
    Integer e = (pk - 1) / 2;
    for (;;) {
      PPoly a(pdeg(u), 0);
      for (auto& x : a) x = rng() % p;
      a.push_back(1);
      PPoly b = ppowmod(a, e, u, p);
      b = psub(b, PPoly{1}, p);
      PPoly g = pgcd(b, u, p);
      if (pdeg(g) > 0 && pdeg(g) < pdeg(u)) {
        work.push_back({g, k});
        work.push_back({pdiv_exact(u, g), k});
        break;
      }
    }
  }
  return out;
}

// ---------- integer polynomials ----------

using ZPoly = std::vector<Integer>;  // ascending, trimmed

inline void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int zdeg(const ZPoly& a) { return (int)a.size() - 1; }

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ztrim(r);
  return r;
}

// Reduce mod m into symmetric range (-m/2, m/2].
inline Integer zsym(Integer a, const Integer& m) {
  a %= m;
  if (a < 0) a += m;
  if (2 * a > m) a -= m;
  return a;
}

inline ZPoly zmod_sym(ZPoly a, const Integer& m) {
  for (auto& x : a) x = zsym(x, m);
  ztrim(a);
  return a;
}

// Division a = q*b + r with b monic, over Z/m (symmetric representatives).
inline std::pair<ZPoly, ZPoly> zdivrem_monic_mod(ZPoly a, const ZPoly& b, const Integer& m) {
  ZPoly q;
  if (zdeg(a) >= zdeg(b)) q.assign(zdeg(a) - zdeg(b) + 1, Integer(0));
  a = zmod_sym(std::move(a), m);
  while (zdeg(a) >= zdeg(b)) {
    Integer c = a.back();
    int k = zdeg(a) - zdeg(b);
    q[k] = c;
    for (int i = 0; i <= zdeg(b); ++i) a[i + k] = zsym(a[i + k] - c * b[i], m);
    ztrim(a);
  }
  ztrim(q);
  return {zmod_sym(std::move(q), m), std::move(a)};
}

inline ZPoly zmul_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
  return zmod_sym(zmul(a, b), m);
}

// Hensel lift one split f = g*h (monic g,h) with Bezout s*g + t*h = 1,
// all mod m, to mod m^2.  GvzG alg. 15.10.
inline void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t,
                        const Integer& m) {
  Integer m2 = m * m;
  // e = f - g*h
  ZPoly e = zmod_sym(zmul(g, h), m2);
  {
    ZPoly tmp(std::max(f.size(), e.size()), Integer(0));
    for (size_t i = 0; i < f.size(); ++i) tmp[i] = f[i];
    for (size_t i = 0; i < e.size(); ++i) tmp[i] -= e[i];
    e = zmod_sym(std::move(tmp), m2);
  }
  auto [q, r] = zdivrem_monic_mod(zmul_mod(s, e, m2), h, m2);
  // g* = g + t*e + q*g ; h* = h + r
  ZPoly gs = zmul_mod(t, e, m2);
  {
    ZPoly qg = zmul_mod(q, g, m2);
    ZPoly tmp(std::max({g.size(), gs.size(), qg.size()}), Integer(0));
    for (size_t i = 0; i < g.size(); ++i) tmp[i] += g[i];
    for (size_t i = 0; i < gs.size(); ++i) tmp[i] += gs[i];
    for (size_t i = 0; i < qg.size(); ++i) tmp[i] += qg[i];
    gs = zmod_sym(std::move(tmp), m2);
  }
  ZPoly hs(std::max(h.size(), r.size()), Integer(0));
  for (size_t i = 0; i < h.size(); ++i) hs[i] += h[i];
  for (size_t i = 0; i < r.size(); ++i) hs[i] += r[i];
  hs = zmod_sym(std::move(hs), m2);

  // Bezout update: b = s*g* + t*h* - 1
  ZPoly b = zmul_mod(s, gs, m2);
  {
    ZPoly th = zmul_mod(t, hs, m2);
    ZPoly tmp(std::max(b.size(), th.size()), Integer(0));
    for (size_t i = 0; i < b.size(); ++i) tmp[i] += b[i];
    for (size_t i = 0; i < th.size(); ++i) tmp[i] += th[i];
    if (tmp.empty()) tmp.assign(1, Integer(0));
    tmp[0] -= 1;
    b = zmod_sym(std::move(tmp), m2);
  }
  auto [c, d] = zdivrem_monic_mod(zmul_mod(s, b, m2), hs, m2);
  // s* = s - d ; t* = t - t*b - c*g*
  ZPoly ss(std::max(s.size(), d.size()), Integer(0));
  for (size_t i = 0; i < s.size(); ++i) ss[i] += s[i];
  for (size_t i = 0; i < d.size(); ++i) ss[i] -= d[i];
  ss = zmod_sym(std::move(ss), m2);
  ZPoly tb = zmul_mod(t, b, m2), cg = zmul_mod(c, gs, m2);
  ZPoly ts(std::max({t.size(), tb.size(), cg.size()}), Integer(0));
  for (size_t i = 0; i < t.size(); ++i) ts[i] += t[i];
  for (size_t i = 0; i < tb.size(); ++i) ts[i] -= tb[i];
  for (size_t i = 0; i < cg.size(); ++i) ts[i] -= cg[i];
  ts = zmod_sym(std::move(ts), m2);

  g = std::move(gs);
  h = std::move(hs);
  s = std::move(ss);
  t = std::move(ts);
}

// Multifactor Hensel: lift monic f ≡ Π facs (mod p) to mod p^(2^iters) ≥ target.
// Recursive binary splitting (GvzG alg. 15.17).
inline void hensel_tree(const ZPoly& f, std::vector<ZPoly>& facs, size_t lo, size_t hi,
                        u64 p, const Integer& target) {
  if (hi - lo <= 1) {
    facs[lo] = f;  // fully lifted single factor equals f mod the final modulus
    return;
  }
  size_t mid = lo + (hi - lo) / 2;
  Integer pm(static_cast<unsigned long>(p));
  ZPoly g = {Integer(1)}, h = {Integer(1)};
  for (size_t i = lo; i < mid; ++i) g = zmod_sym(zmul(g, facs[i]), pm);
  for (size_t i = mid; i < hi; ++i) h = zmod_sym(zmul(h, facs[i]), pm);
  // Bezout s*g + t*h = 1 mod p via F_p xgcd
  PPoly gp(g.size()), hp(h.size());
  for (size_t i = 0; i < g.size(); ++i) {
    Integer v = g[i] % (long)p;
    if (v < 0) v += (long)p;
    gp[i] = v.get_ui();
  }
  for (size_t i = 0; i < h.size(); ++i) {
    Integer v = h[i] % (long)p;
    if (v < 0) v += (long)p;
    hp[i] = v.get_ui();
  }
  ptrim(gp);
  ptrim(hp);
  // extended Euclid over F_p
  PPoly a = gp, b = hp, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  while (!b.empty()) {
    // q = a / b
    PPoly q, r = a;
    u64 li = invm(b.back(), p);
    if (pdeg(r) >= pdeg(b)) q.assign(pdeg(r) - pdeg(b) + 1, 0);
    while (pdeg(r) >= pdeg(b)) {
      u64 c = mulm(r.back(), li, p);
      int k = pdeg(r) - pdeg(b);
      q[k] = c;
      for (int i = 0; i <= pdeg(b); ++i) r[i + k] = subm(r[i + k], mulm(c, b[i], p), p);
      ptrim(r);
    }
    ptrim(q);
    a = std::move(b);
    b = std::move(r);
    PPoly s2 = psub(s0, pmul(q, s1, p), p), t2 = psub(t0, pmul(q, t1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // a = gcd = constant (g,h coprime mod p); scale
  u64 ci = invm(a.empty() ? 1 : a[0], p);
  s0 = pscale(s0, ci, p);
  t0 = pscale(t0, ci, p);
  ZPoly s(s0.size()), t(t0.size());
  for (size_t i = 0; i < s0.size(); ++i) s[i] = zsym(Integer((unsigned long)s0[i]), pm);
  for (size_t i = 0; i < t0.size(); ++i) t[i] = zsym(Integer((unsigned long)t0[i]), pm);
  ztrim(s);
  ztrim(t);

  Integer m(static_cast<unsigned long>(p));
  ZPoly gg = g, hh = h;
  while (m < target) {
    hensel_step(zmod_sym(f, m * m), gg, hh, s, t, m);
    m *= m;
  }
  hensel_tree(gg, facs, lo, mid, p, target);
  hensel_tree(hh, facs, mid, hi, p, target);
}

}  // namespace detail

// ---------- public interface ----------

// Squarefree decomposition over Q (Yun): returns list of (squarefree monic
// factor, multiplicity); product of f_i^{e_i} equals input up to a constant.
inline std::vector<std::pair<QPoly, int>> squarefree_decompose(const QPoly& f) {
  std::vector<std::pair<QPoly, int>> out;
  if (f.deg() < 1) return out;
  QPoly a = f.monic();
  QPoly d = a.derivative();
  QPoly g = QPoly::gcd(a, d);
  QPoly w = QPoly::exact_div(a, g);
  QPoly y = QPoly::exact_div(d, g);
  int i = 1;
  QPoly z = y - w.derivative();
  while (!w.is_zero() && w.deg() > 0) {
    QPoly h = QPoly::gcd(w, z);
    if (h.deg() > 0) out.push_back({h.monic(), i});
    w = QPoly::exact_div(w, h);
    y = QPoly::exact_div(z, h);
    z = y - w.derivative();
    ++i;
  }
  return out;
}

// Factor a monic squarefree QPoly into monic irreducible factors over Q.
inline std::vector<QPoly> factor_squarefree(const QPoly& fq, int degree_cap = 64) {
  using namespace detail;
  if (fq.deg() > degree_cap)
    throw FactorizationCap("factorization degree cap exceeded: deg " +
                           std::to_string(fq.deg()));
  if (fq.deg() <= 1) return fq.deg() == 1 ? std::vector<QPoly>{fq.monic()} : std::vector<QPoly>{};

  // Clear denominators -> primitive Z poly.
  Integer den(1);
  for (const auto& c : fq.c) den = lcm(den, c.get_den());
  ZPoly fz(fq.c.size());
  for (size_t i = 0; i < fq.c.size(); ++i) {
    Rational t = fq.c[i] * Rational(den);
    fz[i] = t.get_num();
  }
  Integer cont(0);
  for (const auto& c : fz) cont = gcd(cont, c);
  for (auto& c : fz) c /= cont;
  if (fz.back() < 0)
    for (auto& c : fz) c = -c;

  // Pull out x^k (recombination assumes nonzero constant term).
  int xpow = 0;
  while (fz[0] == 0) {
    fz.erase(fz.begin());
    ++xpow;
  }
  std::vector<QPoly> result;
  for (int i = 0; i < xpow; ++i) result.push_back(QPoly::monomial(1));
  if (zdeg(fz) == 0) return result;
  if (zdeg(fz) == 1) {
    QPoly lin;
    lin.c = {Rational(fz[0]) / Rational(fz[1]), Rational(1)};
    result.push_back(lin);
    return result;
  }

  // Monicize: f1(x) = lc^(n-1) f(x/lc).
  Integer lc = fz.back();
  int n = zdeg(fz);
  ZPoly f1(fz.size());
  Integer pw(1);
  for (int i = n; i >= 0; --i) {
    f1[i] = fz[i] * pw;
    if (i > 0) pw *= lc;
  }

  // Prime selection: f1 squarefree mod p, fewest modular factors among a few.
  static const u64 prime_pool[] = {1000003, 1000033, 1000037, 1000039, 1000081,
                                   1000099, 1000117, 1000121, 1000133, 1000151,
                                   1000159, 1000171, 1000183, 1000187, 1000193};
  u64 best_p = 0;
  std::vector<PPoly> best_facs;
  int tried = 0;
  for (u64 p : prime_pool) {
    PPoly fp(f1.size());
    for (size_t i = 0; i < f1.size(); ++i) {
      Integer v = f1[i] % (long)p;
      if (v < 0) v += (long)p;
      fp[i] = v.get_ui();
    }
    ptrim(fp);
    if (pdeg(fp) != n) continue;  // lc vanished (cannot happen: monic)
    if (pdeg(pgcd(fp, pderiv(fp, p), p)) != 0) continue;
    auto facs = pfactor_sqfree(pscale(fp, invm(fp.back(), p), p), p);
    if (best_p == 0 || facs.size() < best_facs.size()) {
      best_p = p;
      best_facs = std::move(facs);
    }
    if (++tried >= 3 || best_facs.size() == 1) break;
  }
  if (best_p == 0) throw std::logic_error("no usable prime found for factorization");
  if (best_facs.size() == 1) {
    QPoly g;
    g.c.resize(n + 1);
    for (int i = 0; i <= n; ++i) g.c[i] = Rational(fz[i]);
    result.push_back(g.monic());
    return result;
  }

  // Coefficient bound for monic factors of monic f1 (Mignotte-style, generous).
  Integer maxc(0);
  for (const auto& c : f1)
    if (abs(c) > maxc) maxc = abs(c);
  Integer bound = (maxc + 1) * (Integer(n) + 1);
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n + 1);
  Integer target = 2 * bound + 1;

  // Lift.
  std::vector<ZPoly> lifted(best_facs.size());
  for (size_t i = 0; i < best_facs.size(); ++i) {
    lifted[i].resize(best_facs[i].size());
    for (size_t j = 0; j < best_facs[i].size(); ++j)
      lifted[i][j] = Integer((unsigned long)best_facs[i][j]);
  }
  Integer modulus(static_cast<unsigned long>(best_p));
  while (modulus < target) modulus *= modulus;
  detail::hensel_tree(detail::zmod_sym(f1, modulus), lifted, 0, lifted.size(), best_p,
                      target);

  // Recombination over subsets.
  std::vector<int> alive(lifted.size());
  for (size_t i = 0; i < alive.size(); ++i) alive[i] = (int)i;
  ZPoly rem = f1;  // monic remainder to factor
  std::vector<ZPoly> z_factors;
  auto try_subset_product = [&](const std::vector<int>& idx) -> bool {
    ZPoly g = {Integer(1)};
    for (int i : idx) g = detail::zmod_sym(detail::zmul(g, lifted[i]), modulus);
    // monic candidate with symmetric coefficients; trial divide rem over Z
    if (zdeg(g) == 0) return false;
    // quick test: g(0) must divide rem(0)
    if (rem[0] != 0 && g[0] != 0 && !mpz_divisible_p(rem[0].get_mpz_t(), g[0].get_mpz_t()))
      return false;
    // long division over Z (g monic)
    ZPoly q, r = rem;
    if (zdeg(r) < zdeg(g)) return false;
    q.assign(zdeg(r) - zdeg(g) + 1, Integer(0));
    while (zdeg(r) >= zdeg(g)) {
      Integer c = r.back();
      int k = zdeg(r) - zdeg(g);
      q[k] = c;
      for (int i = 0; i <= zdeg(g); ++i) r[i + k] -= c * g[i];
      detail::ztrim(r);
    }
    if (!r.empty()) return false;
    z_factors.push_back(g);
    rem = q;
    return true;
  };

  size_t max_subset = alive.size();
  for (size_t sz = 1; sz <= max_subset && alive.size() > 0; ++sz) {
    if (sz > alive.size() / 2 && sz < alive.size()) continue;  // complement covered
    if (sz == alive.size()) {
      // remaining product is irreducible
      break;
    }
    bool progressed = true;
    while (progressed && sz <= alive.size() / 2) {
      progressed = false;
      // iterate subsets of 'alive' of size sz
      std::vector<size_t> pick(sz);
      for (size_t i = 0; i < sz; ++i) pick[i] = i;
      while (true) {
        std::vector<int> idx;
        for (size_t i : pick) idx.push_back(alive[i]);
        if (try_subset_product(idx)) {
          // remove chosen from alive
          std::vector<int> keep;
          for (size_t i = 0, j = 0; i < alive.size(); ++i) {
            if (j < pick.size() && pick[j] == i) {
              ++j;
              continue;
            }
            keep.push_back(alive[i]);
          }
          alive = std::move(keep);
          progressed = true;
          break;
        }
        // next combination
        int i = (int)sz - 1;
        while (i >= 0 && pick[i] == alive.size() - sz + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (size_t j = i + 1; j < sz; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }
  if (zdeg(rem) > 0) z_factors.push_back(rem);

  // Undo the monicizing substitution: factor g1 of f1 gives g1(lc*x), monic-ized.
  for (const auto& g : z_factors) {
    QPoly q;
    q.c.resize(g.size());
    Integer pw2(1);
    for (size_t i = 0; i < g.size(); ++i) {
      q.c[i] = Rational(g[i] * pw2);
      pw2 *= lc;
    }
    q.trim();
    result.push_back(q.monic());
  }
  return result;
}

// Full factorization: monic irreducible factors with multiplicities.
inline std::vector<std::pair<QPoly, int>> factor_qpoly(const QPoly& f,
                                                       int degree_cap = 64) {
  std::vector<std::pair<QPoly, int>> out;
  if (f.deg() > degree_cap)
    throw FactorizationCap("factorization degree cap exceeded: deg " +
                           std::to_string(f.deg()));
  for (const auto& [sf, mult] : squarefree_decompose(f))
    for (const auto& irr : factor_squarefree(sf, degree_cap)) out.push_back({irr, mult});
  return out;
}

inline bool is_irreducible(const QPoly& f, int degree_cap = 64) {
  if (f.deg() < 1) return false;
  if (f.deg() == 1) return true;
  auto sq = squarefree_decompose(f);
  if (sq.size() != 1 || sq[0].second != 1 || sq[0].first.deg() != f.deg()) return false;
  return factor_squarefree(sq[0].first, degree_cap).size() == 1;
}

inline unsigned long euler_phi(unsigned long n) {
  unsigned long result = n;
  for (unsigned long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  if (n > 1) result -= result / n;
  return result;
}

// n-th cyclotomic polynomial, via exact division (cached).
inline QPoly cyclotomic_minpoly(unsigned long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_minpoly: n must be >= 1");
  static std::map<unsigned long, QPoly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  QPoly xn_minus_1 = QPoly::monomial((int)n) - QPoly::constant(Rational(1));
  QPoly q = xn_minus_1;
  for (unsigned long d = 1; d < n; ++d)
    if (n % d == 0) q = QPoly::exact_div(q, cyclotomic_minpoly(d));
  cache[n] = q;
  return q;
}

}  // namespace planefol
