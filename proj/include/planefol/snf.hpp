#pragma once

#include <vector>

#include "planefol/rational.hpp"

namespace planefol {

// Smith normal form D = U A V with U, V unimodular and the diagonal entries
// positive, each dividing the next.
struct SmithNF {
  std::vector<std::vector<Integer>> d, u, v;
  std::vector<Integer> invariants;  // nonzero diagonal entries
  int rank = 0;
};

inline SmithNF smith_normal_form(std::vector<std::vector<Integer>> a) {
  const int m = (int)a.size();
  const int n = m ? (int)a[0].size() : 0;
  auto ident = [](int k) {
    std::vector<std::vector<Integer>> e(k, std::vector<Integer>(k, 0));
    for (int i = 0; i < k; ++i) e[i][i] = 1;
    return e;
  };
  SmithNF s;
  s.u = ident(m);
  s.v = ident(n);
  if (m == 0 || n == 0) {
    s.d = a;
    return s;
  }

  auto swap_rows = [&](int i, int j) {
    std::swap(a[i], a[j]);
    std::swap(s.u[i], s.u[j]);
  };
  auto swap_cols = [&](int i, int j) {
    for (int r = 0; r < m; ++r) std::swap(a[r][i], a[r][j]);
    for (int r = 0; r < n; ++r) std::swap(s.v[r][i], s.v[r][j]);
  };
  auto addmul_row = [&](int dst, int src, const Integer& q) {  // row dst += q * row src
    for (int c = 0; c < n; ++c) a[dst][c] += q * a[src][c];
    for (int c = 0; c < m; ++c) s.u[dst][c] += q * s.u[src][c];
  };
  auto addmul_col = [&](int dst, int src, const Integer& q) {
    for (int r = 0; r < m; ++r) a[r][dst] += q * a[r][src];
    for (int r = 0; r < n; ++r) s.v[r][dst] += q * s.v[r][src];
  };
  auto negate_row = [&](int i) {
    for (int c = 0; c < n; ++c) a[i][c] = -a[i][c];
    for (int c = 0; c < m; ++c) s.u[i][c] = -s.u[i][c];
  };

  const int steps = std::min(m, n);
  for (int t = 0; t < steps; ++t) {
    for (;;) {
      // pivot: nonzero entry of minimal absolute value in the trailing block
      int pi = -1, pj = -1;
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j)
          if (sgn(a[i][j]) != 0 &&
              (pi < 0 || cmp(abs(a[i][j]), abs(a[pi][pj])) < 0)) {
            pi = i;
            pj = j;
          }
      if (pi < 0) goto done;  // trailing block is zero
      if (pi != t) swap_rows(t, pi);
      if (pj != t) swap_cols(t, pj);
      bool clean = true;
      for (int i = t + 1; i < m; ++i)
        if (sgn(a[i][t]) != 0) {
          Integer q;
          mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
          addmul_row(i, t, -q);
          if (sgn(a[i][t]) != 0) clean = false;
        }
      for (int j = t + 1; j < n; ++j)
        if (sgn(a[t][j]) != 0) {
          Integer q;
          mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
          addmul_col(j, t, -q);
          if (sgn(a[t][j]) != 0) clean = false;
        }
      if (!clean) continue;
      // pivot divides the rest of the block?  if not, mix that row in and redo
      bool divides = true;
      for (int i = t + 1; i < m && divides; ++i)
        for (int j = t + 1; j < n && divides; ++j)
          if (sgn(a[i][j] % a[t][t]) != 0) {
            addmul_row(t, i, Integer(1));
            divides = false;
          }
      if (divides) break;
    }
    if (sgn(a[t][t]) < 0) negate_row(t);
  }
done:
  s.d = a;
  for (int t = 0; t < steps; ++t)
    if (sgn(a[t][t]) != 0) {
      s.invariants.push_back(a[t][t]);
      ++s.rank;
    }
  return s;
}

}  // namespace planefol
