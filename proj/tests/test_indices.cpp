#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "planefol/indices.hpp"
#include "planefol/parser.hpp"

using namespace planefol;

namespace {

const NFPtr Q = NumberField::rationals();

HomogPoly mono(Monomial m, long c) {
  return HomogPoly::monomial(Q, m, FieldElement::from_rational(Q, Rational(c)));
}

HomogVectorField random_field(std::mt19937_64& rng, int d) {
  auto rand_poly = [&]() {
    HomogPoly p(Q, d);
    for (int i = 0; i <= d; ++i)
      for (int j = 0; i + j <= d; ++j) {
        long c = (long)(rng() % 11) - 5;
        if (c != 0) p.add_term({i, j, d - i - j}, FieldElement::from_rational(Q, rat_of(c)));
      }
    return p;
  };
  for (;;) {
    HomogPoly A = rand_poly(), B = rand_poly(), C = rand_poly();
    if (!A.is_zero() || !B.is_zero() || !C.is_zero())
      return HomogVectorField(A, B, C);
  }
}

HomogPoly random_curve(std::mt19937_64& rng, int m) {
  for (;;) {
    HomogPoly p(Q, m);
    for (int i = 0; i <= m; ++i)
      for (int j = 0; i + j <= m; ++j) {
        long c = (long)(rng() % 9) - 4;
        if (c != 0) p.add_term({i, j, m - i - j}, FieldElement::from_rational(Q, rat_of(c)));
      }
    if (p.is_zero()) continue;
    try {
      CurveOnP2 c(p);
      return p;
    } catch (const std::invalid_argument&) {
    }
  }
}

}  // namespace

TEST_CASE("expected_totals") {
  CHECK(expected_totals(2, 1) == std::pair<long, long>{2, 3});
  CHECK(expected_totals(0, 1) == std::pair<long, long>{0, 1});
  CHECK(expected_totals(3, 2) == std::pair<long, long>{8, 6});
  CHECK_THROWS_AS(expected_totals(2, 0), std::invalid_argument);
}

TEST_CASE("CurveOnP2 validation") {
  CHECK_THROWS_AS(CurveOnP2(mono({2, 0, 0}, 1)), std::invalid_argument);  // X^2 not reduced
  CHECK_NOTHROW(CurveOnP2(parse_homog_poly("X*Y")));                      // squarefree, reducible
  CHECK_NOTHROW(CurveOnP2(parse_homog_poly("X^2 + Y*Z")));
}

TEST_CASE("is_invariant_curve examples") {
  CurveOnP2 lineZ(parse_homog_poly("Z"));
  for (int d : {1, 2, 3}) CHECK_FALSE(is_invariant_curve(jouanolou(d), lineZ));

  HomogVectorField v(mono({1, 0, 0}, 1), mono({0, 1, 0}, -1), HomogPoly::zero(Q, 1));
  CHECK(is_invariant_curve(v, CurveOnP2(parse_homog_poly("X"))));
  CHECK(is_invariant_curve(v, CurveOnP2(parse_homog_poly("Y"))));
  CHECK_FALSE(is_invariant_curve(v, CurveOnP2(parse_homog_poly("X - Z"))));
}

TEST_CASE("common_zeros satisfies Bezout on random curve pairs") {
  std::mt19937_64 rng(555);
  int done = 0;
  while (done < 8) {
    int mf = 1 + (int)(rng() % 2), mg = 1 + (int)(rng() % 2);
    HomogPoly f = random_curve(rng, mf), g = random_curve(rng, mg);
    std::vector<ZeroRecord> recs;
    try {
      recs = common_zeros(f, g);
    } catch (const NonIsolated&) {
      continue;
    }
    long total = 0;
    for (const auto& r : recs) total += r.mult * r.field->degree;
    CHECK(total == (long)mf * mg);
    ++done;
  }
}

TEST_CASE("tang examples") {
  // Jouanolou(2) against the line Z = 0: one tangency point (1:0:0), index 2
  {
    IndexReport rep = tang(jouanolou(2), CurveOnP2(parse_homog_poly("Z")));
    CHECK(rep.total == 2);
    REQUIRE(rep.points.size() == 1);
    CHECK(rep.points[0].mult == 2);
    CHECK(rep.points[0].point[0].rational_value() == Rational(1));
    CHECK(rep.points[0].point[1].is_zero());
    CHECK(rep.points[0].point[2].is_zero());
  }
  // X dX - Y dY against X - Z: one simple tangency at (0:1:0)
  {
    HomogVectorField v(mono({1, 0, 0}, 1), mono({0, 1, 0}, -1), HomogPoly::zero(Q, 1));
    IndexReport rep = tang(v, CurveOnP2(parse_homog_poly("X - Z")));
    CHECK(rep.total == 1);
    REQUIRE(rep.points.size() == 1);
    CHECK(rep.points[0].point[0].is_zero());
    CHECK(rep.points[0].point[1].rational_value() == Rational(1));
    CHECK(rep.points[0].point[2].is_zero());
  }
  // invariant curve is rejected
  {
    HomogVectorField v(mono({1, 0, 0}, 1), mono({0, 1, 0}, -1), HomogPoly::zero(Q, 1));
    CHECK_THROWS_AS(tang(v, CurveOnP2(parse_homog_poly("X"))), InvariantCurve);
  }
}

TEST_CASE("tang totals on random non-invariant curves") {
  std::mt19937_64 rng(808);
  for (int d : {1, 2}) {
    for (int m : {1, 2}) {
      int done = 0;
      while (done < 3) {
        HomogVectorField v = random_field(rng, d);
        HomogPoly f = random_curve(rng, m);
        try {
          IndexReport rep = tang(v, CurveOnP2(f));
          CHECK(rep.total == expected_totals(d, m).first);
          ++done;
        } catch (const InvariantCurve&) {
        } catch (const NonIsolated&) {
        }
      }
    }
  }
}

TEST_CASE("z_index examples") {
  HomogVectorField v(mono({1, 0, 0}, 1), mono({0, 1, 0}, -1), HomogPoly::zero(Q, 1));
  // along X = 0: Z indices 1 at (0:1:0) and (0:0:1)
  {
    IndexReport rep = z_index(v, CurveOnP2(parse_homog_poly("X")));
    CHECK(rep.total == 2);
    REQUIRE(rep.points.size() == 2);
    for (const auto& r : rep.points) CHECK(r.mult == 1);
  }
  // along Y = 0: total 2 by symmetry
  CHECK(z_index(v, CurveOnP2(parse_homog_poly("Y"))).total == 2);
  // non-invariant curve rejected
  CHECK_THROWS_AS(z_index(v, CurveOnP2(parse_homog_poly("X - Z"))), NotInvariant);
}

TEST_CASE("z_index line total for a degree-3 foliation") {
  // v = X^3 dX - Y^3 dY leaves X = 0 invariant; expected total m(d+2-m) = 4
  HomogVectorField v(mono({3, 0, 0}, 1), mono({0, 3, 0}, -1), HomogPoly::zero(Q, 3));
  IndexReport rep = z_index(v, CurveOnP2(parse_homog_poly("X")));
  CHECK(rep.total == 4);
  CHECK(rep.total == expected_totals(3, 1).second);
}

TEST_CASE("index totals are invariant under pushforward") {
  std::mt19937_64 rng(99);
  HomogVectorField v = jouanolou(2);
  CurveOnP2 C(parse_homog_poly("Z"));
  for (int it = 0; it < 3; ++it) {
    ProjTransform phi(Q);
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          phi.m[i][j] = FieldElement::from_rational(Q, rat_of((long)(rng() % 7) - 3));
    } while (phi.det().is_zero());
    HomogVectorField w = pushforward(phi, v);
    // transformed curve: f composed with phi^{-1} (adjugate representative)
    std::array<std::array<FieldElement, 3>, 3> subs;
    ProjTransform adj = phi.adjugate();
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) subs[a][b] = adj.m[a][b];
    CurveOnP2 Cw(C.f.substitute_linear(subs));
    CHECK(tang(w, Cw).total == tang(v, C).total);
  }
}
