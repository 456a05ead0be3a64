#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "planefol/singular.hpp"

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

// Affine germ a(x,y) dx + b(x,y) dy as a pair of BiPoly over Q, built from
// exponent/coefficient triples.
BiPoly affine(std::initializer_list<std::array<long, 3>> terms) {
  BiPoly p(Q);
  for (const auto& t : terms) {
    int i = (int)t[0], j = (int)t[1];
    if ((int)p.yc.size() <= j) p.yc.resize(j + 1, UPoly(Q));
    if ((int)p.yc[j].c.size() <= i) p.yc[j].c.resize(i + 1, FieldElement::zero(Q));
    p.yc[j].c[i] = FieldElement::from_rational(Q, Rational(t[2]));
  }
  for (auto& u : p.yc) u.trim();
  p.trim();
  return p;
}

long total_mu(const std::vector<SingularityRecord>& recs) {
  long s = 0;
  for (const auto& r : recs) s += r.milnor * r.field->degree;
  return s;
}

}  // namespace

TEST_CASE("intersection multiplicity on monomial ideals") {
  // dim O/(x^a, y^b) = a*b, the classical oracle
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      BiPoly xa = affine({{a, 0, 1}});
      BiPoly yb = affine({{0, b, 1}});
      CHECK(intersection_multiplicity_origin(xa, yb) == (long)a * b);
    }
  // mixed ideal: (y - x^2, y^2) has multiplicity 4
  BiPoly f = affine({{0, 1, 1}, {2, 0, -1}});
  BiPoly g = affine({{0, 2, 1}});
  CHECK(intersection_multiplicity_origin(f, g) == 4);
}

TEST_CASE("milnor of affine germs") {
  // x dx - y dy at the origin
  CHECK(intersection_multiplicity_origin(affine({{1, 0, 1}}), affine({{0, 1, -1}})) == 1);
  // y dx + x^2 dy: dim O/(y, x^2) = 2
  CHECK(intersection_multiplicity_origin(affine({{0, 1, 1}}), affine({{2, 0, 1}})) == 2);
}

TEST_CASE("singular_scheme_degree examples") {
  CHECK(singular_scheme_degree(jouanolou(2)) == 7);
  CHECK(singular_scheme_degree(jouanolou(3)) == 13);
  HomogVectorField v(mono({1, 0, 0}, 1), mono({0, 1, 0}, -1), HomogPoly::zero(Q, 1));
  CHECK(singular_scheme_degree(v) == 3);
}

TEST_CASE("singular_points of X dX - Y dY") {
  HomogVectorField v(mono({1, 0, 0}, 1), mono({0, 1, 0}, -1), HomogPoly::zero(Q, 1));
  auto recs = singular_points(v);
  REQUIRE(recs.size() == 3);
  // the three coordinate points, each with milnor 1, all rational
  std::set<std::string> pts;
  for (const auto& r : recs) {
    CHECK(r.field->is_q());
    CHECK(r.milnor == 1);
    CHECK(r.split);
    pts.insert(r.point[0].str() + "," + r.point[1].str() + "," + r.point[2].str());
  }
  CHECK(pts == std::set<std::string>{"1,0,0", "0,1,0", "0,0,1"});
}

TEST_CASE("singular_points of Jouanolou(1) live in the cube-root field") {
  auto recs = singular_points(jouanolou(1));
  CHECK(total_mu(recs) == 3);
  // brute-force oracle over cyclotomic(3): candidate points (w^i : w^j : 1)
  NFPtr K3 = NumberField::cyclotomic(3);
  FieldElement w = FieldElement::gen(K3);
  HomogVectorField j1 = jouanolou(1, K3);
  HomogOneForm form = raw_one_form(j1);
  int found = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      FieldElement x = w.pow(i), y = w.pow(j), one = FieldElement::one(K3);
      if (form.P.eval(x, y, one).is_zero() && form.Q.eval(x, y, one).is_zero() &&
          form.S.eval(x, y, one).is_zero())
        ++found;
    }
  CHECK(found == 3);  // matches the total count of the records
  for (const auto& r : recs) {
    CHECK(r.milnor == 1);
    bool ok_field = r.field->is_q() ||
                    (r.field->cyclotomic_n && *r.field->cyclotomic_n == 3);
    CHECK(ok_field);
  }
}

TEST_CASE("singular_points of Jouanolou(2): 7 points over cyclotomic(7)-related fields") {
  auto recs = singular_points(jouanolou(2));
  CHECK(total_mu(recs) == 7);
  long npoints = 0;
  for (const auto& r : recs) {
    CHECK(r.milnor == 1);
    CHECK(r.split);
    npoints += r.field->degree;
    bool ok_field = r.field->is_q() ||
                    (r.field->cyclotomic_n && (*r.field->cyclotomic_n % 7 == 0));
    CHECK(ok_field);
  }
  CHECK(npoints == 7);

  // every record's point annihilates the dual form (re-substitution over its field)
  for (const auto& r : recs) {
    HomogVectorField jk = jouanolou(2, r.field);
    HomogOneForm form = raw_one_form(jk);
    CHECK(form.P.eval(r.point[0], r.point[1], r.point[2]).is_zero());
    CHECK(form.Q.eval(r.point[0], r.point[1], r.point[2]).is_zero());
    CHECK(form.S.eval(r.point[0], r.point[1], r.point[2]).is_zero());
  }

  // milnor_at agrees at each enumerated point
  for (const auto& r : recs) {
    HomogVectorField j2 = jouanolou(2);
    CHECK(milnor_at(j2, r.point) == 1);
  }
}

TEST_CASE("milnor_at errors and invariance") {
  HomogVectorField j2 = jouanolou(2);
  std::array<FieldElement, 3> notsing = {FieldElement::one(Q),
                                         FieldElement::from_rational(Q, Rational(2)),
                                         FieldElement::from_rational(Q, Rational(3))};
  CHECK_THROWS_AS(milnor_at(j2, notsing), NotSingular);

  // invariance under pushforward by a rational projective transform
  HomogVectorField v(mono({1, 0, 0}, 1), mono({0, 1, 0}, -1), HomogPoly::zero(Q, 1));
  std::mt19937_64 rng(2024);
  auto recs = singular_points(v);
  for (int it = 0; it < 5; ++it) {
    ProjTransform phi(Q);
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          phi.m[i][j] = FieldElement::from_rational(Q, rat_of((long)(rng() % 7) - 3));
    } while (phi.det().is_zero());
    HomogVectorField w = pushforward(phi, v);
    for (const auto& r : recs)
      CHECK(milnor_at(w, phi.apply(r.point)) == milnor_at(v, r.point));
  }
}

TEST_CASE("local_data on the standard germs") {
  // x dx - y dy: eigenvalues (1, -1)
  {
    SingularityRecord rec = local_data_affine(affine({{1, 0, 1}}), affine({{0, 1, -1}}));
    REQUIRE(rec.eigen_ratio.has_value());
    CHECK(rec.eigen_ratio->rational_value() == Rational(-1));
    CHECK(rec.reduced);
    REQUIRE(rec.bb.has_value());
    CHECK(rec.bb->rational_value() == Rational(0));
    CHECK(rec.milnor == 1);
  }
  // x dx + 2y dy: ratio 2, a positive rational, so not reduced
  {
    SingularityRecord rec = local_data_affine(affine({{1, 0, 1}}), affine({{0, 1, 2}}));
    REQUIRE(rec.eigen_ratio.has_value());
    CHECK(rec.eigen_ratio->rational_value() == Rational(2));
    CHECK_FALSE(rec.reduced);
    REQUIRE(rec.bb.has_value());
    CHECK(rec.bb->rational_value() == Rational(9, 2));
  }
  // saddle-node x^2 dx + y dy: eigenvalues (0, 1)
  {
    SingularityRecord rec = local_data_affine(affine({{2, 0, 1}}), affine({{0, 1, 1}}));
    CHECK(rec.reduced);
    CHECK_FALSE(rec.bb.has_value());
    REQUIRE(rec.eigen_ratio.has_value());
    CHECK(rec.eigen_ratio->rational_value() == Rational(0));
    CHECK(rec.milnor == 2);
  }
  // nilpotent y dx: both eigenvalues zero
  {
    SingularityRecord rec = local_data_affine(affine({{0, 1, 1}}), affine({{2, 0, 1}}));
    CHECK_FALSE(rec.reduced);
    CHECK_FALSE(rec.bb.has_value());
    CHECK_FALSE(rec.eigen_ratio.has_value());
  }
}

TEST_CASE("local_data at projective points") {
  HomogVectorField v(mono({1, 0, 0}, 1), mono({0, 1, 0}, -1), HomogPoly::zero(Q, 1));
  for (const auto& r : singular_points(v)) {
    SingularityRecord d = local_data(v, r.point);
    CHECK(d.milnor == 1);
    CHECK(d.reduced == r.reduced);
    REQUIRE(d.bb.has_value());
  }
}

TEST_CASE("NonIsolated detection") {
  // X^2 dX: components share the factor X (and more)
  HomogVectorField v(mono({2, 0, 0}, 1), HomogPoly::zero(Q, 2), HomogPoly::zero(Q, 2));
  CHECK_THROWS_AS(singular_scheme_degree(v), NonIsolated);
  // a radial multiple is rejected as a zero form
  HomogVectorField r(mono({1, 0, 0}, 1), mono({0, 1, 0}, 1), mono({0, 0, 1}, 1));
  CHECK_THROWS_AS(singular_points(r), ZeroForm);
}

TEST_CASE("total milnor is d^2+d+1 and total bb is (d+2)^2 on seeded random fields") {
  std::mt19937_64 rng(314159);
  for (int d : {1, 2, 3}) {
    int done = 0;
    while (done < 6) {
      HomogVectorField v = random_field(rng, d);
      std::vector<SingularityRecord> recs;
      try {
        recs = singular_points(v);
      } catch (const NonIsolated&) {
        continue;  // degenerate random draw
      } catch (const ZeroForm&) {
        continue;
      }
      ++done;
      CHECK(total_mu(recs) == (long)d * d + d + 1);
      bool all_nondeg = true;
      Rational bb_sum(0);
      for (const auto& r : recs) {
        if (!r.bb.has_value() || !r.split) {
          all_nondeg = false;
          break;
        }
        bb_sum += r.bb->trace();
      }
      if (all_nondeg) CHECK(bb_sum == Rational((d + 2) * (d + 2)));
    }
  }
}
