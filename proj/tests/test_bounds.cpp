#include <catch2/catch_amalgamated.hpp>

#include "planefol/bounds.hpp"

using namespace planefol;

TEST_CASE("p2_bound_report formulas") {
  BoundReport r3 = p2_bound_report(3);
  CHECK(r3.bdp2 == 39);
  CHECK(r3.p2A == 16);
  CHECK(r3.p2A_abelian == 8);
  CHECK(r3.psref_max == 4);
  CHECK(r3.divisors == std::pair<long, long>{13, 12});
  CHECK(p2_bound_report(4).bdp2 == 63);
  CHECK_THROWS_AS(p2_bound_report(2), DegreeTooSmall);
  // monotone in d
  long prev = 0;
  for (int d = 3; d <= 100; ++d) {
    BoundReport r = p2_bound_report(d);
    CHECK(r.bdp2 > prev);
    prev = r.bdp2;
    // closing comparison against 21 K_F^2 = 21 (d-1)^2
    CHECK(r.bdp2 <= 21 * (long)(d - 1) * (d - 1));
  }
}

TEST_CASE("divisibility_check") {
  CHECK(divisibility_check(7, 2, StabilizerProfile::all_trivial_stabilizers));
  CHECK(divisibility_check(6, 2, StabilizerProfile::some_nontrivial_stabilizer));
  CHECK_FALSE(divisibility_check(4, 2, StabilizerProfile::all_trivial_stabilizers));
  CHECK(divisibility_check(13, 3, StabilizerProfile::all_trivial_stabilizers));
  CHECK(divisibility_check(1, 5, StabilizerProfile::some_nontrivial_stabilizer));
}

TEST_CASE("psref_constraints") {
  CHECK(psref_constraints(3, 3, true, true));    // 3 | d = 3
  CHECK(psref_constraints(3, 2, false, true));   // 3 | d+1 = 3
  CHECK_FALSE(psref_constraints(5, 3, false, true));  // 5 > d+1 = 4
  CHECK_FALSE(psref_constraints(2, 3, true, true));   // 2 does not divide 3
  CHECK(psref_constraints(2, 3, true, true, true));   // triangle variant: 2 | d-1 = 2
  CHECK(psref_constraints(5, 8, false, true, true));  // 5 | d+2 = 10
  CHECK(psref_constraints(4, 3, false, false));       // no regular fixed point: only n <= d+1
}

TEST_CASE("audit of the Jouanolou automorphism groups") {
  // d = 2: bdp2 hypothesis d >= 3 fails; the order-7 diagonal subgroup
  // satisfies p2reg with trivial stabilizers
  {
    HomogVectorField v = jouanolou(2);
    SymmetryGroup g = frame_search_full(v);
    auto audit = audit_group(v, g);
    REQUIRE(audit.size() == 3);
    CHECK(audit[0].theorem == "bdp2");
    CHECK(audit[0].verdict == "not_applicable");
    CHECK(audit[1].theorem == "p2reg");
    CHECK(audit[1].observed == 7);
    CHECK(audit[1].bound == 7);
    CHECK(audit[1].verdict == "pass");
    CHECK(audit[2].theorem == "p2A");
    CHECK(audit[2].verdict == "not_applicable");  // no fixed singularity
  }
  // d = 3: bdp2 applicable and tight, 39 = 3(d^2+d+1)
  {
    HomogVectorField v = jouanolou(3);
    SymmetryGroup g = frame_search_full(v);
    auto audit = audit_group(v, g);
    CHECK(audit[0].theorem == "bdp2");
    CHECK(audit[0].bound == 39);
    CHECK(audit[0].observed == 39);
    CHECK(audit[0].verdict == "pass");
    CHECK(audit[1].verdict == "pass");
    for (const auto& e : audit) CHECK(e.verdict != "fail");
  }
}

TEST_CASE("audit of the trivial group passes vacuously") {
  HomogVectorField v = jouanolou(3);
  SymmetryGroup g;
  g.field = NumberField::rationals();
  g.root_order = 1;
  g.elements = {ProjTransform::identity(g.field)};
  g.order = 1;
  auto audit = audit_group(v, g);
  for (const auto& e : audit) {
    CHECK(e.verdict != "fail");
    if (e.verdict == "pass") CHECK(e.observed <= std::max(e.bound, 1L));
  }
}

TEST_CASE("audit rejects a non-preserving group") {
  HomogVectorField v = jouanolou(3);
  SymmetryGroup g = frame_search_full(jouanolou(2));
  CHECK_THROWS_AS(audit_group(v, g), NotPreserving);
}
