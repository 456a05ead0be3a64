#include <catch2/catch_amalgamated.hpp>

#include "planefol/ruled.hpp"

using namespace planefol;

namespace {

bool has_case(const std::vector<P1tgCase>& cs, int id) {
  for (const auto& c : cs)
    if (c.id == id) return true;
  return false;
}

const P1tgCase* find_case(const std::vector<P1tgCase>& cs, int id) {
  for (const auto& c : cs)
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("ruled_invariants examples") {
  {
    RuledInvariants inv = ruled_invariants({1, 2, 1, 1});
    CHECK(inv.c2 == 6);
    CHECK(inv.nf2 == 9);
    CHECK(inv.tang_fiber == 1);
    CHECK(inv.z_fiber == 3);
    CHECK(inv.warnings.empty());
  }
  // Riccati: a = 0
  CHECK(ruled_invariants({0, 4, 2, 1}).tang_fiber == 0);
  // independently computed: 2*(6+1+2-4)+2-4 = 8
  CHECK(ruled_invariants({1, 3, -1, 2}).c2 == 8);
}

TEST_CASE("ruled_invariants flags constraint violations") {
  RuledInvariants inv = ruled_invariants({-1, 0, 0, 1});
  REQUIRE_FALSE(inv.warnings.empty());
  // Nagata: e >= -g
  CHECK_FALSE(ruled_invariants({1, 5, -3, 1}).warnings.empty());
  CHECK(ruled_invariants({1, 5, -1, 1}).warnings.empty());
}

TEST_CASE("log_c2 identities") {
  // s = 0 gives log_c2 = c2
  RuledNumerics r{2, 3, 1, 1, 0L};
  RuledInvariants inv = ruled_invariants(r);
  REQUIRE(inv.log_c2);
  CHECK(*inv.log_c2 == inv.c2);
  // case-5-feasible data: e>0, b=(a+1)e, s=b+2-2g makes log_c2 vanish
  for (long a = 1; a <= 10; ++a)
    for (long e = 1; e <= 10; ++e)
      for (long g = 1; g <= 5; ++g) {
        long b = (a + 1) * e;
        RuledNumerics rr{a, b, e, g, b + 2 - 2 * g};
        RuledInvariants ii = ruled_invariants(rr);
        REQUIRE(ii.log_c2);
        CHECK(*ii.log_c2 == 0);
      }
}

TEST_CASE("c2 regrouping identity") {
  // c2 = (a+2)(b+2-2g-s) + a(b-ae-e) + s(a+2) for all integers
  for (long a = -2; a <= 6; ++a)
    for (long b = -3; b <= 6; ++b)
      for (long e = -2; e <= 3; ++e)
        for (long g = 0; g <= 3; ++g)
          for (long s = 0; s <= 4; ++s) {
            long c2 = ruled_invariants({a, b, e, g}).c2;
            CHECK(c2 == (a + 2) * (b + 2 - 2 * g - s) + a * (b - a * e - e) + s * (a + 2));
          }
}

TEST_CASE("nef_ample_test examples and implication") {
  {
    NefAmpleResult r = nef_ample_test(1, 1, 1);
    CHECK(r.nef);
    CHECK_FALSE(r.ample);
  }
  {
    NefAmpleResult r = nef_ample_test(2, -1, -1);
    CHECK(r.nef);
    CHECK_FALSE(r.ample);
  }
  CHECK_FALSE(nef_ample_test(0, -1, 0).nef);
  // ample implies nef on a grid
  for (long a = -3; a <= 5; ++a)
    for (long b = -5; b <= 5; ++b)
      for (long e = -3; e <= 3; ++e) {
        NefAmpleResult r = nef_ample_test(a, b, e);
        if (r.ample) CHECK(r.nef);
      }
}

TEST_CASE("p1tg_classify examples") {
  CHECK(has_case(p1tg_classify({0, 5, 1, 2}), 2));
  CHECK(has_case(p1tg_classify({2, 0, 0, 1}), 3));
  {
    P1tgFlags flags;
    flags.all_sing_on_invariant_fibers = true;
    auto cs = p1tg_classify({1, 2, 1, 1}, flags);
    const P1tgCase* c5 = find_case(cs, 5);
    REQUIRE(c5);
    REQUIRE(c5->s);
    CHECK(*c5->s == 2);
    CHECK_FALSE(has_case(cs, 6));  // flag excludes the transverse-fiber case
  }
  // cases 3 and 5 are mutually exclusive (e = 0 versus e > 0)
  for (long a = 0; a <= 4; ++a)
    for (long b = 0; b <= 6; ++b)
      for (long e = -2; e <= 3; ++e)
        for (long g = 0; g <= 2; ++g) {
          auto cs = p1tg_classify({a, b, e, g});
          CHECK_FALSE((has_case(cs, 3) && has_case(cs, 5)));
        }
  // a certified tangent-to-ruling flag keeps case 1; refuting it removes it
  P1tgFlags no_tangent;
  no_tangent.tangent_to_ruling = false;
  CHECK_FALSE(has_case(p1tg_classify({1, 1, 0, 1}, no_tangent), 1));
  CHECK(has_case(p1tg_classify({1, 1, 0, 1}), 1));
}

TEST_CASE("ruled_bounds examples") {
  {
    RuledBounds rb = ruled_bounds({1, 3, -1, 2}, RuledScenario::sing_on_transverse_fiber);
    CHECK(rb.c2 == 8);
    CHECK(rb.bound == 160);  // (8g+4) * c2 = 20 * 8
    CHECK(rb.wiman == 10);
    CHECK(rb.hurwitz == 84);
  }
  CHECK(ruled_bounds({1, 2, 1, 2}, RuledScenario::all_sing_on_invariant_fibers).bound == 168);
  CHECK(ruled_bounds({1, 2, 1, 1}, RuledScenario::all_sing_on_invariant_fibers).bound == 24);
  CHECK_THROWS_AS(ruled_bounds({1, 2, 1, 0}, RuledScenario::sing_on_transverse_fiber),
                  GenusOutOfRange);
  CHECK_THROWS_AS(ruled_bounds({0, 2, 1, 1}, RuledScenario::all_sing_on_invariant_fibers),
                  std::invalid_argument);
  // e >= 0 branch of the transverse-fiber bound: (a+1)(4g+2) c2
  RuledBounds rb = ruled_bounds({1, 2, 1, 1}, RuledScenario::sing_on_transverse_fiber);
  CHECK(rb.bound == 2 * 6 * rb.c2);
}

TEST_CASE("fiberwise_group_shape lookup") {
  CHECK(fiberwise_group_shape(-1, true, false, false) == "(Z/2)^r");
  CHECK(fiberwise_group_shape(0, false, false, false) == "trivial");
  CHECK(fiberwise_group_shape(1, true, false, false) ==
        "cyclic, upper triangular (alpha, Gamma; 0, 1)");
  CHECK(fiberwise_group_shape(0, true, true, false) ==
        "generated by diag(alpha,1) and antidiag(beta,1)");
  CHECK(fiberwise_group_shape(0, true, false, true) ==
        "finite subgroup of PGL(2): cyclic, dihedral, A4, S4 or A5");
}
