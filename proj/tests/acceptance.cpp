// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "planefol/bounds.hpp"
#include "planefol/parser.hpp"
#include "planefol/ruled.hpp"

using namespace planefol;

namespace {

const NFPtr Q = NumberField::rationals();
int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL") << " - " << what
            << std::endl;
  if (!ok) ++failures;
}

HomogVectorField random_field(std::mt19937_64& rng, int d, long spread = 5) {
  for (;;) {
    HomogPoly comps[3] = {HomogPoly(Q, d), HomogPoly(Q, d), HomogPoly(Q, d)};
    for (auto& p : comps)
      for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= d; ++j) {
          long c = (long)(rng() % (2 * spread + 1)) - spread;
          if (c != 0) p.add_term({i, j, d - i - j}, FieldElement::from_rational(Q, rat_of(c)));
        }
    if (!comps[0].is_zero() || !comps[1].is_zero() || !comps[2].is_zero())
      return HomogVectorField(comps[0], comps[1], comps[2]);
  }
}

HomogVectorField to_field(const HomogVectorField& v, const NFPtr& K) {
  return HomogVectorField(homog_to_field(v.A, K), homog_to_field(v.B, K),
                          homog_to_field(v.C, K));
}

// the computed symmetry groups of the Jouanolou corpus, reused across criteria
struct CorpusEntry {
  int d;
  HomogVectorField v;
  SymmetryGroup g;
};
std::vector<CorpusEntry> corpus;

void criterion1() {
  bool ok = true;
  std::ostringstream note;
  for (int d : {2, 3, 4}) {
    auto t0 = std::chrono::steady_clock::now();
    HomogVectorField v = jouanolou(d);
    SymmetryGroup g = frame_search_full(v);
    ClassifyReport rep = verify_and_classify(v, g);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    long n0 = (long)d * d + d + 1;
    bool this_ok = g.order == 3 * n0 && g.completeness == "complete" && rep.type == "C2" &&
                   rep.n == n0 && rep.k == n0 && rep.s == ((-d) % n0 + n0) % n0 &&
                   ms < 5 * 60 * 1000;
    ok = ok && this_ok;
    note << "d=" << d << " order " << g.order << " " << rep.type << " in " << ms << "ms; ";
    corpus.push_back({d, v, g});
  }
  report(1, ok, "Jouanolou sharpness 21/39/63, type C2: " + note.str());
}

void criterion2() {
  bool ok = true;
  for (int d = 1; d <= 4; ++d) {
    HomogVectorField v = jouanolou(d);
    long n0 = (long)d * d + d + 1;
    DiagonalStabilizer ds = diagonal_stabilizer(v);
    if (!ds.finite || ds.order != n0 || ds.generators.size() != 1) {
      ok = false;
      continue;
    }
    // generator class projectively equal to exponents (0, 1, d+1)
    const ExpGen& gen = ds.generators[0];
    long b = ((gen.e[1] - gen.e[0]) % n0 + n0) % n0;
    long c = ((gen.e[2] - gen.e[0]) % n0 + n0) % n0;
    bool matched = false;
    for (long u = 1; u < n0; ++u)
      if ((u * b) % n0 == 1 && (u * c) % n0 == (long)(d + 1) % n0) matched = true;
    ok = ok && matched;
    // brute force over n <= 2(d^2+d+1): count diagonal symmetry classes via
    // pushforward proportionality and compare with the SNF prediction
    for (long n = 1; n <= 2 * n0; ++n) {
      NFPtr K = NumberField::cyclotomic((unsigned long)n);
      HomogVectorField vk = to_field(v, K);
      long count = 0;
      for (long bb = 0; bb < n; ++bb)
        for (long cc = 0; cc < n; ++cc) {
          ProjTransform D = ProjTransform::diagonal(K, FieldElement::one(K),
                                                    detail_sym::root_power(K, n, bb),
                                                    detail_sym::root_power(K, n, cc));
          if (proportional_scalar(vk, pushforward(D, vk))) ++count;
        }
      if (count != std::gcd(n, n0)) ok = false;
    }
  }
  report(2, ok, "diagonal stabilizer of Jouanolou(d<=4): cyclic d^2+d+1, generator (0,1,d+1), "
                "SNF matches brute force up to n = 2(d^2+d+1)");
}

void criterion3() {
  std::mt19937_64 rng(20260823);
  bool ok = true;
  for (int d : {1, 2, 3}) {
    int done = 0;
    while (done < 20) {
      HomogVectorField v = random_field(rng, d);
      std::vector<SingularityRecord> recs;
      try {
        recs = singular_points(v);
      } catch (const NonIsolated&) {
        continue;
      } catch (const ZeroForm&) {
        continue;
      }
      ++done;
      long mu = 0;
      bool nondeg = true;
      Rational bb_sum(0);
      bool have_bb = true;
      for (const auto& r : recs) {
        mu += r.milnor * r.field->degree;
        if (r.milnor != 1) nondeg = false;
        if (r.split && r.bb)
          bb_sum += r.bb->trace();
        else
          have_bb = false;
      }
      if (mu != (long)d * d + d + 1) ok = false;
      if (nondeg && have_bb) {
        bb_sum.canonicalize();
        if (bb_sum != Rational((long)(d + 2) * (d + 2))) ok = false;
      }
    }
  }
  report(3, ok, "20 seeded random foliations per degree 1..3: sum mu = d^2+d+1; "
                "nondegenerate subset: sum BB = (d+2)^2");
}

void criterion4() {
  std::mt19937_64 rng(424242);
  bool ok = true;
  // tang against random non-invariant lines equals d
  for (int d : {2, 3}) {
    HomogVectorField v = jouanolou(d);
    int done = 0;
    while (done < 10) {
      HomogPoly line(Q, 1);
      for (int i = 0; i < 3; ++i) {
        long c = (long)(rng() % 7) - 3;
        Monomial m = {0, 0, 0};
        m[i] = 1;
        if (c != 0) line.add_term(m, FieldElement::from_rational(Q, rat_of(c)));
      }
      if (line.is_zero()) continue;
      try {
        CurveOnP2 C(line);
        if (is_invariant_curve(v, C)) continue;
        if (tang(v, C).total != d) ok = false;
        ++done;
      } catch (const NonIsolated&) {
      }
    }
  }
  // Z along constructed invariant lines equals d+1
  for (int d : {1, 2, 3}) {
    HomogPoly A = HomogPoly::monomial(Q, {d, 0, 0}, FieldElement::one(Q));
    HomogPoly B = HomogPoly::monomial(Q, {0, d, 0},
                                      FieldElement::from_rational(Q, Rational(-1)));
    HomogVectorField v(A, B, HomogPoly::zero(Q, d));  // leaves X = 0 invariant
    CurveOnP2 C(parse_homog_poly("X"));
    if (!is_invariant_curve(v, C)) ok = false;
    if (z_index(v, C).total != d + 1) ok = false;
  }
  report(4, ok, "tang totals = d on 10 random non-invariant lines; Z totals = d+1 on "
                "constructed invariant lines");
}

void criterion5() {
  bool ok = true;
  for (const auto& e : corpus) {
    auto orbits = orbit_decomposition(e.v, e.g);
    long total = 0;
    for (const auto& o : orbits) {
      if (o.orbit_size * o.stabilizer_size != e.g.order) ok = false;
      total += o.orbit_size * o.milnor;  // orbit_size = |G| / |H_i|
    }
    if (total != (long)e.d * e.d + e.d + 1) ok = false;
  }
  report(5, ok, "orbit-stabilizer identity sum (|G|/|H_i|) mu = d^2+d+1 on the corpus");
}

void criterion6() {
  bool ok = true;
  // the order-7 diagonal subgroup of Aut(Jouanolou(2)) fixes only regular
  // points (computed via the audit) and its order divides d^2+d+1
  for (const auto& e : corpus) {
    auto audit = audit_group(e.v, e.g);
    for (const auto& a : audit)
      if (a.theorem == "p2reg") {
        bool hyp_ok = true;
        for (const auto& [k, val] : a.hypotheses)
          if (k == "fixes_only_regular_points" && val != "true") hyp_ok = false;
        if (e.d == 2 && (a.observed != 7 || !hyp_ok)) ok = false;
        if (hyp_ok && a.verdict != "pass") ok = false;
      }
  }
  report(6, ok, "p2reg divisibility holds for every corpus group with computed hypotheses "
                "(order-7 diagonal subgroup of Aut(Jouanolou(2)) included)");
}

void criterion7() {
  std::mt19937_64 rng(777);
  bool ok = true;
  for (int row = 0; row < 200; ++row) {
    long a = (long)(rng() % 11), e = (long)(rng() % 11);
    long b = (long)(rng() % 21) - 5, g = (long)(rng() % 6);
    RuledInvariants inv = ruled_invariants({a, b, e, g});
    long k = 2 * b - a * e;
    if (inv.c2 != (a + 1) * (k + 2 - 2 * g) + 2 - 2 * g) ok = false;
    if (inv.nf2 != (a + 2) * (k + 4 - 4 * g)) ok = false;
    if (inv.tang_fiber != a || inv.z_fiber != a + 2) ok = false;
    if (e > 0 && b == (a + 1) * e) {  // case-5-feasible: log_c2 must vanish
      RuledInvariants li = ruled_invariants({a, b, e, g, b + 2 - 2 * g});
      if (!li.log_c2 || *li.log_c2 != 0) ok = false;
    }
  }
  report(7, ok, "200-row ruled grid reproduces the invariant formulas; log_c2 = 0 on "
                "case-5-feasible rows");
}

void criterion8() {
  bool ok = true;
  for (const auto& e : corpus) {
    HomogVectorField vk = to_field(e.v, e.g.field);
    for (const auto& t : e.g.elements)
      if (!proportional_scalar(vk, pushforward(t, vk))) ok = false;
    for (const auto& a : audit_group(e.v, e.g))
      if (a.verdict != "pass" && a.verdict != "not_applicable") ok = false;
  }
  // monomial and diagonal stabilizers are sound too
  for (int d : {2, 3}) {
    HomogVectorField v = jouanolou(d);
    SymmetryGroup m = monomial_stabilizer(v);
    HomogVectorField vk = to_field(v, m.field);
    for (const auto& t : m.elements)
      if (!proportional_scalar(vk, pushforward(t, vk))) ok = false;
  }
  report(8, ok, "every returned group element preserves the foliation exactly; corpus audits "
                "are pass or not_applicable");
}

void criterion9() {
  std::mt19937_64 rng(999331);
  bool ok = true;
  for (int it = 0; it < 100; ++it) {
    int d = 1 + (int)(rng() % 3);
    HomogVectorField v = normalize_div_free(random_field(rng, d));
    ProjTransform phi(Q);
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          phi.m[i][j] = FieldElement::from_rational(Q, rat_of((long)(rng() % 9) - 4));
    } while (phi.det().is_zero());
    if (!divergence(pushforward(phi, v)).is_zero()) ok = false;
  }
  report(9, ok, "div(pushforward(phi, v)) = 0 for 100 seeded divergence-free pairs");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::cout << (failures == 0 ? "all criteria passed" : "FAILURES: " + std::to_string(failures))
            << std::endl;
  return failures == 0 ? 0 : 1;
}
