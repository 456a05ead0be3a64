#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace planefol {

struct GenusOutOfRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numeric data of a foliation of bidegree (a,b) (K_F = a C0 + b f) on a
// geometrically ruled surface with invariant e over a genus-g base, with an
// optional count s of invariant fibers.
struct RuledNumerics {
  long a = 0, b = 0, e = 0, g = 0;
  std::optional<long> s;
};

struct RuledInvariants {
  long c2 = 0;          // #Sing = (a+1)(2b-ae+2-2g)+2-2g
  long nf2 = 0;         // N_F^2 = (a+2)(2b-ae+4-4g)
  long tang_fiber = 0;  // tangency with a generic fiber = a
  long z_fiber = 0;     // Z index along a fiber = a+2
  std::optional<long> log_c2;  // c2 - s(a+2) when s is given
  std::vector<std::string> warnings;
};

inline RuledInvariants ruled_invariants(const RuledNumerics& r) {
  RuledInvariants out;
  long k = 2 * r.b - r.a * r.e;
  out.c2 = (r.a + 1) * (k + 2 - 2 * r.g) + 2 - 2 * r.g;
  out.nf2 = (r.a + 2) * (k + 4 - 4 * r.g);
  out.tang_fiber = r.a;
  out.z_fiber = r.a + 2;
  if (r.s) out.log_c2 = out.c2 - *r.s * (r.a + 2);
  if (r.g >= 1) {
    if (r.a < 0) out.warnings.push_back("bidegree constraint a >= 0 violated");
    if (k < 2 * r.g - 2)
      out.warnings.push_back("bidegree constraint 2b - ae >= 2g - 2 violated");
  }
  if (r.e < -r.g) out.warnings.push_back("Nagata constraint e >= -g violated");
  return out;
}

struct NefAmpleResult {
  bool nef = false;
  bool ample = false;
  bool irreducible_ok = false;  // numerical class of an irreducible curve
};

// Nef/ample test for D = a C0 + b f on a ruled surface with invariant e.
inline NefAmpleResult nef_ample_test(long a, long b, long e) {
  NefAmpleResult r;
  if (e >= 0) {
    r.nef = a >= 0 && b >= a * e;
    r.ample = a > 0 && b > a * e;
    r.irreducible_ok = a > 0 && b >= a * e;
  } else {
    r.nef = a >= 0 && 2 * b >= a * e;
    r.ample = a > 0 && 2 * b > a * e;
    r.irreducible_ok = a > 0 && 2 * b >= a * e;
  }
  return r;
}

struct P1tgFlags {
  std::optional<bool> tangent_to_ruling;
  std::optional<bool> all_sing_on_invariant_fibers;
};

struct P1tgCase {
  int id = 0;
  std::string description;
  std::optional<long> s;  // forced invariant-fiber count, case 5 only
};

// The six alternatives for a foliation on a ruled surface: the feasible
// subset given the numerics and whatever flags the caller can certify.
// Unknown flags widen the feasible set; the classifier never guesses.
inline std::vector<P1tgCase> p1tg_classify(const RuledNumerics& r, const P1tgFlags& flags = {}) {
  std::vector<P1tgCase> out;
  if (flags.tangent_to_ruling != false)
    out.push_back({1, "tangent to the ruling", std::nullopt});
  if (r.a == 0) out.push_back({2, "a = 0: Riccati", std::nullopt});
  if (r.b == 0 && r.e == 0 && r.a > 0 && r.g == 1)
    out.push_back({3, "b = e = 0, a > 0, g = 1", std::nullopt});
  if (r.a > 0 && r.b == 0)
    out.push_back({4, "a > 0, b = 0: Riccati for the other projection", std::nullopt});
  if (r.e > 0 && r.b == (r.a + 1) * r.e && flags.all_sing_on_invariant_fibers != false)
    out.push_back({5, "e > 0, b = (a+1)e", r.b + 2 - 2 * r.g});
  if (flags.all_sing_on_invariant_fibers != true)
    out.push_back({6, "a singularity on a non-invariant fiber", std::nullopt});
  return out;
}

enum class RuledScenario { sing_on_transverse_fiber, all_sing_on_invariant_fibers };

struct RuledBounds {
  long bound = 0;
  long wiman = 0;    // 4g+2
  long hurwitz = 0;  // 84(g-1)
  long c2 = 0;
};

// Order bounds for the automorphism group, per scenario and the sign of e.
inline RuledBounds ruled_bounds(const RuledNumerics& r, RuledScenario scenario) {
  if (r.g < 1) throw GenusOutOfRange("ruled bounds require genus >= 1");
  RuledBounds out;
  out.wiman = 4 * r.g + 2;
  out.hurwitz = 84 * (r.g - 1);
  out.c2 = ruled_invariants(r).c2;
  if (scenario == RuledScenario::sing_on_transverse_fiber) {
    out.bound = (r.e < 0 ? (8 * r.g + 4) : (r.a + 1) * (4 * r.g + 2)) * out.c2;
  } else {
    if (r.a * r.b == 0)
      throw std::invalid_argument("invariant-fiber bound requires a*b != 0");
    out.bound = r.g >= 2 ? 84 * (r.g - 1) * (r.a + 1) : 6 * (r.a + 1) * r.b;
  }
  return out;
}

// Group shapes of the fiberwise automorphisms (static lookup; the key is the
// surface configuration, the value a family description).
inline std::string fiberwise_group_shape(long e, bool decomposable, bool two_matched_sections,
                                         bool is_product) {
  if (e < 0) return "(Z/2)^r";
  if (is_product) return "finite subgroup of PGL(2): cyclic, dihedral, A4, S4 or A5";
  if (!decomposable) return "trivial";
  if (two_matched_sections) return "generated by diag(alpha,1) and antidiag(beta,1)";
  return "cyclic, upper triangular (alpha, Gamma; 0, 1)";
}

}  // namespace planefol
