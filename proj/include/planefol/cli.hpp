#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "planefol/bounds.hpp"
#include "planefol/parser.hpp"
#include "planefol/ruled.hpp"

namespace planefol {

namespace detail_cli {

using ordered_json = nlohmann::ordered_json;

constexpr int EXIT_OK = 0;
constexpr int EXIT_INPUT = 2;
constexpr int EXIT_CAP = 3;

struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline ordered_json point_json(const std::array<FieldElement, 3>& p) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < 3; ++i) a.push_back(p[i].str());
  return a;
}

inline ordered_json record_json(const SingularityRecord& r) {
  ordered_json j;
  j["point"] = point_json(r.point);
  j["field"] = r.field->str();
  j["milnor"] = r.milnor;
  if (r.eigen_ratio) j["eigen_ratio"] = r.eigen_ratio->str();
  j["reduced"] = r.reduced;
  if (r.bb) j["bb"] = r.bb->str();
  if (!r.split) j["split"] = false;
  return j;
}

inline ordered_json audit_json(const std::vector<AuditEntry>& audit) {
  ordered_json arr = ordered_json::array();
  for (const auto& e : audit) {
    ordered_json j;
    j["theorem"] = e.theorem;
    ordered_json h;
    for (const auto& [k, v] : e.hypotheses) h[k] = v;
    j["hypotheses"] = h;
    j["bound"] = e.bound;
    j["observed"] = e.observed;
    j["verdict"] = e.verdict;
    arr.push_back(j);
  }
  return arr;
}

inline std::string classification_string(const ClassifyReport& rep) {
  std::string s = rep.type;
  if (rep.type == "C1" || rep.type == "D1") {
    if (rep.n) s += "(n=" + std::to_string(*rep.n) + ")";
  } else if (rep.type == "C2" || rep.type == "D2") {
    s += "(n=" + std::to_string(rep.n.value_or(0)) + ",k=" + std::to_string(rep.k.value_or(0));
    if (rep.s) s += ",s=" + std::to_string(*rep.s);
    s += ")";
  }
  return s;
}

struct SymmetryOutcome {
  std::string status;  // computed | infinite_diagonal | degenerate_configuration
  std::optional<SymmetryGroup> group;
  std::optional<ClassifyReport> classification;
};

inline SymmetryOutcome run_symmetry(const HomogVectorField& v, bool monomial_only,
                                    const SingOptions& opt, long max_frame_candidates) {
  SymmetryOutcome out;
  HomogVectorField w = normalize_div_free(v);
  try {
    out.group = monomial_only ? monomial_stabilizer(w)
                              : frame_search_full(w, opt, max_frame_candidates);
    out.status = "computed";
  } catch (const InfiniteDiagonal&) {
    out.status = "infinite_diagonal";
    return out;
  } catch (const DegenerateConfiguration&) {
    // no frame: fall back to the monomial subgroup when it is finite
    try {
      out.group = monomial_stabilizer(w);
      out.group->completeness = "monomial_only";
      out.status = "computed";
    } catch (const InfiniteDiagonal&) {
      out.status = "infinite_diagonal";
      return out;
    }
  }
  out.classification = verify_and_classify(w, *out.group);
  return out;
}

inline ordered_json symmetry_json(const SymmetryOutcome& s) {
  ordered_json j;
  j["status"] = s.status;
  if (s.group) {
    j["order"] = s.group->order;
    j["classification"] = s.classification ? classification_string(*s.classification) : "";
    j["completeness"] = s.group->completeness;
    j["field"] = s.group->field->str();
    j["root_order"] = s.group->root_order;
  }
  return j;
}

inline ordered_json generators_json(const HomogVectorField& v) {
  ordered_json arr = ordered_json::array();
  DiagonalStabilizer ds = diagonal_stabilizer(normalize_div_free(v));
  if (!ds.finite) {
    arr.push_back("diagonal torus of positive rank");
    return arr;
  }
  for (const auto& g : ds.generators)
    arr.push_back("diag(l^" + std::to_string(g.e[0]) + ", l^" + std::to_string(g.e[1]) +
                  ", l^" + std::to_string(g.e[2]) + "), l^" + std::to_string(g.n) + " = 1");
  return arr;
}

inline void print_json(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

inline void print_text_kv(const std::string& k, const std::string& v, int indent = 0) {
  std::cout << std::string(indent, ' ') << k << ": " << v << "\n";
}

inline std::string read_input(const std::string& expr, const std::string& file) {
  if (!expr.empty()) return expr;
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open input file: " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

inline long now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace detail_cli

inline int cli_main(int argc, char** argv) {
  using namespace detail_cli;
  CLI::App app{"exact-arithmetic analyzer for plane foliations and ruled-surface numerics"};
  app.require_subcommand(1);

  std::string expr, file, format = "json", curve;
  bool monomial_only = false;
  unsigned long long seed = 314159;
  int max_field_degree = 64;
  long max_frame_candidates = 500000;
  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* e = sub->add_option("--expr", expr, "vector field expression");
    auto* f = sub->add_option("--file", file, "read the expression from a file");
    if (needs_input) {
      e->excludes(f);
      // one of the two is required; checked after parse
    }
    sub->add_option("--format", format, "output format: json|text")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", seed, "seed for random-foliation generation");
    sub->add_option("--max-field-degree", max_field_degree, "splitting-field degree cap");
    sub->add_option("--max-frame-candidates", max_frame_candidates, "frame-search budget");
  };

  auto* cmd_analyze = app.add_subcommand("analyze", "full report: singularities, symmetry, audit");
  add_common(cmd_analyze, true);
  auto* cmd_symmetry = app.add_subcommand("symmetry", "symmetry group search only");
  add_common(cmd_symmetry, true);
  cmd_symmetry->add_flag("--monomial-only", monomial_only, "skip the full frame search");
  cmd_analyze->add_flag("--monomial-only", monomial_only, "skip the full frame search");
  auto* cmd_indices = app.add_subcommand("indices", "tangency or Z indices along a curve");
  add_common(cmd_indices, true);
  cmd_indices->add_option("--curve", curve, "curve equation")->required();
  auto* cmd_bounds = app.add_subcommand("bounds", "plane bound report");
  int bound_degree = 0;
  cmd_bounds->add_option("--degree", bound_degree, "foliation degree")->required();
  cmd_bounds->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
  auto* cmd_ruled = app.add_subcommand("ruled", "ruled-surface numerics");
  RuledNumerics rn;
  long fibers = -1;
  std::string scenario;
  cmd_ruled->add_option("--a", rn.a, "bidegree a")->required();
  cmd_ruled->add_option("--b", rn.b, "bidegree b")->required();
  cmd_ruled->add_option("--e", rn.e, "surface invariant e")->required();
  cmd_ruled->add_option("--g", rn.g, "base genus")->required();
  cmd_ruled->add_option("--fibers", fibers, "number of invariant fibers");
  cmd_ruled->add_option("--scenario", scenario, "bound scenario")
      ->check(CLI::IsMember({"sing_on_transverse_fiber", "all_sing_on_invariant_fibers"}));
  cmd_ruled->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
  auto* cmd_gen = app.add_subcommand("gen", "generate example foliations");
  std::string gen_what;
  int gen_degree = 2;
  cmd_gen->add_option("what", gen_what, "jouanolou|random")->required();
  cmd_gen->add_option("--degree", gen_degree, "degree");
  cmd_gen->add_option("--seed", seed, "seed for random generation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? EXIT_OK : EXIT_INPUT;
  }

  SingOptions sopt;
  sopt.max_field_degree = max_field_degree;

  try {
    if (cmd_gen->parsed()) {
      if (gen_what == "jouanolou") {
        std::cout << render_vector_field(jouanolou(gen_degree)) << "\n";
        return EXIT_OK;
      }
      if (gen_what == "random") {
        std::mt19937_64 rng(seed);
        const NFPtr Q = NumberField::rationals();
        int d = gen_degree;
        HomogPoly comps[3] = {HomogPoly(Q, d), HomogPoly(Q, d), HomogPoly(Q, d)};
        for (auto& p : comps)
          for (int i = 0; i <= d; ++i)
            for (int j = 0; i + j <= d; ++j) {
              long c = (long)(rng() % 11) - 5;
              if (c) p.add_term({i, j, d - i - j}, FieldElement::from_rational(Q, rat_of(c)));
            }
        std::cout << render_vector_field(HomogVectorField(comps[0], comps[1], comps[2]))
                  << "\n";
        return EXIT_OK;
      }
      throw ParseError("unknown generator: " + gen_what);
    }

    if (cmd_bounds->parsed()) {
      BoundReport r = p2_bound_report(bound_degree);
      if (format == "json") {
        ordered_json j;
        j["degree"] = r.degree;
        j["bdp2"] = r.bdp2;
        j["p2A"] = r.p2A;
        j["p2A_abelian"] = r.p2A_abelian;
        j["psref_max"] = r.psref_max;
        j["divisors"] = {r.divisors.first, r.divisors.second};
        print_json(j);
      } else {
        print_text_kv("degree", std::to_string(r.degree));
        print_text_kv("bdp2", std::to_string(r.bdp2));
        print_text_kv("p2A", std::to_string(r.p2A));
        print_text_kv("p2A_abelian", std::to_string(r.p2A_abelian));
        print_text_kv("psref_max", std::to_string(r.psref_max));
        print_text_kv("divisors", std::to_string(r.divisors.first) + ", " +
                                      std::to_string(r.divisors.second));
      }
      return EXIT_OK;
    }

    if (cmd_ruled->parsed()) {
      if (fibers >= 0) rn.s = fibers;
      RuledInvariants inv = ruled_invariants(rn);
      NefAmpleResult na = nef_ample_test(rn.a, rn.b, rn.e);
      auto cases = p1tg_classify(rn);
      ordered_json j;
      j["a"] = rn.a;
      j["b"] = rn.b;
      j["e"] = rn.e;
      j["g"] = rn.g;
      if (rn.s) j["fibers"] = *rn.s;
      j["c2"] = inv.c2;
      j["nf2"] = inv.nf2;
      j["tang_fiber"] = inv.tang_fiber;
      j["z_fiber"] = inv.z_fiber;
      if (inv.log_c2) j["log_c2"] = *inv.log_c2;
      j["warnings"] = inv.warnings;
      j["nef"] = na.nef;
      j["ample"] = na.ample;
      j["irreducible_ok"] = na.irreducible_ok;
      ordered_json cj = ordered_json::array();
      for (const auto& c : cases) {
        ordered_json e;
        e["case"] = c.id;
        e["description"] = c.description;
        if (c.s) e["forced_fibers"] = *c.s;
        cj.push_back(e);
      }
      j["feasible_cases"] = cj;
      if (!scenario.empty()) {
        RuledScenario sc = scenario == "sing_on_transverse_fiber"
                               ? RuledScenario::sing_on_transverse_fiber
                               : RuledScenario::all_sing_on_invariant_fibers;
        RuledBounds rb = ruled_bounds(rn, sc);
        ordered_json bj;
        bj["bound"] = rb.bound;
        bj["wiman"] = rb.wiman;
        bj["hurwitz"] = rb.hurwitz;
        bj["c2"] = rb.c2;
        j["bounds"] = bj;
      }
      if (format == "json") {
        print_json(j);
      } else {
        for (auto it = j.begin(); it != j.end(); ++it)
          print_text_kv(it.key(), it.value().dump());
      }
      return EXIT_OK;
    }

    // the remaining subcommands need a parsed vector field
    if (expr.empty() && file.empty()) {
      std::cerr << "error: provide --expr or --file\n";
      return EXIT_INPUT;
    }
    std::string input = read_input(expr, file);
    HomogVectorField v = parse_vector_field(input);

    if (cmd_symmetry->parsed()) {
      long t0 = now_ms();
      SymmetryOutcome s = run_symmetry(v, monomial_only, sopt, max_frame_candidates);
      long t1 = now_ms();
      if (format == "json") {
        ordered_json j;
        j["input"] = input;
        j["degree"] = v.d;
        j["symmetry"] = symmetry_json(s);
        j["symmetry"]["generators"] = generators_json(v);
        print_json(j);
      } else {
        print_text_kv("input", input);
        print_text_kv("degree", std::to_string(v.d));
        print_text_kv("status", s.status);
        if (s.group) {
          print_text_kv("order", std::to_string(s.group->order));
          print_text_kv("type",
                        s.classification ? classification_string(*s.classification) : "");
          print_text_kv("completeness", s.group->completeness);
        }
        print_text_kv("time_ms", std::to_string(t1 - t0));
      }
      return EXIT_OK;
    }

    if (cmd_indices->parsed()) {
      CurveOnP2 C(parse_homog_poly(curve));
      bool invariant = is_invariant_curve(v, C);
      IndexReport rep = invariant ? z_index(v, C, sopt) : tang(v, C, sopt);
      ordered_json j;
      j["input"] = input;
      j["curve"] = curve;
      j["invariant"] = invariant;
      j["index"] = invariant ? "Z" : "tang";
      ordered_json pts = ordered_json::array();
      for (const auto& r : rep.points) {
        ordered_json p;
        p["point"] = point_json(r.point);
        p["field"] = r.field->str();
        p["index"] = r.mult;
        pts.push_back(p);
      }
      j["points"] = pts;
      j["total"] = rep.total;
      auto [tg, zi] = expected_totals(v.d, C.m);
      j["expected_total"] = invariant ? zi : tg;
      if (format == "json") {
        print_json(j);
      } else {
        for (auto it = j.begin(); it != j.end(); ++it)
          print_text_kv(it.key(), it.value().dump());
      }
      return EXIT_OK;
    }

    // analyze
    long t0 = now_ms();
    auto recs = singular_points(v, sopt);
    long t_sing = now_ms() - t0;
    bool all_split = true;
    long mu_sum = 0;
    bool have_bb = true;
    Rational bb_sum(0);
    for (const auto& r : recs) {
      mu_sum += r.milnor * r.field->degree;
      all_split = all_split && r.split;
      if (r.split && r.bb)
        bb_sum += r.bb->trace();
      else
        have_bb = false;
    }
    t0 = now_ms();
    SymmetryOutcome s = run_symmetry(v, monomial_only, sopt, max_frame_candidates);
    long t_sym = now_ms() - t0;
    t0 = now_ms();
    std::vector<AuditEntry> audit;
    if (s.group) audit = audit_group(normalize_div_free(v), *s.group, sopt);
    long t_audit = now_ms() - t0;

    ordered_json j;
    j["input"] = input;
    j["degree"] = v.d;
    j["divergence_free"] = divergence(v).is_zero();
    ordered_json sj = ordered_json::array();
    for (const auto& r : recs) sj.push_back(record_json(r));
    j["singularities"] = sj;
    ordered_json totals;
    totals["mu_sum"] = mu_sum;
    if (have_bb) totals["bb_sum"] = rat_str(bb_sum);
    j["totals"] = totals;
    j["symmetry"] = symmetry_json(s);
    j["symmetry"]["generators"] = generators_json(v);
    j["bound_audit"] = audit_json(audit);
    if (format == "json") {
      print_json(j);
    } else {
      print_text_kv("input", input);
      print_text_kv("degree", std::to_string(v.d));
      print_text_kv("divergence_free", divergence(v).is_zero() ? "true" : "false");
      print_text_kv("singular points", std::to_string(recs.size()));
      for (const auto& r : recs)
        print_text_kv("  mu=" + std::to_string(r.milnor) + " at",
                      "(" + r.point[0].str() + " : " + r.point[1].str() + " : " +
                          r.point[2].str() + ") over " + r.field->str());
      print_text_kv("mu_sum", std::to_string(mu_sum));
      if (have_bb) print_text_kv("bb_sum", rat_str(bb_sum));
      print_text_kv("symmetry status", s.status);
      if (s.group) {
        print_text_kv("order",
                      std::to_string(s.group->order) + ", type: " +
                          (s.classification ? classification_string(*s.classification) : ""));
        print_text_kv("completeness", s.group->completeness);
      }
      for (const auto& e : audit)
        print_text_kv("audit " + e.theorem,
                      e.verdict + " (bound " + std::to_string(e.bound) + ", observed " +
                          std::to_string(e.observed) + ")");
      print_text_kv("time_ms",
                    std::to_string(t_sing) + " sing, " + std::to_string(t_sym) + " sym, " +
                        std::to_string(t_audit) + " audit");
    }
    return EXIT_OK;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return EXIT_INPUT;
  } catch (const InvalidDegree& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return EXIT_INPUT;
  } catch (const DegreeTooSmall& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return EXIT_INPUT;
  } catch (const GenusOutOfRange& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return EXIT_INPUT;
  } catch (const NonIsolated& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return EXIT_INPUT;
  } catch (const ZeroForm& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return EXIT_INPUT;
  } catch (const InvariantCurve& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return EXIT_INPUT;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return EXIT_INPUT;
  } catch (const FactorizationCap& e) {
    std::cerr << "computation cap: " << e.what() << "\n";
    return EXIT_CAP;
  } catch (const SplittingFieldCap& e) {
    std::cerr << "computation cap: " << e.what() << "\n";
    return EXIT_CAP;
  } catch (const std::runtime_error& e) {
    std::cerr << "computation cap: " << e.what() << "\n";
    return EXIT_CAP;
  }
}

}  // namespace planefol
