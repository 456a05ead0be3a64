#include <catch2/catch_amalgamated.hpp>

#include "planefol/cli.hpp"

using namespace planefol;

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "planefol");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream captured;
  std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
  int code = cli_main((int)argv.size(), argv.data());
  std::cout.rdbuf(old);
  return {code, captured.str()};
}

}  // namespace

TEST_CASE("gen jouanolou round-trips") {
  CliResult r = run_cli({"gen", "jouanolou", "--degree", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "Z^2*dX + X^2*dY + Y^2*dZ\n");
  std::string text = r.out.substr(0, r.out.size() - 1);
  CHECK(parse_vector_field(text) == jouanolou(2));
  for (int d : {1, 3, 4}) {
    CliResult g = run_cli({"gen", "jouanolou", "--degree", std::to_string(d)});
    REQUIRE(g.code == 0);
    CHECK(parse_vector_field(g.out.substr(0, g.out.size() - 1)) == jouanolou(d));
  }
}

TEST_CASE("analyze end to end on the degree-2 example") {
  CliResult r = run_cli(
      {"analyze", "--expr", "Z^2*dX + X^2*dY + Y^2*dZ", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["degree"] == 2);
  CHECK(j["divergence_free"] == true);
  CHECK(j["totals"]["mu_sum"] == 7);
  CHECK(j["totals"]["bb_sum"] == "16");
  CHECK(j["symmetry"]["order"] == 21);
  CHECK(j["symmetry"]["classification"] == "C2(n=7,k=7,s=5)");
  CHECK(j["symmetry"]["completeness"] == "complete");
  for (const auto& e : j["bound_audit"]) CHECK(e["verdict"] != "fail");
  // byte-identical determinism
  CliResult r2 = run_cli(
      {"analyze", "--expr", "Z^2*dX + X^2*dY + Y^2*dZ", "--format", "json"});
  CHECK(r.out == r2.out);
}

TEST_CASE("analyze text format shows the classification") {
  CliResult r = run_cli({"analyze", "--expr", "Z^2*dX + X^2*dY + Y^2*dZ", "--format", "text"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("order: 21, type: C2(n=7,k=7,s=5)") != std::string::npos);
}

TEST_CASE("bounds subcommand") {
  CHECK(run_cli({"bounds", "--degree", "2"}).code == 2);
  CliResult r = run_cli({"bounds", "--degree", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["bdp2"] == 39);
  CHECK(j["p2A"] == 16);
  CHECK(j["p2A_abelian"] == 8);
  CHECK(j["psref_max"] == 4);
}

TEST_CASE("ruled subcommand") {
  CliResult r = run_cli({"ruled", "--a", "1", "--b", "2", "--e", "1", "--g", "1",
                         "--scenario", "all_sing_on_invariant_fibers", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["c2"] == 6);
  CHECK(j["nf2"] == 9);
  CHECK(j["tang_fiber"] == 1);
  CHECK(j["z_fiber"] == 3);
  CHECK(j["bounds"]["bound"] == 24);
  CHECK(run_cli({"ruled", "--a", "1", "--b", "2", "--e", "1", "--g", "0", "--scenario",
                 "sing_on_transverse_fiber"})
            .code == 2);
}

TEST_CASE("indices subcommand") {
  CliResult r = run_cli({"indices", "--expr", "Z^2*dX + X^2*dY + Y^2*dZ", "--curve", "Z",
                         "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["invariant"] == false);
  CHECK(j["index"] == "tang");
  CHECK(j["total"] == 2);
  CHECK(j["expected_total"] == 2);
}

TEST_CASE("input and cap error exit codes") {
  CHECK(run_cli({"analyze", "--expr", "Z^2*dX"}).code == 2);       // non-isolated scheme
  CHECK(run_cli({"analyze", "--expr", "not a field"}).code == 2);  // parse error
  CHECK(run_cli({"analyze"}).code == 2);                           // missing input
  // a low splitting-field cap fails loudly
  CliResult capped = run_cli({"symmetry", "--expr", "Z^2*dX + X^2*dY + Y^2*dZ",
                              "--max-field-degree", "4"});
  CHECK(capped.code == 3);
}

TEST_CASE("empty singularity list renders as an empty array") {
  nlohmann::ordered_json j;
  j["singularities"] = nlohmann::ordered_json::array();
  CHECK(j.dump() == "{\"singularities\":[]}");
}

TEST_CASE("monomial-only flag") {
  CliResult r = run_cli({"symmetry", "--expr", "Z^2*dX + X^2*dY + Y^2*dZ", "--monomial-only",
                         "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["symmetry"]["order"] == 21);
  CHECK(j["symmetry"]["completeness"] == "monomial_only");
}
