#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "junta_lab/boolfn.hpp"
#include "junta_lab/cli.hpp"

using namespace junta_lab;
using Json = nlohmann::json;

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult result;
  result.code = run_cli(args, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

}  // namespace

TEST_CASE("stab subcommand") {
  const RunResult zero = run({"stab", "--g", "maj", "--k", "3", "--mu", "0", "--rho", "0,0,0"});
  CHECK(zero.code == 0);
  const Json payload = Json::parse(zero.out);
  CHECK(payload["schema"] == 1);
  CHECK(payload["kind"] == "fourier");
  CHECK(std::abs(payload["value"].get<double>()) <= 1e-12);

  const RunResult bad = run({"stab", "--g", "maj", "--k", "2", "--rho", "0,1.5"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("rho[2]") != std::string::npos);

  const RunResult closed = run({"stab", "--kind", "xor", "--mu", "0.5", "--rho", "0,1"});
  CHECK(closed.code == 0);
  CHECK(Json::parse(closed.out)["value"].get<double>() == doctest::Approx(0.25));

  const RunResult unknown = run({"stab", "--g", "frobnicate", "--k", "3", "--rho", "1,1,1"});
  CHECK(unknown.code == 2);

  const RunResult with_spec =
      run({"stab", "--g", "and", "--k", "2", "--rho", "1,0", "--spectrum"});
  CHECK(with_spec.code == 0);
  const Json sp = Json::parse(with_spec.out)["spectrum"];
  CHECK(sp["k"] == 2);
  CHECK(sp["coeffs"].size() == 4);
  CHECK(sp["coeffs"][0].get<double>() == doctest::Approx(-0.5));
}

TEST_CASE("sampled stability is byte-identical across runs") {
  const std::vector<std::string> args = {"stab", "--g",   "maj", "--k",      "3",
                                         "--mu", "0.1",   "--kind", "sampled", "--rho",
                                         "0.5,0.5,0.5",   "--samples", "20000", "--seed", "9"};
  const RunResult a = run(args);
  const RunResult b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Json payload = Json::parse(a.out);
  CHECK(payload.contains("stderr"));
}

TEST_CASE("junta subcommand emits curve rows") {
  const RunResult curve = run({"junta", "--f", "maj", "--k", "3", "--eps", "0.25"});
  CHECK(curve.code == 0);
  const Json payload = Json::parse(curve.out);
  REQUIRE(payload["rows"].size() == 4);
  CHECK(payload["rows"][1]["advantage"].get<double>() == doctest::Approx(0.5));
  CHECK(payload["rows"][1]["error"].get<double>() == doctest::Approx(0.25));
  CHECK(payload["junta_complexity"] == 1);
  // Coordinates are reported 1-based.
  CHECK(payload["rows"][1]["coords"][0] == 1);

  const RunResult row = run({"junta", "--f", "xor", "--k", "4", "--r", "3"});
  const Json single = Json::parse(row.out);
  REQUIRE(single["rows"].size() == 1);
  CHECK(std::abs(single["rows"][0]["advantage"].get<double>()) <= 1e-12);
}

TEST_CASE("compose subcommand checks") {
  const RunResult sandwich =
      run({"compose", "--g", "maj", "--k", "3", "--f", "xor", "--inner-k", "2", "--budget",
           "4", "--check", "sandwich"});
  CHECK(sandwich.code == 0);
  const Json payload = Json::parse(sandwich.out);
  CHECK(payload["bounds_ok"] == true);
  CHECK(payload.contains("alpha"));
  CHECK(payload.contains("beta"));
  CHECK(payload.contains("opt_adv"));

  const RunResult fixed =
      run({"compose", "--g", "maj", "--k", "3", "--f", "xor", "--inner-k", "3", "--budget",
           "6", "--partition", "3,3,0"});
  const Json fp = Json::parse(fixed.out);
  CHECK(fp["canonical_adv"].get<double>() == doctest::Approx(0.5));

  const RunResult xorbound =
      run({"compose", "--g", "xor", "--k", "3", "--f", "xor", "--inner-k", "3", "--budget",
           "2", "--check", "xorbound"});
  CHECK(Json::parse(xorbound.out)["xor_error_bound"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("boost subcommand") {
  const RunResult formula =
      run({"boost", "--mode", "eps-large", "--eps-small", "0.1", "--k", "20", "--lambda", "0.5"});
  CHECK(formula.code == 0);
  CHECK(Json::parse(formula.out)["eps_large"].get<double>() == doctest::Approx(0.33616));

  const RunResult params = run({"boost", "--mode", "params", "--eps", "0.0625"});
  const Json pp = Json::parse(params.out);
  CHECK(pp["k"] == 4);
  CHECK(pp["composed"]["eps_yes"].get<double>() == doctest::Approx(0.25));

  const RunResult demo = run({"boost", "--mode", "run", "--f", "dict:1", "--inner-k", "2",
                              "--k", "3", "--r", "1"});
  CHECK(demo.code == 0);
  const Json dd = Json::parse(demo.out);
  CHECK(dd["accept"] == true);
  CHECK(dd["accounting_ok"] == true);
  CHECK(dd["inner_queries"].get<long>() == 3L * (1 << 6));
}

TEST_CASE("reduce-setcover subcommand") {
  const std::string in_path = "cli_cover_instance.txt";
  {
    std::ofstream file(in_path);
    file << "2 2\n1\n2\n";
  }
  const std::string f_path = "cli_cover_f.txt";
  const std::string d_path = "cli_cover_d.txt";
  const RunResult red = run({"reduce-setcover", "--in", in_path, "--f-out", f_path,
                             "--dist-out", d_path, "--r", "2"});
  CHECK(red.code == 0);
  const Json payload = Json::parse(red.out);
  CHECK(payload["m"] == 2);
  CHECK(payload["zero_error_junta_exists"] == true);

  const TruthTable f = load_truth_table(f_path);
  CHECK(f.values[0] == -1.0);
  const Distribution dist = load_distribution(d_path);
  CHECK(dist.weights[0] == doctest::Approx(1.0 / 3));
  std::remove(in_path.c_str());
  std::remove(f_path.c_str());
  std::remove(d_path.c_str());
}

TEST_CASE("counterexample subcommand exit codes and formats") {
  const RunResult one = run({"counterexample", "1", "--k", "3", "--n", "3"});
  CHECK(one.code == 0);
  const Json payload = Json::parse(one.out);
  CHECK(payload["quantities"]["equal_split_error"].get<double>() == 0.5);
  CHECK(payload["all_pass"] == true);

  const RunResult text = run({"counterexample", "3", "--format", "text"});
  CHECK(text.code == 0);
  CHECK(text.out.find("result: pass") != std::string::npos);

  const RunResult bad = run({"counterexample", "7"});
  CHECK(bad.code == 2);
}

TEST_CASE("usage errors and help") {
  CHECK(run({}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  const RunResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("stab") != std::string::npos);
  const RunResult sub_help = run({"stab", "--help"});
  CHECK(sub_help.code == 0);
  CHECK(sub_help.out.find("--rho") != std::string::npos);
}

TEST_CASE("reports write to files") {
  const std::string path = "cli_report_out.json";
  const RunResult r = run({"stab", "--g", "and", "--k", "2", "--rho", "1,0", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream file(path);
  REQUIRE(file.good());
  const Json payload = Json::parse(file);
  CHECK(payload["value"].get<double>() == doctest::Approx(0.5));
  std::remove(path.c_str());
}
