#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "lipfree/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "lipfree");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = lipfree::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  auto path = fs::temp_directory_path() / ("lipfree_cli_" + name);
  std::ofstream(path) << body;
  return path.string();
}

const std::string kTwoDeltas =
    R"({"space": {"dim": 1, "norm": "l2"}, "terms": [{"a": "1", "x": ["1"]}, {"a": "1", "x": ["-1"]}]})";
const std::string kKernel =
    R"({"space": {"dim": 1, "norm": "l2"}, "terms": [{"a": "2", "x": ["1"]}, {"a": "-1", "x": ["2"]}]})";

}  // namespace

TEST_CASE("norm") {
  auto file = write_temp("two.json", kTwoDeltas);
  auto r = run({"norm", file, "--exact"});
  REQUIRE(r.code == 0);
  auto j = r.report();
  CHECK(j["value"] == "2");
  CHECK(j["primal_value"] == "2");
  CHECK(j["gap"] == "0");
  CHECK(j["mode"] == "exact");
  CHECK(j["input"]["terms"].size() == 2);
  auto f = run({"norm", file, "--float"});
  REQUIRE(f.code == 0);
  CHECK(f.report()["value"].get<double>() == doctest::Approx(2));
}

TEST_CASE("beta, pair and phi") {
  auto file = write_temp("kernel.json", kKernel);
  auto b = run({"beta", file, "--exact"});
  REQUIRE(b.code == 0);
  CHECK(b.report()["beta"][0] == "0");
  CHECK(b.report()["is_kernel"] == true);

  auto p = run({"pair", "x0*x0", file, "--exact"});
  REQUIRE(p.code == 0);
  CHECK(p.report()["pairing"][0] == "-2");

  auto plots = fs::temp_directory_path() / "lipfree_cli_plots";
  fs::remove_all(plots);
  auto phi = run({"phi", file, "--plot-data", plots.string()});
  REQUIRE(phi.code == 0);
  auto j = phi.report();
  CHECK(j["l1_norm"] == "2");
  CHECK(j["integral"] == "0");
  CHECK(j["step"]["values"] == json::array({"1", "-1"}));
  CHECK(fs::exists(plots / "phi.dat"));
}

TEST_CASE("lintest") {
  auto lin = run({"lintest", "5*x0"});
  CHECK(lin.code == 0);
  CHECK(lin.report()["is_linear"] == true);
  auto a = run({"lintest", "abs(x0)", "--exact", "--seed", "3"});
  CHECK(a.code == 1);
  auto j = a.report();
  CHECK(j["is_linear"] == false);
  CHECK(j["witness"]["terms"].size() >= 2);
  auto s = run({"lintest", "x0 + sin(x0)", "--box", "-3,3", "--tol", "1e-6"});
  CHECK(s.code == 1);
}

TEST_CASE("quotient") {
  auto r = run({"quotient", "abs(x0)", "--sample", "-1;1", "--exact"});
  REQUIRE(r.code == 0);
  auto j = r.report();
  CHECK(j["origin_added"] == true);
  CHECK(j["primal"]["value"] == "1");
  CHECK(j["dual"]["value"] == "1");
  CHECK(j["oracle_1d"] == "1");
  auto two = run({"quotient", "max(x0, x1)", "--sample", "0,0;1,0;0,1;1,1", "--domain-norm", "linf", "--exact"});
  REQUIRE(two.code == 0);
  CHECK(two.report()["gap"] == "0");
  CHECK(two.report()["origin_added"] == false);
}

TEST_CASE("project") {
  auto plots = fs::temp_directory_path() / "lipfree_cli_project";
  fs::remove_all(plots);
  auto r = run({"project", "2*x0 + sin(x0)", "--plot-data", plots.string()});
  REQUIRE(r.code == 0);
  auto j = r.report();
  CHECK(j["T"][0][0].get<double>() == doctest::Approx(2).epsilon(1e-3));
  CHECK(j["bound"]["lower_ok"] == true);
  CHECK(j["bound"]["upper_ok"] == true);
  CHECK(j["admissible"] == true);
  CHECK(fs::exists(plots / "column_0.dat"));
}

TEST_CASE("verify") {
  auto r = run({"verify", "--suite", "s6", "--exact"});
  CHECK(r.code == 0);
  CHECK(r.report()["passed"] == true);
}

TEST_CASE("usage and input errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"norm"}).code == 2);
  CHECK(run({"lintest", "x0", "--exact", "--float"}).code == 2);
  CHECK(run({"verify", "--suite", "s9"}).code == 2);
  auto missing = run({"norm", "/no/such/molecule.json"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("error:") != std::string::npos);
  auto bad = write_temp("bad.json", "{\"space\": ");
  CHECK(run({"norm", bad}).code == 2);
  CHECK(run({"lintest", "x0 + 1"}).code == 2);
  CHECK(run({"quotient", "x0; x0", "--sample", "0;1", "--codomain-norm", "l2"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("mode from the environment") {
  auto file = write_temp("two_env.json", kTwoDeltas);
  ::setenv("LIPFREE_MODE", "exact", 1);
  auto e = run({"norm", file});
  ::unsetenv("LIPFREE_MODE");
  REQUIRE(e.code == 0);
  CHECK(e.report()["mode"] == "exact");
  CHECK(e.report()["value"] == "2");
  auto d = run({"norm", file});
  CHECK(d.report()["mode"] == "float");
}
