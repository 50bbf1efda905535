#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "splitlab/cli.hpp"
#include "splitlab/scheme_io.hpp"

using namespace splitlab;

namespace {

const std::filesystem::path kData = SPLITLAB_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return (kData / name).string(); }

std::filesystem::path scratch(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / "splitlab_cli_test" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("analyze leapfrog") {
  const auto r = run({"analyze", data("leapfrog.json")});
  REQUIRE(r.code == cli::kExitOk);
  const auto j = io::Json::parse(r.out);
  CHECK(j["delta_g"] == "1");
  CHECK(j["coefficients"]["e_TTV"] == "1/12");
  CHECK(j["theorem"]["degenerate"] == true);
  CHECK(j["theorem"]["bound_rhs"] == "1/24");
  CHECK(j["theorem"]["gap"] == "0");
  CHECK(j["theorem"]["forced_coefficient"] == "1/12");
}

TEST_CASE("analyze 4D in both modes") {
  const auto r = run({"analyze", data("4d.json")});
  REQUIRE(r.code == 0);
  const auto j = io::Json::parse(r.out);
  CHECK(j["coefficients"]["e_VTV"] == "0");
  CHECK(j["coefficients_tv_only"]["e_VTV"] == "-1/192");
  CHECK(j["theorem"]["gap"] == "0");
  CHECK(j["corollary"]["equality"] == true);

  const auto f = run({"--mode", "float", "analyze", data("4d.json")});
  REQUIRE(f.code == 0);
  const auto jf = io::Json::parse(f.out);
  CHECK(jf["coefficients_tv_only"]["e_VTV"].get<double>() == doctest::Approx(-1.0 / 192));

  const auto t = run({"analyze", data("4d.json"), "--format", "table"});
  CHECK(t.out.find("theorem.gap") != std::string::npos);
}

TEST_CASE("analyze of a non-admissible scheme explains why") {
  const auto r = run({"analyze", data("4d_variant.json")});
  REQUIRE(r.code == 0);
  const auto j = io::Json::parse(r.out);
  CHECK(j["theorem"]["applicable"] == false);
  CHECK(j["coefficients"]["e_VTV"] == "-5/96");
}

TEST_CASE("malformed input exits with a usage error") {
  const auto r = run({"analyze", data("malformed.json")});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("ParseError") != std::string::npos);
  CHECK(run({"analyze", data("missing.json")}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
}

TEST_CASE("synth zero-dg alpha 0") {
  const auto r = run({"--mode", "float", "synth", "--family", "zero-dg", "--alpha", "0", "--prune"});
  REQUIRE(r.code == 0);
  const auto s = io::parse_scheme(r.out);
  REQUIRE(s.size() == 4);
  CHECK(s.t()[1] == doctest::Approx(1.3512071919596578));
}

TEST_CASE("synth gradient-position writes a file") {
  const auto dir = scratch("synth");
  const auto path = (dir / "pos.json").string();
  const auto r = run({"--mode", "float", "synth", "--family", "gradient-position", "--v",
                      "0,1/3,1/3,1/3", "--out", path});
  REQUIRE(r.code == 0);
  const auto s = io::read_scheme(path);
  CHECK(s.kind() == Kind::position);
  CHECK(s.t()[1] == doctest::Approx(1 / (2 * std::sqrt(2.0))));
  CHECK(!s.gradient().empty());
}

TEST_CASE("synth exact gradient-velocity") {
  const auto r = run({"synth", "--family", "gradient-velocity", "--t", "0,1/3,1/3,1/3"});
  REQUIRE(r.code == 0);
  const auto s = io::parse_scheme_exact(r.out);
  CHECK(s.v()[0] == Rational(1, 8));
  CHECK(s.gradient_total() == Rational(1, 192));
}

TEST_CASE("synth failures") {
  const auto singular = run({"--mode", "float", "synth", "--family", "zero-dg", "--alpha", "-1"});
  CHECK(singular.code == cli::kExitUsage);
  CHECK(singular.err.find("SingularAlpha") != std::string::npos);
  const auto asym = run({"synth", "--family", "stationary-velocity", "--t", "0,1/5,3/10,1/2"});
  CHECK(asym.code == cli::kExitUsage);
  CHECK(asym.err.find("NotSymmetric") != std::string::npos);
  const auto warned = run({"synth", "--family", "stationary-velocity", "--t", "0,1/5,3/10,1/2",
                           "--allow-asymmetric"});
  CHECK(warned.code == 0);
  CHECK(warned.err.find("warning") != std::string::npos);
  CHECK(run({"synth", "--family", "nope"}).code == cli::kExitUsage);
}

TEST_CASE("verify") {
  const auto ok = run({"verify", data("4d.json"), "--order", "4"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);

  const auto bad = run({"verify", data("4d_corrupted.json")});
  CHECK(bad.code == cli::kExitFailed);
  CHECK(bad.out.find("FAIL normalization") != std::string::npos);

  const auto tv = run({"verify", data("4d_tv_only.json"), "--order", "4"});
  CHECK(tv.code == cli::kExitFailed);

  const auto dir = scratch("verify");
  const auto fr = (dir / "fr.json").string();
  REQUIRE(run({"--mode", "float", "synth", "--family", "forest-ruth", "--out", fr}).code == 0);
  const auto f = run({"verify", fr, "--float", "--order", "4", "--format", "json"});
  CHECK(f.code == 0);
  CHECK(io::Json::parse(f.out)["pass"] == true);
  // Read exactly, the shortest decimals are off by ~1e-16 and normalization fails.
  const auto exact = run({"verify", fr});
  CHECK(exact.code == cli::kExitFailed);
  CHECK(exact.out.find("FAIL normalization") != std::string::npos);
}

TEST_CASE("converge") {
  const auto r = run({"--mode", "float", "converge", data("leapfrog.json"), "--system", "harmonic",
                      "--h0", "0.1", "--levels", "4", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = io::Json::parse(r.out);
  CHECK(j["slope"].get<double>() == doctest::Approx(2.0).epsilon(0.05));

  const auto csv = run({"--mode", "float", "converge", data("4d.json"), "--system", "kepler",
                        "--levels", "3", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("h,error,energy_drift\n", 0) == 0);

  CHECK(run({"converge", data("leapfrog.json"), "--system", "duffing"}).code == cli::kExitUsage);
}

TEST_CASE("sweep") {
  const auto dir = scratch("sweep");
  const auto r = run({"sweep", "--family", "zero-dg", "--param", "alpha", "--from", "0", "--to", "2",
                      "--step", "0.25", "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  int schemes = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() == ".json") ++schemes;
  }
  CHECK(schemes == 9);
  const auto summary = io::read_file(dir / "summary.csv");
  CHECK(summary.rfind("alpha,status,t3,t4,delta_g,e_TV,e_TTV,e_VTV,forward\n", 0) == 0);
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 10);

  CHECK(run({"sweep", "--family", "zero-dg", "--from", "2", "--to", "0", "--step", "0.5",
             "--out-dir", dir.string()})
            .code == cli::kExitUsage);
}

TEST_CASE("sweep records singular grid points") {
  const auto dir = scratch("sweep_singular");
  const auto r = run({"sweep", "--family", "zero-dg", "--from", "-1", "--to", "0", "--step", "0.5",
                      "--out-dir", dir.string(), "--converge"});
  CHECK(r.code == 0);
  const auto summary = io::read_file(dir / "summary.csv");
  CHECK(summary.find("SingularAlpha") != std::string::npos);
  CHECK(summary.find(",slope\n") != std::string::npos);
}

TEST_CASE("sampling is deterministic per seed") {
  const auto a = run({"sample", "--part", "A", "--count", "200", "--seed", "5"});
  const auto b = run({"sample", "--part", "A", "--count", "200", "--seed", "5"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto c = run({"sample", "--part", "B", "--count", "200", "--seed", "6"});
  CHECK(c.code == 0);
  CHECK(io::Json::parse(c.out)["violations"] == 0);
  CHECK(run({"analyze", data("4d.json")}).out == run({"analyze", data("4d.json")}).out);
}
