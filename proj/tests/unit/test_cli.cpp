#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "output.hpp"

namespace fs = std::filesystem;
using carnot::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "carnot");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("carnot_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const std::string& sub = "") const { return (path / sub).string(); }
};

bool no_temporaries(const fs::path& dir) {
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.path().string().find(".tmp.") != std::string::npos) return false;
  return true;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("shortest round-trip number format") {
    using carnot::cli::format_double;
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1e-3) == "0.001");
    CHECK(format_double(-2.0) == "-2");
    const double x = 0.1 + 0.2;
    CHECK(std::stod(format_double(x)) == x);
  }

  TEST_CASE("verify builtins and reject corrupted definitions") {
    TempDir dir("verify");
    auto r = run({"verify", "--algebra", "n4", "--output-dir", dir.str()});
    CHECK(r.code == 0);
    CHECK(r.out.find("{z, u} = w") != std::string::npos);
    CHECK(r.out.find("{v, x} = w") != std::string::npos);
    CHECK(r.out.find("{y, x} = u") != std::string::npos);
    CHECK(r.out.find("{z, y} = v") != std::string::npos);
    const auto report = nlohmann::json::parse(slurp(dir.path / "verify.json"));
    CHECK(report.at("ok") == true);
    CHECK(report.at("brackets").size() == 4);

    CHECK(run({"verify", "--algebra", "heisenberg3", "--output-dir", dir.str()}).code == 0);

    {
      std::ofstream bad(dir.path / "bad.json");
      bad << R"({"dim": 2, "names": ["A", "B"], "layers": [1, 1], "brackets": [[1, 5, "2:1"]]})";
    }
    r = run({"verify", "--algebra", dir.str("bad.json"), "--output-dir", dir.str("out")});
    CHECK(r.code == 2);
    CHECK(r.err.find("brackets[0]") != std::string::npos);
    CHECK_FALSE(fs::exists(dir.path / "out"));

    {
      std::ofstream sick(dir.path / "sick.json");
      sick << R"({"dim": 3, "names": ["A", "B", "C"], "layers": [1, 1, 1], "brackets": [[1, 2, "3:1"]]})";
    }
    CHECK(run({"verify", "--algebra", dir.str("sick.json"), "--output-dir", dir.str()}).code == 1);
  }

  TEST_CASE("centralizer modes and limits") {
    TempDir dir("centralizer");
    auto r = run({"centralizer", "--mode", "poisson", "--degree", "2", "--output-dir", dir.str()});
    CHECK(r.code == 0);
    auto report = nlohmann::json::parse(slurp(dir.path / "centralizer_poisson_d2.json"));
    CHECK(report.at("nullspace_dimension") == 5);
    CHECK(report.at("centralizer_is_minimal") == true);

    r = run({"centralizer", "--mode", "uea", "--degree", "2", "--output-dir", dir.str()});
    CHECK(r.code == 0);
    report = nlohmann::json::parse(slurp(dir.path / "commutant_uea_d2.json"));
    CHECK(report.at("nullspace_dimension") == 5);
    CHECK(report.at("commutant_is_minimal") == true);

    CHECK(run({"centralizer", "--degree", "99", "--output-dir", dir.str()}).code == 3);
    CHECK(run({"centralizer", "--mode", "magic", "--output-dir", dir.str()}).code == 2);
  }

  TEST_CASE("integrate writes CSV and sidecar; reruns are byte identical") {
    TempDir dir("integrate");
    const std::vector<std::string> args{"integrate", "--system", "full", "--algebra", "n4", "--T", "1",
                                        "--dt", "1e-2", "--lift", "--output-dir", dir.str("a")};
    REQUIRE(run(args).code == 0);
    auto args_b = args;
    args_b.back() = dir.str("b");
    REQUIRE(run(args_b).code == 0);
    const auto csv = slurp(dir.path / "a" / "trajectory.csv");
    CHECK(csv == slurp(dir.path / "b" / "trajectory.csv"));
    CHECK(csv.rfind("t,x,y,z,u,v,w,audit_H,audit_w,audit_u*v - y*w,g21,g32,g43,g31,g42,g41\n", 0) == 0);
    const auto meta = nlohmann::json::parse(slurp(dir.path / "a" / "trajectory.meta.json"));
    CHECK(meta.at("samples") == 101);
    CHECK(meta.at("max_abs_drift").at("w") == 0.0);
    CHECK(meta.at("max_abs_drift").at("H").get<double>() < 1e-12);
    CHECK(no_temporaries(dir.path));
  }

  TEST_CASE("config file sets flags and explicit flags override it") {
    TempDir dir("config");
    {
      std::ofstream cfg(dir.path / "run.json");
      cfg << R"({"system": "heisenberg", "T": 2, "dt": 0.5, "init": [1, 0], "w0": 2})";
    }
    auto r = run({"integrate", "--config", dir.str("run.json"), "--dt", "0.25", "--output-dir", dir.str()});
    REQUIRE(r.code == 0);
    const auto meta = nlohmann::json::parse(slurp(dir.path / "trajectory.meta.json"));
    CHECK(meta.at("samples") == 9);  // T = 2 from the file, dt = 0.25 from the flag
    CHECK(meta.at("system").at("w0") == 2.0);

    {
      std::ofstream broken(dir.path / "broken.json");
      broken << "{ not json";
    }
    CHECK(run({"integrate", "--config", dir.str("broken.json")}).code == 2);
  }

  TEST_CASE("numerical failures exit with 4 and leave nothing behind") {
    TempDir dir("numerics");
    auto r = run({"integrate", "--system", "yang_mills", "--init", "3,2,1,5", "--T", "1", "--dt", "0.5",
                  "--newton-max-iters", "1", "--output-dir", dir.str("out")});
    CHECK(r.code == 4);
    CHECK(r.err.find("at step") != std::string::npos);
    CHECK_FALSE(fs::exists(dir.path / "out"));
    CHECK(run({"integrate", "--system", "reduced", "--init", "1,1,1,1,1,0", "--output-dir", dir.str()}).code == 4);
    CHECK(run({"integrate", "--T", "1", "--dt", "0.3", "--output-dir", dir.str()}).code == 2);
  }

  TEST_CASE("poincare at equilibrium writes a header-only CSV") {
    TempDir dir("poincare");
    auto r = run({"poincare", "--system", "yang_mills", "--init", "0,0,0,0", "--T", "5", "--dt", "0.01",
                  "--output-dir", dir.str()});
    CHECK(r.code == 0);
    CHECK(slurp(dir.path / "section.csv") == "t,q1,q2,p1,p2\n");
  }

  TEST_CASE("lyapunov, shoot and scale-check") {
    TempDir dir("misc");
    auto r = run({"lyapunov", "--system", "heisenberg", "--horizon", "50", "--output-dir", dir.str()});
    CHECK(r.code == 0);
    const auto ly = nlohmann::json::parse(slurp(dir.path / "lyapunov.json"));
    CHECK(std::abs(ly.at("estimate").get<double>()) < 0.5);

    r = run({"shoot", "--target-from", "0.6,-0.3,0.4,0.2,-0.5,0.7", "--guess", "0.62,-0.31,0.41,0.18,-0.5,0.72",
             "--output-dir", dir.str()});
    CHECK(r.code == 0);
    const auto sh = nlohmann::json::parse(slurp(dir.path / "shoot.json"));
    CHECK(sh.at("residual_norm").get<double>() < 1e-8);

    r = run({"scale-check", "--w0", "-3", "--C", "0.4", "--samples", "200", "--output-dir", dir.str()});
    CHECK(r.code == 0);
    CHECK(r.out.find("bracket audit") != std::string::npos);
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"verify", "--help"}).code == 0);
  }
}
