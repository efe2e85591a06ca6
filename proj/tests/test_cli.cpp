// End-to-end checks of the command line tool: exit codes, file layout,
// stable headers and reproducible payloads. Runs the real binary, whose
// path is injected at compile time as SUBRAD_CLI.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run(const std::string& args) {
  const std::string cmd =
      std::string("\"") + SUBRAD_CLI + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path test_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "subrad_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json slurp_json(const fs::path& path) { return json::parse(slurp(path)); }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("steady writes distribution, observables and manifest") {
  const fs::path dir = test_dir("steady");
  REQUIRE(run("steady --N 8 --w 0.2 --gamma 0.1 --out-dir " + dir.string()) ==
          0);

  const auto rows = lines_of(slurp(dir / "steady.csv"));
  REQUIRE(rows.size() > 1);
  CHECK(rows[0] == "J,M,P");
  double total = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto last_comma = rows[i].rfind(',');
    total += std::stod(rows[i].substr(last_comma + 1));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));

  const json obs = slurp_json(dir / "observables.json");
  CHECK(obs["N"] == 8);
  CHECK(obs["format_version"] == 1);
  CHECK(obs["intensity"].get<double>() > 0.0);

  const json manifest = slurp_json(dir / "manifest.json");
  CHECK(manifest["format_version"] == 1);
  CHECK(manifest["command"] == "steady");
  CHECK(manifest["params"]["N"] == 8);
  CHECK(manifest["solver"]["method"] == "direct");
  CHECK(manifest["outputs"].size() == 2);
}

TEST_CASE("steady can dump the generator triplets") {
  const fs::path dir = test_dir("steady_gen");
  REQUIRE(run("steady --N 4 --w 0.1 --gamma 0.1 --dump-generator --out-dir " +
              dir.string()) == 0);
  const auto rows = lines_of(slurp(dir / "generator.csv"));
  CHECK(rows[0] == "J_from,M_from,J_to,M_to,rate");
  CHECK(rows.size() > 10);
  const json manifest = slurp_json(dir / "manifest.json");
  CHECK(manifest["outputs"].size() == 3);
}

TEST_CASE("reruns produce byte-identical data files") {
  const fs::path a = test_dir("rerun_a");
  const fs::path b = test_dir("rerun_b");
  const std::string params = "--N 10 --w 0.25 --gamma 0.05 --out-dir ";
  REQUIRE(run("steady " + params + a.string()) == 0);
  REQUIRE(run("steady " + params + b.string()) == 0);
  CHECK(slurp(a / "steady.csv") == slurp(b / "steady.csv"));
  CHECK(slurp(a / "observables.json") == slurp(b / "observables.json"));
}

TEST_CASE("invalid input fails fast without writing files") {
  const fs::path dir = test_dir("invalid");
  CHECK(run("steady --N 7 --w 0.1 --gamma 0.1 --out-dir " +
            (dir / "odd").string()) != 0);
  CHECK_FALSE(fs::exists(dir / "odd" / "steady.csv"));
  CHECK(run("steady --no-such-flag") != 0);
  CHECK(run("") != 0);
  CHECK(run("g2 --N 4 --tau-max -1 --out-dir " + (dir / "g2").string()) != 0);
  CHECK(run("sweep --w-min 0.2 --w-max 0.1 --out-dir " +
            (dir / "sweep").string()) != 0);
}

TEST_CASE("sweep emits one deterministic row per grid point") {
  const fs::path dir = test_dir("sweep");
  REQUIRE(run("sweep --N 8 --N 4 --gamma 0.1 --w-min 0.1 --w-max 0.2 "
              "--w-step 0.1 --workers 2 --out-dir " +
              dir.string()) == 0);
  const auto rows = lines_of(slurp(dir / "sweep.csv"));
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "N,w,s_i_per_atom,intensity,inversion,boundary_mass,error");
  CHECK(rows[1].rfind("4,0.1,", 0) == 0);
  CHECK(rows[2].rfind("4,0.2,", 0) == 0);
  CHECK(rows[3].rfind("8,0.1,", 0) == 0);
  CHECK(rows[4].rfind("8,0.2,", 0) == 0);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].back() == ',');

  const json manifest = slurp_json(dir / "manifest.json");
  CHECK(manifest["rows"] == 4);
  CHECK(manifest["N"] == json::array({4, 8}));
}

TEST_CASE("sweep honours the worker env variable") {
  const fs::path dir = test_dir("sweep_env");
  const std::string cmd = std::string("SUBRAD_WORKERS=1 \"") + SUBRAD_CLI +
                          "\" sweep --N 4 --gamma 0.1 --w-min 0.1 --w-max 0.1 "
                          "--w-step 0.1 --out-dir " +
                          dir.string() + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(lines_of(slurp(dir / "sweep.csv")).size() == 2);
}

TEST_CASE("g2 writes the requested lag grid") {
  const fs::path dir = test_dir("g2");
  REQUIRE(run("g2 --N 6 --w 0.2 --gamma 0.1 --tau-max 10 --points 5 "
              "--out-dir " +
              dir.string()) == 0);
  const auto rows = lines_of(slurp(dir / "g2.csv"));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "tau,g2");
  const double expected[] = {0.0, 2.5, 5.0, 7.5, 10.0};
  for (int i = 0; i < 5; ++i) {
    const std::string& row = rows[static_cast<std::size_t>(i) + 1];
    const auto comma = row.find(',');
    CHECK(std::stod(row.substr(0, comma)) ==
          doctest::Approx(expected[i]).epsilon(1e-12));
    CHECK(std::stod(row.substr(comma + 1)) > 0.0);
  }

  const fs::path log_dir = test_dir("g2_log");
  REQUIRE(run("g2 --N 6 --w 0.2 --gamma 0.1 --tau-max 10 --points 4 "
              "--tau-log --out-dir " +
              log_dir.string()) == 0);
  const auto log_rows = lines_of(slurp(log_dir / "g2.csv"));
  REQUIRE(log_rows.size() == 5);
  CHECK(std::stod(log_rows[1]) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(std::stod(log_rows[4]) == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("traj is reproducible from its seed") {
  const fs::path a = test_dir("traj_a");
  const fs::path b = test_dir("traj_b");
  const fs::path c = test_dir("traj_c");
  const std::string params =
      "traj --N 6 --w 0.3 --gamma 0.1 --t-max 50 --window 5 --out-dir ";
  REQUIRE(run(params + a.string() + " --seed 7") == 0);
  REQUIRE(run(params + b.string() + " --seed 7") == 0);
  REQUIRE(run(params + c.string() + " --seed 8") == 0);
  CHECK(slurp(a / "events.csv") == slurp(b / "events.csv"));
  CHECK(slurp(a / "events.csv") != slurp(c / "events.csv"));

  const auto rows = lines_of(slurp(a / "events.csv"));
  CHECK(rows[0] == "t,channel,J_from,M_from,J_to,M_to");
  CHECK(rows.size() > 10);

  const json stats = slurp_json(a / "traj_stats.json");
  CHECK(stats["seed"] == 7);
  CHECK(stats["rng"] == "xoshiro256**");
  CHECK(stats["n_events"].get<long>() ==
        static_cast<long>(rows.size()) - 1);
  CHECK(stats["absorbed"] == false);
  CHECK(stats.contains("fano"));
}

TEST_CASE("analytic subcommands export the closed forms") {
  const fs::path ratios_dir = test_dir("ratios");
  REQUIRE(run("analytic ratios --j-max 3 --out-dir " + ratios_dir.string()) ==
          0);
  const json ratios = slurp_json(ratios_dir / "ratios.json");
  REQUIRE(ratios["ratios"].size() == 3);
  CHECK(ratios["ratios"][0]["exact"] == "3");
  CHECK(ratios["ratios"][1]["exact"] == "5/18");
  CHECK(ratios["ratios"][2]["exact"] == "7/75");

  const fs::path smallw_dir = test_dir("smallw");
  REQUIRE(run("analytic smallw --out-dir " + smallw_dir.string()) == 0);
  const json smallw = slurp_json(smallw_dir / "smallw.json");
  CHECK(smallw["P0"]["exact"] == "6/29");
  CHECK(smallw["P1"]["exact"] == "18/29");
  CHECK(smallw["P2"]["exact"] == "5/29");

  const fs::path boundary_dir = test_dir("boundary");
  REQUIRE(run("analytic boundary --N 100 --w 0.05 --gamma 0.1 --out-dir " +
              boundary_dir.string()) == 0);
  const json boundary = slurp_json(boundary_dir / "boundary.json");
  REQUIRE(boundary["P"].size() == 51);
  double total = 0.0;
  for (const auto& v : boundary["P"]) total += v.get<double>();
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(boundary["mean"].get<double>() > 10.0);
  CHECK(boundary["mean"].get<double>() < 25.0);

  const fs::path gaussian_dir = test_dir("gaussian");
  REQUIRE(run("analytic gaussian --N 400 --w 0.05 --gamma 0.1 --out-dir " +
              gaussian_dir.string()) == 0);
  const json gaussian = slurp_json(gaussian_dir / "gaussian.json");
  CHECK(gaussian["mu"].get<double>() == doctest::Approx(200.0 / 3));
  CHECK(gaussian["sigma2"].get<double>() == doctest::Approx(800.0 / 9));
}

TEST_CASE("options can come from a config file") {
  const fs::path dir = test_dir("config");
  const fs::path cfg = dir / "run.ini";
  {
    std::ofstream out(cfg);
    out << "[steady]\n";
    out << "N=8\n";
    out << "w=0.2\n";
    out << "gamma=0.1\n";
    out << "out-dir=" << (dir / "out").string() << "\n";
  }
  REQUIRE(run("--config " + cfg.string() + " steady") == 0);
  const json obs = slurp_json(dir / "out" / "observables.json");
  CHECK(obs["N"] == 8);
  CHECK(obs["w"] == 0.2);
}
