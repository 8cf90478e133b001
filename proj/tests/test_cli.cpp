// Drives the CLI binary end to end: flag validation, exit codes, artifact
// formats and determinism. argv[1] is the binary path.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string g_cli;
fs::path g_dir;

int run_cli(const std::string& args) {
  const std::string cmd = "\"" + g_cli + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string run_cli_stdout(const std::string& args) {
  const fs::path tmp = g_dir / "stdout.txt";
  const std::string cmd = "\"" + g_cli + "\" " + args + " > \"" + tmp.string() + "\" 2>/dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  std::ifstream is(tmp);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream os(p, std::ios::binary);
  os << s;
}

std::vector<std::vector<double>> parse_csv(const std::string& text, size_t cols) {
  std::vector<std::vector<double>> rows;
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);  // header
  while (std::getline(is, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell.empty() ? NAN : std::stod(cell));
    while (row.size() < cols) row.push_back(NAN);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("p2p command") {
  const std::string out = run_cli_stdout("p2p --peak-ratio 1 --alpha 0.5");
  const json j = json::parse(out);
  CHECK(j.at("upper").get<double>() == doctest::Approx(0.493019674).epsilon(1e-6));
  CHECK(j.at("lower").get<double>() == doctest::Approx(0.0410446).epsilon(1e-5));
  CHECK(j.at("gap").get<double>() ==
        doctest::Approx(j.at("upper").get<double>() - j.at("lower").get<double>())
            .epsilon(1e-7));

  CHECK(run_cli("p2p --peak-ratio 0 --alpha 0.5") == 2);
  CHECK(run_cli("p2p --peak-ratio 10 --alpha 1.5") == 2);
  CHECK(run_cli("p2p --peak-ratio 10") == 2);

  const json hi = json::parse(run_cli_stdout("p2p --peak-ratio 1e6 --alpha 0.3"));
  CHECK(hi.at("gap").get<double>() < 0.05);
}

TEST_CASE("region command") {
  const fs::path cfg_path = g_dir / "cfg.json";
  spit(cfg_path,
       R"({"peak":1000,"sigma":1,"alpha":[0.4,0.4],"gains":[[1,0.6],[0.6,1]]})");
  const fs::path out = g_dir / "regions";
  const std::string grid_flags = " --peak-steps 9 --ratio-steps 5";
  REQUIRE(run_cli("region --config \"" + cfg_path.string() + "\" --out \"" +
                  out.string() + "\"" + grid_flags) == 0);
  for (const char* name : {"tin", "hk", "z", "genie"})
    CHECK(fs::exists(out / (std::string(name) + ".csv")));

  auto max_sum = [&](const char* name) {
    const auto rows = parse_csv(slurp(out / (std::string(name) + ".csv")), 2);
    double best = 0.0;
    for (const auto& r : rows) best = std::max(best, r[0] + r[1]);
    return best;
  };
  CHECK(max_sum("hk") > max_sum("tin"));           // moderate interference
  CHECK(max_sum("z") >= max_sum("hk") - 1e-9);
  CHECK(max_sum("genie") >= max_sum("tin") - 1e-9);

  // nearly interference-free: the two inner bounds coincide
  const fs::path weak_cfg = g_dir / "weak.json";
  spit(weak_cfg,
       R"({"peak":1000,"sigma":1,"alpha":[0.4,0.4],"gains":[[1,0.01],[0.01,1]]})");
  const fs::path weak_out = g_dir / "weak";
  REQUIRE(run_cli("region --config \"" + weak_cfg.string() + "\" --out \"" +
                  weak_out.string() + "\" --bounds tin,hk" + grid_flags) == 0);
  auto weak_sum = [&](const char* name) {
    const auto rows = parse_csv(slurp(weak_out / (std::string(name) + ".csv")), 2);
    double best = 0.0;
    for (const auto& r : rows) best = std::max(best, r[0] + r[1]);
    return best;
  };
  CHECK(std::abs(weak_sum("hk") - weak_sum("tin")) < 0.05);
  CHECK_FALSE(fs::exists(weak_out / "z.csv"));

  CHECK(run_cli("region --config \"" + cfg_path.string() +
                "\" --out \"" + out.string() + "\" --bounds nope") == 2);
  CHECK(run_cli("region --config /does/not/exist.json --out \"" + out.string() + "\"") == 2);
  const fs::path bad_cfg = g_dir / "bad.json";
  spit(bad_cfg, R"({"peak":1000,"sigma":1,"alpha":[0.4,0.4]})");
  CHECK(run_cli("region --config \"" + bad_cfg.string() + "\" --out \"" +
                out.string() + "\"") == 2);
}

TEST_CASE("gdof command") {
  const fs::path out = g_dir / "gdof.csv";
  CHECK(run_cli("gdof --steps 1 --out \"" + out.string() + "\"") == 2);
  CHECK(run_cli("gdof --delta-min 2 --delta-max 1 --out \"" + out.string() + "\"") == 2);

  REQUIRE(run_cli("gdof --peak-ratio 1000 --alpha 0.4 --delta-min 0.2 --delta-max 1.8 "
                  "--steps 3 --peak-steps 9 --ratio-steps 5 --out \"" +
                  out.string() + "\"") == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("delta,gamma_closed,gamma_tin,gamma_hk,gamma_z,gamma_ge\n", 0) == 0);
  const auto rows = parse_csv(text, 6);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(std::max(r[2], r[3]) <= std::min(r[4], r[5]) + 1e-6);
    CHECK(r[1] == doctest::Approx(std::min(
                      std::max(1.0 - r[0], r[0]),
                      std::min(std::max(1.0 - r[0] / 2.0, r[0] / 2.0), 1.0))));
  }
}

TEST_CASE("scenario command") {
  // custom sweep config
  const fs::path cfg = g_dir / "scen.json";
  spit(cfg, R"({
    "units": "cm", "peak": 1000, "sigma": 1, "alpha": [0.5, 0.5],
    "lambertian": {"half_angle_deg": 60, "fov_deg": 70, "area": 0.1, "gain": 1, "gain_scale": 1},
    "transmitters": [{"pos": [1.5,0,0], "dir": [0,1,0]}, {"pos": [4.5,0,0], "dir": [0,1,0]}],
    "receivers": [{"pos": [0,2,0], "dir": [0,-1,0]}, {"pos": [4,4,0], "dir": [0,-1,0]}],
    "sweep": {"rect": [3, 1, 5, 3], "nx": 5, "ny": 5}
  })");
  const fs::path out = g_dir / "sweep.csv";
  REQUIRE(run_cli("scenario \"" + cfg.string() + "\" --out \"" + out.string() +
                  "\" --peak-steps 5 --ratio-steps 3") == 0);
  const auto rows = parse_csv(slurp(out), 5);
  REQUIRE(rows.size() == 25);
  for (const auto& r : rows)
    if (!std::isnan(r[4]) && !std::isnan(r[3])) CHECK(r[4] >= r[3] - 1e-9);

  // custom table config (coarse indoor)
  const fs::path tab_cfg = g_dir / "table.json";
  spit(tab_cfg, R"({
    "units": "m", "peak": 1000, "sigma": 1, "alpha": [0.5, 0.5],
    "lambertian": {"half_angle_deg": 60, "fov_deg": 70, "area": 10, "gain": 1, "gain_scale": 1},
    "transmitters": [{"pos": [-2,0,3], "dir": [0,0,-1]}, {"pos": [2,0,3], "dir": [0,0,-1]}],
    "receivers": [{"pos": [-2,1,0.8], "dir": [0,0,1]}, {"pos": [2,0,0.8], "dir": [0,0,1]}],
    "table": {"rect": [-4,-2.5,4,2.5], "cell": 1.0, "bands": [-1, 1]}
  })");
  const fs::path tab_out = g_dir / "table.json.out";
  REQUIRE(run_cli("scenario \"" + tab_cfg.string() + "\" --out \"" + tab_out.string() +
                  "\" --peak-steps 5 --ratio-steps 3") == 0);
  const json t = json::parse(slurp(tab_out));
  for (const char* cls : {"left_right", "mixed", "middle_middle"}) {
    const auto& col = t.at(cls);
    CHECK(col.at("hk").get<double>() >= col.at("tin").get<double>() - 1e-9);
    CHECK(col.at("tin").get<double>() >= col.at("tdma").get<double>() - 1e-9);
  }

  CHECK(run_cli("scenario onchip") == 2);  // missing --out
  CHECK(run_cli("scenario /nope.json --out \"" + out.string() + "\"") == 2);
}

TEST_CASE("gdof output is byte-stable") {
  const fs::path a = g_dir / "a.csv";
  const fs::path b = g_dir / "b.csv";
  const std::string args =
      "gdof --peak-ratio 1000 --alpha 0.4 --delta-min 0.3 --delta-max 1.7 --steps 3 "
      "--peak-steps 5 --ratio-steps 3 --out ";
  REQUIRE(run_cli(args + "\"" + a.string() + "\"") == 0);
  REQUIRE(run_cli(args + "\"" + b.string() + "\"") == 0);
  CHECK(slurp(a) == slurp(b));
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <cli-binary>\n");
    return 1;
  }
  g_cli = argv[1];
  g_dir = fs::temp_directory_path() / "imddic_cli_test";
  fs::create_directories(g_dir);
  doctest::Context ctx;
  ctx.applyCommandLine(1, argv);
  const int rc = ctx.run();
  fs::remove_all(g_dir);
  return rc;
}
