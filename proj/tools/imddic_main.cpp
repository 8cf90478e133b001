// Command-line front end: computes point-to-point bounds, rate-region
// bounds, GDoF sweeps and OWC scenario studies, writing CSV/JSON artifacts.
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "imddic/detail/format.hpp"
#include "imddic/gdof.hpp"
#include "imddic/ic_bounds.hpp"
#include "imddic/owc_scenarios.hpp"
#include "imddic/p2p_bounds.hpp"

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

double r9(double v) { return imddic::detail::round_sig9(v); }

void write_file(const fs::path& path, const std::string& data) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::domain_error("cannot open output path: " + path.string());
  os << data;
}

json load_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::domain_error("cannot open config: " + path);
  try {
    return json::parse(is);
  } catch (const json::parse_error& e) {
    throw std::domain_error("config parse error in " + path + ": " + e.what());
  }
}

template <typename T>
T field(const json& j, const std::string& name) {
  if (!j.contains(name)) throw std::domain_error("config missing field: " + name);
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw std::domain_error("config field has wrong type: " + name);
  }
}

imddic::ChannelConfig parse_channel_config(const json& j) {
  imddic::ChannelConfig cfg;
  cfg.peak = field<double>(j, "peak");
  cfg.sigma = field<double>(j, "sigma");
  const auto alpha = field<std::vector<double>>(j, "alpha");
  if (alpha.size() != 2) throw std::domain_error("config field alpha must have 2 entries");
  cfg.alpha = {alpha[0], alpha[1]};
  const auto gains = field<std::vector<std::vector<double>>>(j, "gains");
  if (gains.size() != 2 || gains[0].size() != 2 || gains[1].size() != 2)
    throw std::domain_error("config field gains must be a 2x2 matrix");
  cfg.gains << gains[0][0], gains[0][1], gains[1][0], gains[1][1];
  cfg.validate();
  return cfg;
}

imddic::Pose parse_pose(const json& j) {
  const auto pos = field<std::vector<double>>(j, "pos");
  const auto dir = field<std::vector<double>>(j, "dir");
  if (pos.size() != 3 || dir.size() != 3)
    throw std::domain_error("pose pos/dir must have 3 entries");
  return {{pos[0], pos[1], pos[2]}, {dir[0], dir[1], dir[2]}};
}

imddic::Scenario parse_scenario(const json& j) {
  imddic::Scenario s;
  s.peak = field<double>(j, "peak");
  s.sigma = field<double>(j, "sigma");
  const auto alpha = field<std::vector<double>>(j, "alpha");
  if (alpha.size() != 2) throw std::domain_error("scenario alpha must have 2 entries");
  s.alpha = {alpha[0], alpha[1]};
  const json lam = field<json>(j, "lambertian");
  s.lambertian.half_angle_deg = field<double>(lam, "half_angle_deg");
  s.lambertian.fov_deg = field<double>(lam, "fov_deg");
  s.lambertian.area = field<double>(lam, "area");
  s.lambertian.gain = field<double>(lam, "gain");
  s.lambertian.gain_scale = lam.contains("gain_scale") ? field<double>(lam, "gain_scale") : 1.0;
  const auto txs = field<std::vector<json>>(j, "transmitters");
  const auto rxs = field<std::vector<json>>(j, "receivers");
  if (txs.size() != 2 || rxs.size() != 2)
    throw std::domain_error("scenario needs 2 transmitters and 2 receivers");
  for (int i = 0; i < 2; ++i) {
    s.transmitters[i] = parse_pose(txs[i]);
    s.receivers[i] = parse_pose(rxs[i]);
  }
  return s;
}

struct GridFlags {
  int peak_steps = 0;
  int ratio_steps = 0;
  double ratio_floor = 0.0;

  imddic::SweepGrid resolve(imddic::SweepGrid base) const {
    if (peak_steps > 0) base.peak_steps = peak_steps;
    if (ratio_steps > 0) base.ratio_steps = ratio_steps;
    if (ratio_floor > 0.0) base.ratio_floor = ratio_floor;
    base.validate();
    return base;
  }
};

void add_grid_flags(CLI::App* cmd, GridFlags& g) {
  cmd->add_option("--peak-steps", g.peak_steps, "sweep grid: peak split points");
  cmd->add_option("--ratio-steps", g.ratio_steps, "sweep grid: ratio points");
  cmd->add_option("--ratio-floor", g.ratio_floor, "sweep grid: smallest ratio");
}

int run(int argc, char** argv) {
  CLI::App app{"capacity bounds for the two-user IM/DD optical interference channel"};
  app.require_subcommand(1);
  long seed = 0;
  app.add_option("--seed", seed, "reserved; all commands are deterministic");

  // p2p
  auto* p2p = app.add_subcommand("p2p", "point-to-point capacity bounds");
  double peak_ratio = 0.0, alpha = 0.0;
  p2p->add_option("--peak-ratio", peak_ratio, "peak-to-noise ratio A/sigma")
      ->required()
      ->check(CLI::PositiveNumber);
  p2p->add_option("--alpha", alpha, "average-to-peak ratio, (0, 1]")->required();

  // region
  auto* region = app.add_subcommand("region", "rate-region bounds as vertex CSVs");
  std::string region_config, region_out;
  std::vector<std::string> bound_names{"tin", "hk", "z", "genie"};
  GridFlags region_grid;
  region->add_option("--config", region_config, "channel config JSON")->required();
  region->add_option("--bounds", bound_names, "subset of tin,hk,z,genie")->delimiter(',');
  region->add_option("--out", region_out, "output directory")->required();
  add_grid_flags(region, region_grid);

  // gdof
  auto* gdof = app.add_subcommand("gdof", "normalized sum-rate sweep versus delta");
  double g_peak_ratio = 1e5, g_alpha = 0.4, delta_min = 0.0, delta_max = 2.0;
  int steps = 81;
  std::string gdof_out;
  GridFlags gdof_grid;
  gdof->add_option("--peak-ratio", g_peak_ratio, "A/sigma")->check(CLI::PositiveNumber);
  gdof->add_option("--alpha", g_alpha, "average-to-peak ratio");
  gdof->add_option("--delta-min", delta_min, "sweep start");
  gdof->add_option("--delta-max", delta_max, "sweep end");
  gdof->add_option("--steps", steps, "number of delta points");
  gdof->add_option("--out", gdof_out, "output CSV path")->required();
  add_grid_flags(gdof, gdof_grid);

  // scenario
  auto* scenario = app.add_subcommand("scenario", "OWC application scenarios");
  std::string scen_name, scen_out;
  GridFlags scen_grid;
  scenario->add_option("name", scen_name, "onchip, indoor, or a config JSON path")
      ->required();
  scenario->add_option("--out", scen_out, "output path (CSV for sweeps, JSON for tables)")
      ->required();
  add_grid_flags(scenario, scen_grid);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  if (p2p->parsed()) {
    if (!(alpha > 0.0) || alpha > 1.0)
      throw std::domain_error("--alpha must be in (0, 1]");
    const auto b = imddic::bound_pair(peak_ratio, alpha, 1.0);
    json out;
    out["lower"] = r9(b.lower);
    out["upper"] = r9(b.upper);
    out["gap"] = r9(b.gap());
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (region->parsed()) {
    const auto cfg = parse_channel_config(load_json(region_config));
    const auto grid = region_grid.resolve(imddic::SweepGrid::dense());
    const std::set<std::string> valid{"tin", "hk", "z", "genie"};
    std::set<std::string> requested;
    for (const auto& b : bound_names) {
      if (!valid.count(b)) throw std::domain_error("unknown bound name: " + b);
      requested.insert(b);
    }
    std::vector<std::pair<std::string, imddic::RateRegion>> results;
    for (const auto& name : requested) {
      imddic::RateRegion r;
      if (name == "tin") r = imddic::tin_region(cfg, grid);
      else if (name == "hk") r = imddic::hk_region(cfg, grid);
      else if (name == "z") r = imddic::z_outer(cfg);
      else r = imddic::genie_outer(cfg);
      results.emplace_back(name, std::move(r));
    }
    for (const auto& [name, r] : results) {
      std::ostringstream os;
      imddic::write_region_csv(os, r);
      write_file(fs::path(region_out) / (name + ".csv"), os.str());
    }
    return 0;
  }

  if (gdof->parsed()) {
    if (steps < 2) throw std::domain_error("--steps must be >= 2");
    if (!(delta_min < delta_max)) throw std::domain_error("--delta-min must be < --delta-max");
    if (!(g_alpha > 0.0) || g_alpha > 1.0) throw std::domain_error("--alpha must be in (0, 1]");
    if (!(g_peak_ratio > 1.0)) throw std::domain_error("--peak-ratio must be > 1");
    const auto grid = gdof_grid.resolve(imddic::SweepGrid::dense());
    const auto points =
        imddic::gdof_sweep(g_peak_ratio, g_alpha, delta_min, delta_max, steps, grid);
    std::string out = "delta,gamma_closed,gamma_tin,gamma_hk,gamma_z,gamma_ge\n";
    for (const auto& p : points) {
      imddic::detail::append_sig9(out, p.delta);
      for (double v : {p.gamma_closed, p.gamma_tin, p.gamma_hk, p.gamma_z, p.gamma_ge}) {
        out.push_back(',');
        imddic::detail::append_sig9(out, v);
      }
      out.push_back('\n');
    }
    write_file(gdof_out, out);
    return 0;
  }

  // scenario
  imddic::Scenario s;
  std::optional<imddic::SweepRect> sweep_rect;
  int nx = 0, ny = 0;
  bool table = false;
  imddic::SweepRect room{};
  double cell = 0.0, band_left = 0.0, band_right = 0.0;
  if (scen_name == "onchip") {
    s = imddic::onchip_scenario();
    sweep_rect = imddic::onchip_sweep_rect();
    nx = ny = 61;
  } else if (scen_name == "indoor") {
    s = imddic::indoor_scenario();
    table = true;
    room = imddic::indoor_room_rect();
    cell = 0.5;
    band_left = -1.0;
    band_right = 1.0;
  } else {
    const json j = load_json(scen_name);
    s = parse_scenario(j);
    if (j.contains("sweep")) {
      const json sw = j.at("sweep");
      const auto rect = field<std::vector<double>>(sw, "rect");
      if (rect.size() != 4) throw std::domain_error("sweep rect must be [x0,y0,x1,y1]");
      sweep_rect = imddic::SweepRect{rect[0], rect[1], rect[2], rect[3]};
      nx = field<int>(sw, "nx");
      ny = field<int>(sw, "ny");
    } else if (j.contains("table")) {
      const json tb = j.at("table");
      const auto rect = field<std::vector<double>>(tb, "rect");
      if (rect.size() != 4) throw std::domain_error("table rect must be [x0,y0,x1,y1]");
      room = {rect[0], rect[1], rect[2], rect[3]};
      cell = field<double>(tb, "cell");
      const auto bands = field<std::vector<double>>(tb, "bands");
      if (bands.size() != 2) throw std::domain_error("table bands must be [left,right]");
      band_left = bands[0];
      band_right = bands[1];
      table = true;
    } else {
      throw std::domain_error("scenario config needs a sweep or table section");
    }
  }
  if (table) {
    const auto grid = scen_grid.resolve(imddic::SweepGrid::dense());
    const auto t = imddic::indoor_average_table(s, room, cell, band_left, band_right, grid);
    json out;
    for (int c = 0; c < imddic::IndoorTable::n_classes; ++c) {
      json col;
      for (int sch = 0; sch < imddic::IndoorTable::n_schemes; ++sch)
        col[imddic::IndoorTable::scheme_name(sch)] = r9(t.avg[sch][c]);
      out[imddic::IndoorTable::class_name(c)] = col;
    }
    write_file(scen_out, out.dump(2) + "\n");
  } else {
    const auto grid = scen_grid.resolve(imddic::SweepGrid::reduced());
    const imddic::SchemeSet schemes;
    const auto sweep = imddic::placement_sweep(s, *sweep_rect, nx, ny, schemes, grid);
    std::ostringstream os;
    imddic::write_sweep_csv(os, sweep, schemes);
    write_file(scen_out, os.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const imddic::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
