#include "imddic/owc_scenarios.hpp"

#include <cmath>
#include <limits>

#include "imddic/detail/format.hpp"
#include "imddic/p2p_bounds.hpp"

namespace imddic {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double deg2rad(double d) { return d * M_PI / 180.0; }

void check_unit(const Eigen::Vector3d& dir) {
  if (std::abs(dir.norm() - 1.0) > 1e-9)
    throw std::domain_error("Pose: direction must be a unit vector");
}

struct CellRates {
  double tdma = kNan, tin = kNan, hk = kNan;
};

// Sum-rates for an arbitrary placement. A user whose direct gain is exactly
// zero is silenced (zero rate, no interference); a receiver coincident with
// a transmitter cannot be evaluated and yields NaNs.
CellRates evaluate_placement(const Scenario& s, const SchemeSet& schemes,
                             const SweepGrid& grid) {
  Eigen::Matrix2d h;
  try {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        h(i, j) = channel_gain(s.transmitters[i], s.receivers[j], s.lambertian);
  } catch (const std::domain_error&) {
    return {};
  }
  CellRates r;
  const bool live1 = h(0, 0) > 0.0;
  const bool live2 = h(1, 1) > 0.0;
  if (!live1 && !live2) {
    if (schemes.tdma) r.tdma = 0.0;
    if (schemes.tin) r.tin = 0.0;
    if (schemes.hk) r.hk = 0.0;
    return r;
  }
  if (live1 != live2) {
    const int i = live1 ? 0 : 1;
    const double c = capacity_lower(h(i, i) * s.peak, s.alpha[i], s.sigma);
    if (schemes.tdma) r.tdma = 0.5 * c;
    if (schemes.tin) r.tin = c;
    if (schemes.hk) r.hk = c;
    return r;
  }
  ChannelConfig cfg;
  cfg.peak = s.peak;
  cfg.sigma = s.sigma;
  cfg.alpha = s.alpha;
  cfg.gains = h;
  if (schemes.tdma) r.tdma = tdma_sum_rate(cfg);
  if (schemes.tin) r.tin = tin_sum_rate(cfg, grid);
  if (schemes.hk) r.hk = hk_sum_rate(cfg, grid);
  return r;
}

}  // namespace

double LambertianParams::order() const { return lambert_order(half_angle_deg); }

void LambertianParams::validate() const {
  (void)order();
  if (!(fov_deg > 0.0) || fov_deg > 90.0)
    throw std::domain_error("LambertianParams: fov must be in (0, 90] degrees");
  if (!(area > 0.0) || !(gain > 0.0) || !(gain_scale > 0.0))
    throw std::domain_error("LambertianParams: area, gain and gain_scale must be > 0");
}

void Scenario::validate() const {
  lambertian.validate();
  for (const auto& pose : {transmitters[0], transmitters[1], receivers[0], receivers[1]})
    check_unit(pose.direction);
  if (!(peak > 0.0)) throw std::domain_error("Scenario: peak must be > 0");
  if (!(sigma > 0.0)) throw std::domain_error("Scenario: sigma must be > 0");
  for (int i = 0; i < 2; ++i)
    if (!(alpha[i] > 0.0) || alpha[i] > 1.0)
      throw std::domain_error("Scenario: alpha must be in (0, 1]");
}

double lambert_order(double half_angle_deg) {
  if (!(half_angle_deg > 0.0) || !(half_angle_deg < 90.0))
    throw std::domain_error("lambert_order: half angle must be in (0, 90) degrees");
  return -M_LN2 / std::log(std::cos(deg2rad(half_angle_deg)));
}

double channel_gain(const Pose& tx, const Pose& rx, const LambertianParams& p) {
  check_unit(tx.direction);
  check_unit(rx.direction);
  p.validate();
  const Eigen::Vector3d v = rx.position - tx.position;
  const double d2 = v.squaredNorm();
  if (d2 == 0.0) throw std::domain_error("channel_gain: coincident positions");
  const double d = std::sqrt(d2);
  const double cos_emit = tx.direction.dot(v) / d;
  const double cos_recv = -rx.direction.dot(v) / d;
  if (cos_emit <= 0.0 || cos_recv <= 0.0) return 0.0;
  if (cos_recv <= std::cos(deg2rad(p.fov_deg))) return 0.0;  // psi >= FOV
  const double m = p.order();
  return p.gain_scale * (m + 1.0) * p.gain * p.area / (2.0 * M_PI * d2) *
         std::pow(cos_emit, m) * cos_recv;
}

ChannelConfig scenario_config(const Scenario& s) {
  s.validate();
  ChannelConfig cfg;
  cfg.peak = s.peak;
  cfg.sigma = s.sigma;
  cfg.alpha = s.alpha;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      cfg.gains(i, j) = channel_gain(s.transmitters[i], s.receivers[j], s.lambertian);
  if (!(cfg.gains(0, 0) > 0.0) || !(cfg.gains(1, 1) > 0.0))
    throw scenario_rejected("scenario_config: zero direct gain");
  return cfg;
}

PlacementSweep placement_sweep(const Scenario& s, const SweepRect& area, int nx,
                               int ny, const SchemeSet& schemes,
                               const SweepGrid& grid) {
  s.validate();
  grid.validate();
  if (nx < 2 || ny < 2)
    throw std::domain_error("placement_sweep: nx and ny must be >= 2");
  PlacementSweep out;
  out.xs.resize(nx);
  out.ys.resize(ny);
  for (int i = 0; i < nx; ++i) out.xs[i] = area.x0 + (area.x1 - area.x0) * i / (nx - 1);
  for (int j = 0; j < ny; ++j) out.ys[j] = area.y0 + (area.y1 - area.y0) * j / (ny - 1);
  const size_t n = static_cast<size_t>(nx) * ny;
  if (schemes.tdma) out.tdma.assign(n, kNan);
  if (schemes.tin) out.tin.assign(n, kNan);
  if (schemes.hk) out.hk.assign(n, kNan);
  Scenario placed = s;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      placed.receivers[1].position.x() = out.xs[i];
      placed.receivers[1].position.y() = out.ys[j];
      const CellRates r = evaluate_placement(placed, schemes, grid);
      const size_t idx = static_cast<size_t>(j) * nx + i;
      if (schemes.tdma) out.tdma[idx] = r.tdma;
      if (schemes.tin) out.tin[idx] = r.tin;
      if (schemes.hk) out.hk[idx] = r.hk;
    }
  }
  return out;
}

void write_sweep_csv(std::ostream& os, const PlacementSweep& sweep,
                     const SchemeSet& schemes) {
  std::string out = "x,y,tdma,tin,hk\n";
  const int nx = static_cast<int>(sweep.xs.size());
  const int ny = static_cast<int>(sweep.ys.size());
  auto cell = [&](const std::vector<double>& g, bool on, size_t idx) {
    out.push_back(',');
    if (on && !std::isnan(g[idx])) detail::append_sig9(out, g[idx]);
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const size_t idx = static_cast<size_t>(j) * nx + i;
      detail::append_sig9(out, sweep.xs[i]);
      out.push_back(',');
      detail::append_sig9(out, sweep.ys[j]);
      cell(sweep.tdma, schemes.tdma, idx);
      cell(sweep.tin, schemes.tin, idx);
      cell(sweep.hk, schemes.hk, idx);
      out.push_back('\n');
    }
  }
  os << out;
}

const char* IndoorTable::scheme_name(int s) {
  static const char* names[] = {"tdma", "tin", "hk"};
  return names[s];
}

const char* IndoorTable::class_name(int c) {
  static const char* names[] = {"left_right", "mixed", "middle_middle"};
  return names[c];
}

IndoorTable indoor_average_table(const Scenario& s, const SweepRect& room,
                                 double cell, double band_left,
                                 double band_right, const SweepGrid& grid) {
  s.validate();
  grid.validate();
  if (!(cell > 0.0)) throw std::domain_error("indoor_average_table: cell must be > 0");
  if (!(band_left < band_right))
    throw std::domain_error("indoor_average_table: bands must be ordered");
  const int nx = static_cast<int>(std::lround((room.x1 - room.x0) / cell));
  const int ny = static_cast<int>(std::lround((room.y1 - room.y0) / cell));
  if (nx < 1 || ny < 1) throw std::domain_error("indoor_average_table: empty room");
  std::vector<Eigen::Vector2d> left, middle, right;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const double x = room.x0 + (i + 0.5) * cell;
      const double y = room.y0 + (j + 0.5) * cell;
      if (x < band_left)
        left.emplace_back(x, y);
      else if (x > band_right)
        right.emplace_back(x, y);
      else
        middle.emplace_back(x, y);
    }
  }
  if (left.empty() || middle.empty() || right.empty())
    throw std::domain_error("indoor_average_table: empty band");

  IndoorTable table;
  const SchemeSet all;
  Scenario placed = s;
  auto accumulate = [&](const std::vector<Eigen::Vector2d>& rx1_cells,
                        const std::vector<Eigen::Vector2d>& rx2_cells, int cls,
                        double sums[3][IndoorTable::n_classes], long counts[]) {
    for (const auto& c1 : rx1_cells) {
      placed.receivers[0].position.x() = c1.x();
      placed.receivers[0].position.y() = c1.y();
      for (const auto& c2 : rx2_cells) {
        placed.receivers[1].position.x() = c2.x();
        placed.receivers[1].position.y() = c2.y();
        const CellRates r = evaluate_placement(placed, all, grid);
        if (std::isnan(r.tdma)) continue;
        sums[0][cls] += r.tdma;
        sums[1][cls] += r.tin;
        sums[2][cls] += r.hk;
        ++counts[cls];
      }
    }
  };
  double sums[3][IndoorTable::n_classes] = {};
  long counts[IndoorTable::n_classes] = {};
  accumulate(left, right, 0, sums, counts);
  accumulate(left, middle, 1, sums, counts);
  accumulate(middle, right, 1, sums, counts);
  accumulate(middle, middle, 2, sums, counts);
  for (int c = 0; c < IndoorTable::n_classes; ++c) {
    if (counts[c] == 0)
      throw std::domain_error("indoor_average_table: no evaluable pairs in class");
    for (int sch = 0; sch < IndoorTable::n_schemes; ++sch)
      table.avg[sch][c] = sums[sch][c] / counts[c];
  }
  return table;
}

Scenario onchip_scenario() {
  Scenario s;
  s.peak = 1000.0;
  s.sigma = 1.0;
  s.alpha = {0.5, 0.5};
  s.lambertian = {60.0, 70.0, 0.1, 1.0, 1.0};  // cm units, S = 10 mm^2 = 0.1 cm^2
  s.transmitters[0] = {{1.5, 0.0, 0.0}, {0.0, 1.0, 0.0}};
  s.transmitters[1] = {{4.5, 0.0, 0.0}, {0.0, 1.0, 0.0}};
  s.receivers[0] = {{0.0, 2.0, 0.0}, {0.0, -1.0, 0.0}};
  s.receivers[1] = {{4.0, 4.0, 0.0}, {0.0, -1.0, 0.0}};
  return s;
}

Scenario indoor_scenario() {
  Scenario s;
  s.peak = 1000.0;
  s.sigma = 1.0;
  s.alpha = {0.5, 0.5};
  s.lambertian = {60.0, 70.0, 10.0, 1.0, 1.0};  // meter units, S kept as the mm^2 figure
  s.transmitters[0] = {{-2.0, 0.0, 3.0}, {0.0, 0.0, -1.0}};
  s.transmitters[1] = {{2.0, 0.0, 3.0}, {0.0, 0.0, -1.0}};
  s.receivers[0] = {{-2.0, 1.0, 0.8}, {0.0, 0.0, 1.0}};
  s.receivers[1] = {{2.0, 0.0, 0.8}, {0.0, 0.0, 1.0}};
  return s;
}

SweepRect onchip_sweep_rect() { return {0.0, 0.0, 6.0, 6.0}; }

SweepRect indoor_sweep_rect() { return {-3.75, -2.25, 3.75, 2.25}; }

SweepRect indoor_room_rect() { return {-4.0, -2.5, 4.0, 2.5}; }

}  // namespace imddic
