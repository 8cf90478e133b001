#include "imddic/gdof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "imddic/p2p_bounds.hpp"

namespace imddic {

double gdof_closed_form(double delta) {
  if (!(delta >= 0.0)) throw std::domain_error("gdof_closed_form: delta must be >= 0");
  const double a = std::max(1.0 - delta, delta);
  const double b = std::max(1.0 - 0.5 * delta, 0.5 * delta);
  return std::min({a, b, 1.0});
}

double gamma_prime(double delta, double peak_ratio, double alpha, IcBound bound,
                   const SweepGrid& grid) {
  if (!(peak_ratio > 1.0))
    throw std::domain_error("gamma_prime: peak_ratio must be > 1");
  if (!(delta >= 0.0)) throw std::domain_error("gamma_prime: delta must be >= 0");
  const double g = std::pow(peak_ratio, delta - 1.0);
  const ChannelConfig cfg = ChannelConfig::symmetric_ic(peak_ratio, alpha, g);
  const double single_user = capacity_lower(peak_ratio, alpha, 1.0);
  double sum = 0.0;
  switch (bound) {
    case IcBound::tin:
      sum = std::max(tin_sum_rate(cfg, grid), single_user);
      break;
    case IcBound::hk:
      sum = std::max(hk_sum_rate(cfg, grid), single_user);
      break;
    case IcBound::z:
      sum = max_weighted_sum(z_outer(cfg), 1.0, 1.0);
      break;
    case IcBound::genie:
      sum = max_weighted_sum(genie_outer(cfg), 1.0, 1.0);
      break;
  }
  return sum / (2.0 * single_user);
}

std::vector<GdofPoint> gdof_sweep(double peak_ratio, double alpha,
                                  double delta_min, double delta_max, int steps,
                                  const SweepGrid& grid) {
  if (!(delta_min < delta_max))
    throw std::domain_error("gdof_sweep: delta_min must be < delta_max");
  if (steps < 2) throw std::domain_error("gdof_sweep: steps must be >= 2");
  std::vector<GdofPoint> out;
  out.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    GdofPoint p;
    p.delta = delta_min + (delta_max - delta_min) * i / (steps - 1);
    p.gamma_closed = gdof_closed_form(p.delta);
    p.gamma_tin = gamma_prime(p.delta, peak_ratio, alpha, IcBound::tin, grid);
    p.gamma_hk = gamma_prime(p.delta, peak_ratio, alpha, IcBound::hk, grid);
    p.gamma_z = gamma_prime(p.delta, peak_ratio, alpha, IcBound::z, grid);
    p.gamma_ge = gamma_prime(p.delta, peak_ratio, alpha, IcBound::genie, grid);
    out.push_back(p);
  }
  return out;
}

}  // namespace imddic
