#pragma once

#include <vector>

#include "imddic/ic_bounds.hpp"

// Closed-form GDoF of the symmetric IM/DD IC and empirical normalized
// sum-rate curves gamma' checking it against the four computable bounds.
namespace imddic {

enum class IcBound { tin, hk, z, genie };

struct GdofPoint {
  double delta = 0.0;
  double gamma_closed = 0.0;
  double gamma_tin = 0.0;
  double gamma_hk = 0.0;
  double gamma_z = 0.0;
  double gamma_ge = 0.0;
};

// min{ max{1-d, d}, max{1-d/2, d/2}, 1 }; the W curve with breakpoints at
// 1/2, 2/3, 1 and 2.
double gdof_closed_form(double delta);

// Builds the symmetric config with g = (A/sigma)^(delta-1), evaluates the
// selected bound's max sum-rate and divides by log2(1 + rho(alpha) A^2/s^2).
// Inner-bound sum-rates include the single-user (TDMA corner) floor.
double gamma_prime(double delta, double peak_ratio, double alpha, IcBound bound,
                   const SweepGrid& grid);

std::vector<GdofPoint> gdof_sweep(double peak_ratio, double alpha,
                                  double delta_min, double delta_max, int steps,
                                  const SweepGrid& grid);

}  // namespace imddic
