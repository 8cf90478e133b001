#pragma once

#include <Eigen/Core>

#include "imddic/rate_geometry.hpp"

// Computable capacity bounds for the two-user IM/DD interference channel:
// TIN and simplified-HK inner bounds, Z-channel and genie-aided outer bounds,
// the TDMA baseline, and the strong/weak interference gap checks.
namespace imddic {

struct ChannelConfig {
  double peak = 1.0;   // A, common to both users after normalization
  double sigma = 1.0;  // noise std, common
  Eigen::Vector2d alpha{0.5, 0.5};  // average-to-peak ratios, in (0, 1]
  // gains(i, j) = h_ij, gain from transmitter i to receiver j.
  Eigen::Matrix2d gains = Eigen::Matrix2d::Identity();

  void validate() const;  // throws std::domain_error
  bool symmetric() const;

  static ChannelConfig symmetric_ic(double peak_over_sigma, double alpha,
                                    double cross_gain);
};

struct SweepGrid {
  int peak_steps = 17;      // {0} plus peak_steps-1 powers of two down from A
  int ratio_steps = 9;      // linear grid from ratio_floor up to the budget cap
  double ratio_floor = 0.05;

  void validate() const;

  static SweepGrid dense() { return SweepGrid{}; }
  static SweepGrid reduced() { return SweepGrid{9, 5, 0.05}; }
};

// One HK allocation: private/common peak splits and average-to-peak ratios.
struct HKAllocation {
  Eigen::Vector2d kappa{0, 0};  // private peaks, in [0, A]
  Eigen::Vector2d eta{0, 0};    // common peaks, kappa_i + eta_i <= A
  Eigen::Vector2d theta{1, 1};  // private ratios, in (0, 1]
  Eigen::Vector2d phi{1, 1};    // common ratios, in (0, 1]

  // Effective ratio of the aggregate private signal seen at receiver `rx`
  // (0-based); 0 when no private signal reaches it.
  double theta_prime(const ChannelConfig& cfg, int rx) const;
};

RateRegion tin_region(const ChannelConfig& cfg, const SweepGrid& grid);
RateRegion hk_region(const ChannelConfig& cfg, const SweepGrid& grid);
// HK sweep with the common split forced to zero; equals tin_region exactly.
RateRegion hk_region_zero_common(const ChannelConfig& cfg,
                                 const SweepGrid& grid);

// Max sum-rate of the inner bounds without building the hull.
double tin_sum_rate(const ChannelConfig& cfg, const SweepGrid& grid);
double hk_sum_rate(const ChannelConfig& cfg, const SweepGrid& grid);

RateRegion z_outer(const ChannelConfig& cfg);
RateRegion genie_outer(const ChannelConfig& cfg);

// Equal time-sharing baseline: (C_lower(h11 A) + C_lower(h22 A)) / 2.
double tdma_sum_rate(const ChannelConfig& cfg);

// Smallest shift d (bisection, step 1e-3) with every z_outer vertex shifted
// by d landing inside hk_region. Requires h12 >= h11 and h21 >= h22.
double strong_interference_gap(const ChannelConfig& cfg, const SweepGrid& grid);

// max_sum(genie_outer) - max_sum(tin_region).
double weak_interference_sum_gap(const ChannelConfig& cfg,
                                 const SweepGrid& grid);

}  // namespace imddic
