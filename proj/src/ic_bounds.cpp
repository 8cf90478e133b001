#include "imddic/ic_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "imddic/p2p_bounds.hpp"

namespace imddic {

namespace {

// Process-wide memo of capacity_upper over a quantized (peak/sigma, ratio)
// lattice. Keys round UP (peak to the 2^(1/256) lattice, ratio to the
// 2^(1/64) lattice capped at 1/2, where the bound is ratio-independent), so
// a cached value always upper-bounds the capacity of the exact arguments;
// inner bounds built from it can only shrink. Concurrent inserts may
// duplicate work; values are idempotent.
class UpperCache {
 public:
  double upper(double peak_over_sigma, double ratio) {
    if (peak_over_sigma <= 0.0) return 0.0;
    const int32_t kp = static_cast<int32_t>(std::ceil(256.0 * std::log2(peak_over_sigma)));
    int32_t kr = 0;  // sentinel: ratio >= 1/2
    if (ratio < 0.5) {
      kr = static_cast<int32_t>(std::ceil(64.0 * std::log2(ratio)));
      if (std::exp2(kr / 64.0) >= 0.5) kr = 0;
    }
    const uint64_t key =
        (static_cast<uint64_t>(static_cast<uint32_t>(kp)) << 32) | static_cast<uint32_t>(kr);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    const double qp = std::exp2(kp / 256.0);
    const double qr = kr == 0 ? 0.5 : std::exp2(kr / 64.0);
    const double value = capacity_upper(qp, qr, 1.0);
    std::lock_guard<std::mutex> lock(mutex_);
    return map_.emplace(key, value).first->second;
  }

 private:
  std::mutex mutex_;
  std::unordered_map<uint64_t, double> map_;
};

UpperCache& upper_cache() {
  static UpperCache cache;
  return cache;
}

// One swept choice for a single user: private peak/ratio plus the derived
// common split (eta = A - kappa, phi = full remaining average budget).
struct UserAlloc {
  double kappa = 0.0;
  double theta = 1.0;
  double rho_theta = 0.0;  // rho(theta), 0 for the kappa = 0 slot
  double eta = 0.0;
  double phi = 1.0;
  double rho_phi = 0.0;
};

std::vector<double> peak_fractions(int steps) {
  std::vector<double> f;
  f.reserve(steps);
  f.push_back(0.0);
  for (int j = steps - 2; j >= 0; --j) f.push_back(std::exp2(-j));
  return f;
}

std::vector<double> ratio_grid(double floor, double cap, int steps) {
  std::vector<double> g;
  const double lo = std::min(floor, cap);
  for (int i = 0; i < steps; ++i) {
    const double t = lo + (cap - lo) * i / (steps - 1);
    if (g.empty() || t > g.back()) g.push_back(t);
  }
  return g;
}

std::vector<UserAlloc> user_allocations(const ChannelConfig& cfg,
                                        const SweepGrid& grid, int user,
                                        bool with_common) {
  const double A = cfg.peak;
  const double avg_budget = cfg.alpha[user] * A;
  std::vector<UserAlloc> out;
  for (double frac : peak_fractions(grid.peak_steps)) {
    const double kappa = frac * A;
    if (kappa == 0.0) {
      UserAlloc a;
      if (with_common) {
        a.eta = A;
        a.phi = std::min(1.0, avg_budget / A);
        a.rho_phi = rho(a.phi);
      }
      out.push_back(a);
      continue;
    }
    const double theta_cap = std::min(1.0, avg_budget / kappa);
    for (double theta : ratio_grid(grid.ratio_floor, theta_cap, grid.ratio_steps)) {
      UserAlloc a;
      a.kappa = kappa;
      a.theta = theta;
      a.rho_theta = rho(theta);
      if (with_common) {
        const double eta = A - kappa;
        const double leftover = avg_budget - theta * kappa;
        if (eta > 0.0 && leftover > 0.0) {
          a.eta = eta;
          a.phi = std::min(1.0, leftover / eta);
          a.rho_phi = rho(a.phi);
        }
      }
      out.push_back(a);
    }
  }
  return out;
}

// F with the numerator rho values precomputed and the denominator bound
// taken from the quantized cache.
double f_cached(double rho1, double a1, double rho2, double a2, double a3,
                double t3, double sigma) {
  double num = 0.0;
  if (a1 > 0.0) num += rho1 * a1 * a1;
  if (a2 > 0.0) num += rho2 * a2 * a2;
  if (num == 0.0) return 0.0;
  const double den_bits = a3 > 0.0 ? upper_cache().upper(a3 / sigma, t3) : 0.0;
  return 0.5 * std::log2(1.0 + num / (sigma * sigma * std::exp2(2.0 * den_bits)));
}

struct PairCaps {
  double a1, a2, s;
};

// Rate caps of the simplified-HK pentagon for one allocation pair; with both
// common splits disabled this degenerates to the TIN rectangle.
PairCaps pair_caps(const ChannelConfig& cfg, const UserAlloc& u1,
                   const UserAlloc& u2) {
  const double s = cfg.sigma;
  const auto& h = cfg.gains;
  const UserAlloc* u[2] = {&u1, &u2};

  // aggregate private signal at each receiver
  double priv_peak[2], theta_p[2];
  for (int k = 0; k < 2; ++k) {
    const double wsum = h(0, k) * u1.kappa + h(1, k) * u2.kappa;
    priv_peak[k] = wsum;
    theta_p[k] = wsum > 0.0
                     ? (h(0, k) * u1.theta * u1.kappa + h(1, k) * u2.theta * u2.kappa) / wsum
                     : 0.0;
  }

  double fpriv[2], common[2];
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    fpriv[i] = f_cached(0.0, 0.0, u[i]->rho_theta, h(i, i) * u[i]->kappa,
                        h(j, i) * u[j]->kappa, u[j]->theta, s);
    common[i] = 0.0;
    if (u[i]->eta > 0.0) {
      double best = std::numeric_limits<double>::infinity();
      for (int k = 0; k < 2; ++k) {
        best = std::min(best, f_cached(0.0, 0.0, u[i]->rho_phi, h(i, k) * u[i]->eta,
                                       priv_peak[k], theta_p[k], s));
      }
      common[i] = best;
    }
  }

  double common_sum = 0.0;
  if (u1.eta > 0.0 || u2.eta > 0.0) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 2; ++i) {
      const int j = 1 - i;
      best = std::min(best, f_cached(u[i]->rho_phi, h(i, i) * u[i]->eta, u[j]->rho_phi,
                                     h(j, i) * u[j]->eta, priv_peak[i], theta_p[i], s));
    }
    common_sum = best;
  }

  PairCaps c;
  c.a1 = fpriv[0] + common[0];
  c.a2 = fpriv[1] + common[1];
  c.s = fpriv[0] + fpriv[1] + common_sum;
  return c;
}

void push_pentagon(std::vector<RatePair>& pts, const PairCaps& c) {
  pts.emplace_back(std::min(c.a1, c.s), 0.0);
  pts.emplace_back(0.0, std::min(c.a2, c.s));
  if (c.s >= c.a1 + c.a2) {
    pts.emplace_back(c.a1, c.a2);
  } else {
    if (c.s >= c.a1) pts.emplace_back(c.a1, c.s - c.a1);
    if (c.s >= c.a2) pts.emplace_back(c.s - c.a2, c.a2);
  }
}

// Shared sweep driver; `collect` receives the caps of each allocation pair
// (and of the mirrored pair for symmetric configs evaluated half-way).
template <typename Fn>
void sweep_allocations(const ChannelConfig& cfg, const SweepGrid& grid,
                       bool with_common, Fn&& collect) {
  cfg.validate();
  grid.validate();
  const auto opts1 = user_allocations(cfg, grid, 0, with_common);
  if (cfg.symmetric()) {
    const int n = static_cast<int>(opts1.size());
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const PairCaps c = pair_caps(cfg, opts1[i], opts1[j]);
        collect(c);
        if (j != i) collect(PairCaps{c.a2, c.a1, c.s});
      }
    }
    return;
  }
  const auto opts2 = user_allocations(cfg, grid, 1, with_common);
  for (const auto& o1 : opts1)
    for (const auto& o2 : opts2) collect(pair_caps(cfg, o1, o2));
}

RateRegion sweep_region(const ChannelConfig& cfg, const SweepGrid& grid,
                        bool with_common) {
  std::vector<RatePair> pts;
  sweep_allocations(cfg, grid, with_common,
                    [&](const PairCaps& c) { push_pentagon(pts, c); });
  return hull_of_points(pts);
}

double sweep_max_sum(const ChannelConfig& cfg, const SweepGrid& grid,
                     bool with_common) {
  double best = 0.0;
  sweep_allocations(cfg, grid, with_common, [&](const PairCaps& c) {
    best = std::max(best, std::min(c.a1 + c.a2, c.s));
  });
  return best;
}

}  // namespace

void ChannelConfig::validate() const {
  if (!(peak > 0.0)) throw std::domain_error("ChannelConfig: peak must be > 0");
  if (!(sigma > 0.0)) throw std::domain_error("ChannelConfig: sigma must be > 0");
  for (int i = 0; i < 2; ++i)
    if (!(alpha[i] > 0.0) || alpha[i] > 1.0)
      throw std::domain_error("ChannelConfig: alpha must be in (0, 1]");
  if (!gains.allFinite() || gains.minCoeff() < 0.0)
    throw std::domain_error("ChannelConfig: gains must be finite and >= 0");
  if (!(gains(0, 0) > 0.0) || !(gains(1, 1) > 0.0))
    throw std::domain_error("ChannelConfig: direct gains must be > 0");
}

bool ChannelConfig::symmetric() const {
  return gains(0, 0) == gains(1, 1) && gains(0, 1) == gains(1, 0) &&
         alpha[0] == alpha[1];
}

ChannelConfig ChannelConfig::symmetric_ic(double peak_over_sigma, double a,
                                          double cross_gain) {
  ChannelConfig cfg;
  cfg.peak = peak_over_sigma;
  cfg.sigma = 1.0;
  cfg.alpha = {a, a};
  cfg.gains << 1.0, cross_gain, cross_gain, 1.0;
  return cfg;
}

void SweepGrid::validate() const {
  if (peak_steps < 2) throw std::domain_error("SweepGrid: peak_steps must be >= 2");
  if (ratio_steps < 2) throw std::domain_error("SweepGrid: ratio_steps must be >= 2");
  if (!(ratio_floor > 0.0) || ratio_floor > 0.1)
    throw std::domain_error("SweepGrid: ratio_floor must be in (0, 0.1]");
}

double HKAllocation::theta_prime(const ChannelConfig& cfg, int rx) const {
  const auto& h = cfg.gains;
  const double den = h(0, rx) * kappa[0] + h(1, rx) * kappa[1];
  if (den <= 0.0) return 0.0;
  return (h(0, rx) * theta[0] * kappa[0] + h(1, rx) * theta[1] * kappa[1]) / den;
}

RateRegion tin_region(const ChannelConfig& cfg, const SweepGrid& grid) {
  return sweep_region(cfg, grid, /*with_common=*/false);
}

RateRegion hk_region(const ChannelConfig& cfg, const SweepGrid& grid) {
  return sweep_region(cfg, grid, /*with_common=*/true);
}

RateRegion hk_region_zero_common(const ChannelConfig& cfg, const SweepGrid& grid) {
  return sweep_region(cfg, grid, /*with_common=*/false);
}

double tin_sum_rate(const ChannelConfig& cfg, const SweepGrid& grid) {
  return sweep_max_sum(cfg, grid, /*with_common=*/false);
}

double hk_sum_rate(const ChannelConfig& cfg, const SweepGrid& grid) {
  return sweep_max_sum(cfg, grid, /*with_common=*/true);
}

RateRegion z_outer(const ChannelConfig& cfg) {
  cfg.validate();
  const auto& h = cfg.gains;
  const double A = cfg.peak;
  const double s = cfg.sigma;
  const double cap1 = capacity_upper(h(0, 0) * A, cfg.alpha[0], s);
  const double cap2 = capacity_upper(h(1, 1) * A, cfg.alpha[1], s);
  double cap_sum = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const double hii = h(i, i), hji = h(j, i), hjj = h(j, j);
    const double alpha_eff = (hii * cfg.alpha[i] + hji * cfg.alpha[j]) / (hii + hji);
    const double ratio2 = (hji * hji) / (hjj * hjj);
    const double cbar_jj = capacity_upper(hjj * A, cfg.alpha[j], s);
    const double inner = std::max(ratio2, (1.0 - ratio2) * std::exp2(-2.0 * cbar_jj));
    const double slack = std::min(0.0, 0.5 * std::log2(inner));
    cap_sum = std::min(cap_sum,
                       capacity_upper((hii + hji) * A, alpha_eff, s) - slack);
  }
  return region_from_caps(cap1, cap2, cap_sum);
}

RateRegion genie_outer(const ChannelConfig& cfg) {
  cfg.validate();
  const auto& h = cfg.gains;
  const double A = cfg.peak;
  const double s = cfg.sigma;
  const double cap1 = capacity_upper(h(0, 0) * A, cfg.alpha[0], s);
  const double cap2 = capacity_upper(h(1, 1) * A, cfg.alpha[1], s);
  const double cross = h(0, 1) * h(1, 0);
  if (cross == 0.0) return region_from_caps(cap1, cap2, cap1 + cap2);
  double cap_sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const double hii = h(i, i), hij = h(i, j);
    cap_sum += capacity_upper(cross * A / std::sqrt(hii * hii + hij * hij),
                              cfg.alpha[j], s) +
               0.5 * std::log2(1.0 + (hii * hii) / (hij * hij));
  }
  return region_from_caps(cap1, cap2, cap_sum);
}

double tdma_sum_rate(const ChannelConfig& cfg) {
  cfg.validate();
  return 0.5 * (capacity_lower(cfg.gains(0, 0) * cfg.peak, cfg.alpha[0], cfg.sigma) +
                capacity_lower(cfg.gains(1, 1) * cfg.peak, cfg.alpha[1], cfg.sigma));
}

double strong_interference_gap(const ChannelConfig& cfg, const SweepGrid& grid) {
  cfg.validate();
  if (cfg.gains(0, 1) < cfg.gains(0, 0) || cfg.gains(1, 0) < cfg.gains(1, 1))
    throw std::domain_error("strong_interference_gap: not in the strong regime");
  const RateRegion outer = z_outer(cfg);
  const RateRegion inner = hk_region(cfg, grid);
  if (uniform_shift_inside(outer, inner, 0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  const double cap = max_weighted_sum(outer, 1.0, 1.0) + 1.0;
  while (!uniform_shift_inside(outer, inner, hi)) {
    hi *= 2.0;
    if (hi > cap) return hi;  // cannot happen for valid bounds
  }
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    if (uniform_shift_inside(outer, inner, mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double weak_interference_sum_gap(const ChannelConfig& cfg, const SweepGrid& grid) {
  return max_weighted_sum(genie_outer(cfg), 1.0, 1.0) -
         max_weighted_sum(tin_region(cfg, grid), 1.0, 1.0);
}

}  // namespace imddic
