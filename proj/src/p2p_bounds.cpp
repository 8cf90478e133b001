#include "imddic/p2p_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace imddic {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310002;
constexpr double kLog2E = 1.4426950408889634;
constexpr double kTwoPiE = 17.07946844534713;  // 2*pi*e

// 1/mu - 1/(e^mu - 1); strictly decreasing from 1/2 (mu -> 0+) to 0.
double mean_to_peak(double mu) {
  if (mu < 0.05) {
    // small-mu series avoids the 1/mu cancellation
    const double m2 = mu * mu;
    return 0.5 - mu / 12.0 + mu * m2 / 720.0 - mu * m2 * m2 / 30240.0;
  }
  const double em1 = std::expm1(mu);
  return 1.0 / mu - (std::isinf(em1) ? 0.0 : 1.0 / em1);
}

void check_ratio(double ratio) {
  if (!(ratio > 0.0) || ratio > 1.0)
    throw std::domain_error("ratio must be in (0, 1]");
}

// Golden-section minimization of f on [a, b].
template <typename F>
double golden_min(F f, double a, double b, double* arg = nullptr) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 120 && (b - a) > 1e-12 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  const double x = f1 <= f2 ? x1 : x2;
  if (arg) *arg = x;
  return std::min(f1, f2);
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  const double l0 = std::log(lo), l1 = std::log(hi);
  for (int i = 0; i < n; ++i)
    g[i] = std::exp(l0 + (l1 - l0) * i / (n - 1));
  return g;
}

// c2 objective (peak-only duality bound), ratio >= 1/2 branch. Any xi > 0
// yields a valid upper bound.
double c2_objective(double xi, double peak, double sigma) {
  const double q_xi = q_function(xi / sigma);
  const double f1 = 1.0 - 2.0 * q_function((xi + 0.5 * peak) / sigma);
  const double lt = std::log2((peak + 2.0 * xi) / (sigma * kSqrt2Pi * (1.0 - 2.0 * q_xi)));
  const double t2 = kLog2E * (-0.5 + q_xi +
                              xi / (kSqrt2Pi * sigma) * std::exp(-xi * xi / (2.0 * sigma * sigma)));
  return f1 * lt + t2;
}

double c2_bound(double peak, double sigma) {
  const auto xis = log_grid(1e-3 * sigma, 20.0 * sigma, 256);
  int best = 0;
  double bestv = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(xis.size()); ++i) {
    const double v = c2_objective(xis[i], peak, sigma);
    if (v < bestv) {
      bestv = v;
      best = i;
    }
  }
  const double lo = xis[std::max(0, best - 1)];
  const double hi = xis[std::min<int>(xis.size() - 1, best + 1)];
  const double refined =
      golden_min([&](double x) { return c2_objective(x, peak, sigma); }, lo, hi);
  return std::min(bestv, refined);
}

// c1 objective (peak + average duality bound), ratio < 1/2 branch.
double c1_objective(double mu, double xi, double peak, double ratio, double sigma) {
  const double q_xi = q_function(xi / sigma);
  const double f1 = 1.0 - q_function((xi + ratio * peak) / sigma) -
                    q_function((xi + (1.0 - ratio) * peak) / sigma);
  // log(e^(mu xi / A) - e^(-mu (1 + xi/A))) evaluated stably
  const double lognum = mu * xi / peak + std::log1p(-std::exp(-mu * (1.0 + 2.0 * xi / peak)));
  const double lt = (std::log(peak / sigma) + lognum -
                     std::log(kSqrt2Pi * mu * (1.0 - 2.0 * q_xi))) * kLog2E;
  const double ex = std::exp(-xi * xi / (2.0 * sigma * sigma));
  const double ex_peak = std::exp(-(peak + xi) * (peak + xi) / (2.0 * sigma * sigma));
  const double t2 = kLog2E * (-0.5 + q_xi + xi / (kSqrt2Pi * sigma) * ex +
                              (sigma / peak) * (mu / kSqrt2Pi) * (ex - ex_peak) +
                              mu * ratio * (1.0 - 2.0 * q_function((xi + 0.5 * peak) / sigma)));
  return f1 * lt + t2;
}

double c1_bound(double peak, double ratio, double sigma) {
  const auto mus = log_grid(1e-3, 50.0, 64);
  const auto xis = log_grid(1e-3 * sigma, 20.0 * sigma, 64);
  double bestv = std::numeric_limits<double>::infinity();
  double bm = mus[0], bx = xis[0];
  for (double mu : mus) {
    for (double xi : xis) {
      const double v = c1_objective(mu, xi, peak, ratio, sigma);
      if (v < bestv) {
        bestv = v;
        bm = mu;
        bx = xi;
      }
    }
  }
  // coordinate-wise golden-section refinement
  for (int round = 0; round < 30; ++round) {
    double m_arg = bm;
    golden_min([&](double m) { return c1_objective(m, bx, peak, ratio, sigma); },
               std::max(1e-6, bm / 3.0), bm * 3.0, &m_arg);
    bm = m_arg;
    double x_arg = bx;
    golden_min([&](double x) { return c1_objective(bm, x, peak, ratio, sigma); },
               std::max(1e-6 * sigma, bx / 3.0), bx * 3.0, &x_arg);
    bx = x_arg;
    const double v = c1_objective(bm, bx, peak, ratio, sigma);
    if (bestv - v < 1e-7 && round > 0) {
      bestv = std::min(bestv, v);
      break;
    }
    bestv = std::min(bestv, v);
  }
  return bestv;
}

}  // namespace

double q_function(double x) { return 0.5 * std::erfc(x * 0.7071067811865476); }

double solve_mu_star(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 0.5))
    throw std::domain_error("solve_mu_star: alpha must be in (0, 1/2)");
  double lo = 1e-9;
  double hi = 1.0;
  while (mean_to_peak(hi) > alpha) hi *= 2.0;
  if (mean_to_peak(lo) < alpha) return lo;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = mean_to_peak(mid);
    if (std::abs(f - alpha) < 1e-12 || (hi - lo) < 1e-15 * hi) return mid;
    if (f > alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double rho(double ratio) {
  check_ratio(ratio);
  if (ratio >= 0.5) return 1.0 / kTwoPiE;
  static std::mutex mutex;
  static std::unordered_map<uint64_t, double> memo;
  uint64_t key;
  std::memcpy(&key, &ratio, sizeof key);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  const double mu = solve_mu_star(ratio);
  const double scaled = -std::expm1(-mu) / mu;  // (1 - e^-mu)/mu
  const double value = std::exp(2.0 * ratio * mu - 1.0) / (2.0 * M_PI) * scaled * scaled;
  std::lock_guard<std::mutex> lock(mutex);
  return memo.emplace(key, value).first->second;
}

MaxEntParams maxent_params(double peak, double ratio) {
  check_ratio(ratio);
  if (!(peak >= 0.0)) throw std::domain_error("peak must be >= 0");
  MaxEntParams p;
  p.peak = peak;
  p.ratio = ratio;
  if (ratio < 0.5) p.mu_star = solve_mu_star(ratio);
  p.rho = rho(ratio);
  p.entropy = peak > 0.0 ? 0.5 * std::log2(kTwoPiE * p.rho * peak * peak)
                         : -std::numeric_limits<double>::infinity();
  return p;
}

double capacity_lower(double peak, double ratio, double sigma) {
  check_ratio(ratio);
  if (!(peak >= 0.0)) throw std::domain_error("peak must be >= 0");
  if (!(sigma > 0.0)) throw std::domain_error("sigma must be > 0");
  const double snr = peak / sigma;
  return 0.5 * std::log2(1.0 + rho(ratio) * snr * snr);
}

double capacity_upper(double peak, double ratio, double sigma) {
  check_ratio(ratio);
  if (!(peak >= 0.0)) throw std::domain_error("peak must be >= 0");
  if (!(sigma > 0.0)) throw std::domain_error("sigma must be > 0");
  if (peak == 0.0) return 0.0;
  const double u = ratio < 0.5 ? c1_bound(peak, ratio, sigma) : c2_bound(peak, sigma);
  if (!std::isfinite(u))
    throw numeric_error("capacity_upper: minimization returned non-finite value", u);
  return std::max(u, capacity_lower(peak, ratio, sigma));
}

P2PBound bound_pair(double peak, double ratio, double sigma) {
  P2PBound b;
  b.peak = peak;
  b.ratio = ratio;
  b.sigma = sigma;
  b.lower = capacity_lower(peak, ratio, sigma);
  b.upper = capacity_upper(peak, ratio, sigma);
  return b;
}

double f_bound(double a1, double a2, double a3, double t1, double t2,
               double t3, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("sigma must be > 0");
  double num = 0.0;
  if (a1 > 0.0) num += rho(t1) * a1 * a1;
  if (a2 > 0.0) num += rho(t2) * a2 * a2;
  if (num == 0.0) return 0.0;
  const double den_bits = a3 > 0.0 ? capacity_upper(a3, t3, sigma) : 0.0;
  return 0.5 * std::log2(1.0 + num / (sigma * sigma * std::exp2(2.0 * den_bits)));
}

}  // namespace imddic
