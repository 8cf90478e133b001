#pragma once

#include <optional>
#include <stdexcept>

// Scalar IM/DD point-to-point capacity machinery: Gaussian tail function,
// maximum-entropy input parameters, capacity lower/upper bounds and the
// EPI-based F lower bound used by every interference-channel bound.
namespace imddic {

// Thrown when a bound minimization produces a non-finite value. Carries the
// best value found so far.
class numeric_error : public std::runtime_error {
 public:
  numeric_error(const std::string& what, double best)
      : std::runtime_error(what), best_value(best) {}
  double best_value;
};

// Standard Gaussian tail Q(x) = P(N(0,1) > x), via erfc. Saturates to 0/1 in
// the extreme tails.
double q_function(double x);

// Unique positive solution of alpha = 1/mu - e^(-mu)/(1 - e^(-mu)),
// alpha in (0, 1/2). Residual < 1e-10.
double solve_mu_star(double alpha);

// Entropy-power coefficient rho(alpha) of the maxent input density,
// alpha in (0, 1]. Equals 1/(2*pi*e) for alpha >= 1/2.
double rho(double ratio);

struct MaxEntParams {
  double peak = 0.0;
  double ratio = 0.0;
  std::optional<double> mu_star;  // absent iff ratio >= 1/2
  double rho = 0.0;
  double entropy = 0.0;  // bits; -inf when peak == 0
};

MaxEntParams maxent_params(double peak, double ratio);

// 1/2 * log2(1 + rho(ratio) * peak^2 / sigma^2)
double capacity_lower(double peak, double ratio, double sigma);

// Duality upper bound: c1 branch for ratio < 1/2 (2-D minimization), c2
// branch for ratio >= 1/2 (1-D minimization). Clamped to >= capacity_lower.
// capacity_upper(0, ., .) = 0 by convention.
double capacity_upper(double peak, double ratio, double sigma);

struct P2PBound {
  double peak = 0.0;
  double ratio = 0.0;
  double sigma = 1.0;
  double lower = 0.0;
  double upper = 0.0;
  double gap() const { return upper - lower; }
};

P2PBound bound_pair(double peak, double ratio, double sigma);

// EPI lower bound on I(V1,V2; V1+V2+V3+Z):
//   1/2 * log2(1 + (rho(t1) a1^2 + rho(t2) a2^2) / (sigma^2 2^(2 Cbar(a3,t3))))
// Zero-peak slots contribute entropy power 0 and their ratio argument is
// ignored; a3 = 0 makes the denominator term 1.
double f_bound(double a1, double a2, double a3, double t1, double t2,
               double t3, double sigma);

}  // namespace imddic
