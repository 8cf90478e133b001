#pragma once

#include <Eigen/Core>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "imddic/ic_bounds.hpp"

// Lambertian line-of-sight channel modeling and the two application studies:
// on-chip receiver placement and the indoor VLC average-sum-rate table.
namespace imddic {

struct Pose {
  Eigen::Vector3d position{0, 0, 0};
  Eigen::Vector3d direction{0, 0, 1};  // unit vector
};

struct LambertianParams {
  double half_angle_deg = 60.0;  // half-intensity semi-angle Phi, (0, 90)
  double fov_deg = 70.0;         // receiver field of view Psi, (0, 90]
  double area = 1.0;             // detector area S, scenario area units
  double gain = 1.0;             // detector gain G
  double gain_scale = 1.0;       // unit-convention multiplier on every h

  double order() const;   // Lambertian emission order m
  void validate() const;  // throws std::domain_error
};

struct Scenario {
  std::array<Pose, 2> transmitters;
  std::array<Pose, 2> receivers;
  LambertianParams lambertian;
  double peak = 1000.0;
  double sigma = 1.0;
  Eigen::Vector2d alpha{0.5, 0.5};

  void validate() const;  // pose directions, lambertian params, constraints
};

class scenario_rejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// m = -ln 2 / ln(cos Phi), Phi in degrees in (0, 90).
double lambert_order(double half_angle_deg);

// h = gain_scale * (m+1) G S / (2 pi d^2) * cos^m(phi) * cos(psi) * 1(psi < Psi).
// Angles behind either plane give 0. Coincident positions are a domain error.
double channel_gain(const Pose& tx, const Pose& rx, const LambertianParams& p);

// Evaluates all four gains; throws scenario_rejected when a direct gain is 0.
ChannelConfig scenario_config(const Scenario& s);

struct SweepRect {
  double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
};

struct SchemeSet {
  bool tdma = true;
  bool tin = true;
  bool hk = true;
};

// Per-cell sum-rates over an inclusive nx-by-ny lattice of receiver-2
// positions. Cells that cannot be evaluated (receiver coincident with a
// transmitter) are NaN; a user whose direct gain is 0 contributes zero rate.
struct PlacementSweep {
  std::vector<double> xs, ys;
  std::vector<double> tdma, tin, hk;  // row-major [iy*nx + ix]; empty if not requested

  double value(const std::vector<double>& grid, int ix, int iy) const {
    return grid[static_cast<size_t>(iy) * xs.size() + ix];
  }
};

PlacementSweep placement_sweep(const Scenario& s, const SweepRect& area, int nx,
                               int ny, const SchemeSet& schemes,
                               const SweepGrid& grid);

// CSV: header "x,y,tdma,tin,hk"; empty fields for nulls/unrequested schemes.
void write_sweep_csv(std::ostream& os, const PlacementSweep& sweep,
                     const SchemeSet& schemes);

// Average sum-rate per scheme for receiver pairs drawn from the three
// placement classes (left,right), (left,middle)|(middle,right),
// (middle,middle); bands partition the room x-range at band_left / band_right.
struct IndoorTable {
  static constexpr int n_schemes = 3;   // tdma, tin, hk
  static constexpr int n_classes = 3;   // left_right, mixed, middle_middle
  double avg[n_schemes][n_classes] = {};

  static const char* scheme_name(int s);
  static const char* class_name(int c);
};

IndoorTable indoor_average_table(const Scenario& s, const SweepRect& room,
                                 double cell, double band_left,
                                 double band_right, const SweepGrid& grid);

// Built-in scenarios with reverse-engineered unit conventions: on-chip uses
// centimeters with the detector area in cm^2; indoor uses meters with the
// detector area kept as the raw mm^2 figure. Both keep gain_scale = 1.
Scenario onchip_scenario();
Scenario indoor_scenario();
SweepRect onchip_sweep_rect();   // [0,6] x [0,6] cm
SweepRect indoor_sweep_rect();   // 16x10 cell centers over the room floor
SweepRect indoor_room_rect();    // [-4,4] x [-2.5,2.5] m

}  // namespace imddic
