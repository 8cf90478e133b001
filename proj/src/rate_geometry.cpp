#include "imddic/rate_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "imddic/detail/format.hpp"

namespace imddic {

namespace {

constexpr double kDedupeTol = 1e-12;

double cross(const RatePair& o, const RatePair& a, const RatePair& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

bool lex_less(const RatePair& a, const RatePair& b) {
  return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
}

// Andrew's monotone chain; collinear points are dropped. Returns CCW order
// starting at the lexicographically smallest point.
std::vector<RatePair> convex_hull(std::vector<RatePair> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const RatePair& a, const RatePair& b) {
                          return std::abs(a.x() - b.x()) <= kDedupeTol &&
                                 std::abs(a.y() - b.y()) <= kDedupeTol;
                        }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n <= 2) return pts;
  std::vector<RatePair> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {  // lower hull
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (int i = n - 2, t = k + 1; i >= 0; --i) {  // upper hull
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

double point_segment_dist(const RatePair& p, const RatePair& a, const RatePair& b) {
  const RatePair d = b - a;
  const double len2 = d.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
  return (p - (a + t * d)).norm();
}

}  // namespace

RateRegion hull_of_points(std::span<const RatePair> points) {
  if (points.empty()) throw std::domain_error("hull_of_points: empty input");
  std::vector<RatePair> aug;
  aug.reserve(points.size() * 3 + 1);
  for (const auto& p : points) {
    if (!p.allFinite()) throw std::domain_error("hull_of_points: non-finite point");
    if (p.x() < 0.0 || p.y() < 0.0)
      throw std::domain_error("hull_of_points: negative rate");
    aug.push_back(p);
    aug.emplace_back(p.x(), 0.0);
    aug.emplace_back(0.0, p.y());
  }
  aug.emplace_back(0.0, 0.0);
  return RateRegion{convex_hull(std::move(aug))};
}

RateRegion region_from_caps(double cap1, double cap2, double cap_sum) {
  if (cap1 < 0.0 || cap2 < 0.0 || cap_sum < 0.0)
    throw std::domain_error("region_from_caps: negative cap");
  std::vector<RatePair> pts;
  pts.emplace_back(std::min(cap1, cap_sum), 0.0);
  pts.emplace_back(0.0, std::min(cap2, cap_sum));
  if (cap_sum >= cap1 + cap2) {
    pts.emplace_back(cap1, cap2);
  } else {
    if (cap_sum >= cap1) pts.emplace_back(cap1, cap_sum - cap1);
    if (cap_sum >= cap2) pts.emplace_back(cap_sum - cap2, cap2);
  }
  return hull_of_points(pts);
}

RateRegion union_hull(std::span<const RateRegion> regions) {
  if (regions.empty()) throw std::domain_error("union_hull: empty input");
  std::vector<RatePair> pts;
  for (const auto& r : regions)
    pts.insert(pts.end(), r.vertices.begin(), r.vertices.end());
  return hull_of_points(pts);
}

double max_weighted_sum(const RateRegion& region, double w1, double w2) {
  if (region.vertices.empty())
    throw std::domain_error("max_weighted_sum: empty region");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : region.vertices)
    best = std::max(best, w1 * v.x() + w2 * v.y());
  return best;
}

bool contains(const RateRegion& region, const RatePair& p, double tol) {
  const auto& vs = region.vertices;
  if (vs.empty()) return false;
  if (vs.size() == 1) return (p - vs[0]).norm() <= tol;
  if (vs.size() == 2) return point_segment_dist(p, vs[0], vs[1]) <= tol;
  const int n = static_cast<int>(vs.size());
  for (int i = 0; i < n; ++i) {
    const RatePair& a = vs[i];
    const RatePair& b = vs[(i + 1) % n];
    const double len = (b - a).norm();
    if (len == 0.0) continue;
    if (cross(a, b, p) / len < -tol) return false;
  }
  return true;
}

bool uniform_shift_inside(const RateRegion& outer, const RateRegion& inner,
                          double shift) {
  for (const auto& v : outer.vertices) {
    const RatePair q{std::max(v.x() - shift, 0.0), std::max(v.y() - shift, 0.0)};
    if (!contains(inner, q, 1e-9)) return false;
  }
  return true;
}

void write_region_csv(std::ostream& os, const RateRegion& region) {
  std::string out = "r1,r2\n";
  for (const auto& v : region.vertices) {
    detail::append_sig9(out, v.x());
    out.push_back(',');
    detail::append_sig9(out, v.y());
    out.push_back('\n');
  }
  os << out;
}

}  // namespace imddic
