#pragma once

#include <Eigen/Core>
#include <ostream>
#include <span>
#include <vector>

// Exact 2-D geometry of rate regions: downward-closed convex polygons in the
// nonnegative quadrant, hulls of unions, sum-rate extraction, containment and
// shift queries.
namespace imddic {

using RatePair = Eigen::Vector2d;  // (r1, r2), bits/transmission

// Convex, downward-closed polygon containing the origin. Vertices are
// counterclockwise starting at the lexicographically smallest (r1, r2),
// which is always (0, 0) for a nonempty region.
struct RateRegion {
  std::vector<RatePair> vertices;
};

// Downward-closed convex hull of the points, their axis projections and the
// origin. Collinear boundary points are dropped.
RateRegion hull_of_points(std::span<const RatePair> points);

// Intersection of {r1 <= cap1}, {r2 <= cap2}, {r1 + r2 <= cap_sum} with the
// nonnegative quadrant.
RateRegion region_from_caps(double cap1, double cap2, double cap_sum);

RateRegion union_hull(std::span<const RateRegion> regions);

// max over the region of w1*r1 + w2*r2 (attained at a vertex).
double max_weighted_sum(const RateRegion& region, double w1, double w2);

// True iff p is inside or within tol of every supporting half-plane.
bool contains(const RateRegion& region, const RatePair& p, double tol);

// True iff for every vertex v of outer the clamped point
// (max(v1-shift,0), max(v2-shift,0)) lies in inner (tol 1e-9).
bool uniform_shift_inside(const RateRegion& outer, const RateRegion& inner,
                          double shift);

// CSV: header "r1,r2", one vertex per row, 9 significant digits.
void write_region_csv(std::ostream& os, const RateRegion& region);

}  // namespace imddic
