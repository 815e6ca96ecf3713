#pragma once

#include <optional>

#include "panoslam/geometry/se3.hpp"

namespace panoslam::geom {

constexpr double kDefaultMinParallaxRad = 1.0 * 3.14159265358979323846 / 180.0;

// Two-view triangulation: midpoint of the common perpendicular of the two
// world-frame rays. Bearings are unit vectors in their camera frames.
// Returns nothing when the parallax angle is below min_parallax or the
// midpoint lies behind either camera along its observed ray; callers are
// expected to treat that as "no map point".
inline std::optional<Eigen::Vector3d> triangulate(
    const PoseSE3& pose_a, const Eigen::Vector3d& bearing_a,
    const PoseSE3& pose_b, const Eigen::Vector3d& bearing_b,
    double min_parallax_rad = kDefaultMinParallaxRad) {
  const Eigen::Vector3d da = pose_a.rotation() * bearing_a;
  const Eigen::Vector3d db = pose_b.rotation() * bearing_b;
  const Eigen::Vector3d ca = pose_a.translation();
  const Eigen::Vector3d cb = pose_b.translation();

  const double cos_par = std::clamp(da.dot(db), -1.0, 1.0);
  if (std::acos(cos_par) < min_parallax_rad) return std::nullopt;

  // Closest points: ca + s da and cb + u db.
  const Eigen::Vector3d r = cb - ca;
  const double d = da.dot(db);
  const double det = d * d - 1.0;  // strictly negative given the parallax gate
  const double s = (d * db.dot(r) - da.dot(r)) / det;
  const double u = (db.dot(r) - d * da.dot(r)) / det;
  if (s <= 0.0 || u <= 0.0) return std::nullopt;

  return 0.5 * (ca + s * da + cb + u * db);
}

}  // namespace panoslam::geom
