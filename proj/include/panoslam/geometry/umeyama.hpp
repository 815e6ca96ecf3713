#pragma once

#include <optional>
#include <vector>

#include <Eigen/Geometry>

#include "panoslam/geometry/sim3.hpp"

namespace panoslam::geom {

// Least-squares alignment dst ~= T(src) over paired 3D points (Umeyama).
// Returns nothing for fewer than 3 pairs or a degenerate (rank < 3 after
// centering, e.g. collinear) point spread.
inline std::optional<Sim3> align_umeyama(
    const std::vector<Eigen::Vector3d>& src,
    const std::vector<Eigen::Vector3d>& dst, bool with_scale) {
  if (src.size() != dst.size() || src.size() < 3) return std::nullopt;
  const Eigen::Index n = static_cast<Eigen::Index>(src.size());
  Eigen::Matrix3Xd a(3, n), b(3, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a.col(i) = src[static_cast<std::size_t>(i)];
    b.col(i) = dst[static_cast<std::size_t>(i)];
  }

  // Rank check on the centered source spread; Umeyama needs a non-collinear
  // configuration to pin down the rotation.
  const Eigen::Vector3d mean = a.rowwise().mean();
  const Eigen::Matrix3Xd centered = a.colwise() - mean;
  Eigen::JacobiSVD<Eigen::Matrix3Xd> svd(centered);
  const double smax = svd.singularValues()(0);
  if (smax <= 0.0 || svd.singularValues()(1) < 1e-9 * smax)
    return std::nullopt;

  const Eigen::Matrix4d t = Eigen::umeyama(a, b, with_scale);
  const Eigen::Matrix3d sr = t.topLeftCorner<3, 3>();
  const double scale = std::cbrt(sr.determinant());
  if (!(scale > 0.0)) return std::nullopt;
  return Sim3(Eigen::Quaterniond(Eigen::Matrix3d(sr / scale)),
              t.topRightCorner<3, 1>(), scale);
}

}  // namespace panoslam::geom
