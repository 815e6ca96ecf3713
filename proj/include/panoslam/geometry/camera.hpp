#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace panoslam::geom {

struct PixelCoord {
  double u = 0.0;
  double v = 0.0;
};

// Equirectangular panoramic camera covering the full sphere, hence w = 2h.
//
// Camera axes: x right, y down, z forward. A pixel's longitude grows east
// from the forward direction, latitude grows downward, and both map linearly
// to (u, v). Depth throughout the system is range along the viewing ray (a
// panoramic camera has no single optical axis to measure z-depth against).
struct PanoramicCamera {
  int width = 0;
  int height = 0;

  PanoramicCamera() = default;
  PanoramicCamera(int w, int h) : width(w), height(h) {
    if (w <= 0 || h <= 0 || w != 2 * h)
      throw std::invalid_argument("PanoramicCamera: requires w = 2h > 0");
  }
};

inline PixelCoord project(const PanoramicCamera& cam,
                          const Eigen::Vector3d& p_cam) {
  const double n = p_cam.norm();
  if (!(n > 0.0))
    throw std::invalid_argument("project: zero-norm input");
  const double lon = std::atan2(p_cam.x(), p_cam.z());
  const double lat = std::asin(std::clamp(p_cam.y() / n, -1.0, 1.0));
  double u = (lon / (2.0 * std::numbers::pi) + 0.5) * cam.width;
  double v = (lat / std::numbers::pi + 0.5) * cam.height;
  if (u >= cam.width) u -= cam.width;
  if (v >= cam.height) v = std::nextafter(static_cast<double>(cam.height), 0.0);
  return {u, v};
}

// Unit direction through a pixel.
inline Eigen::Vector3d bearing(const PanoramicCamera& cam,
                               const PixelCoord& px) {
  const double lon = (px.u / cam.width - 0.5) * 2.0 * std::numbers::pi;
  const double lat = (px.v / cam.height - 0.5) * std::numbers::pi;
  const double cl = std::cos(lat);
  return {std::sin(lon) * cl, std::sin(lat), std::cos(lon) * cl};
}

// depth is range along the ray, in meters.
inline Eigen::Vector3d unproject(const PanoramicCamera& cam,
                                 const PixelCoord& px, double depth) {
  if (!(depth > 0.0))
    throw std::invalid_argument("unproject: depth must be > 0");
  return depth * bearing(cam, px);
}

}  // namespace panoslam::geom
