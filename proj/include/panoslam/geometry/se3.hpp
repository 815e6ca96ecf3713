#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace panoslam::geom {

// Rotation helpers on the unit-quaternion chart.

inline Eigen::Quaterniond exp_so3(const Eigen::Vector3d& omega) {
  const double theta = omega.norm();
  if (theta < 1e-12) {
    Eigen::Quaterniond q(1.0, 0.5 * omega.x(), 0.5 * omega.y(),
                         0.5 * omega.z());
    q.normalize();
    return q;
  }
  return Eigen::Quaterniond(Eigen::AngleAxisd(theta, omega / theta));
}

inline Eigen::Vector3d log_so3(const Eigen::Quaterniond& q_in) {
  Eigen::Quaterniond q = q_in.normalized();
  if (q.w() < 0.0) q.coeffs() = -q.coeffs();
  const Eigen::Vector3d v(q.x(), q.y(), q.z());
  const double vn = v.norm();
  if (vn < 1e-12) return 2.0 * v / q.w();
  const double angle = 2.0 * std::atan2(vn, q.w());
  return v * (angle / vn);
}

inline Eigen::Matrix3d skew(const Eigen::Vector3d& w) {
  Eigen::Matrix3d s;
  s << 0.0, -w.z(), w.y(), w.z(), 0.0, -w.x(), -w.y(), w.x(), 0.0;
  return s;
}

// Rigid transform, stored as unit quaternion plus translation. Composition is
// T(p) = R p + t; a camera pose maps camera-frame points into the world.
class PoseSE3 {
 public:
  PoseSE3() : q_(Eigen::Quaterniond::Identity()), t_(Eigen::Vector3d::Zero()) {}

  PoseSE3(const Eigen::Quaterniond& q, const Eigen::Vector3d& t)
      : q_(q.normalized()), t_(t) {}

  PoseSE3(const Eigen::Matrix3d& rot, const Eigen::Vector3d& t)
      : q_(Eigen::Quaterniond(rot).normalized()), t_(t) {}

  static PoseSE3 identity() { return PoseSE3(); }

  const Eigen::Quaterniond& rotation() const { return q_; }
  const Eigen::Vector3d& translation() const { return t_; }
  Eigen::Matrix3d rotation_matrix() const { return q_.toRotationMatrix(); }

  Eigen::Vector3d transform(const Eigen::Vector3d& p) const {
    return q_ * p + t_;
  }

  PoseSE3 compose(const PoseSE3& rhs) const {
    return PoseSE3(q_ * rhs.q_, q_ * rhs.t_ + t_);
  }

  PoseSE3 operator*(const PoseSE3& rhs) const { return compose(rhs); }

  PoseSE3 inverse() const {
    const Eigen::Quaterniond qi = q_.conjugate();
    return PoseSE3(qi, qi * (-t_));
  }

 private:
  Eigen::Quaterniond q_;
  Eigen::Vector3d t_;
};

}  // namespace panoslam::geom
