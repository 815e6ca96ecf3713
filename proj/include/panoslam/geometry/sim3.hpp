#pragma once

#include <stdexcept>

#include "panoslam/geometry/se3.hpp"

namespace panoslam::geom {

// Similarity transform: T(p) = s R p + t, s > 0.
//
// Tangent vectors are ordered [upsilon(3), omega(3), sigma(1)] where upsilon
// is the translational part, omega the rotation vector and sigma = log(s).
class Sim3 {
 public:
  using Tangent = Eigen::Matrix<double, 7, 1>;

  Sim3()
      : q_(Eigen::Quaterniond::Identity()),
        t_(Eigen::Vector3d::Zero()),
        s_(1.0) {}

  Sim3(const Eigen::Quaterniond& q, const Eigen::Vector3d& t, double s)
      : q_(q.normalized()), t_(t), s_(s) {
    if (!(s_ > 0.0)) throw std::invalid_argument("Sim3: scale must be > 0");
  }

  explicit Sim3(const PoseSE3& pose, double s = 1.0)
      : Sim3(pose.rotation(), pose.translation(), s) {}

  static Sim3 identity() { return Sim3(); }

  const Eigen::Quaterniond& rotation() const { return q_; }
  const Eigen::Vector3d& translation() const { return t_; }
  double scale() const { return s_; }

  // Rigid pose with the scale folded into the translation, the usual way a
  // similarity-corrected keyframe pose is written back to SE(3).
  PoseSE3 to_se3_rescaled() const { return PoseSE3(q_, t_ / s_); }

  Eigen::Vector3d transform(const Eigen::Vector3d& p) const {
    return s_ * (q_ * p) + t_;
  }

  Sim3 compose(const Sim3& rhs) const {
    return Sim3(q_ * rhs.q_, s_ * (q_ * rhs.t_) + t_, s_ * rhs.s_);
  }

  Sim3 operator*(const Sim3& rhs) const { return compose(rhs); }

  Sim3 inverse() const {
    const Eigen::Quaterniond qi = q_.conjugate();
    return Sim3(qi, qi * (-t_ / s_), 1.0 / s_);
  }

  static Sim3 exp(const Tangent& xi) {
    const Eigen::Vector3d upsilon = xi.head<3>();
    const Eigen::Vector3d omega = xi.segment<3>(3);
    const double sigma = xi(6);
    return Sim3(exp_so3(omega), left_jacobian(sigma, omega) * upsilon,
                std::exp(sigma));
  }

  Tangent log() const {
    Tangent xi;
    const double sigma = std::log(s_);
    const Eigen::Vector3d omega = log_so3(q_);
    xi.head<3>() =
        left_jacobian(sigma, omega).partialPivLu().solve(t_);
    xi.segment<3>(3) = omega;
    xi(6) = sigma;
    return xi;
  }

  // W(sigma, omega) = integral_0^1 exp(sigma u) exp(u [omega]x) du, the matrix
  // relating the translational tangent to the translation of exp().
  static Eigen::Matrix3d left_jacobian(double sigma,
                                       const Eigen::Vector3d& omega) {
    const double theta = omega.norm();
    const Eigen::Matrix3d o = skew(omega);

    if (theta < 0.05 && std::abs(sigma) < 0.05) {
      // Power series of integral exp(u M) du with M = sigma I + [omega]x;
      // converges to machine precision well before k = 16 in this range.
      const Eigen::Matrix3d m = sigma * Eigen::Matrix3d::Identity() + o;
      Eigen::Matrix3d w = Eigen::Matrix3d::Identity();
      Eigen::Matrix3d term = Eigen::Matrix3d::Identity();
      double fact = 1.0;
      for (int k = 1; k <= 16; ++k) {
        term = term * m;
        fact *= static_cast<double>(k + 1);
        w += term / fact;
      }
      return w;
    }

    const double s = std::exp(sigma);
    const double small_sigma = 1e-9;
    const double c =
        std::abs(sigma) < small_sigma ? 1.0 + 0.5 * sigma : (s - 1.0) / sigma;
    double a, b;
    if (theta < 1e-9) {
      // sigma is not small here (the series branch would have caught that).
      a = (s * (sigma - 1.0) + 1.0) / (sigma * sigma);
      b = (s * (sigma * sigma - 2.0 * sigma + 2.0) - 2.0) /
          (2.0 * sigma * sigma * sigma);
    } else {
      const double sin_t = std::sin(theta);
      const double cos_t = std::cos(theta);
      const double denom = sigma * sigma + theta * theta;
      a = (s * sin_t * sigma + (1.0 - s * cos_t) * theta) / (theta * denom);
      b = (c - ((s * cos_t - 1.0) * sigma + s * sin_t * theta) / denom) /
          (theta * theta);
    }
    return c * Eigen::Matrix3d::Identity() + a * o + b * o * o;
  }

 private:
  Eigen::Quaterniond q_;
  Eigen::Vector3d t_;
  double s_;
};

}  // namespace panoslam::geom
