// Copyright 2026 The tacpush Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TACPUSH_POSE_MATH_HPP_
#define TACPUSH_POSE_MATH_HPP_

#include <cmath>
#include <numbers>

#include <Eigen/Core>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace tacpush {

template <typename Scalar>
using Vector6 = Eigen::Matrix<Scalar, 6, 1>;

using Vector6d = Vector6<double>;

template <typename Scalar>
constexpr Scalar deg_to_rad(Scalar deg) {
  return deg * std::numbers::pi_v<Scalar> / Scalar(180);
}

template <typename Scalar>
constexpr Scalar rad_to_deg(Scalar rad) {
  return rad * Scalar(180) / std::numbers::pi_v<Scalar>;
}

/// Wraps an angle in degrees into (-180, 180].
template <typename Scalar>
Scalar normalize_angle_deg(Scalar deg) {
  Scalar r = std::remainder(deg, Scalar(360));
  if (r <= Scalar(-180)) r += Scalar(360);
  return r;
}

/// Rigid transform: p_A = rotation * p_B + translation.
///
/// Composition follows the frame-chain convention, so `a * b` maps frame C
/// into frame A when `a` is A<-B and `b` is B<-C. Translations are in mm.
template <typename Scalar>
class Transform {
 public:
  using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
  using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
  using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;

  Transform() : rotation_(Matrix3::Identity()), translation_(Vector3::Zero()) {}
  Transform(const Matrix3& rotation, const Vector3& translation)
      : rotation_(rotation), translation_(translation) {}

  static Transform Identity() { return Transform(); }
  static Transform Translation(const Vector3& t) {
    return Transform(Matrix3::Identity(), t);
  }
  static Transform Rotation(const Matrix3& r) {
    return Transform(r, Vector3::Zero());
  }

  const Matrix3& rotation() const { return rotation_; }
  const Vector3& translation() const { return translation_; }
  Matrix3& rotation() { return rotation_; }
  Vector3& translation() { return translation_; }

  Matrix4 matrix() const {
    Matrix4 m = Matrix4::Identity();
    m.template topLeftCorner<3, 3>() = rotation_;
    m.template topRightCorner<3, 1>() = translation_;
    return m;
  }

  Transform operator*(const Transform& rhs) const {
    return Transform(rotation_ * rhs.rotation_,
                     rotation_ * rhs.translation_ + translation_);
  }

  Vector3 operator*(const Vector3& point) const {
    return rotation_ * point + translation_;
  }

  Transform inverse() const {
    const Matrix3 rt = rotation_.transpose();
    return Transform(rt, -(rt * translation_));
  }

  /// Largest elementwise deviation of R^T R from the identity.
  Scalar orthonormality_drift() const {
    return (rotation_.transpose() * rotation_ - Matrix3::Identity())
        .cwiseAbs()
        .maxCoeff();
  }

  template <typename Other>
  Transform<Other> cast() const {
    return Transform<Other>(rotation_.template cast<Other>(),
                            translation_.template cast<Other>());
  }

  bool isApprox(const Transform& other, Scalar tol) const {
    return (matrix() - other.matrix()).cwiseAbs().maxCoeff() <= tol;
  }

 private:
  Matrix3 rotation_;
  Vector3 translation_;
};

using Transformd = Transform<double>;

/// 6-vector pose (x, y, z, alpha, beta, gamma) in mm and degrees. Rotation is
/// extrinsic-xyz: R = Rz(gamma) * Ry(beta) * Rx(alpha).
template <typename Scalar>
struct EulerPose {
  Scalar x = 0;
  Scalar y = 0;
  Scalar z = 0;
  Scalar alpha = 0;
  Scalar beta = 0;
  Scalar gamma = 0;

  static EulerPose FromVector(const Vector6<Scalar>& v) {
    return {v(0), v(1), v(2), v(3), v(4), v(5)};
  }

  Vector6<Scalar> vector() const {
    Vector6<Scalar> v;
    v << x, y, z, alpha, beta, gamma;
    return v;
  }

  bool operator==(const EulerPose&) const = default;
};

using EulerPosed = EulerPose<double>;

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> rot_x(Scalar deg) {
  const Scalar a = deg_to_rad(deg);
  const Scalar c = std::cos(a), s = std::sin(a);
  Eigen::Matrix<Scalar, 3, 3> r;
  r << 1, 0, 0, 0, c, -s, 0, s, c;
  return r;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> rot_y(Scalar deg) {
  const Scalar a = deg_to_rad(deg);
  const Scalar c = std::cos(a), s = std::sin(a);
  Eigen::Matrix<Scalar, 3, 3> r;
  r << c, 0, s, 0, 1, 0, -s, 0, c;
  return r;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> rot_z(Scalar deg) {
  const Scalar a = deg_to_rad(deg);
  const Scalar c = std::cos(a), s = std::sin(a);
  Eigen::Matrix<Scalar, 3, 3> r;
  r << c, -s, 0, s, c, 0, 0, 0, 1;
  return r;
}

template <typename Scalar>
Transform<Scalar> compose(const Transform<Scalar>& a,
                          const Transform<Scalar>& b) {
  return a * b;
}

template <typename Scalar>
Transform<Scalar> inverse(const Transform<Scalar>& t) {
  return t.inverse();
}

template <typename Scalar>
Transform<Scalar> euler_to_transform(const EulerPose<Scalar>& e) {
  return Transform<Scalar>(
      rot_z(e.gamma) * rot_y(e.beta) * rot_x(e.alpha),
      typename Transform<Scalar>::Vector3(e.x, e.y, e.z));
}

/// Inverse of euler_to_transform. Away from gimbal lock alpha is read from the
/// last row and gamma is recovered from alpha-compensated entries, which keeps
/// the reconstruction exact even when cos(beta) is tiny. At gimbal lock
/// (|beta| = 90) gamma is fixed to zero and alpha absorbs the free rotation.
template <typename Scalar>
EulerPose<Scalar> transform_to_euler(const Transform<Scalar>& t) {
  const auto& r = t.rotation();
  EulerPose<Scalar> e;
  e.x = t.translation().x();
  e.y = t.translation().y();
  e.z = t.translation().z();

  const Scalar cb = std::hypot(r(0, 0), r(1, 0));
  const Scalar beta = std::atan2(-r(2, 0), cb);
  Scalar alpha;
  Scalar gamma;
  if (cb < Scalar(1e-12)) {
    gamma = 0;
    alpha = std::atan2(-r(1, 2), r(1, 1));
  } else {
    alpha = std::atan2(r(2, 1), r(2, 2));
    const Scalar sa = std::sin(alpha), ca = std::cos(alpha);
    gamma = std::atan2(sa * r(0, 2) - ca * r(0, 1), ca * r(1, 1) - sa * r(1, 2));
  }
  e.alpha = normalize_angle_deg(rad_to_deg(alpha));
  e.beta = rad_to_deg(beta);
  e.gamma = normalize_angle_deg(rad_to_deg(gamma));
  return e;
}

/// Projects the rotation back onto SO(3) (polar decomposition via SVD).
template <typename Scalar>
Transform<Scalar> reorthonormalize(const Transform<Scalar>& t) {
  using Matrix3 = typename Transform<Scalar>::Matrix3;
  Eigen::JacobiSVD<Matrix3> svd(t.rotation(),
                                Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix3 r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0) {
    Matrix3 u = svd.matrixU();
    u.col(2) *= Scalar(-1);
    r = u * svd.matrixV().transpose();
  }
  return Transform<Scalar>(r, t.translation());
}

/// Re-projects only when R^T R has drifted past `tol`.
template <typename Scalar>
Transform<Scalar> reorthonormalize_if_drifted(const Transform<Scalar>& t,
                                              Scalar tol = Scalar(1e-9)) {
  return t.orthonormality_drift() > tol ? reorthonormalize(t) : t;
}

}  // namespace tacpush

#endif  // TACPUSH_POSE_MATH_HPP_
