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


#include "tacpush/pose_math.hpp"

#include <gtest/gtest.h>

#include <random>

#include <Eigen/Geometry>

namespace tacpush {
namespace {

using Eigen::AngleAxisd;
using Eigen::Matrix3d;
using Eigen::Vector3d;

// Independent construction through Eigen's angle-axis type.
Matrix3d oracle_rotation(double a, double b, double g) {
  const double k = std::numbers::pi / 180;
  return (AngleAxisd(g * k, Vector3d::UnitZ()) *
          AngleAxisd(b * k, Vector3d::UnitY()) *
          AngleAxisd(a * k, Vector3d::UnitX()))
      .toRotationMatrix();
}

double angle_gap(double a, double b) {
  return std::abs(normalize_angle_deg(a - b));
}

Transformd random_transform(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(-180, 180), pos(-500, 500);
  const EulerPosed e{pos(rng), pos(rng), pos(rng), ang(rng), ang(rng) / 2,
                     ang(rng)};
  return euler_to_transform(e);
}

TEST(PoseMath, NormalizeAngleHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(normalize_angle_deg(180.0), 180.0);
  EXPECT_DOUBLE_EQ(normalize_angle_deg(-180.0), 180.0);
  EXPECT_DOUBLE_EQ(normalize_angle_deg(540.0), 180.0);
  EXPECT_DOUBLE_EQ(normalize_angle_deg(-190.0), 170.0);
  EXPECT_DOUBLE_EQ(normalize_angle_deg(359.0), -1.0);
  EXPECT_DOUBLE_EQ(normalize_angle_deg(0.0), 0.0);
}

TEST(PoseMath, ElementaryRotationsMatchAngleAxis) {
  for (double d : {-135.0, -90.0, 0.0, 30.0, 90.0, 179.0}) {
    const double k = std::numbers::pi / 180;
    EXPECT_TRUE(rot_x(d).isApprox(
        AngleAxisd(d * k, Vector3d::UnitX()).toRotationMatrix(), 1e-12));
    EXPECT_TRUE(rot_y(d).isApprox(
        AngleAxisd(d * k, Vector3d::UnitY()).toRotationMatrix(), 1e-12));
    EXPECT_TRUE(rot_z(d).isApprox(
        AngleAxisd(d * k, Vector3d::UnitZ()).toRotationMatrix(), 1e-12));
  }
}

TEST(PoseMath, ComposeWithIdentity) {
  std::mt19937_64 rng(1);
  const Transformd t = random_transform(rng);
  EXPECT_TRUE(compose(Transformd::Identity(), t).isApprox(t, 1e-12));
  EXPECT_TRUE(compose(t, Transformd::Identity()).isApprox(t, 1e-12));
}

TEST(PoseMath, ComposeWithInverseIsIdentity) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const Transformd t = random_transform(rng);
    EXPECT_TRUE(compose(t, inverse(t)).isApprox(Transformd::Identity(), 1e-9));
    EXPECT_TRUE(compose(inverse(t), t).isApprox(Transformd::Identity(), 1e-9));
  }
}

TEST(PoseMath, TwoQuarterTurnsAboutXMakeAHalfTurn) {
  const Transformd q = Transformd::Rotation(rot_x(90.0));
  const Matrix3d half{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
  EXPECT_TRUE(compose(q, q).rotation().isApprox(half, 1e-12));
  EXPECT_TRUE(compose(q, q).isApprox(Transformd::Rotation(rot_x(180.0)), 1e-12));
}

TEST(PoseMath, InverseOfSimpleTransforms) {
  EXPECT_TRUE(inverse(Transformd::Identity()).isApprox(Transformd::Identity(), 0));
  const Transformd t = Transformd::Translation(Vector3d(1, 2, 3));
  EXPECT_TRUE(inverse(t).isApprox(Transformd::Translation(Vector3d(-1, -2, -3)), 0));
}

TEST(PoseMath, InverseMatchesGeneralMatrixInverse) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Transformd t = random_transform(rng);
    EXPECT_LT((inverse(t).matrix() - t.matrix().inverse()).cwiseAbs().maxCoeff(),
              1e-9);
  }
}

TEST(PoseMath, CompositionIsAssociative) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    const Transformd a = random_transform(rng), b = random_transform(rng),
                     c = random_transform(rng);
    EXPECT_TRUE((a * b * c).isApprox(a * (b * c), 1e-9));
  }
}

TEST(PoseMath, ComposeAppliesRightOperandFirst) {
  const Transformd a = Transformd::Translation(Vector3d(10, 0, 0));
  const Transformd b = Transformd::Rotation(rot_z(90.0));
  // a * b maps the point (1, 0, 0) through b first: (0, 1, 0) + (10, 0, 0).
  EXPECT_TRUE((a * b * Vector3d(1, 0, 0)).isApprox(Vector3d(10, 1, 0), 1e-12));
}

TEST(PoseMath, ZeroPoseIsIdentity) {
  EXPECT_TRUE(euler_to_transform(EulerPosed{}).isApprox(Transformd::Identity(), 0));
}

TEST(PoseMath, WorkFramePose) {
  const Transformd t = euler_to_transform(EulerPosed{-85, -330, 70, 180, -90, 0});
  // Rz(0) Ry(-90) Rx(180), written out by hand.
  const Matrix3d expected{{0, 0, 1}, {0, -1, 0}, {1, 0, 0}};
  EXPECT_LT((t.rotation() - expected).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_TRUE(t.translation().isApprox(Vector3d(-85, -330, 70)));
  EXPECT_TRUE(t.rotation().isApprox(oracle_rotation(180, -90, 0), 1e-12));
}

TEST(PoseMath, AlphaQuarterTurnMapsYToZ) {
  const Transformd t = euler_to_transform(EulerPosed{0, 0, 0, 90, 0, 0});
  EXPECT_LT((t.rotation() * Vector3d::UnitY() - Vector3d::UnitZ()).norm(), 1e-12);
}

TEST(PoseMath, EulerToTransformMatchesOracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(-180, 180);
  for (int i = 0; i < 1000; ++i) {
    const double a = ang(rng), b = ang(rng), g = ang(rng);
    const Transformd t = euler_to_transform(EulerPosed{1, 2, 3, a, b, g});
    EXPECT_TRUE(t.rotation().isApprox(oracle_rotation(a, b, g), 1e-12));
  }
}

TEST(PoseMath, IdentityToZeroPose) {
  const EulerPosed e = transform_to_euler(Transformd::Identity());
  EXPECT_EQ(e.vector(), Vector6d::Zero());
}

TEST(PoseMath, GimbalLockPicksZeroGamma) {
  const EulerPosed e = transform_to_euler(Transformd::Rotation(rot_y(-90.0)));
  EXPECT_NEAR(e.alpha, 0, 1e-9);
  EXPECT_NEAR(e.beta, -90, 1e-9);
  EXPECT_EQ(e.gamma, 0);
}

TEST(PoseMath, GimbalLockTransformRoundTrip) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ang(-180, 180);
  for (double beta : {90.0, -90.0}) {
    for (int i = 0; i < 500; ++i) {
      const Transformd t =
          euler_to_transform(EulerPosed{3, -4, 5, ang(rng), beta, ang(rng)});
      const EulerPosed e = transform_to_euler(t);
      EXPECT_EQ(e.gamma, 0);
      EXPECT_TRUE(euler_to_transform(e).isApprox(t, 1e-9));
    }
  }
}

TEST(PoseMath, EulerRoundTripAwayFromGimbalLock) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(-180, 180), tilt(-85, 85),
      pos(-1000, 1000);
  for (int i = 0; i < 10000; ++i) {
    const EulerPosed e{pos(rng), pos(rng), pos(rng), ang(rng), tilt(rng), ang(rng)};
    const EulerPosed r = transform_to_euler(euler_to_transform(e));
    ASSERT_NEAR(r.x, e.x, 1e-9);
    ASSERT_NEAR(r.y, e.y, 1e-9);
    ASSERT_NEAR(r.z, e.z, 1e-9);
    ASSERT_LT(angle_gap(r.alpha, e.alpha), 1e-6);
    ASSERT_LT(angle_gap(r.beta, e.beta), 1e-6);
    ASSERT_LT(angle_gap(r.gamma, e.gamma), 1e-6);
  }
}

TEST(PoseMath, TransformRoundTrip) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 10000; ++i) {
    const Transformd t = random_transform(rng);
    ASSERT_TRUE(euler_to_transform(transform_to_euler(t)).isApprox(t, 1e-9));
  }
}

TEST(PoseMath, EulerAnglesAreNormalized) {
  const Transformd t = euler_to_transform(EulerPosed{0, 0, 0, 180, 0, 0});
  const EulerPosed e = transform_to_euler(t);
  EXPECT_GT(e.alpha, -180);
  EXPECT_LE(e.alpha, 180);
  EXPECT_NEAR(std::abs(e.alpha), 180, 1e-9);
}

TEST(PoseMath, ReorthonormalizeRemovesDrift) {
  std::mt19937_64 rng(9);
  Transformd t = random_transform(rng);
  t.rotation()(0, 1) += 1e-6;
  t.rotation()(2, 0) -= 2e-6;
  ASSERT_GT(t.orthonormality_drift(), 1e-9);
  const Transformd fixed = reorthonormalize_if_drifted(t);
  EXPECT_LT(fixed.orthonormality_drift(), 1e-12);
  EXPECT_NEAR(fixed.rotation().determinant(), 1.0, 1e-12);
  EXPECT_LT((fixed.rotation() - t.rotation()).cwiseAbs().maxCoeff(), 1e-5);
  EXPECT_EQ(fixed.translation(), t.translation());
}

TEST(PoseMath, ReorthonormalizeLeavesCleanTransformsAlone) {
  std::mt19937_64 rng(10);
  const Transformd t = random_transform(rng);
  EXPECT_TRUE(reorthonormalize_if_drifted(t).isApprox(t, 0));
}

TEST(PoseMath, LongCompositionChainStaysOrthonormal) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> small(-3, 3);
  Transformd t;
  for (int i = 0; i < 20000; ++i) {
    t = reorthonormalize_if_drifted(
        t * euler_to_transform(EulerPosed{small(rng), small(rng), small(rng),
                                          small(rng), small(rng), small(rng)}));
  }
  EXPECT_LE(t.orthonormality_drift(), 1e-9);
}

TEST(PoseMath, FloatInstantiation) {
  const Transform<float> t = euler_to_transform(EulerPose<float>{1, 2, 3, 30, 20, 10});
  const EulerPose<float> e = transform_to_euler(t);
  EXPECT_NEAR(e.alpha, 30.0f, 1e-3f);
  EXPECT_NEAR(e.beta, 20.0f, 1e-3f);
  EXPECT_NEAR(e.gamma, 10.0f, 1e-3f);
  EXPECT_TRUE(t.cast<double>().isApprox(
      euler_to_transform(EulerPosed{1, 2, 3, 30, 20, 10}), 1e-5));
}

}  // namespace
}  // namespace tacpush
