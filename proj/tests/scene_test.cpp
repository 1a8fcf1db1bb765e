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


#include "tacpush/scene.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "tacpush/scenario.hpp"

namespace tacpush {
namespace {

ObjectShape square(double side) {
  const double h = side / 2;
  return make_shape("sq", Polygon{{{-h, -h}, {h, -h}, {h, h}, {-h, h}}}, 0.2,
                    0.5, "");
}

// Dense boundary sampling in the work frame.
std::vector<Vec2> sample_boundary(const ObjectShape& shape, const PlanarPose& pose,
                                  int n) {
  std::vector<Vec2> pts;
  if (shape.is_circle()) {
    for (int i = 0; i < n; ++i) {
      const double a = 2 * std::numbers::pi * i / n;
      pts.push_back(object_to_world(
          pose, shape.circle().radius * Vec2(std::cos(a), std::sin(a))));
    }
    return pts;
  }
  const auto& v = shape.polygon().vertices;
  double perimeter = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    perimeter += (v[(i + 1) % v.size()] - v[i]).norm();
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % v.size()];
    const int k = std::max(2, static_cast<int>(n * (b - a).norm() / perimeter));
    for (int j = 0; j < k; ++j) {
      pts.push_back(object_to_world(pose, a + (b - a) * (double(j) / k)));
    }
  }
  return pts;
}

TEST(PlanarFrames, HeadingAndLateralAxes) {
  EXPECT_TRUE(heading_axis(0).isApprox(Vec2(0, 1)));
  EXPECT_TRUE(lateral_axis(0).isApprox(Vec2(1, 0)));
  EXPECT_TRUE(heading_axis(90).isApprox(Vec2(-1, 0)));
  EXPECT_NEAR(heading_of(Vec2(-1, 0)), 90, 1e-12);
  EXPECT_NEAR(heading_of(Vec2(1, 1)), -45, 1e-12);
}

TEST(PlanarFrames, AxesMatchTransformColumns) {
  for (double a : {-170.0, -45.0, 0.0, 30.0, 120.0}) {
    const Transformd t = planar_to_transform({3, 4, a});
    const Eigen::Vector3d z = t.rotation().col(2), y = t.rotation().col(1);
    EXPECT_TRUE(heading_axis(a).isApprox(Vec2(z.y(), z.z()), 1e-12));
    EXPECT_TRUE(lateral_axis(a).isApprox(Vec2(y.y(), y.z()), 1e-12));
    const PlanarPose back = transform_to_planar(t);
    EXPECT_NEAR(back.y, 3, 1e-12);
    EXPECT_NEAR(back.z, 4, 1e-12);
    EXPECT_NEAR(normalize_angle_deg(back.alpha - a), 0, 1e-9);
  }
}

TEST(PlanarFrames, ObjectWorldRoundTrip) {
  const PlanarPose pose{10, -20, 37};
  const Vec2 p(4, 9);
  EXPECT_TRUE(world_to_object(pose, object_to_world(pose, p)).isApprox(p, 1e-12));
  EXPECT_TRUE(object_to_world({0, 0, 90}, Vec2(1, 0)).isApprox(Vec2(0, 1), 1e-12));
}

TEST(ClosestBoundary, SquareEdge) {
  const ObjectShape sq = square(1);
  const BoundaryPoint bp = closest_boundary_point(sq, {}, Vec2(10, 0));
  EXPECT_TRUE(bp.point.isApprox(Vec2(0.5, 0), 1e-12));
  EXPECT_TRUE(bp.outward_normal.isApprox(Vec2(1, 0), 1e-12));
  EXPECT_EQ(bp.feature.kind, FeatureKind::kEdge);
  EXPECT_EQ(bp.feature.index, 1);
  EXPECT_NEAR(bp.signed_distance, 9.5, 1e-12);
}

TEST(ClosestBoundary, SquareCornerFromDiagonal) {
  const ObjectShape sq = square(60);
  const BoundaryPoint bp = closest_boundary_point(sq, {}, Vec2(40, 40));
  EXPECT_TRUE(bp.point.isApprox(Vec2(30, 30), 1e-12));
  EXPECT_TRUE(bp.outward_normal.isApprox(Vec2(1, 1).normalized(), 1e-12));
  EXPECT_EQ(bp.feature.kind, FeatureKind::kVertex);
  EXPECT_EQ(bp.feature.index, 2);
  EXPECT_NEAR(bp.signed_distance, 10 * std::sqrt(2.0), 1e-12);
}

TEST(ClosestBoundary, Circle) {
  const ObjectShape c = make_shape("c", Circle{35}, 0.15, 0.5, "");
  const Vec2 p(30, -40);
  const BoundaryPoint bp = closest_boundary_point(c, {}, p);
  EXPECT_TRUE(bp.point.isApprox(35 * p.normalized(), 1e-12));
  EXPECT_TRUE(bp.outward_normal.isApprox(p.normalized(), 1e-12));
  EXPECT_EQ(bp.feature.kind, FeatureKind::kArc);
  EXPECT_NEAR(bp.signed_distance, 15, 1e-12);
}

TEST(ClosestBoundary, InsideIsNegative) {
  const BoundaryPoint bp = closest_boundary_point(square(60), {}, Vec2(25, 0));
  EXPECT_NEAR(bp.signed_distance, -5, 1e-12);
  EXPECT_TRUE(bp.outward_normal.isApprox(Vec2(1, 0), 1e-12));
}

TEST(ClosestBoundary, RespectsObjectPose) {
  const PlanarPose pose{100, 50, 90};
  const BoundaryPoint bp = closest_boundary_point(square(60), pose, Vec2(100, 100));
  EXPECT_TRUE(bp.point.isApprox(Vec2(100, 80), 1e-12));
  EXPECT_TRUE(bp.outward_normal.isApprox(Vec2(0, 1), 1e-12));
  EXPECT_NEAR(bp.signed_distance, 20, 1e-12);
}

TEST(ClosestBoundary, MatchesBruteForceOnCatalog) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-120, 120), ang(-180, 180);
  for (const ObjectShape& shape : builtin_shapes()) {
    const PlanarPose pose{u(rng) / 4, u(rng) / 4, ang(rng)};
    const auto samples = sample_boundary(shape, pose, 10000);
    for (int q = 0; q < 200; ++q) {
      const Vec2 p(u(rng), u(rng));
      double best = std::numeric_limits<double>::infinity();
      for (const Vec2& s : samples) best = std::min(best, (s - p).norm());
      const BoundaryPoint bp = closest_boundary_point(shape, pose, p);
      ASSERT_NEAR(std::abs(bp.signed_distance), best, 0.01) << shape.name;
      ASSERT_NEAR((bp.point - p).norm(), std::abs(bp.signed_distance), 1e-9);
      ASSERT_NEAR(bp.outward_normal.norm(), 1, 1e-12);
      const bool inside =
          point_in_outline(shape.outline, world_to_object(pose, p));
      ASSERT_EQ(bp.signed_distance < 0, inside) << shape.name;
    }
  }
}

TEST(ClosestBoundary, NormalPointsFromBoundaryToExteriorQuery) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-150, 150);
  for (const ObjectShape& shape : builtin_shapes()) {
    for (int q = 0; q < 500; ++q) {
      const Vec2 p(u(rng), u(rng));
      const BoundaryPoint bp = closest_boundary_point(shape, {}, p);
      if (bp.signed_distance > 1e-6) {
        ASSERT_TRUE(bp.outward_normal.isApprox((p - bp.point).normalized(), 1e-9))
            << shape.name;
      }
    }
  }
}

TEST(ClosestBoundary, NormalContinuousAcrossSquareCorner) {
  const ObjectShape sq = square(60);
  Vec2 prev = closest_boundary_point(sq, {}, Vec2(40, 0)).outward_normal;
  for (int i = 1; i <= 1000; ++i) {
    const Vec2 p(40, 60.0 * i / 1000);
    const Vec2 n = closest_boundary_point(sq, {}, p).outward_normal;
    EXPECT_GT(n.dot(prev), 0.99);
    prev = n;
  }
  EXPECT_TRUE(prev.isApprox(Vec2(10, 30).normalized(), 1e-12));
}

TEST(Polygon, AreaCentroidAndConvexity) {
  const ObjectShape sq = square(60);
  EXPECT_NEAR(polygon_signed_area(sq.polygon()), 3600, 1e-9);
  EXPECT_TRUE(polygon_centroid(sq.polygon()).isZero(1e-12));
  EXPECT_TRUE(polygon_is_convex(sq.polygon()));
  EXPECT_TRUE(polygon_is_simple(sq.polygon()));
  const Polygon bowtie{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}};
  EXPECT_FALSE(polygon_is_simple(bowtie));
}

TEST(Shapes, MakeShapeFrictionScales) {
  const ObjectShape sq = square(60);
  EXPECT_TRUE(sq.cof_offset.isZero(1e-12));
  // Mean distance from the centre of a square to its points is 0.3826 * side.
  const double mean_r = 0.38259785 * 60;
  EXPECT_NEAR(sq.m_max / sq.f_max, 0.6 * mean_r, 0.05);
  const ObjectShape heavy = make_shape("h", sq.outline, 0.4, 0.5, "");
  EXPECT_NEAR(heavy.f_max, 2 * sq.f_max, 1e-12);
  EXPECT_NEAR(heavy.friction_radius(), sq.friction_radius(), 1e-12);
}

TEST(Shapes, CatalogEntriesAreValid) {
  for (const ObjectShape& shape : builtin_shapes()) {
    EXPECT_NO_THROW(validate_shape(shape)) << shape.name;
    EXPECT_FALSE(shape.description.empty()) << shape.name;
  }
}

TEST(Shapes, CatalogExamples) {
  const ObjectShape& sq = builtin_shape("blue_square");
  ASSERT_FALSE(sq.is_circle());
  ASSERT_EQ(sq.polygon().vertices.size(), 4u);
  EXPECT_NEAR(polygon_signed_area(sq.polygon()), 3600, 1e-9);
  EXPECT_TRUE(sq.cof_offset.isApprox(polygon_centroid(sq.polygon())));

  const ObjectShape& c = builtin_shape("circle");
  ASSERT_TRUE(c.is_circle());
  EXPECT_EQ(c.circle().radius, 35);

  EXPECT_FALSE(polygon_is_convex(builtin_shape("mug").polygon()));
  EXPECT_FALSE(polygon_is_convex(builtin_shape("soft_toy").polygon()));
  EXPECT_THROW(builtin_shape("no_such_shape"), std::out_of_range);
}

TEST(Shapes, ValidateRejectsBrokenShapes) {
  ObjectShape s = square(60);
  s.f_max = 0;
  EXPECT_THROW(validate_shape(s), InvariantViolation);
  s = square(60);
  std::reverse(std::get<Polygon>(s.outline).vertices.begin(),
               std::get<Polygon>(s.outline).vertices.end());
  EXPECT_THROW(validate_shape(s), InvariantViolation);
  s = square(60);
  s.cof_offset = Vec2(100, 0);
  EXPECT_THROW(validate_shape(s), InvariantViolation);
  s = square(60);
  s.mu_contact = -1;
  EXPECT_THROW(validate_shape(s), InvariantViolation);
}

TEST(Shapes, OutlineWorldFollowsPose) {
  const auto pts = outline_world(square(2), {10, 0, 90});
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_TRUE(pts[0].isApprox(Vec2(11, -1), 1e-12));
  EXPECT_EQ(outline_world(builtin_shape("circle"), {}, 32).size(), 32u);
}

constexpr const char* kBaseline = R"({
  "object": {"shape": "blue_square"},
  "object_start_pose_mm_deg": [0, 50.5, 0],
  "pusher_start_pose_mm_deg": [0, 0, 0, 0, 0, 0],
  "target_pose_mm_deg": [0, 200, 400, 0, 0, 0]
})";

TEST(Scenario, BaselineDefaults) {
  const Scenario s = parse_scenario(std::string_view(kBaseline));
  EXPECT_EQ(s.target_pose.vector(),
            (Vector6d() << 0, 200, 400, 0, 0, 0).finished());
  EXPECT_EQ(s.object.name, "blue_square");
  EXPECT_EQ(s.object_start_pose, (PlanarPose{0, 50.5, 0}));
  const Vector6d kp = (Vector6d() << 0, 0, 0.9, 0.9, 0.9, 0).finished();
  const Vector6d ki = (Vector6d() << 0, 0, 0.1, 0.1, 0.1, 0).finished();
  EXPECT_EQ(s.controller.Kp.diagonal(), kp);
  EXPECT_EQ(s.controller.Ki.diagonal(), ki);
  EXPECT_TRUE(s.controller.Kd.diagonal().isZero());
  EXPECT_EQ(s.tip.radius, 20);
}

TEST(Scenario, ShippedBaselineFile) {
  const Scenario s = load_scenario(TACPUSH_SOURCE_DIR "/scenarios/exp1_baseline.json");
  EXPECT_EQ(s.target_pose.vector(),
            (Vector6d() << 0, 200, 400, 0, 0, 0).finished());
  EXPECT_FALSE(s.noise.enabled);
}

TEST(Scenario, ZeroMaxTapsIsInvariantViolation) {
  auto doc = nlohmann::json::parse(kBaseline);
  doc["max_taps"] = 0;
  EXPECT_THROW(parse_scenario(doc), InvariantViolation);
}

TEST(Scenario, UnknownFieldNamesThePath) {
  auto doc = nlohmann::json::parse(kBaseline);
  doc["noise"] = {{"sigma_q", 1.0}};
  try {
    parse_scenario(doc);
    FAIL() << "expected ScenarioError";
  } catch (const ScenarioError& e) {
    EXPECT_EQ(e.field(), "noise.sigma_q");
  }
}

TEST(Scenario, TypeErrorsNameTheField) {
  auto doc = nlohmann::json::parse(kBaseline);
  doc["object_start_pose_mm_deg"] = {0, "x", 0};
  try {
    parse_scenario(doc);
    FAIL() << "expected ScenarioError";
  } catch (const ScenarioError& e) {
    EXPECT_EQ(e.field(), "object_start_pose_mm_deg");
  }
  EXPECT_THROW(parse_scenario(std::string_view("{not json")), ScenarioError);
  EXPECT_THROW(load_scenario("/nonexistent/file.json"), ScenarioError);
}

TEST(Scenario, UnknownShapeIsRejected) {
  auto doc = nlohmann::json::parse(kBaseline);
  doc["object"]["shape"] = "teapot";
  EXPECT_THROW(parse_scenario(doc), ScenarioError);
}

TEST(Scenario, JsonRoundTrip) {
  auto doc = nlohmann::json::parse(kBaseline);
  doc["object"] = {{"polygon_mm", {{-10, -10}, {10, -10}, {0, 20}}},
                   {"mass_kg", 0.1}};
  doc["controller"] = {{"kp", 0.3}};
  doc["noise"] = {{"sigma_z_mm", 0.25}};
  doc["rng_seed"] = 99;
  const Scenario s = parse_scenario(doc);
  const Scenario back = parse_scenario(scenario_to_json(s));
  EXPECT_EQ(back.controller.kp, 0.3);
  EXPECT_EQ(back.noise.sigma_z, 0.25);
  EXPECT_EQ(back.rng_seed, 99u);
  EXPECT_EQ(back.object.polygon().vertices, s.object.polygon().vertices);
  EXPECT_EQ(back.object.f_max, s.object.f_max);
  EXPECT_EQ(back.object.m_max, s.object.m_max);
}

TEST(Scenario, WorkFrameInBase) {
  EXPECT_EQ(work_frame_in_base().vector(),
            (Vector6d() << -85, -330, 70, 180, -90, 0).finished());
}

}  // namespace
}  // namespace tacpush
