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

// Built-in object catalog. Every dimension and mass here is a simulator
// choice sized so the experiment start poses and target are reachable; none
// of them are measured values.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tacpush/scene.hpp"

namespace tacpush {

namespace {

constexpr double kDefaultMuContact = 0.5;

Polygon rectangle(double width_y, double depth_z) {
  const double hy = 0.5 * width_y, hz = 0.5 * depth_z;
  return {{{-hy, -hz}, {hy, -hz}, {hy, hz}, {-hy, hz}}};
}

Polygon equilateral_triangle(double side) {
  // Centroid at the origin, one vertex on +z.
  const double r = side / std::sqrt(3.0);
  Polygon p;
  for (int i = 0; i < 3; ++i) {
    const double a = std::numbers::pi / 2 + 2 * std::numbers::pi * i / 3;
    p.vertices.emplace_back(r * std::cos(a), r * std::sin(a));
  }
  return p;
}

Polygon ellipse(double semi_y, double semi_z, int segments) {
  Polygon p;
  for (int i = 0; i < segments; ++i) {
    const double a = 2 * std::numbers::pi * i / segments;
    p.vertices.emplace_back(semi_y * std::cos(a), semi_z * std::sin(a));
  }
  return p;
}

// Rectangle of length `straight` + 2 * radius along z with round ends.
Polygon stadium(double radius, double straight, int segments_per_end) {
  Polygon p;
  const double h = 0.5 * straight;
  for (int i = 0; i <= segments_per_end; ++i) {
    const double a = std::numbers::pi * i / segments_per_end;
    p.vertices.emplace_back(radius * std::cos(a), h + radius * std::sin(a));
  }
  for (int i = 0; i <= segments_per_end; ++i) {
    const double a = std::numbers::pi + std::numbers::pi * i / segments_per_end;
    p.vertices.emplace_back(radius * std::cos(a), -h + radius * std::sin(a));
  }
  return p;
}

Polygon l_outline(double leg, double thickness) {
  const double o = -0.5 * leg;
  return {{{o, o},
           {o + leg, o},
           {o + leg, o + thickness},
           {o + thickness, o + thickness},
           {o + thickness, o + leg},
           {o, o + leg}}};
}

// Union of two discs centred at (-d/2, 0) and (d/2, 0). Non-convex waist.
Polygon two_lobes(double r1, double r2, double d, int segments) {
  const Vec2 c1(-0.5 * d, 0), c2(0.5 * d, 0);
  const double x = (d * d + r1 * r1 - r2 * r2) / (2 * d);
  const double h = std::sqrt(r1 * r1 - x * x);
  const double a1 = std::atan2(h, x);
  const double a2 = std::atan2(h, x - d);
  Polygon p;
  for (int i = 0; i <= segments; ++i) {
    const double a = a1 + (2 * std::numbers::pi - 2 * a1) * i / segments;
    p.vertices.push_back(c1 + r1 * Vec2(std::cos(a), std::sin(a)));
  }
  for (int i = 1; i < segments; ++i) {
    const double a = -a2 + 2 * a2 * i / segments;
    p.vertices.push_back(c2 + r2 * Vec2(std::cos(a), std::sin(a)));
  }
  return p;
}

// Disc with a rectangular handle on the +y side.
Polygon mug_outline(double radius, double handle_length, double handle_width,
                    int segments) {
  Polygon p;
  const double half = 0.5 * handle_width;
  const double a0 = std::asin(half / radius);
  const double a1 = 2 * std::numbers::pi - a0;
  for (int i = 0; i <= segments; ++i) {
    const double a = a0 + (a1 - a0) * i / segments;
    p.vertices.emplace_back(radius * std::cos(a), radius * std::sin(a));
  }
  p.vertices.emplace_back(radius + handle_length, -half);
  p.vertices.emplace_back(radius + handle_length, half);
  return p;
}

std::vector<ObjectShape> make_catalog() {
  std::vector<ObjectShape> c;
  c.push_back(make_shape("blue_square", rectangle(60, 60), 0.20,
                         kDefaultMuContact, "square prism, side 60 mm"));
  c.push_back(make_shape("red_square", rectangle(45, 45), 0.12,
                         kDefaultMuContact, "square prism, side 45 mm"));
  c.push_back(make_shape("yellow_triangle", equilateral_triangle(75), 0.10,
                         kDefaultMuContact,
                         "equilateral triangular prism, side 75 mm"));
  c.push_back(make_shape("circle", Circle{35}, 0.15, kDefaultMuContact,
                         "circular prism, radius 35 mm"));
  c.push_back(make_shape("green_rectangle", rectangle(80, 50), 0.22,
                         kDefaultMuContact,
                         "rectangular prism, 80 mm x 50 mm"));
  c.push_back(make_shape("mustard_bottle", stadium(28, 40, 8), 0.35,
                         kDefaultMuContact,
                         "stadium footprint, 56 mm wide, 96 mm long"));
  c.push_back(make_shape("spray_bottle", ellipse(42, 30, 24), 0.30,
                         kDefaultMuContact,
                         "elliptical footprint, 84 mm x 60 mm"));
  c.push_back(make_shape("rubiks_cube", rectangle(57, 57), 0.10,
                         kDefaultMuContact, "square footprint, side 57 mm"));
  c.push_back(make_shape("l_shape", l_outline(80, 40), 0.25, kDefaultMuContact,
                         "L outline, legs 80 mm, thickness 40 mm"));
  c.push_back(make_shape("soft_toy", two_lobes(35, 28, 45, 16), 0.05,
                         kDefaultMuContact,
                         "two overlapping discs, radii 35 mm and 28 mm, "
                         "centres 45 mm apart"));
  c.push_back(make_shape("mug", mug_outline(40, 24, 30, 28), 0.30,
                         kDefaultMuContact,
                         "disc radius 40 mm with a 24 mm x 30 mm handle"));
  return c;
}

}  // namespace

const std::vector<ObjectShape>& builtin_shapes() {
  static const std::vector<ObjectShape> catalog = make_catalog();
  return catalog;
}

const ObjectShape& builtin_shape(const std::string& name) {
  for (const auto& s : builtin_shapes()) {
    if (s.name == name) return s;
  }
  throw std::out_of_range("unknown shape '" + name + "'");
}

}  // namespace tacpush
