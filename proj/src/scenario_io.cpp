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

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "tacpush/scenario.hpp"

namespace tacpush {

using nlohmann::json;

namespace {

// Walks one JSON object, remembering which keys were consumed so that
// leftovers can be reported as unknown fields.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path)
      : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ScenarioError(path_, "expected an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  std::string child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    if (!obj_.contains(key)) throw ScenarioError(child(key), "missing");
    return obj_.at(key);
  }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) throw ScenarioError(child(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ScenarioError(child(key), "not finite");
    return d;
  }

  double number_or(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  long long integer(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number_integer()) {
      throw ScenarioError(child(key), "expected an integer");
    }
    return v.get<long long>();
  }

  bool boolean(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_boolean()) throw ScenarioError(child(key), "expected a boolean");
    return v.get<bool>();
  }

  std::string string(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) throw ScenarioError(child(key), "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, std::size_t n) {
    const json& v = raw(key);
    if (!v.is_array() || v.size() != n) {
      throw ScenarioError(child(key),
                          "expected an array of " + std::to_string(n) +
                              " numbers");
    }
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) {
        throw ScenarioError(child(key), "expected an array of numbers");
      }
      out.push_back(e.get<double>());
      if (!std::isfinite(out.back())) {
        throw ScenarioError(child(key), "not finite");
      }
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, _] : obj_.items()) {
      if (!seen_.count(key)) throw ScenarioError(child(key), "unknown field");
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

EulerPosed euler_from(const std::vector<double>& v) {
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

Range range_from(ObjectReader& r, const std::string& key, Range fallback) {
  if (!r.has(key)) return fallback;
  const auto v = r.numbers(key, 2);
  return {v[0], v[1]};
}

Gain6 gain_from(ObjectReader& r, const std::string& key, const Gain6& fallback) {
  if (!r.has(key)) return fallback;
  const auto v = r.numbers(key, 6);
  return Gain6(Vector6d(v[0], v[1], v[2], v[3], v[4], v[5]));
}

json euler_json(const EulerPosed& e) {
  return json::array({e.x, e.y, e.z, e.alpha, e.beta, e.gamma});
}

json diag_json(const Gain6& g) {
  json a = json::array();
  for (int i = 0; i < 6; ++i) a.push_back(g.diagonal()(i));
  return a;
}

Outline outline_from(ObjectReader& r) {
  const bool poly = r.has("polygon_mm");
  const bool circ = r.has("circle_radius_mm");
  if (poly == circ) {
    throw ScenarioError(r.child("polygon_mm"),
                        "give exactly one of polygon_mm or circle_radius_mm");
  }
  if (circ) return Circle{r.number("circle_radius_mm")};
  const json& v = r.raw("polygon_mm");
  if (!v.is_array()) {
    throw ScenarioError(r.child("polygon_mm"), "expected [[y, z], ...]");
  }
  Polygon p;
  for (const auto& e : v) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
        !e[1].is_number()) {
      throw ScenarioError(r.child("polygon_mm"), "expected [[y, z], ...]");
    }
    p.vertices.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return p;
}

ObjectShape object_from(const json& doc, const std::string& path) {
  ObjectReader r(doc, path);
  ObjectShape shape;
  if (r.has("shape")) {
    const std::string name = r.string("shape");
    try {
      shape = builtin_shape(name);
    } catch (const std::out_of_range&) {
      throw ScenarioError(r.child("shape"), "unknown shape '" + name + "'");
    }
  } else {
    const std::string name = r.has("name") ? r.string("name") : "custom";
    Outline outline = outline_from(r);
    const double mass = r.number_or("mass_kg", 0.2);
    if (!(mass > 0)) throw ScenarioError(r.child("mass_kg"), "must be > 0");
    if (const auto* p = std::get_if<Polygon>(&outline)) {
      if (p->vertices.size() < 3 || !(polygon_signed_area(*p) > 0) ||
          !polygon_is_simple(*p)) {
        throw ScenarioError(r.child("polygon_mm"),
                            "polygon must be simple, counter-clockwise and "
                            "have at least 3 vertices");
      }
    }
    shape = make_shape(name, std::move(outline), mass, 0.5, "custom outline");
  }
  if (r.has("name") && r.has("shape")) shape.name = r.string("name");
  if (r.has("cof_offset_mm")) {
    const auto v = r.numbers("cof_offset_mm", 2);
    shape.cof_offset = Vec2(v[0], v[1]);
  }
  shape.f_max = r.number_or("f_max_N", shape.f_max);
  shape.m_max = r.number_or("m_max_Nmm", shape.m_max);
  shape.mu_contact = r.number_or("mu_contact", shape.mu_contact);
  if (r.has("description")) shape.description = r.string("description");
  r.finish();
  return shape;
}

ControllerConfig controller_from(const json& doc, const std::string& path) {
  ObjectReader r(doc, path);
  ControllerConfig c;
  if (r.has("ref_pose_mm_deg")) {
    c.ref_pose = euler_from(r.numbers("ref_pose_mm_deg", 6));
  }
  c.Kp = gain_from(r, "Kp_diag", c.Kp);
  c.Ki = gain_from(r, "Ki_diag", c.Ki);
  c.Kd = gain_from(r, "Kd_diag", c.Kd);
  c.integral_clip_translation =
      range_from(r, "integral_clip_translation_mm", c.integral_clip_translation);
  c.integral_clip_rotation =
      range_from(r, "integral_clip_rotation_deg", c.integral_clip_rotation);
  c.kp = r.number_or("kp", c.kp);
  c.ki = r.number_or("ki", c.ki);
  c.kd = r.number_or("kd", c.kd);
  c.alignment_output_clip =
      range_from(r, "alignment_output_clip_mm", c.alignment_output_clip);
  c.theta_ref = r.number_or("theta_ref_deg", c.theta_ref);
  c.approach_zone_radius =
      r.number_or("approach_zone_radius_mm", c.approach_zone_radius);
  c.termination_radius =
      r.number_or("termination_radius_mm", c.termination_radius);
  c.tap_forward = r.number_or("tap_forward_mm", c.tap_forward);
  c.tap_back = r.number_or("tap_back_mm", c.tap_back);
  if (r.has("reacquire_taps")) {
    c.reacquire_taps = static_cast<int>(r.integer("reacquire_taps"));
  }
  c.reacquire_advance = r.number_or("reacquire_advance_mm", c.reacquire_advance);
  r.finish();
  return c;
}

NoiseModel noise_from(const json& doc, const std::string& path) {
  ObjectReader r(doc, path);
  NoiseModel n;
  if (r.has("enabled")) n.enabled = r.boolean("enabled");
  n.sigma_z = r.number_or("sigma_z_mm", n.sigma_z);
  n.sigma_alpha = r.number_or("sigma_alpha_deg", n.sigma_alpha);
  n.sigma_beta = r.number_or("sigma_beta_deg", n.sigma_beta);
  r.finish();
  return n;
}

}  // namespace

void Scenario::validate() const {
  validate_shape(object);
  controller.validate();
  if (max_taps <= 0) throw InvariantViolation("max_taps must be > 0");
  if (!(tip.radius > 0)) throw InvariantViolation("pusher radius must be > 0");
  if (noise.sigma_z < 0 || noise.sigma_alpha < 0 || noise.sigma_beta < 0) {
    throw InvariantViolation("noise sigmas must be >= 0");
  }
  if (target_pose.vector().isApprox(pusher_start_pose.vector(), 1e-12) ||
      target_pose.vector() == pusher_start_pose.vector()) {
    throw InvariantViolation("target must differ from the pusher start pose");
  }
}

Scenario parse_scenario(const json& doc) {
  ObjectReader r(doc, "");
  Scenario s;
  if (r.has("name")) s.name = r.string("name");
  s.object = object_from(r.raw("object"), "object");
  const auto obj = r.numbers("object_start_pose_mm_deg", 3);
  s.object_start_pose = {obj[0], obj[1], obj[2]};
  s.pusher_start_pose = euler_from(r.numbers("pusher_start_pose_mm_deg", 6));
  if (r.has("target_pose_mm_deg")) {
    s.target_pose = euler_from(r.numbers("target_pose_mm_deg", 6));
  }
  if (r.has("pusher_radius_mm")) s.tip.radius = r.number("pusher_radius_mm");
  if (r.has("controller")) {
    s.controller = controller_from(r.raw("controller"), "controller");
  }
  if (r.has("noise")) s.noise = noise_from(r.raw("noise"), "noise");
  if (r.has("rng_seed")) {
    const long long seed = r.integer("rng_seed");
    if (seed < 0) throw ScenarioError("rng_seed", "must be >= 0");
    s.rng_seed = static_cast<std::uint64_t>(seed);
  }
  if (r.has("max_taps")) s.max_taps = static_cast<int>(r.integer("max_taps"));
  r.finish();
  s.validate();
  return s;
}

Scenario parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ScenarioError("", std::string("parse error: ") + e.what());
  }
  return parse_scenario(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("", "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(std::string_view(buf.str()));
}

json shape_to_json(const ObjectShape& shape) {
  json j;
  j["name"] = shape.name;
  if (shape.is_circle()) {
    j["circle_radius_mm"] = shape.circle().radius;
  } else {
    json verts = json::array();
    for (const auto& v : shape.polygon().vertices) {
      verts.push_back({v.x(), v.y()});
    }
    j["polygon_mm"] = verts;
  }
  j["cof_offset_mm"] = {shape.cof_offset.x(), shape.cof_offset.y()};
  j["f_max_N"] = shape.f_max;
  j["m_max_Nmm"] = shape.m_max;
  j["mu_contact"] = shape.mu_contact;
  j["description"] = shape.description;
  return j;
}

ObjectShape shape_from_json(const json& doc) { return object_from(doc, "object"); }

json catalog_to_json() {
  json a = json::array();
  for (const auto& s : builtin_shapes()) a.push_back(shape_to_json(s));
  return a;
}

json scenario_to_json(const Scenario& s) {
  const ControllerConfig& c = s.controller;
  json j;
  j["name"] = s.name;
  j["object"] = shape_to_json(s.object);
  j["object_start_pose_mm_deg"] = {s.object_start_pose.y, s.object_start_pose.z,
                                   s.object_start_pose.alpha};
  j["pusher_start_pose_mm_deg"] = euler_json(s.pusher_start_pose);
  j["target_pose_mm_deg"] = euler_json(s.target_pose);
  j["pusher_radius_mm"] = s.tip.radius;
  j["controller"] = {
      {"ref_pose_mm_deg", euler_json(c.ref_pose)},
      {"Kp_diag", diag_json(c.Kp)},
      {"Ki_diag", diag_json(c.Ki)},
      {"Kd_diag", diag_json(c.Kd)},
      {"integral_clip_translation_mm",
       {c.integral_clip_translation.lo, c.integral_clip_translation.hi}},
      {"integral_clip_rotation_deg",
       {c.integral_clip_rotation.lo, c.integral_clip_rotation.hi}},
      {"kp", c.kp},
      {"ki", c.ki},
      {"kd", c.kd},
      {"alignment_output_clip_mm",
       {c.alignment_output_clip.lo, c.alignment_output_clip.hi}},
      {"theta_ref_deg", c.theta_ref},
      {"approach_zone_radius_mm", c.approach_zone_radius},
      {"termination_radius_mm", c.termination_radius},
      {"tap_forward_mm", c.tap_forward},
      {"tap_back_mm", c.tap_back},
      {"reacquire_taps", c.reacquire_taps},
      {"reacquire_advance_mm", c.reacquire_advance},
  };
  j["noise"] = {{"enabled", s.noise.enabled},
                {"sigma_z_mm", s.noise.sigma_z},
                {"sigma_alpha_deg", s.noise.sigma_alpha},
                {"sigma_beta_deg", s.noise.sigma_beta}};
  j["rng_seed"] = s.rng_seed;
  j["max_taps"] = s.max_taps;
  return j;
}

}  // namespace tacpush
