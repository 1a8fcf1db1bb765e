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

#include "tacpush/export.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace tacpush {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : ""; }

const std::array<const char*, 29> kCsvColumns{
    "scenario_id", "cell",       "trial",      "seed",
    "tap",         "status",     "x",          "y",
    "z",           "alpha",      "beta",       "gamma",
    "obj_y",       "obj_z",      "obj_alpha",  "in_contact",
    "clamped",     "pred_z",     "pred_alpha", "pred_beta",
    "err_x",       "err_y",      "err_z",      "err_alpha",
    "err_beta",    "err_gamma",  "theta",      "r",
    "v"};
const std::array<const char*, 4> kCsvTail{"alignment_engaged", "r_tip",
                                          "target_y", "target_z"};

std::string header_line() {
  std::string h;
  for (const char* c : kCsvColumns) h += std::string(c) + ",";
  for (std::size_t i = 0; i < kCsvTail.size(); ++i) {
    h += kCsvTail[i];
    if (i + 1 < kCsvTail.size()) h += ",";
  }
  return h;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, int line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') {
    throw ExportError("taps csv line " + std::to_string(line) +
                      ": bad number '" + s + "'");
  }
  return v;
}

std::optional<double> parse_opt(const std::string& s, int line) {
  if (s.empty()) return std::nullopt;
  return parse_double(s, line);
}

json euler_json(const EulerPosed& e) {
  return json::array({e.x, e.y, e.z, e.alpha, e.beta, e.gamma});
}

EulerPosed euler_from(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>(),
          j.at(3).get<double>(), j.at(4).get<double>(), j.at(5).get<double>()};
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(); }

std::optional<double> opt_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

ControlStatus status_from(const std::string& s) {
  for (auto st : {ControlStatus::kContinue, ControlStatus::kTargetReached,
                  ControlStatus::kLostContact}) {
    if (s == to_string(st)) return st;
  }
  throw ExportError("unknown tap status '" + s + "'");
}

Outcome outcome_from(const std::string& s) {
  for (auto o : {Outcome::kReached, Outcome::kLostContact, Outcome::kMaxTaps,
                 Outcome::kPhysicsFault}) {
    if (s == to_string(o)) return o;
  }
  throw ExportError("unknown outcome '" + s + "'");
}

}  // namespace

void write_taps_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
  os << kCsvVersionLine << '\n' << header_line() << '\n';
  for (const auto& rec : records) {
    for (const auto& t : rec.log) {
      const auto& p = t.pusher;
      const auto& pr = t.prediction;
      os << rec.scenario_id << ',' << rec.cell << ',' << rec.trial << ','
         << rec.seed << ',' << t.tap << ',' << to_string(t.status) << ','
         << num(p.x) << ',' << num(p.y) << ',' << num(p.z) << ','
         << num(p.alpha) << ',' << num(p.beta) << ',' << num(p.gamma) << ','
         << num(t.object.y) << ',' << num(t.object.z) << ','
         << num(t.object.alpha) << ',' << (pr.in_contact ? 1 : 0) << ','
         << (pr.clamped ? 1 : 0) << ',' << opt_num(pr.z_depth) << ','
         << opt_num(pr.alpha) << ',' << opt_num(pr.beta) << ',';
      if (t.control) {
        const auto& e = t.control->servo_error;
        os << num(e.x) << ',' << num(e.y) << ',' << num(e.z) << ','
           << num(e.alpha) << ',' << num(e.beta) << ',' << num(e.gamma) << ','
           << num(t.control->theta) << ',' << num(t.control->r) << ','
           << num(t.control->v) << ',' << (t.control->alignment_engaged ? 1 : 0)
           << ',';
      } else {
        os << ",,,,,,,,,,";
      }
      os << num(t.r_tip) << ',' << num(rec.target.y) << ','
         << num(rec.target.z) << '\n';
    }
  }
}

std::vector<CsvTapRow> read_taps_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvVersionLine) {
    throw ExportError("taps csv: missing version line");
  }
  if (!std::getline(is, line) || line != header_line()) {
    throw ExportError("taps csv: unexpected header");
  }
  const std::size_t ncols = kCsvColumns.size() + kCsvTail.size();
  std::vector<CsvTapRow> rows;
  int lineno = 2;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != ncols) {
      throw ExportError("taps csv line " + std::to_string(lineno) +
                        ": expected " + std::to_string(ncols) + " fields");
    }
    auto d = [&](std::size_t i) { return parse_double(f[i], lineno); };
    auto o = [&](std::size_t i) { return parse_opt(f[i], lineno); };
    CsvTapRow r;
    r.scenario_id = f[0];
    r.cell = static_cast<int>(d(1));
    r.trial = static_cast<int>(d(2));
    r.seed = std::strtoull(f[3].c_str(), nullptr, 10);
    r.tap = static_cast<int>(d(4));
    r.status = f[5];
    r.pusher = {d(6), d(7), d(8), d(9), d(10), d(11)};
    r.object = {d(12), d(13), d(14)};
    r.in_contact = f[15] == "1";
    r.clamped = f[16] == "1";
    r.pred_z = o(17);
    r.pred_alpha = o(18);
    r.pred_beta = o(19);
    if (!f[20].empty()) {
      r.servo_error = EulerPosed{d(20), d(21), d(22), d(23), d(24), d(25)};
      r.theta = d(26);
      r.r = d(27);
      r.v = d(28);
      r.alignment_engaged = f[29] == "1";
    }
    r.r_tip = d(30);
    r.target_y = d(31);
    r.target_z = d(32);
    rows.push_back(std::move(r));
  }
  return rows;
}

json records_to_json(const std::vector<TrialRecord>& records) {
  json arr = json::array();
  for (const auto& rec : records) {
    json log = json::array();
    for (const auto& t : rec.log) {
      json e;
      e["tap"] = t.tap;
      e["pusher_mm_deg"] = euler_json(t.pusher);
      e["object_mm_deg"] = {t.object.y, t.object.z, t.object.alpha};
      e["prediction"] = {{"in_contact", t.prediction.in_contact},
                         {"clamped", t.prediction.clamped},
                         {"z_mm", opt_json(t.prediction.z_depth)},
                         {"alpha_deg", opt_json(t.prediction.alpha)},
                         {"beta_deg", opt_json(t.prediction.beta)}};
      if (t.control) {
        const auto& c = *t.control;
        e["control"] = {{"servo_error", euler_json(c.servo_error)},
                        {"servo_correction", euler_json(c.servo_correction)},
                        {"integral", std::vector<double>(c.integral6.data(),
                                                         c.integral6.data() + 6)},
                        {"theta_deg", c.theta},
                        {"r_mm", c.r},
                        {"v_mm", c.v},
                        {"alignment_engaged", c.alignment_engaged},
                        {"reacquiring", c.reacquiring}};
      } else {
        e["control"] = nullptr;
      }
      e["status"] = to_string(t.status);
      e["r_tip_mm"] = t.r_tip;
      log.push_back(std::move(e));
    }
    json j;
    j["scenario_id"] = rec.scenario_id;
    j["cell"] = rec.cell;
    j["trial"] = rec.trial;
    j["seed"] = rec.seed;
    j["shape"] = shape_to_json(rec.shape);
    j["target_mm_deg"] = euler_json(rec.target);
    j["outcome"] = to_string(rec.outcome);
    j["y_targ_mm"] = opt_json(rec.y_targ);
    j["tap_total"] = rec.tap_total;
    j["wall_time_ms"] = rec.wall_time_ms;
    j["diagnostic"] = rec.diagnostic;
    j["log"] = std::move(log);
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<TrialRecord> records_from_json(const json& doc) {
  if (!doc.is_array()) throw ExportError("records: expected an array");
  std::vector<TrialRecord> out;
  try {
    for (const auto& j : doc) {
      TrialRecord rec;
      rec.scenario_id = j.at("scenario_id").get<std::string>();
      rec.cell = j.at("cell").get<int>();
      rec.trial = j.at("trial").get<int>();
      rec.seed = j.at("seed").get<std::uint64_t>();
      rec.shape = shape_from_json(j.at("shape"));
      rec.target = euler_from(j.at("target_mm_deg"));
      rec.outcome = outcome_from(j.at("outcome").get<std::string>());
      rec.y_targ = opt_from(j.at("y_targ_mm"));
      rec.tap_total = j.at("tap_total").get<int>();
      rec.wall_time_ms = j.at("wall_time_ms").get<double>();
      rec.diagnostic = j.at("diagnostic").get<std::string>();
      for (const auto& e : j.at("log")) {
        TapLog t;
        t.tap = e.at("tap").get<int>();
        t.pusher = euler_from(e.at("pusher_mm_deg"));
        const auto& o = e.at("object_mm_deg");
        t.object = {o.at(0).get<double>(), o.at(1).get<double>(),
                    o.at(2).get<double>()};
        const auto& p = e.at("prediction");
        t.prediction.in_contact = p.at("in_contact").get<bool>();
        t.prediction.clamped = p.at("clamped").get<bool>();
        t.prediction.z_depth = opt_from(p.at("z_mm"));
        t.prediction.alpha = opt_from(p.at("alpha_deg"));
        t.prediction.beta = opt_from(p.at("beta_deg"));
        const auto& c = e.at("control");
        if (!c.is_null()) {
          ControlTrace tr;
          tr.servo_error = euler_from(c.at("servo_error"));
          tr.servo_correction = euler_from(c.at("servo_correction"));
          tr.integral6 = euler_from(c.at("integral")).vector();
          tr.theta = c.at("theta_deg").get<double>();
          tr.r = c.at("r_mm").get<double>();
          tr.v = c.at("v_mm").get<double>();
          tr.alignment_engaged = c.at("alignment_engaged").get<bool>();
          tr.reacquiring = c.at("reacquiring").get<bool>();
          t.control = tr;
        }
        t.status = status_from(e.at("status").get<std::string>());
        t.r_tip = e.at("r_tip_mm").get<double>();
        rec.log.push_back(std::move(t));
      }
      out.push_back(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw ExportError(std::string("records: ") + e.what());
  } catch (const std::exception& e) {
    if (dynamic_cast<const ExportError*>(&e)) throw;
    throw ExportError(std::string("records: ") + e.what());
  }
  return out;
}

json metrics_to_json(const Metrics& m) {
  return {{"trials", m.trials},
          {"reached", m.reached},
          {"success_rate", m.success_rate},
          {"mean_y_targ_mm", m.mean_y_targ},
          {"std_y_targ_mm", m.std_y_targ},
          {"taps", {{"min", m.taps_min},
                    {"max", m.taps_max},
                    {"mean", m.taps_mean},
                    {"median", m.taps_median}}},
          {"lost_contact", m.lost_contact},
          {"max_taps", m.max_taps},
          {"physics_fault", m.physics_fault}};
}

std::string render_svg(const std::vector<TrialRecord>& records, int every,
                       double target_radius) {
  if (records.empty()) throw ExportError("no records to plot");
  if (every < 1) throw ExportError("plot interval must be positive");
  static const std::array<const char*, 8> kPalette{
      "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
      "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

  double lo_y = std::numeric_limits<double>::infinity(), hi_y = -lo_y;
  double lo_z = lo_y, hi_z = -lo_y;
  auto grow = [&](double y, double z, double pad) {
    lo_y = std::min(lo_y, y - pad);
    hi_y = std::max(hi_y, y + pad);
    lo_z = std::min(lo_z, z - pad);
    hi_z = std::max(hi_z, z + pad);
  };
  struct Item {
    std::vector<std::vector<Vec2>> outlines;
    std::vector<Vec2> path;
  };
  std::vector<Item> items;
  for (const auto& rec : records) {
    grow(rec.target.y, rec.target.z, target_radius);
    Item it;
    for (std::size_t i = 0; i < rec.log.size(); ++i) {
      const auto& t = rec.log[i];
      it.path.emplace_back(t.pusher.y, t.pusher.z);
      grow(t.pusher.y, t.pusher.z, 0);
      if (i % every == 0 || i + 1 == rec.log.size()) {
        it.outlines.push_back(outline_world(rec.shape, t.object, 48));
        for (const auto& v : it.outlines.back()) grow(v.x(), v.y(), 0);
      }
    }
    items.push_back(std::move(it));
  }
  const double margin = 20;
  const double w = hi_y - lo_y + 2 * margin;
  const double h = hi_z - lo_z + 2 * margin;
  auto sx = [&](double y) { return num(y - lo_y + margin); };
  auto sy = [&](double z) { return num(hi_z - z + margin); };
  auto points = [&](const std::vector<Vec2>& pts) {
    std::string s;
    for (const auto& p : pts) s += sx(p.x()) + "," + sy(p.y()) + " ";
    return s;
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w)
     << "\" height=\"" << num(h) << "\" viewBox=\"0 0 " << num(w) << ' '
     << num(h) << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t k = 0; k < records.size(); ++k) {
    const char* col = kPalette[k % kPalette.size()];
    const auto& rec = records[k];
    os << "<g id=\"trial-" << k << "\">\n<title>" << rec.scenario_id
       << " trial " << rec.trial << ": " << to_string(rec.outcome)
       << "</title>\n";
    for (const auto& o : items[k].outlines) {
      os << "<polygon points=\"" << points(o) << "\" fill=\"none\" stroke=\""
         << col << "\" stroke-opacity=\"0.5\" stroke-width=\"1\"/>\n";
    }
    if (!items[k].path.empty()) {
      os << "<polyline points=\"" << points(items[k].path)
         << "\" fill=\"none\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
    }
    os << "<circle cx=\"" << sx(rec.target.y) << "\" cy=\"" << sy(rec.target.z)
       << "\" r=\"" << num(target_radius)
       << "\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n"
       << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ExportError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw ExportError("read failed: " + path.string());
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ExportError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw ExportError("write failed: " + path.string());
}

void write_outputs(const std::filesystem::path& dir,
                   const std::vector<TrialRecord>& records,
                   const Metrics& metrics) {
  if (records.empty()) throw ExportError("no records to export");
  // Render everything first so a failure leaves no partial output.
  std::ostringstream csv;
  write_taps_csv(csv, records);
  const std::string svg = render_svg(records);
  const std::string rec_json = records_to_json(records).dump(1) + "\n";
  const std::string met_json = metrics_to_json(metrics).dump(2) + "\n";

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ExportError("cannot create " + dir.string() + ": " + ec.message());
  write_text_file(dir / "records.json", rec_json);
  write_text_file(dir / "taps.csv", csv.str());
  write_text_file(dir / "metrics.json", met_json);
  write_text_file(dir / "trajectories.svg", svg);
}

}  // namespace tacpush
