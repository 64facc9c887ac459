// Copyright 2026 The lidarsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lidarsel/scene.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "lidarsel/errors.h"
#include "lidarsel/numeric.h"

namespace lidarsel {
namespace {

using nlohmann::json;

constexpr std::uint64_t kObstacleStream = 0x6f62737461636c65ULL;
constexpr std::uint64_t kNoiseStream = 0x6e6f697365ULL;

double number_field(const json& j, const std::string& field) {
  if (!j.is_number()) throw ValidationError(field, "must be a number");
  return j.get<double>();
}

}  // namespace

void SceneSpec::validate() const {
  if (!(ground_height_m > 0) || !std::isfinite(ground_height_m)) {
    throw ValidationError("ground_height_m", "must be positive");
  }
  if (!(noise_sigma_mm >= 0) || !std::isfinite(noise_sigma_mm)) {
    throw ValidationError("noise_sigma_mm", "must be >= 0");
  }
  if (random_obstacles < 0) {
    throw ValidationError("random_obstacles", "must be >= 0");
  }
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const Obstacle& o = obstacles[i];
    const std::string field = "obstacles[" + std::to_string(i) + "]";
    if (!(o.distance_m > 0) || !std::isfinite(o.distance_m)) {
      throw ValidationError(field + ".distance_m",
                            "obstacle must be in front of the sensor");
    }
    if (!(o.y_min_m < o.y_max_m) || !std::isfinite(o.y_min_m) ||
        !std::isfinite(o.y_max_m)) {
      throw ValidationError(field + ".x_span", "needs finite min < max");
    }
    if (!(o.height_m > 0) || !std::isfinite(o.height_m)) {
      throw ValidationError(field + ".height_m", "must be positive");
    }
  }
}

SceneSpec parse_scene_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "malformed scene JSON");
  }
  if (!doc.is_object()) throw ValidationError("scene", "must be a JSON object");

  SceneSpec spec;
  for (const auto& [key, value] : doc.items()) {
    if (key == "ground_height_m") {
      spec.ground_height_m = number_field(value, key);
    } else if (key == "noise_sigma_mm") {
      spec.noise_sigma_mm = number_field(value, key);
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) {
        throw ValidationError(key, "must be a non-negative integer");
      }
      spec.seed = value.get<std::uint64_t>();
    } else if (key == "random_obstacles") {
      if (!value.is_number_integer()) {
        throw ValidationError(key, "must be an integer");
      }
      spec.random_obstacles = value.get<int>();
    } else if (key == "obstacles") {
      if (!value.is_array()) throw ValidationError(key, "must be an array");
      for (std::size_t i = 0; i < value.size(); ++i) {
        const std::string prefix = "obstacles[" + std::to_string(i) + "]";
        const json& item = value[i];
        if (!item.is_object()) {
          throw ValidationError(prefix, "must be an object");
        }
        Obstacle o;
        bool has_distance = false, has_span = false, has_height = false;
        for (const auto& [okey, ovalue] : item.items()) {
          const std::string field = prefix + "." + okey;
          if (okey == "distance_m") {
            o.distance_m = number_field(ovalue, field);
            has_distance = true;
          } else if (okey == "height_m") {
            o.height_m = number_field(ovalue, field);
            has_height = true;
          } else if (okey == "x_span") {
            if (!ovalue.is_array() || ovalue.size() != 2) {
              throw ValidationError(field, "must be [min, max]");
            }
            o.y_min_m = number_field(ovalue[0], field);
            o.y_max_m = number_field(ovalue[1], field);
            has_span = true;
          } else {
            throw ValidationError(field, "unknown key");
          }
        }
        if (!has_distance) throw ValidationError(prefix + ".distance_m", "missing");
        if (!has_span) throw ValidationError(prefix + ".x_span", "missing");
        if (!has_height) throw ValidationError(prefix + ".height_m", "missing");
        spec.obstacles.push_back(o);
      }
    } else {
      throw ValidationError(key, "unknown key");
    }
  }
  spec.validate();
  return spec;
}

SceneSpec load_scene_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scene spec " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scene_spec(buffer.str());
}

std::string scene_spec_to_json(const SceneSpec& spec) {
  json doc;
  doc["ground_height_m"] = spec.ground_height_m;
  doc["noise_sigma_mm"] = spec.noise_sigma_mm;
  doc["seed"] = spec.seed;
  doc["random_obstacles"] = spec.random_obstacles;
  doc["obstacles"] = json::array();
  for (const Obstacle& o : spec.obstacles) {
    doc["obstacles"].push_back({{"distance_m", o.distance_m},
                                {"x_span", {o.y_min_m, o.y_max_m}},
                                {"height_m", o.height_m}});
  }
  return doc.dump(2);
}

std::optional<RayHit> cast_ray(const SceneSpec& spec,
                               std::span<const Obstacle> obstacles,
                               double depression_rad, double azimuth_rad,
                               double max_range_m) {
  const double h = spec.ground_height_m;
  const double cos_d = std::cos(depression_rad);
  const Point3 dir{cos_d * std::cos(azimuth_rad), cos_d * std::sin(azimuth_rad),
                   -std::sin(depression_rad)};

  double best_t = std::numeric_limits<double>::infinity();
  bool ground = false;
  if (dir.z < 0) {
    best_t = h / -dir.z;
    ground = true;
  }
  if (dir.x > 0) {
    for (const Obstacle& o : obstacles) {
      const double t = o.distance_m / dir.x;
      if (t >= best_t) continue;
      const double y = t * dir.y;
      const double z = h + t * dir.z;
      if (y < o.y_min_m || y > o.y_max_m || z < 0 || z > o.height_m) continue;
      best_t = t;
      ground = false;
    }
  }
  if (!std::isfinite(best_t)) return std::nullopt;

  RayHit hit;
  hit.point = {best_t * dir.x, best_t * dir.y, h + best_t * dir.z};
  hit.horizontal_range_m = best_t * cos_d;
  hit.ground = ground;
  if (hit.horizontal_range_m > max_range_m) return std::nullopt;
  return hit;
}

std::vector<Obstacle> draw_obstacles(int count, std::uint64_t seed) {
  Rng rng(derive_seed(seed, kObstacleStream));
  auto uniform = [&rng](double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
  };
  std::vector<Obstacle> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Obstacle o;
    if (uniform01(rng) < 0.6) {
      // Vehicle.
      o.distance_m = uniform(5.0, 40.0);
      const double width = uniform(1.6, 4.5);
      const double center = uniform(-20.0, 20.0);
      o.y_min_m = center - 0.5 * width;
      o.y_max_m = center + 0.5 * width;
      o.height_m = uniform(1.3, 1.8);
    } else {
      // Building front or wall.
      o.distance_m = uniform(12.0, 80.0);
      const double width = uniform(4.0, 30.0);
      const double center = uniform(-40.0, 40.0);
      o.y_min_m = center - 0.5 * width;
      o.y_max_m = center + 0.5 * width;
      o.height_m = uniform(3.0, 12.0);
    }
    out.push_back(o);
  }
  return out;
}

std::vector<Obstacle> scene_obstacles(const SceneSpec& spec,
                                      std::uint64_t seed) {
  std::vector<Obstacle> all = spec.obstacles;
  const std::vector<Obstacle> extra = draw_obstacles(spec.random_obstacles, seed);
  all.insert(all.end(), extra.begin(), extra.end());
  return all;
}

DepthFrame generate_scene(const SceneSpec& spec, const SensorConfig& config,
                          std::uint64_t seed) {
  spec.validate();
  config.validate();
  const std::vector<Obstacle> obstacles = scene_obstacles(spec, seed);
  const int h = config.image_rows();
  const int w = config.columns;

  std::vector<double> azimuth(w);
  for (int c = 0; c < w; ++c) azimuth[c] = config.column_azimuth_rad(c);

  DepthFrame frame;
  frame.ground_truth = DepthGrid(h, w);
  for (int r = 0; r < h; ++r) {
    const double depression = deg_to_rad(config.row_depression_deg(r));
    for (int c = 0; c < w; ++c) {
      const auto hit = cast_ray(spec, obstacles, depression, azimuth[c],
                                config.max_range_m);
      if (hit) frame.ground_truth.at(r, c) = std::round(hit->point.x * 1000.0);
    }
  }

  Rng noise_rng(derive_seed(seed, kNoiseStream));
  std::normal_distribution<double> noise(0.0, 1.0);
  frame.lines.reserve(config.n_channels);
  for (LineId line = config.n_channels; line >= 1; --line) {
    LidarLine l;
    l.line = line;
    l.row = config.line_row(line);
    l.depths.resize(w);
    for (int c = 0; c < w; ++c) {
      double d = frame.ground_truth.at(l.row, c);
      if (spec.noise_sigma_mm > 0 && is_valid_depth(d)) {
        d = std::round(d + spec.noise_sigma_mm * noise(noise_rng));
        if (d <= 0) d = kInvalidDepth;
      }
      l.depths[c] = d;
    }
    frame.lines.push_back(std::move(l));
  }
  return frame;
}

SceneSpec random_scene_spec(int n_obstacles, double noise_sigma_mm) {
  SceneSpec spec;
  spec.random_obstacles = n_obstacles;
  spec.noise_sigma_mm = noise_sigma_mm;
  return spec;
}

}  // namespace lidarsel
