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

// Synthetic scenes: a flat ground plane plus axis-aligned vertical boxes
// facing the sensor, ray cast analytically into a DepthFrame.

#ifndef LIDARSEL_SCENE_H_
#define LIDARSEL_SCENE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lidarsel/depth_frame.h"
#include "lidarsel/geometry.h"

namespace lidarsel {

// Vertical rectangle in the plane x = distance_m, covering lateral offsets
// [y_min_m, y_max_m] and heights [0, height_m] above the ground.
struct Obstacle {
  double distance_m = 0.0;
  double y_min_m = 0.0;
  double y_max_m = 0.0;
  double height_m = 0.0;
};

// JSON form:
//   {"ground_height_m": 2.0,
//    "obstacles": [{"distance_m": 10, "x_span": [-5, 5], "height_m": 3}],
//    "noise_sigma_mm": 0, "seed": 1, "random_obstacles": 0}
// ground_height_m is the sensor height above the ground plane. x_span is
// the obstacle's lateral extent across the image (meters, left positive).
// random_obstacles adds that many obstacles drawn from the frame seed.
struct SceneSpec {
  double ground_height_m = 2.0;
  std::vector<Obstacle> obstacles;
  double noise_sigma_mm = 0.0;
  std::uint64_t seed = 0;
  int random_obstacles = 0;

  // Throws ValidationError naming the offending field.
  void validate() const;
};

SceneSpec parse_scene_spec(const std::string& json_text);
SceneSpec load_scene_spec(const std::string& path);
std::string scene_spec_to_json(const SceneSpec& spec);

struct RayHit {
  Point3 point;
  // Distance from the sensor foot, measured in the ground plane.
  double horizontal_range_m = 0.0;
  bool ground = false;
};

// First intersection of the ray leaving the sensor at `depression_rad`
// below the horizon and azimuth `azimuth_rad` (left positive). nullopt on
// a miss or beyond `max_range_m` horizontally.
std::optional<RayHit> cast_ray(const SceneSpec& spec,
                               std::span<const Obstacle> obstacles,
                               double depression_rad, double azimuth_rad,
                               double max_range_m);

// Obstacles drawn for `seed`: a mix of car-sized boxes and building fronts.
std::vector<Obstacle> draw_obstacles(int count, std::uint64_t seed);

// Fixed obstacles plus the random ones drawn for `seed`.
std::vector<Obstacle> scene_obstacles(const SceneSpec& spec,
                                      std::uint64_t seed);

// Ground truth is the forward (x) distance of the first hit at every pixel,
// in whole millimeters. Lidar line returns reuse the rays of their pixel
// rows, plus optional Gaussian jitter. Deterministic in `seed`.
DepthFrame generate_scene(const SceneSpec& spec, const SensorConfig& config,
                          std::uint64_t seed);

// A scene with only random obstacles (for experiments and tests).
SceneSpec random_scene_spec(int n_obstacles, double noise_sigma_mm = 0.0);

}  // namespace lidarsel

#endif  // LIDARSEL_SCENE_H_
