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

// Small synthetic frames shared by the tests.

#ifndef LIDARSEL_TESTS_SUPPORT_FRAMES_H_
#define LIDARSEL_TESTS_SUPPORT_FRAMES_H_

#include <cstdint>
#include <vector>

#include "lidarsel/depth_frame.h"
#include "lidarsel/geometry.h"
#include "lidarsel/scene.h"

namespace lidarsel::testing {

inline SensorConfig small_sensor(int channels, int columns = 16) {
  SensorConfig s;
  s.n_channels = channels;
  s.visible_channels = channels;
  s.columns = columns;
  return s;
}

// Flat ground only.
inline DepthFrame planar_frame(int channels, int columns = 16,
                               double height_m = 2.0) {
  SceneSpec spec;
  spec.ground_height_m = height_m;
  return generate_scene(spec, small_sensor(channels, columns), 0);
}

// Ground plus `obstacles` random boxes.
inline DepthFrame cluttered_frame(int channels, std::uint64_t seed,
                                  int obstacles = 6, int columns = 16) {
  return generate_scene(random_scene_spec(obstacles),
                        small_sensor(channels, columns), seed);
}

// Blanks every return of `line`.
inline void blank_line(DepthFrame& frame, LineId line) {
  for (LidarLine& l : frame.lines) {
    if (l.line != line) continue;
    for (double& d : l.depths) d = kInvalidDepth;
  }
}

}  // namespace lidarsel::testing

#endif  // LIDARSEL_TESTS_SUPPORT_FRAMES_H_
