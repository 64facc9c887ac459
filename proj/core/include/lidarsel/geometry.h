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

#ifndef LIDARSEL_GEOMETRY_H_
#define LIDARSEL_GEOMETRY_H_

#include <numbers>
#include <optional>

#include "lidarsel/game.h"

namespace lidarsel {

// Axes: x front, y left, z up. Meters.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Spinning-lidar layout. Line D (the topmost) points `top_depression_deg`
// below the horizon; every lower line adds `angular_resolution_deg` of
// depression. With the defaults line 64 sits at 0.5 deg and line 1 at 32 deg.
//
// The image used by the depth-completion surrogate spans exactly the rows
// between the top and the bottom line, `rows_per_line` pixel rows per line
// spacing, and `columns` azimuth samples over `horizontal_fov_deg`.
struct SensorConfig {
  int n_channels = 64;
  int visible_channels = 42;
  double vertical_fov_deg = 26.9;
  double angular_resolution_deg = 0.5;
  // Unset means "one angular step below the horizon".
  std::optional<double> top_depression_deg;
  double height_m = 2.0;
  double max_range_m = 300.0;
  int columns = 64;
  double horizontal_fov_deg = 60.0;
  int rows_per_line = 2;

  // Throws ValidationError naming the offending field.
  void validate() const;

  double top_depression() const {
    return top_depression_deg.value_or(angular_resolution_deg);
  }
  int image_rows() const { return (n_channels - 1) * rows_per_line + 1; }
  // Pixel row of a line; the topmost line is row 0.
  int line_row(LineId line) const {
    return (n_channels - line) * rows_per_line;
  }
  // Depression below the horizon of pixel row `row`, degrees.
  double row_depression_deg(double row) const {
    return top_depression() + row * angular_resolution_deg / rows_per_line;
  }
  // Azimuth of pixel column `col`, radians; column 0 looks furthest left.
  double column_azimuth_rad(int col) const;
};

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

// Elevation of `p` above the horizontal plane through `sensor`, radians.
// Throws DomainError when the two points coincide.
double elevation_angle(const Point3& p, const Point3& sensor);

// Depression of `line` below the horizon, degrees.
double depression_angle_deg(LineId line, const SensorConfig& config);

// Nearest line for elevation `theta` (radians). Returns nullopt when theta
// is further than half a step from every line.
std::optional<LineId> angle_to_line(double theta, const SensorConfig& config);

// Horizontal distance at which `line` meets flat ground for a sensor
// mounted `height_m` above it: h / tan(depression). nullopt when the line
// does not point below the horizon.
std::optional<double> line_ground_distance(LineId line, double height_m,
                                           const SensorConfig& config);

}  // namespace lidarsel

#endif  // LIDARSEL_GEOMETRY_H_
