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

#include "lidarsel/geometry.h"

#include <cmath>
#include <string>

#include "lidarsel/errors.h"

namespace lidarsel {

void SensorConfig::validate() const {
  if (n_channels < 1 || n_channels > kMaxLines) {
    throw ValidationError("n_channels", "must be in [1, 64]");
  }
  if (visible_channels < 0 || visible_channels > n_channels) {
    throw ValidationError("visible_channels", "must be in [0, n_channels]");
  }
  if (!(angular_resolution_deg > 0)) {
    throw ValidationError("angular_resolution_deg", "must be positive");
  }
  if (!(vertical_fov_deg > 0)) {
    throw ValidationError("vertical_fov_deg", "must be positive");
  }
  if (top_depression_deg && !std::isfinite(*top_depression_deg)) {
    throw ValidationError("top_depression_deg", "must be finite");
  }
  if (top_depression() + (n_channels - 1) * angular_resolution_deg >= 90.0) {
    throw ValidationError("angular_resolution_deg",
                          "bottom line would point at or past the nadir");
  }
  if (!(height_m > 0)) throw ValidationError("height_m", "must be positive");
  if (!(max_range_m > 0)) {
    throw ValidationError("max_range_m", "must be positive");
  }
  if (columns < 1) throw ValidationError("columns", "must be >= 1");
  if (!(horizontal_fov_deg >= 0 && horizontal_fov_deg < 180)) {
    throw ValidationError("horizontal_fov_deg", "must be in [0, 180)");
  }
  if (rows_per_line < 1) {
    throw ValidationError("rows_per_line", "must be >= 1");
  }
}

double SensorConfig::column_azimuth_rad(int col) const {
  if (columns == 1) return 0.0;
  const double step = horizontal_fov_deg / (columns - 1);
  return deg_to_rad(0.5 * horizontal_fov_deg - col * step);
}

double elevation_angle(const Point3& p, const Point3& sensor) {
  const double dx = p.x - sensor.x;
  const double dy = p.y - sensor.y;
  const double dz = p.z - sensor.z;
  const double norm = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (norm == 0.0) {
    throw DomainError("elevation angle undefined for coincident points");
  }
  return std::asin(dz / norm);
}

double depression_angle_deg(LineId line, const SensorConfig& config) {
  if (line < 1 || line > config.n_channels) {
    throw DomainError("line " + std::to_string(line) + " outside [1, " +
                      std::to_string(config.n_channels) + "]");
  }
  return config.top_depression() +
         (config.n_channels - line) * config.angular_resolution_deg;
}

std::optional<LineId> angle_to_line(double theta,
                                    const SensorConfig& config) {
  const double steps = (-rad_to_deg(theta) - config.top_depression()) /
                       config.angular_resolution_deg;
  const double nearest = std::round(steps);
  if (!std::isfinite(steps) || std::fabs(steps - nearest) > 0.5) {
    return std::nullopt;
  }
  const double line = config.n_channels - nearest;
  if (line < 1 || line > config.n_channels) return std::nullopt;
  return static_cast<LineId>(line);
}

std::optional<double> line_ground_distance(LineId line, double height_m,
                                           const SensorConfig& config) {
  if (!(height_m > 0)) throw DomainError("height must be positive");
  const double depression = depression_angle_deg(line, config);
  if (!(depression > 0.0) || depression > 90.0) return std::nullopt;
  return height_m / std::tan(deg_to_rad(depression));
}

}  // namespace lidarsel
