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

#ifndef LIDARSEL_DEPTH_FRAME_H_
#define LIDARSEL_DEPTH_FRAME_H_

#include <cmath>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "lidarsel/game.h"

namespace lidarsel {

inline constexpr double kInvalidDepth = std::numeric_limits<double>::quiet_NaN();

inline bool is_valid_depth(double d) { return std::isfinite(d) && d > 0; }

// Row-major H x W depths in millimeters; NaN marks "no depth".
class DepthGrid {
 public:
  DepthGrid() = default;
  DepthGrid(int rows, int cols, double fill = kInvalidDepth);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  double& at(int r, int c) { return data_[index(r, c)]; }
  double at(int r, int c) const { return data_[index(r, c)]; }

  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Returns of one scan line: one depth per image column (NaN = no return).
struct LidarLine {
  LineId line = 0;
  int row = 0;
  std::vector<double> depths;
};

// Dense ground truth plus the sparse per-line lidar measurements. `lines`
// holds every line 1..D, ordered topmost first (ascending pixel row).
struct DepthFrame {
  DepthGrid ground_truth;
  std::vector<LidarLine> lines;

  int n_lines() const { return static_cast<int>(lines.size()); }
  int rows() const { return ground_truth.rows(); }
  int cols() const { return ground_truth.cols(); }

  const LidarLine& line(LineId id) const;

  // Checks the frame invariants; throws ValidationError.
  void validate() const;
};

// Text format:
//   H W n_lines
//   H rows of W depths (mm, "nan" when invalid)
//   n_lines rows of: line_id pixel_row followed by W lidar depths
// Numbers use the shortest representation that reads back bit-exactly.
void write_frame(std::ostream& out, const DepthFrame& frame);
DepthFrame read_frame(std::istream& in);

void save_frame(const std::string& path, const DepthFrame& frame);
DepthFrame load_frame(const std::string& path);

// Shortest round-trip decimal form of `value`; "nan" for NaN.
std::string format_number(double value);

}  // namespace lidarsel

#endif  // LIDARSEL_DEPTH_FRAME_H_
