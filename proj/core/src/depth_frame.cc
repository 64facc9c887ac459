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

#include "lidarsel/depth_frame.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

#include "lidarsel/errors.h"

namespace lidarsel {
namespace {

bool acceptable_depth(double d) { return std::isnan(d) || is_valid_depth(d); }

std::string next_token(std::istream& in, const char* what) {
  std::string token;
  if (!(in >> token)) {
    throw ParseError("<eof>", std::string("unexpected end of frame, expected ") +
                                  what);
  }
  return token;
}

double parse_depth(std::istream& in) {
  const std::string token = next_token(in, "depth");
  if (token == "nan") return kInvalidDepth;
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(token, "malformed depth value");
  }
  return value;
}

int parse_int(std::istream& in, const char* what) {
  const std::string token = next_token(in, what);
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(token, std::string("malformed ") + what);
  }
  return value;
}

}  // namespace

DepthGrid::DepthGrid(int rows, int cols, double fill)
    : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw DomainError("negative grid dimensions");
  data_.assign(static_cast<std::size_t>(rows) * cols, fill);
}

const LidarLine& DepthFrame::line(LineId id) const {
  // Topmost first: line D at index 0.
  const int index = n_lines() - id;
  if (index < 0 || index >= n_lines() || lines[index].line != id) {
    throw DomainError("frame has no line " + std::to_string(id));
  }
  return lines[index];
}

void DepthFrame::validate() const {
  const int h = rows();
  const int w = cols();
  if (h < 1 || w < 1) throw ValidationError("frame", "empty ground truth");
  if (n_lines() < 1 || n_lines() > kMaxLines) {
    throw ValidationError("frame", "line count must be in [1, 64]");
  }
  for (double d : ground_truth.data()) {
    if (!acceptable_depth(d)) {
      throw ValidationError("ground_truth", "depth must be > 0 or nan");
    }
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const LidarLine& l = lines[i];
    const std::string field = "line " + std::to_string(l.line);
    if (l.line != n_lines() - static_cast<int>(i)) {
      throw ValidationError(field, "lines must be 1..D ordered topmost first");
    }
    if (l.row < 0 || l.row >= h) throw ValidationError(field, "row outside image");
    if (i > 0 && l.row <= lines[i - 1].row) {
      throw ValidationError(field,
                            "rows must strictly increase as line ids decrease");
    }
    if (static_cast<int>(l.depths.size()) != w) {
      throw ValidationError(field, "needs one depth per column");
    }
    for (double d : l.depths) {
      if (!acceptable_depth(d)) {
        throw ValidationError(field, "depth must be > 0 or nan");
      }
    }
  }
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_frame(std::ostream& out, const DepthFrame& frame) {
  out << frame.rows() << ' ' << frame.cols() << ' ' << frame.n_lines() << '\n';
  for (int r = 0; r < frame.rows(); ++r) {
    for (int c = 0; c < frame.cols(); ++c) {
      if (c) out << ' ';
      out << format_number(frame.ground_truth.at(r, c));
    }
    out << '\n';
  }
  for (const LidarLine& l : frame.lines) {
    out << l.line << ' ' << l.row;
    for (double d : l.depths) out << ' ' << format_number(d);
    out << '\n';
  }
}

DepthFrame read_frame(std::istream& in) {
  const int h = parse_int(in, "row count");
  const int w = parse_int(in, "column count");
  const int n = parse_int(in, "line count");
  if (h < 1 || w < 1 || n < 1 || n > kMaxLines) {
    throw ValidationError("header", "dimensions out of range");
  }
  DepthFrame frame;
  frame.ground_truth = DepthGrid(h, w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) frame.ground_truth.at(r, c) = parse_depth(in);
  }
  frame.lines.resize(n);
  for (int i = 0; i < n; ++i) {
    LidarLine l;
    l.line = parse_int(in, "line id");
    l.row = parse_int(in, "pixel row");
    l.depths.resize(w);
    for (int c = 0; c < w; ++c) l.depths[c] = parse_depth(in);
    frame.lines[i] = std::move(l);
  }
  std::string extra;
  if (in >> extra) throw ParseError(extra, "trailing data after frame");
  std::sort(frame.lines.begin(), frame.lines.end(),
            [](const LidarLine& a, const LidarLine& b) {
              return a.line > b.line;
            });
  frame.validate();
  return frame;
}

void save_frame(const std::string& path, const DepthFrame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  write_frame(out, frame);
  if (!out) throw InputError("failed writing " + path);
}

DepthFrame load_frame(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return read_frame(in);
}

}  // namespace lidarsel
