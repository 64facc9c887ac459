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

#include "lidarsel/completion.h"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "lidarsel/errors.h"
#include "lidarsel/numeric.h"

namespace lidarsel {
namespace {

struct Anchor {
  int row;
  double depth;
};

// Selected lines ordered top to bottom (ascending row).
std::vector<const LidarLine*> ordered_lines(const DepthFrame& frame,
                                            std::span<const LineId> lines) {
  std::vector<const LidarLine*> out;
  out.reserve(lines.size());
  for (LineId id : lines) {
    if (id < 1 || id > frame.n_lines()) {
      throw DomainError("line " + std::to_string(id) + " outside [1, " +
                        std::to_string(frame.n_lines()) + "]");
    }
    out.push_back(&frame.line(id));
  }
  std::sort(out.begin(), out.end(),
            [](const LidarLine* a, const LidarLine* b) { return a->row < b->row; });
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw DomainError("duplicate line in selection");
  }
  return out;
}

// Calls sink(row, col, value) for every pixel of the completed grid.
// Returns false when the selection holds no valid return.
template <typename Sink>
bool complete_columns(const DepthFrame& frame,
                      const std::vector<const LidarLine*>& lines, Sink&& sink) {
  const int h = frame.rows();
  const int w = frame.cols();

  double total = 0.0;
  std::size_t count = 0;
  for (const LidarLine* l : lines) {
    for (double d : l->depths) {
      if (is_valid_depth(d)) {
        total += d;
        ++count;
      }
    }
  }
  if (count == 0) return false;
  const double frame_mean = total / static_cast<double>(count);

  std::vector<Anchor> anchors;
  anchors.reserve(lines.size());
  for (int c = 0; c < w; ++c) {
    anchors.clear();
    for (const LidarLine* l : lines) {
      const double d = l->depths[c];
      if (is_valid_depth(d)) anchors.push_back({l->row, d});
    }
    if (anchors.empty()) {
      for (int r = 0; r < h; ++r) sink(r, c, frame_mean);
      continue;
    }
    std::size_t next = 0;
    for (int r = 0; r < h; ++r) {
      while (next < anchors.size() && anchors[next].row < r) ++next;
      double value;
      if (next == 0) {
        value = anchors.front().depth;
      } else if (next == anchors.size()) {
        value = anchors.back().depth;
      } else if (anchors[next].row == r) {
        value = anchors[next].depth;
      } else {
        const Anchor& a = anchors[next - 1];
        const Anchor& b = anchors[next];
        const double t = static_cast<double>(r - a.row) / (b.row - a.row);
        value = a.depth + t * (b.depth - a.depth);
      }
      sink(r, c, value);
    }
  }
  return true;
}

}  // namespace

DepthGrid complete_depth(const DepthFrame& frame,
                         std::span<const LineId> lines) {
  if (lines.empty()) throw EmptyInputError("empty line selection");
  const auto ordered = ordered_lines(frame, lines);
  DepthGrid out(frame.rows(), frame.cols());
  const bool ok = complete_columns(
      frame, ordered, [&out](int r, int c, double v) { out.at(r, c) = v; });
  if (!ok) throw EmptyInputError("selected lines carry no valid return");
  return out;
}

double rmse(const DepthGrid& predicted, const DepthGrid& ground_truth) {
  if (predicted.rows() != ground_truth.rows() ||
      predicted.cols() != ground_truth.cols()) {
    throw DomainError("grid shapes differ");
  }
  double sse = 0.0;
  std::size_t n = 0;
  const auto& p = predicted.data();
  const auto& g = ground_truth.data();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!is_valid_depth(g[i])) continue;
    const double e = p[i] - g[i];
    sse += e * e;
    ++n;
  }
  if (n == 0) throw DomainError("no valid ground-truth pixel");
  return std::sqrt(sse / static_cast<double>(n));
}

double mean_ground_truth_depth(std::span<const DepthFrame> frames) {
  double total = 0.0;
  std::size_t count = 0;
  for (const DepthFrame& f : frames) {
    for (double g : f.ground_truth.data()) {
      if (!is_valid_depth(g)) continue;
      total += g;
      ++count;
    }
  }
  if (count == 0) throw DomainError("no valid ground-truth pixel");
  return total / static_cast<double>(count);
}

CompletionCost::CompletionCost(std::shared_ptr<const DepthFrame> frame,
                               GameOptions options)
    : frame_(std::move(frame)) {
  if (!frame_) throw DomainError("null frame");
  prior_depth_ = options.prior_depth_mm
                     ? *options.prior_depth_mm
                     : mean_ground_truth_depth(std::span(frame_.get(), 1));
  if (!std::isfinite(prior_depth_)) {
    throw DomainError("prior depth must be finite");
  }
  double sse = 0.0;
  for (double g : frame_->ground_truth.data()) {
    if (!is_valid_depth(g)) continue;
    const double e = prior_depth_ - g;
    sse += e * e;
    ++valid_pixels_;
  }
  if (valid_pixels_ == 0) throw DomainError("no valid ground-truth pixel");
  prior_cost_ = std::sqrt(sse / static_cast<double>(valid_pixels_));
}

double CompletionCost::operator()(const Coalition& coalition) const {
  if (coalition.width() != frame_->n_lines()) {
    throw DomainError("coalition width does not match frame");
  }
  if (coalition.empty()) return prior_cost_;
  const std::vector<LineId> ids = coalition.lines();
  const auto ordered = ordered_lines(*frame_, ids);
  const DepthGrid& truth = frame_->ground_truth;
  double sse = 0.0;
  const bool ok = complete_columns(*frame_, ordered,
                                   [&](int r, int c, double v) {
                                     const double g = truth.at(r, c);
                                     if (!is_valid_depth(g)) return;
                                     const double e = v - g;
                                     sse += e * e;
                                   });
  if (!ok) return prior_cost_;
  return std::sqrt(sse / static_cast<double>(valid_pixels_));
}

Game make_game(std::shared_ptr<const DepthFrame> frame, GameOptions options) {
  auto cost = std::make_shared<const CompletionCost>(std::move(frame), options);
  Game game;
  game.n_lines = cost->frame().n_lines();
  game.evaluate = [cost](const Coalition& c) { return (*cost)(c); };
  return game;
}

Game make_game(DepthFrame frame, GameOptions options) {
  return make_game(std::make_shared<const DepthFrame>(std::move(frame)),
                   options);
}

Game make_pooled_game(std::span<const DepthFrame> frames,
                      GameOptions options) {
  if (frames.empty()) throw DomainError("no frames to pool");
  if (!options.prior_depth_mm) {
    options.prior_depth_mm = mean_ground_truth_depth(frames);
  }
  auto costs = std::make_shared<std::vector<CompletionCost>>();
  costs->reserve(frames.size());
  for (const DepthFrame& f : frames) {
    if (f.n_lines() != frames.front().n_lines()) {
      throw DomainError("frames disagree on line count");
    }
    costs->emplace_back(std::make_shared<const DepthFrame>(f), options);
  }
  Game game;
  game.n_lines = frames.front().n_lines();
  game.evaluate = [costs](const Coalition& c) {
    CompensatedSum sum;
    for (const CompletionCost& cost : *costs) sum.add(cost(c));
    return sum.value() / static_cast<double>(costs->size());
  };
  return game;
}

}  // namespace lidarsel
