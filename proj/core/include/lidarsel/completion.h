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

// Interpolation-based depth completion and the RMSE game built on it.

#ifndef LIDARSEL_COMPLETION_H_
#define LIDARSEL_COMPLETION_H_

#include <memory>
#include <optional>
#include <span>

#include "lidarsel/depth_frame.h"
#include "lidarsel/game.h"

namespace lidarsel {

// Completes a dense grid from the returns of `lines`. Per column, values
// are linearly interpolated in pixel-row coordinate between consecutive
// valid returns and held constant above the first and below the last one.
// A column without any valid selected return takes the mean of all valid
// selected returns in the frame. Throws EmptyInputError when the selection
// has no valid return at all.
DepthGrid complete_depth(const DepthFrame& frame,
                         std::span<const LineId> lines);

// Root mean square of (predicted - truth) over pixels with valid truth.
// Throws DomainError on shape mismatch or when no truth pixel is valid.
double rmse(const DepthGrid& predicted, const DepthGrid& ground_truth);

// Mean of the valid ground-truth depths over `frames`. Throws DomainError
// when no pixel is valid.
double mean_ground_truth_depth(std::span<const DepthFrame> frames);

struct GameOptions {
  // Constant depth predicted when no line is used. Unset: the mean valid
  // ground-truth depth of the frame(s) the game is built from.
  std::optional<double> prior_depth_mm;
};

// Cost of a line subset on one frame; shares the frame by pointer so that
// copies of the game stay cheap.
class CompletionCost {
 public:
  CompletionCost(std::shared_ptr<const DepthFrame> frame, GameOptions options);

  // RMSE in mm of complete_depth against the ground truth. Coalitions
  // without any valid return score as the constant prior.
  double operator()(const Coalition& coalition) const;

  double prior_cost() const noexcept { return prior_cost_; }
  double prior_depth() const noexcept { return prior_depth_; }
  const DepthFrame& frame() const noexcept { return *frame_; }

 private:
  std::shared_ptr<const DepthFrame> frame_;
  double prior_depth_ = 0.0;
  double prior_cost_ = 0.0;
  std::size_t valid_pixels_ = 0;
};

// v(K) = RMSE of the completion from K; v(empty) = RMSE of the prior.
//
// Interpolating in pixel rows rather than in inverse depth leaves a residual
// error even with every line: on flat ground with the default sensor, v(all)
// stays below 20% of v(empty). On noiseless piecewise-planar scenes adding a
// line can raise v only across occlusion edges, and by no more than v(all).
Game make_game(DepthFrame frame, GameOptions options = {});
Game make_game(std::shared_ptr<const DepthFrame> frame,
               GameOptions options = {});

// v(K) = mean over `frames` of the single-frame costs, all frames sharing
// one prior (by default the pooled mean ground-truth depth).
Game make_pooled_game(std::span<const DepthFrame> frames,
                      GameOptions options = {});

}  // namespace lidarsel

#endif  // LIDARSEL_COMPLETION_H_
