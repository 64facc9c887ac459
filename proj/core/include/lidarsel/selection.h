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

// Budgeted line selection: plain ranking prefixes, baselines, and the
// spread-aware variants that trade Shapley rank against spatial coverage.
//
// Spread terminology: for a selection of N lines, R is the smallest block
// of consecutive lines containing all of them and S = |R| - N counts the
// unselected lines inside that block. S == 0 means the lines are huddled
// together.

#ifndef LIDARSEL_SELECTION_H_
#define LIDARSEL_SELECTION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lidarsel/completion.h"
#include "lidarsel/depth_frame.h"
#include "lidarsel/game.h"
#include "lidarsel/kernel_shap.h"

namespace lidarsel {

struct Selection {
  std::vector<LineId> lines;  // ascending, distinct
  int budget = 0;
};

// Sorts, checks distinctness and range. Throws DomainError.
Selection make_selection(std::vector<LineId> lines, int n_lines);

struct SpreadStats {
  LineId min_line = 0;
  LineId max_line = 0;
  int region_size = 0;
  int spread = 0;
};

SpreadStats spread_stats(const Selection& selection, int n_lines);

// "42-52-56-64": ascending line ids joined by '-'.
std::string format_line_config(std::span<const LineId> lines);
// Throws ParseError naming the offending token (malformed number, empty
// token, duplicate or out-of-range line). n_lines == 0 skips the range
// check above 1.
Selection parse_line_config(const std::string& text, int n_lines = kMaxLines);

enum class SelectionMethod {
  kShapleyTop,
  kSpaced,
  kRandom,
  kSasConstant,
  kSasFlexible,
};

std::string to_string(SelectionMethod method);
SelectionMethod parse_selection_method(const std::string& name);

enum class RankingMode { kGlobal, kLocal };

std::string to_string(RankingMode mode);
RankingMode parse_ranking_mode(const std::string& name);

// How the flexible variant turns rank positions into draw probabilities.
enum class CandidateWeighting {
  // w = D - position + 1 (position 1 = best line).
  kLinear,
  // w = exp(-(position - 1) / temperature).
  kSoftmax,
};

std::string to_string(CandidateWeighting weighting);
CandidateWeighting parse_candidate_weighting(const std::string& name);

struct FlexibleOptions {
  int n_candidates = 350;
  CandidateWeighting weighting = CandidateWeighting::kSoftmax;
  // Softmax temperature in rank positions. Unset: the budget.
  std::optional<double> temperature;
};

struct SelectionConfig {
  SelectionMethod method = SelectionMethod::kShapleyTop;
  int budget = 8;
  int min_gap = 1;        // sas_constant
  int spread_budget = 8;  // sas_flexible
  FlexibleOptions flexible;
  RankingMode mode = RankingMode::kLocal;
  std::uint64_t seed = 0;

  void validate() const;
};

// First `budget` entries of the ranking.
Selection select_top_k(const ShapleyRanking& ranking, int budget);

// Lines n_lines - j * floor(n_lines / budget), j = 0 .. budget - 1.
Selection select_equally_spaced(int n_lines, int budget);

// Uniform budget-subset, deterministic in `seed`.
Selection select_random(int n_lines, int budget, std::uint64_t seed);

// Walks down the ranking and accepts a line when it is at least
// min_gap + 1 away from every line accepted so far. Throws InfeasibleError
// when the budget cannot be met.
Selection select_sas_constant(const ShapleyRanking& ranking, int budget,
                              int min_gap);

struct FlexibleResult {
  Selection selection;
  double cost = 0.0;
  int survivors = 0;      // candidates within the spread budget
  bool fallback = false;  // no survivor; used the ranking prefix instead
};

// Draws `n_candidates` budget-subsets with rank-dependent probabilities,
// keeps those with spread <= spread_budget, and returns the one with the
// lowest cost under `game` (ties: lexicographically smallest line set). With
// no survivor, falls back to select_sas_constant(k = 0) over the top
// budget + spread_budget lines.
FlexibleResult sas_flexible_search(const ShapleyRanking& ranking, int budget,
                                   int spread_budget, const Game& game,
                                   std::uint64_t seed,
                                   const FlexibleOptions& options = {});

Selection select_sas_flexible(const ShapleyRanking& ranking, int budget,
                              int spread_budget, const Game& game,
                              std::uint64_t seed,
                              const FlexibleOptions& options = {});

// Dispatches on config.method. `game` is required by sas_flexible only.
Selection select_lines(const SelectionConfig& config,
                       const ShapleyRanking& ranking, const Game* game);

// Ranking from a single frame's game.
ShapleyRanking rank_lines_local(const DepthFrame& frame,
                                const SamplerConfig& config,
                                const GameOptions& options = {});

// One ranking for a set of frames. Each sampled coalition is scored on one
// frame drawn uniformly from the set; the pinned empty and grand rows carry
// the frame-mean values. Under exhaustive sampling every coalition is
// scored on the mean over all frames instead.
ShapleyRanking rank_lines_global(std::span<const DepthFrame> frames,
                                 const SamplerConfig& config,
                                 const GameOptions& options = {});

struct SpreadSweepRow {
  int spread = 0;
  int region_size = 0;
  double mean_rmse = 0.0;
  // Standard deviation across trials of the frame-averaged RMSE.
  double std_rmse = 0.0;
};

// For every S in [0, D - n_selected]: take the top n_selected + S lines,
// keep a uniform n_selected-subset of them, and average the RMSE over the
// frames and `trials` draws.
std::vector<SpreadSweepRow> sweep_spread(std::span<const DepthFrame> frames,
                                         int n_selected, int trials,
                                         std::uint64_t seed,
                                         const GameOptions& options = {});

// Structured record:
// {"budget", "lines", "min_line", "max_line", "region_size", "spread",
//  "rmse"?}
std::string selection_record_json(const Selection& selection,
                                  const SpreadStats& stats,
                                  std::optional<double> rmse_mm = {});

}  // namespace lidarsel

#endif  // LIDARSEL_SELECTION_H_
