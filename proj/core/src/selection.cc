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

#include "lidarsel/selection.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>

#include <json.hpp>

#include "lidarsel/errors.h"
#include "lidarsel/numeric.h"

namespace lidarsel {
namespace {

constexpr std::uint64_t kFrameStream = 0x6672616d65ULL;
constexpr std::uint64_t kCandidateStream = 0x63616e64ULL;

void check_budget(int budget, int n_lines) {
  if (budget < 1 || budget > n_lines) {
    throw DomainError("budget " + std::to_string(budget) + " outside [1, " +
                      std::to_string(n_lines) + "]");
  }
}

// Partial Fisher-Yates: `count` distinct entries of `pool`.
std::vector<LineId> draw_subset(std::vector<LineId> pool, int count, Rng& rng) {
  for (int j = 0; j < count; ++j) {
    const auto pick = j + uniform_index(rng, pool.size() - j);
    std::swap(pool[j], pool[pick]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace

Selection make_selection(std::vector<LineId> lines, int n_lines) {
  std::sort(lines.begin(), lines.end());
  if (std::adjacent_find(lines.begin(), lines.end()) != lines.end()) {
    throw DomainError("duplicate line in selection");
  }
  for (LineId l : lines) {
    if (l < 1 || l > n_lines) {
      throw DomainError("line " + std::to_string(l) + " outside [1, " +
                        std::to_string(n_lines) + "]");
    }
  }
  Selection s;
  s.budget = static_cast<int>(lines.size());
  s.lines = std::move(lines);
  return s;
}

SpreadStats spread_stats(const Selection& selection, int n_lines) {
  if (selection.lines.empty()) throw DomainError("empty selection");
  const auto [lo, hi] =
      std::minmax_element(selection.lines.begin(), selection.lines.end());
  if (*lo < 1 || *hi > n_lines) throw DomainError("selection out of range");
  SpreadStats stats;
  stats.min_line = *lo;
  stats.max_line = *hi;
  stats.region_size = *hi - *lo + 1;
  stats.spread = stats.region_size - static_cast<int>(selection.lines.size());
  return stats;
}

std::string format_line_config(std::span<const LineId> lines) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(lines[i]);
  }
  return out;
}

Selection parse_line_config(const std::string& text, int n_lines) {
  if (text.empty()) throw ParseError(text, "empty line configuration");
  std::vector<LineId> lines;
  std::size_t start = 0;
  while (true) {
    const std::size_t dash = text.find('-', start);
    const std::string token =
        text.substr(start, dash == std::string::npos ? std::string::npos
                                                     : dash - start);
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() ||
        ptr != token.data() + token.size()) {
      throw ParseError(token, "malformed line id");
    }
    if (value < 1 || (n_lines > 0 && value > n_lines)) {
      throw ParseError(token, "line id out of range");
    }
    if (std::find(lines.begin(), lines.end(), value) != lines.end()) {
      throw ParseError(token, "duplicate line id");
    }
    lines.push_back(value);
    if (dash == std::string::npos) break;
    start = dash + 1;
  }
  std::sort(lines.begin(), lines.end());
  Selection s;
  s.budget = static_cast<int>(lines.size());
  s.lines = std::move(lines);
  return s;
}

std::string to_string(SelectionMethod method) {
  switch (method) {
    case SelectionMethod::kShapleyTop:
      return "shapley-top";
    case SelectionMethod::kSpaced:
      return "spaced";
    case SelectionMethod::kRandom:
      return "random";
    case SelectionMethod::kSasConstant:
      return "sas-constant";
    case SelectionMethod::kSasFlexible:
      return "sas-flexible";
  }
  return "unknown";
}

SelectionMethod parse_selection_method(const std::string& name) {
  std::string n = name;
  std::replace(n.begin(), n.end(), '_', '-');
  if (n == "shapley-top" || n == "shapley") return SelectionMethod::kShapleyTop;
  if (n == "spaced") return SelectionMethod::kSpaced;
  if (n == "random") return SelectionMethod::kRandom;
  if (n == "sas-constant") return SelectionMethod::kSasConstant;
  if (n == "sas-flexible") return SelectionMethod::kSasFlexible;
  throw ParseError(name, "unknown selection method");
}

std::string to_string(RankingMode mode) {
  return mode == RankingMode::kGlobal ? "global" : "local";
}

RankingMode parse_ranking_mode(const std::string& name) {
  if (name == "global") return RankingMode::kGlobal;
  if (name == "local") return RankingMode::kLocal;
  throw ParseError(name, "unknown ranking mode");
}

std::string to_string(CandidateWeighting weighting) {
  return weighting == CandidateWeighting::kLinear ? "linear" : "softmax";
}

CandidateWeighting parse_candidate_weighting(const std::string& name) {
  if (name == "linear") return CandidateWeighting::kLinear;
  if (name == "softmax") return CandidateWeighting::kSoftmax;
  throw ParseError(name, "unknown candidate weighting");
}

void SelectionConfig::validate() const {
  if (budget < 1) throw ValidationError("budget", "must be >= 1");
  if (min_gap < 0) throw ValidationError("min_gap", "must be >= 0");
  if (spread_budget < 0) {
    throw ValidationError("spread_budget", "must be >= 0");
  }
  if (flexible.n_candidates < 1) {
    throw ValidationError("n_candidate_samples", "must be >= 1");
  }
  if (flexible.temperature && !(*flexible.temperature > 0)) {
    throw ValidationError("temperature", "must be positive");
  }
}

Selection select_top_k(const ShapleyRanking& ranking, int budget) {
  check_budget(budget, ranking.n_lines());
  std::vector<LineId> lines(ranking.order.begin(),
                            ranking.order.begin() + budget);
  return make_selection(std::move(lines), ranking.n_lines());
}

Selection select_equally_spaced(int n_lines, int budget) {
  check_budget(budget, n_lines);
  const int step = n_lines / budget;
  std::vector<LineId> lines;
  lines.reserve(budget);
  for (int j = 0; j < budget; ++j) lines.push_back(n_lines - j * step);
  return make_selection(std::move(lines), n_lines);
}

Selection select_random(int n_lines, int budget, std::uint64_t seed) {
  check_budget(budget, n_lines);
  std::vector<LineId> pool(n_lines);
  std::iota(pool.begin(), pool.end(), 1);
  Rng rng(seed);
  return make_selection(draw_subset(std::move(pool), budget, rng), n_lines);
}

Selection select_sas_constant(const ShapleyRanking& ranking, int budget,
                              int min_gap) {
  const int n = ranking.n_lines();
  if (min_gap < 0) throw DomainError("min_gap must be >= 0");
  if (budget < 1) throw DomainError("budget must be >= 1");
  const long long needed =
      budget + static_cast<long long>(budget - 1) * min_gap;
  if (needed > n) {
    const int fits = (n - 1) / (min_gap + 1) + 1;
    throw InfeasibleError(
        std::to_string(budget) + " lines with gap " + std::to_string(min_gap) +
            " need " + std::to_string(needed) + " positions but only " +
            std::to_string(n) + " exist; short by " +
            std::to_string(budget - fits) + " line(s)",
        budget - fits);
  }
  std::vector<LineId> accepted;
  for (LineId line : ranking.order) {
    if (static_cast<int>(accepted.size()) == budget) break;
    const bool clear = std::all_of(
        accepted.begin(), accepted.end(),
        [&](LineId a) { return std::abs(a - line) >= min_gap + 1; });
    if (clear) accepted.push_back(line);
  }
  const int shortfall = budget - static_cast<int>(accepted.size());
  if (shortfall > 0) {
    throw InfeasibleError("ranking exhausted with gap " +
                              std::to_string(min_gap) + "; short by " +
                              std::to_string(shortfall) + " line(s)",
                          shortfall);
  }
  return make_selection(std::move(accepted), n);
}

FlexibleResult sas_flexible_search(const ShapleyRanking& ranking, int budget,
                                   int spread_budget, const Game& game,
                                   std::uint64_t seed,
                                   const FlexibleOptions& options) {
  const int n = ranking.n_lines();
  check_budget(budget, n);
  if (spread_budget < 0) throw DomainError("spread budget must be >= 0");
  if (options.n_candidates < 1) throw DomainError("n_candidates must be >= 1");
  if (game.n_lines != n) throw DomainError("game and ranking disagree");

  // Draw weight by rank position.
  const double temperature =
      options.temperature.value_or(static_cast<double>(budget));
  if (!(temperature > 0)) throw DomainError("temperature must be positive");
  std::vector<double> weight(n);
  for (int pos = 0; pos < n; ++pos) {
    weight[pos] = options.weighting == CandidateWeighting::kLinear
                      ? static_cast<double>(n - pos)
                      : std::exp(-pos / temperature);
  }

  std::map<std::vector<LineId>, double> scored;
  int survivors = 0;
  std::vector<int> remaining;
  for (int i = 0; i < options.n_candidates; ++i) {
    Rng rng(derive_seed(seed, kCandidateStream, i));
    remaining.resize(n);
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<LineId> lines;
    lines.reserve(budget);
    for (int j = 0; j < budget; ++j) {
      double total = 0.0;
      for (int pos : remaining) total += weight[pos];
      // With every weight underflowed, k stays at the best remaining
      // position: the limit of a vanishing temperature.
      std::size_t k = 0;
      if (total > 0) {
        double u = uniform01(rng) * total;
        for (; k + 1 < remaining.size(); ++k) {
          u -= weight[remaining[k]];
          if (u < 0) break;
        }
      }
      lines.push_back(ranking.order[remaining[k]]);
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(k));
    }
    Selection candidate = make_selection(std::move(lines), n);
    if (spread_stats(candidate, n).spread > spread_budget) continue;
    ++survivors;
    if (scored.contains(candidate.lines)) continue;
    const Coalition c = Coalition::FromLines(n, candidate.lines);
    scored.emplace(candidate.lines, game(c));
  }

  FlexibleResult result;
  result.survivors = survivors;
  if (scored.empty()) {
    ShapleyRanking restricted = ranking;
    restricted.order.resize(std::min(n, budget + spread_budget));
    result.selection = select_sas_constant(restricted, budget, 0);
    result.cost = game(Coalition::FromLines(n, result.selection.lines));
    result.fallback = true;
    return result;
  }
  // std::map iterates in lexicographic order, so the first minimum wins ties.
  auto best = scored.begin();
  for (auto it = scored.begin(); it != scored.end(); ++it) {
    if (it->second < best->second) best = it;
  }
  result.selection = make_selection(best->first, n);
  result.cost = best->second;
  return result;
}

Selection select_sas_flexible(const ShapleyRanking& ranking, int budget,
                              int spread_budget, const Game& game,
                              std::uint64_t seed,
                              const FlexibleOptions& options) {
  return sas_flexible_search(ranking, budget, spread_budget, game, seed,
                             options)
      .selection;
}

Selection select_lines(const SelectionConfig& config,
                       const ShapleyRanking& ranking, const Game* game) {
  config.validate();
  switch (config.method) {
    case SelectionMethod::kShapleyTop:
      return select_top_k(ranking, config.budget);
    case SelectionMethod::kSpaced:
      return select_equally_spaced(ranking.n_lines(), config.budget);
    case SelectionMethod::kRandom:
      return select_random(ranking.n_lines(), config.budget, config.seed);
    case SelectionMethod::kSasConstant:
      return select_sas_constant(ranking, config.budget, config.min_gap);
    case SelectionMethod::kSasFlexible:
      if (game == nullptr) {
        throw ValidationError("frames", "sas-flexible needs frames to score "
                                        "candidates");
      }
      return select_sas_flexible(ranking, config.budget, config.spread_budget,
                                 *game, config.seed, config.flexible);
  }
  throw DomainError("unknown selection method");
}

ShapleyRanking rank_lines_local(const DepthFrame& frame,
                                const SamplerConfig& config,
                                const GameOptions& options) {
  return estimate_shapley(make_game(frame, options), config);
}

ShapleyRanking rank_lines_global(std::span<const DepthFrame> frames,
                                 const SamplerConfig& config,
                                 const GameOptions& options) {
  if (frames.empty()) throw DomainError("no frames to rank");
  const int n = frames.front().n_lines();
  if (n < 2) throw DomainError("ranking needs >= 2 lines");
  // One prior for the whole pool, so every frame shares the same baseline.
  GameOptions pooled = options;
  if (!pooled.prior_depth_mm) {
    pooled.prior_depth_mm = mean_ground_truth_depth(frames);
  }
  std::vector<CompletionCost> costs;
  costs.reserve(frames.size());
  for (const DepthFrame& f : frames) {
    if (f.n_lines() != n) throw DomainError("frames disagree on line count");
    costs.emplace_back(std::make_shared<const DepthFrame>(f), pooled);
  }
  auto pooled_mean = [&costs](const Coalition& c) {
    CompensatedSum sum;
    for (const CompletionCost& cost : costs) sum.add(cost(c));
    return sum.value() / static_cast<double>(costs.size());
  };

  const std::vector<Coalition> vectors = sample_binary_vectors(config, n);
  std::vector<BinaryVector> rows;
  rows.reserve(vectors.size());
  if (config.scheme == SamplingScheme::kExhaustive) {
    for (const Coalition& c : vectors) rows.push_back({c, pooled_mean(c)});
  } else {
    Rng frame_rng(derive_seed(config.seed, kFrameStream));
    for (const Coalition& c : vectors) {
      const auto f = uniform_index(frame_rng, costs.size());
      rows.push_back({c, costs[f](c)});
    }
  }
  const RegressionSystem system = assemble_system(
      n, rows, pooled_mean(Coalition::Empty(n)),
      pooled_mean(Coalition::Grand(n)),
      {.pin_weight = config.pin_weight,
       .weighting = weighting_for(config.scheme)});
  return rank_from_values(solve_weighted_least_squares(system).phi);
}

std::vector<SpreadSweepRow> sweep_spread(std::span<const DepthFrame> frames,
                                         int n_selected, int trials,
                                         std::uint64_t seed,
                                         const GameOptions& options) {
  if (frames.empty()) throw DomainError("no frames to sweep");
  if (trials < 1) throw DomainError("trials must be >= 1");
  const int n = frames.front().n_lines();
  check_budget(n_selected, n);
  std::vector<CompletionCost> costs;
  costs.reserve(frames.size());
  for (const DepthFrame& f : frames) {
    if (f.n_lines() != n) throw DomainError("frames disagree on line count");
    costs.emplace_back(std::make_shared<const DepthFrame>(f), options);
  }

  std::vector<SpreadSweepRow> table;
  for (int spread = 0; spread <= n - n_selected; ++spread) {
    const int region = n_selected + spread;
    std::vector<LineId> pool(region);
    std::iota(pool.begin(), pool.end(), n - region + 1);

    std::vector<double> per_trial(trials);
    for (int t = 0; t < trials; ++t) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(spread), t));
      const std::vector<LineId> lines = draw_subset(pool, n_selected, rng);
      const Coalition c = Coalition::FromLines(n, lines);
      CompensatedSum sum;
      for (const CompletionCost& cost : costs) sum.add(cost(c));
      per_trial[t] = sum.value() / static_cast<double>(costs.size());
    }
    CompensatedSum total;
    for (double v : per_trial) total.add(v);
    const double mean = total.value() / trials;
    CompensatedSum sq;
    for (double v : per_trial) sq.add((v - mean) * (v - mean));

    SpreadSweepRow row;
    row.spread = spread;
    row.region_size = region;
    row.mean_rmse = mean;
    row.std_rmse = std::sqrt(sq.value() / trials);
    table.push_back(row);
  }
  return table;
}

std::string selection_record_json(const Selection& selection,
                                  const SpreadStats& stats,
                                  std::optional<double> rmse_mm) {
  nlohmann::ordered_json doc;
  doc["budget"] = selection.budget;
  doc["lines"] = format_line_config(selection.lines);
  doc["min_line"] = stats.min_line;
  doc["max_line"] = stats.max_line;
  doc["region_size"] = stats.region_size;
  doc["spread"] = stats.spread;
  if (rmse_mm) doc["rmse"] = *rmse_mm;
  return doc.dump(2);
}

}  // namespace lidarsel
