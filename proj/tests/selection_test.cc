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
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>
#include <json.hpp>

#include "lidarsel/completion.h"
#include "lidarsel/errors.h"
#include "support/frames.h"
#include "support/oracles.h"

namespace lidarsel {
namespace {

using testing::count_gaps;

constexpr double kInf = std::numeric_limits<double>::infinity();

ShapleyRanking ranking_with_order(std::vector<LineId> order) {
  // Values that reproduce `order` under the ascending sort.
  std::vector<double> values(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) {
    values[order[p] - 1] = static_cast<double>(p);
  }
  ShapleyRanking r = rank_from_values(values);
  EXPECT_EQ(r.order, order);
  return r;
}

ShapleyRanking descending_ranking(int n) {
  std::vector<LineId> order(n);
  std::iota(order.rbegin(), order.rend(), 1);
  return ranking_with_order(order);
}

ShapleyRanking shuffled_ranking(int n, std::uint64_t seed) {
  std::vector<LineId> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  return ranking_with_order(order);
}

int min_pairwise_distance(const std::vector<LineId>& lines) {
  int best = std::numeric_limits<int>::max();
  for (std::size_t i = 1; i < lines.size(); ++i) {
    best = std::min(best, lines[i] - lines[i - 1]);
  }
  return best;
}

void expect_valid_selection(const Selection& s, int budget, int n) {
  ASSERT_EQ(static_cast<int>(s.lines.size()), budget);
  EXPECT_EQ(s.budget, budget);
  EXPECT_TRUE(std::is_sorted(s.lines.begin(), s.lines.end()));
  EXPECT_EQ(std::adjacent_find(s.lines.begin(), s.lines.end()), s.lines.end());
  EXPECT_GE(s.lines.front(), 1);
  EXPECT_LE(s.lines.back(), n);
}

// Selection basics.

TEST(MakeSelectionTest, SortsAndValidates) {
  const Selection s = make_selection({12, 3, 7}, 16);
  EXPECT_EQ(s.lines, (std::vector<LineId>{3, 7, 12}));
  EXPECT_EQ(s.budget, 3);
  EXPECT_THROW(make_selection({3, 3}, 16), DomainError);
  EXPECT_THROW(make_selection({0}, 16), DomainError);
  EXPECT_THROW(make_selection({17}, 16), DomainError);
}

TEST(SpreadStatsTest, Examples) {
  SpreadStats s = spread_stats(make_selection({10, 11, 12}, 64), 64);
  EXPECT_EQ(s.region_size, 3);
  EXPECT_EQ(s.spread, 0);
  s = spread_stats(make_selection({10, 12}, 64), 64);
  EXPECT_EQ(s.region_size, 3);
  EXPECT_EQ(s.spread, 1);
  s = spread_stats(make_selection({16, 32, 48, 64}, 64), 64);
  EXPECT_EQ(s.min_line, 16);
  EXPECT_EQ(s.max_line, 64);
  EXPECT_EQ(s.region_size, 49);
  EXPECT_EQ(s.spread, 45);
  EXPECT_THROW(spread_stats(Selection{}, 64), DomainError);
}

TEST(SpreadStatsTest, SpreadMatchesGapCount) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 64);
    const int budget = 1 + static_cast<int>(rng() % n);
    const Selection s = select_random(n, budget, rng());
    const SpreadStats st = spread_stats(s, n);
    EXPECT_EQ(st.spread, st.region_size - budget);
    EXPECT_EQ(st.spread, count_gaps(s.lines));
    EXPECT_GE(st.spread, 0);
    EXPECT_LE(st.spread, n - budget);
  }
}

// Configuration strings.

TEST(LineConfigTest, RoundTrip) {
  EXPECT_EQ(format_line_config(parse_line_config("42-52-56-64").lines),
            "42-52-56-64");
  EXPECT_EQ(format_line_config(parse_line_config("64-16-48-32").lines),
            "16-32-48-64");
  EXPECT_EQ(format_line_config(parse_line_config("7").lines), "7");
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Selection s = select_random(64, 1 + trial % 64, rng());
    const std::string text = format_line_config(s.lines);
    EXPECT_EQ(format_line_config(parse_line_config(text).lines), text);
  }
}

TEST(LineConfigTest, ErrorsNameTheToken) {
  auto token_of = [](const std::string& text) {
    try {
      parse_line_config(text);
    } catch (const ParseError& e) {
      return e.token();
    }
    return std::string("<no error>");
  };
  EXPECT_EQ(token_of("5-5-9"), "5");
  EXPECT_EQ(token_of("5-x-9"), "x");
  EXPECT_EQ(token_of("5-65"), "65");
  EXPECT_EQ(token_of("0-3"), "0");
  EXPECT_EQ(token_of("5--9"), "");
  EXPECT_EQ(token_of("3.5-9"), "3.5");
  EXPECT_EQ(token_of("-4"), "");
  EXPECT_THROW(parse_line_config(""), ParseError);
}

TEST(LineConfigTest, RangeFollowsLineCount) {
  EXPECT_THROW(parse_line_config("9", 8), ParseError);
  EXPECT_NO_THROW(parse_line_config("8", 8));
}

TEST(EnumNamesTest, RoundTrip) {
  for (SelectionMethod m :
       {SelectionMethod::kShapleyTop, SelectionMethod::kSpaced,
        SelectionMethod::kRandom, SelectionMethod::kSasConstant,
        SelectionMethod::kSasFlexible}) {
    EXPECT_EQ(parse_selection_method(to_string(m)), m);
  }
  for (RankingMode m : {RankingMode::kGlobal, RankingMode::kLocal}) {
    EXPECT_EQ(parse_ranking_mode(to_string(m)), m);
  }
  for (CandidateWeighting w :
       {CandidateWeighting::kLinear, CandidateWeighting::kSoftmax}) {
    EXPECT_EQ(parse_candidate_weighting(to_string(w)), w);
  }
  EXPECT_THROW(parse_selection_method("greedy"), ParseError);
  EXPECT_THROW(parse_ranking_mode("both"), ParseError);
  EXPECT_THROW(parse_candidate_weighting("cubic"), ParseError);
}

TEST(SelectionConfigTest, Validate) {
  SelectionConfig c;
  EXPECT_NO_THROW(c.validate());
  c.budget = 0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.min_gap = -1;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.spread_budget = -1;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.flexible.temperature = 0.0;
  EXPECT_THROW(c.validate(), ValidationError);
}

// Strategies.

TEST(TopKTest, Examples) {
  const ShapleyRanking r = descending_ranking(64);
  EXPECT_EQ(select_top_k(r, 3).lines, (std::vector<LineId>{62, 63, 64}));
  EXPECT_EQ(select_top_k(r, 64).lines.size(), 64u);
  EXPECT_EQ(select_top_k(ranking_with_order({3, 1, 2}), 1).lines,
            (std::vector<LineId>{3}));
  EXPECT_THROW(select_top_k(r, 65), DomainError);
  EXPECT_THROW(select_top_k(r, 0), DomainError);
}

TEST(SpacedTest, Examples) {
  EXPECT_EQ(select_equally_spaced(64, 4).lines,
            (std::vector<LineId>{16, 32, 48, 64}));
  EXPECT_EQ(select_equally_spaced(64, 8).lines,
            (std::vector<LineId>{8, 16, 24, 32, 40, 48, 56, 64}));
  EXPECT_EQ(select_equally_spaced(64, 64).lines.size(), 64u);
  EXPECT_THROW(select_equally_spaced(64, 65), DomainError);
}

TEST(SpacedTest, AlwaysValid) {
  for (int n = 1; n <= 64; ++n) {
    for (int b = 1; b <= n; ++b) {
      const Selection s = select_equally_spaced(n, b);
      expect_valid_selection(s, b, n);
      EXPECT_EQ(s.lines.back(), n);
    }
  }
}

TEST(RandomTest, FullBudgetAndDeterminism) {
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    EXPECT_EQ(select_random(64, 64, seed).lines.size(), 64u);
  }
  EXPECT_EQ(select_random(64, 8, 5).lines, select_random(64, 8, 5).lines);
  EXPECT_NE(select_random(64, 8, 5).lines, select_random(64, 8, 6).lines);
}

TEST(RandomTest, RoughlyUniform) {
  std::vector<int> hits(16, 0);
  for (std::uint64_t seed = 0; seed < 4000; ++seed) {
    const Selection s = select_random(16, 4, seed);
    expect_valid_selection(s, 4, 16);
    for (LineId l : s.lines) ++hits[l - 1];
  }
  for (int h : hits) EXPECT_NEAR(h / 4000.0, 0.25, 0.03);
}

TEST(SasConstantTest, Examples) {
  std::vector<LineId> order{64, 63, 62, 50};
  for (LineId l = 61; l >= 1; --l) {
    if (l != 50) order.push_back(l);
  }
  const ShapleyRanking r = ranking_with_order(order);
  EXPECT_EQ(select_sas_constant(r, 2, 1).lines, (std::vector<LineId>{62, 64}));
  EXPECT_EQ(select_sas_constant(r, 1, 5).lines, (std::vector<LineId>{64}));
  EXPECT_EQ(select_sas_constant(r, 7, 0).lines, select_top_k(r, 7).lines);
}

TEST(SasConstantTest, GapHoldsOnRandomRankings) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 8 + static_cast<int>(rng() % 57);
    const int gap = static_cast<int>(rng() % 4);
    const int max_budget = (n - 1) / (gap + 1) + 1;
    const int budget = 1 + static_cast<int>(rng() % std::min(max_budget, 12));
    const ShapleyRanking r = shuffled_ranking(n, rng());
    try {
      const Selection s = select_sas_constant(r, budget, gap);
      expect_valid_selection(s, budget, n);
      if (budget > 1) EXPECT_GE(min_pairwise_distance(s.lines), gap + 1);
    } catch (const InfeasibleError& e) {
      // Greedy can paint itself into a corner; it must say by how much.
      EXPECT_GT(e.shortfall(), 0);
      EXPECT_LT(e.shortfall(), budget);
    }
  }
}

TEST(SasConstantTest, InfeasibleBudgetReportsShortfall) {
  const ShapleyRanking r = descending_ranking(8);
  try {
    select_sas_constant(r, 5, 1);
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    EXPECT_EQ(e.shortfall(), 1);
  }
  // Feasible in principle, but greedy starts at 8 then takes 6, 4, 2.
  EXPECT_EQ(select_sas_constant(r, 4, 1).lines,
            (std::vector<LineId>{2, 4, 6, 8}));
  // Order 7 first blocks both neighbors and strands the budget.
  try {
    select_sas_constant(ranking_with_order({7, 4, 1, 2, 3, 5, 6, 8}), 4, 2);
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    EXPECT_EQ(e.shortfall(), 1);
  }
}

// Flexible search on a cheap synthetic game where spread helps.

Game coverage_game(int n) {
  // Cost: the largest uncovered stretch plus a small per-line preference.
  return Game{n, [n](const Coalition& c) {
                const std::vector<LineId> lines = c.lines();
                if (lines.empty()) return 1000.0;
                int gap = std::max(lines.front() - 1, n - lines.back());
                for (std::size_t i = 1; i < lines.size(); ++i) {
                  gap = std::max(gap, lines[i] - lines[i - 1] - 1);
                }
                double v = 10.0 * gap;
                for (LineId l : lines) v -= 0.01 * l;
                return v;
              }};
}

TEST(SasFlexibleTest, ZeroSpreadGivesBlock) {
  const int n = 16;
  const Game g = coverage_game(n);
  const FlexibleResult r =
      sas_flexible_search(descending_ranking(n), 4, 0, g, 3);
  EXPECT_GT(r.survivors, 0);
  EXPECT_EQ(spread_stats(r.selection, n).spread, 0);
  EXPECT_EQ(r.cost, g(Coalition::FromLines(n, r.selection.lines)));
}

TEST(SasFlexibleTest, VacuousFilterFindsBestSubset) {
  const int n = 8;
  const Game g = coverage_game(n);
  FlexibleOptions opts;
  opts.n_candidates = 3000;
  opts.weighting = CandidateWeighting::kLinear;
  const FlexibleResult r =
      sas_flexible_search(shuffled_ranking(n, 4), 3, n - 3, g, 11, opts);
  EXPECT_EQ(r.survivors, 3000);
  double best = kInf;
  for (Coalition c : enumerate_coalitions(n)) {
    if (c.size() == 3) best = std::min(best, g(c));
  }
  EXPECT_EQ(r.cost, best);
}

TEST(SasFlexibleTest, SpreadBoundHolds) {
  std::mt19937_64 rng(21);
  const int n = 32;
  const Game g = coverage_game(n);
  for (int trial = 0; trial < 40; ++trial) {
    const int budget = 2 + static_cast<int>(rng() % 8);
    const int s = static_cast<int>(rng() % 12);
    FlexibleOptions opts;
    opts.n_candidates = 50;
    const FlexibleResult r =
        sas_flexible_search(shuffled_ranking(n, rng()), budget, s, g, rng(), opts);
    expect_valid_selection(r.selection, budget, n);
    if (r.survivors > 0) {
      EXPECT_FALSE(r.fallback);
      EXPECT_LE(spread_stats(r.selection, n).spread, s);
    } else {
      EXPECT_TRUE(r.fallback);
    }
  }
}

TEST(SasFlexibleTest, FallsBackWhenNothingSurvives) {
  // A near-zero temperature draws the ranking prefix every time.
  const int n = 16;
  const Game g = coverage_game(n);
  FlexibleOptions opts;
  opts.n_candidates = 20;
  opts.temperature = 1e-3;
  const ShapleyRanking r =
      ranking_with_order({16, 1, 8, 2, 3, 4, 5, 6, 7, 9, 10, 11, 12, 13, 14, 15});
  const FlexibleResult res = sas_flexible_search(r, 3, 2, g, 0, opts);
  EXPECT_EQ(res.survivors, 0);
  EXPECT_TRUE(res.fallback);
  // Top budget + s = 5 lines {16, 1, 8, 2, 3}, first three taken.
  EXPECT_EQ(res.selection.lines, (std::vector<LineId>{1, 8, 16}));
}

TEST(SasFlexibleTest, EvaluatorFailurePropagates) {
  Game g{8, [](const Coalition&) -> double { throw std::runtime_error("x"); }};
  EXPECT_THROW(sas_flexible_search(descending_ranking(8), 3, 5, g, 0),
               std::runtime_error);
}

TEST(SasFlexibleTest, Deterministic) {
  const int n = 24;
  const Game g = coverage_game(n);
  const ShapleyRanking r = shuffled_ranking(n, 1);
  const FlexibleResult a = sas_flexible_search(r, 6, 6, g, 42);
  const FlexibleResult b = sas_flexible_search(r, 6, 6, g, 42);
  EXPECT_EQ(a.selection.lines, b.selection.lines);
  EXPECT_EQ(a.cost, b.cost);
  EXPECT_EQ(a.survivors, b.survivors);
}

TEST(SasFlexibleTest, RejectsBadArguments) {
  const Game g = coverage_game(8);
  const ShapleyRanking r = descending_ranking(8);
  EXPECT_THROW(sas_flexible_search(r, 3, -1, g, 0), DomainError);
  EXPECT_THROW(sas_flexible_search(r, 9, 0, g, 0), DomainError);
  EXPECT_THROW(sas_flexible_search(r, 3, 1, coverage_game(9), 0), DomainError);
  FlexibleOptions opts;
  opts.n_candidates = 0;
  EXPECT_THROW(sas_flexible_search(r, 3, 1, g, 0, opts), DomainError);
}

TEST(SelectLinesTest, Dispatch) {
  const ShapleyRanking r = shuffled_ranking(64, 2);
  const Game g = coverage_game(64);
  SelectionConfig c;
  c.budget = 4;
  c.method = SelectionMethod::kShapleyTop;
  EXPECT_EQ(select_lines(c, r, nullptr).lines, select_top_k(r, 4).lines);
  c.method = SelectionMethod::kSpaced;
  EXPECT_EQ(select_lines(c, r, nullptr).lines,
            (std::vector<LineId>{16, 32, 48, 64}));
  c.method = SelectionMethod::kRandom;
  c.seed = 3;
  EXPECT_EQ(select_lines(c, r, nullptr).lines, select_random(64, 4, 3).lines);
  c.method = SelectionMethod::kSasConstant;
  c.min_gap = 2;
  EXPECT_EQ(select_lines(c, r, nullptr).lines,
            select_sas_constant(r, 4, 2).lines);
  c.method = SelectionMethod::kSasFlexible;
  EXPECT_THROW(select_lines(c, r, nullptr), ValidationError);
  EXPECT_EQ(select_lines(c, r, &g).lines,
            select_sas_flexible(r, 4, c.spread_budget, g, 3).lines);
}

// Rankings from frames.

SamplerConfig exhaustive(std::uint64_t seed = 0) {
  return {.scheme = SamplingScheme::kExhaustive, .seed = seed,
          .pin_weight = kInf};
}

TEST(LocalRankingTest, OnlyMeasuredLineRanksFirst) {
  DepthFrame f = testing::cluttered_frame(8, 5);
  for (LineId l = 1; l < 8; ++l) testing::blank_line(f, l);
  // Against a far-away prior any measurement helps.
  const GameOptions far{.prior_depth_mm = 300000.0};
  const ShapleyRanking r = rank_lines_local(f, exhaustive(), far);
  EXPECT_EQ(r.order.front(), 8);
  const double scale = std::fabs(r.value(8));
  for (LineId l = 1; l < 8; ++l) EXPECT_NEAR(r.value(l), 0.0, 1e-9 * scale);
  const ShapleyRanking exact = shapley_exact(make_game(f, far));
  EXPECT_LE(testing::max_abs_diff(r.values, exact.values), 1e-9 * scale);
}

TEST(LocalRankingTest, MirroredLinesGetEqualCredit) {
  // Truth and returns symmetric about the middle row: line l and line
  // 9 - l see the same column profile, mirrored in position.
  const int n = 8;
  const int h = 15;
  const int w = 6;
  DepthFrame f;
  f.ground_truth = DepthGrid(h, w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const int d = std::abs(r - 7);
      f.ground_truth.at(r, c) = 10000.0 + 700.0 * d * d + 300.0 * c * (d % 3);
    }
  }
  for (LineId l = n; l >= 1; --l) {
    LidarLine line;
    line.line = l;
    line.row = (n - l) * 2;
    for (int c = 0; c < w; ++c) line.depths.push_back(f.ground_truth.at(line.row, c));
    f.lines.push_back(line);
  }
  f.validate();
  const ShapleyRanking r = rank_lines_local(f, exhaustive());
  for (LineId l = 1; l <= 4; ++l) {
    EXPECT_NEAR(r.value(l), r.value(n + 1 - l), 1e-6 * std::fabs(r.value(l)) + 1e-6);
  }
}

TEST(LocalRankingTest, Deterministic) {
  const DepthFrame f = testing::cluttered_frame(16, 2);
  const SamplerConfig c{.n_samples = 120, .seed = 4};
  const ShapleyRanking a = rank_lines_local(f, c);
  const ShapleyRanking b = rank_lines_local(f, c);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.order, b.order);
}

TEST(GlobalRankingTest, SingleFrameMatchesLocal) {
  const std::vector<DepthFrame> frames{testing::cluttered_frame(16, 3)};
  const SamplerConfig c{.n_samples = 150, .seed = 7};
  const ShapleyRanking local = rank_lines_local(frames[0], c);
  const ShapleyRanking global = rank_lines_global(frames, c);
  EXPECT_EQ(local.values, global.values);
  EXPECT_EQ(local.order, global.order);
}

TEST(GlobalRankingTest, IdenticalCopiesMatchSingleFrame) {
  const DepthFrame f = testing::cluttered_frame(16, 6);
  const std::vector<DepthFrame> copies(3, f);
  const SamplerConfig c{.n_samples = 150, .seed = 7};
  const ShapleyRanking one = rank_lines_local(f, c);
  const ShapleyRanking pooled = rank_lines_global(copies, c);
  EXPECT_LE(testing::max_abs_diff(one.values, pooled.values),
            1e-9 * (1.0 + testing::max_abs_diff(one.values,
                                                std::vector<double>(16, 0.0))));
  EXPECT_EQ(one.order, pooled.order);
}

TEST(GlobalRankingTest, DummyLineAcrossFrames) {
  std::vector<DepthFrame> frames{testing::cluttered_frame(8, 1),
                                 testing::cluttered_frame(8, 2)};
  for (DepthFrame& f : frames) testing::blank_line(f, 5);
  const ShapleyRanking r = rank_lines_global(frames, exhaustive());
  const ShapleyRanking exact = shapley_exact(make_pooled_game(frames));
  double largest = 0.0;
  for (double v : r.values) largest = std::max(largest, std::fabs(v));
  EXPECT_LE(std::fabs(r.value(5)), 0.05 * largest);
  EXPECT_LE(testing::max_abs_diff(r.values, exact.values), 1e-6 * largest);
}

TEST(GlobalRankingTest, RejectsMixedFrames) {
  const std::vector<DepthFrame> frames{testing::planar_frame(8),
                                       testing::planar_frame(9)};
  EXPECT_THROW(rank_lines_global(frames, {}), DomainError);
  EXPECT_THROW(rank_lines_global({}, {}), DomainError);
}

// Spread sweep.

TEST(SweepTest, ShapeAndZeroSpreadRow) {
  const std::vector<DepthFrame> frames{testing::cluttered_frame(12, 1),
                                       testing::cluttered_frame(12, 2)};
  const auto rows = sweep_spread(frames, 4, 6, 5);
  ASSERT_EQ(rows.size(), 9u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].spread, static_cast<int>(i));
    EXPECT_EQ(rows[i].region_size, 4 + static_cast<int>(i));
    EXPECT_GE(rows[i].std_rmse, 0.0);
  }
  EXPECT_EQ(rows[0].std_rmse, 0.0);
  const Game g = make_pooled_game(frames);
  EXPECT_NEAR(rows[0].mean_rmse,
              g(Coalition::FromLines(12, std::vector<LineId>{9, 10, 11, 12})),
              1e-9 * rows[0].mean_rmse);
}

TEST(SweepTest, FullSelectionIsSingleRow) {
  const std::vector<DepthFrame> frames{testing::planar_frame(8)};
  const auto rows = sweep_spread(frames, 8, 3, 0);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].spread, 0);
  EXPECT_DOUBLE_EQ(rows[0].mean_rmse,
                   make_game(frames[0])(Coalition::Grand(8)));
}

TEST(SweepTest, Deterministic) {
  const std::vector<DepthFrame> frames{testing::cluttered_frame(12, 4)};
  const auto a = sweep_spread(frames, 3, 4, 9);
  const auto b = sweep_spread(frames, 3, 4, 9);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].mean_rmse, b[i].mean_rmse);
    EXPECT_EQ(a[i].std_rmse, b[i].std_rmse);
  }
}

TEST(SelectionRecordTest, Fields) {
  const Selection s = make_selection({16, 32, 48, 64}, 64);
  const auto doc =
      nlohmann::json::parse(selection_record_json(s, spread_stats(s, 64), 12.5));
  EXPECT_EQ(doc["budget"], 4);
  EXPECT_EQ(doc["lines"], "16-32-48-64");
  EXPECT_EQ(doc["region_size"], 49);
  EXPECT_EQ(doc["spread"], 45);
  EXPECT_EQ(doc["rmse"], 12.5);
  EXPECT_FALSE(nlohmann::json::parse(selection_record_json(s, spread_stats(s, 64)))
                   .contains("rmse"));
}

}  // namespace
}  // namespace lidarsel
