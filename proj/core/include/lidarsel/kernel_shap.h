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

// Shapley values as the solution of a kernel-weighted least-squares
// regression over sampled coalitions.
//
// Each sampled coalition K becomes a row of the design matrix V: a leading
// intercept column of ones followed by the 0/1 membership bits. The row
// weight is the Shapley kernel
//
//   k(n, |K|) = (n - 1) / (C(n, |K|) |K| (n - |K|)),
//
// which is undefined at |K| = 0 and |K| = n. Those two coalitions are always
// appended as "pinned" rows carrying a large weight, so the fitted intercept
// tracks v(empty) and intercept + sum(phi) tracks v(all lines).
//
// The solver never forms the full normal matrix in one piece. Pinned rows
// span at most two directions of coefficient space; the problem is split
// along that subspace and its orthogonal complement, and the complement is
// solved through a Schur complement built from the unpinned rows only. This
// keeps the answer accurate when pinned weights exceed the kernel weights by
// twenty or more orders of magnitude, which is routine at 64 lines.
// A pin weight of +infinity is the limit case: pinned rows become equality
// constraints and the fit recovers exact Shapley values under enumeration.

#ifndef LIDARSEL_KERNEL_SHAP_H_
#define LIDARSEL_KERNEL_SHAP_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lidarsel/game.h"

namespace lidarsel {

inline constexpr double kDefaultPinWeight = 1e6;

enum class SamplingScheme {
  // Every membership bit is an independent fair coin.
  kBernoulliHalf,
  // Size uniform on {1, .., n - 1}, then a uniform subset of that size.
  kSizeStratified,
  // All 2^n - 2 non-trivial coalitions (n <= 20); n_samples is ignored.
  kExhaustive,
};

std::string to_string(SamplingScheme scheme);
SamplingScheme parse_sampling_scheme(const std::string& name);

struct SamplerConfig {
  SamplingScheme scheme = SamplingScheme::kSizeStratified;
  int n_samples = 350;
  std::uint64_t seed = 0;
  double pin_weight = kDefaultPinWeight;
};

// A coalition paired with its characteristic-function value.
struct BinaryVector {
  Coalition bits;
  double value = 0.0;
};

enum class RowWeighting {
  // Raw Shapley kernel. Consistent when coalitions are drawn uniformly
  // (bernoulli_half or exhaustive).
  kKernel,
  // Kernel times C(n, k), i.e. (n - 1) / (k (n - k)). Consistent when every
  // size is equally likely and subsets are uniform within a size
  // (size_stratified).
  kSizeCorrected,
};

struct SystemOptions {
  double pin_weight = kDefaultPinWeight;
  RowWeighting weighting = RowWeighting::kKernel;
};

struct RegressionSystem {
  Eigen::MatrixXd design;   // rows x (intercept + n_lines)
  Eigen::VectorXd weights;  // one positive weight per row
  Eigen::VectorXd targets;  // characteristic-function value per row
  // Rows whose weight is the pin constant rather than a kernel weight.
  std::vector<bool> pinned;
  bool has_intercept = true;

  Eigen::Index rows() const { return design.rows(); }
  int n_lines() const {
    return static_cast<int>(design.cols()) - (has_intercept ? 1 : 0);
  }
};

struct WlsSolution {
  std::vector<double> phi;
  double intercept = 0.0;
};

struct SolverOptions {
  // Tikhonov term, relative to the mean diagonal of the unpinned block.
  double ridge = 1e-10;
  // Smallest admissible eigenvalue of that block, same relative scale.
  double rank_tolerance = 1e-12;
};

// Shapley kernel weight for a coalition of size k among n players. Returns
// `pin_weight` for k == 0 and k == n.
double shapley_kernel_weight(int n, int k,
                             double pin_weight = kDefaultPinWeight);

// Weight actually assigned to a row of size k under `weighting`.
double row_weight(int n, int k, RowWeighting weighting,
                  double pin_weight = kDefaultPinWeight);

// Deterministic in config.seed.
std::vector<Coalition> sample_binary_vectors(const SamplerConfig& config,
                                             int n_lines);

// Every coalition except the empty and the grand one.
std::vector<Coalition> interior_coalitions(int n_lines);

// Evaluates the game on each vector, then calls assemble_system.
RegressionSystem build_system(std::span<const Coalition> vectors,
                              const Game& game,
                              const SystemOptions& options = {});

// Builds the design from pre-evaluated rows. The empty and grand coalitions
// are appended as pinned rows with the given values. Sampled rows are kept
// as-is, duplicates included.
RegressionSystem assemble_system(int n_lines,
                                 std::span<const BinaryVector> rows,
                                 double empty_value, double grand_value,
                                 const SystemOptions& options = {});

// Minimizes sum_r w_r (target_r - design_r . x)^2. Throws
// RankDeficiencyError when the unpinned rows leave a direction of the
// coefficient space undetermined. Infinite weights are allowed on pinned
// rows only, and then on all of them.
WlsSolution solve_weighted_least_squares(const RegressionSystem& system,
                                         const SolverOptions& options = {});

// sample -> build -> solve -> rank. Requires at least two lines.
ShapleyRanking estimate_shapley(const Game& game,
                                const SamplerConfig& config);

// Weighting matched to the scheme's sampling distribution.
RowWeighting weighting_for(SamplingScheme scheme);

}  // namespace lidarsel

#endif  // LIDARSEL_KERNEL_SHAP_H_
