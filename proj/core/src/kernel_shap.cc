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

#include "lidarsel/kernel_shap.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lidarsel/errors.h"
#include "lidarsel/numeric.h"

namespace lidarsel {

std::string to_string(SamplingScheme scheme) {
  switch (scheme) {
    case SamplingScheme::kBernoulliHalf:
      return "bernoulli_half";
    case SamplingScheme::kSizeStratified:
      return "size_stratified";
    case SamplingScheme::kExhaustive:
      return "exhaustive";
  }
  return "unknown";
}

SamplingScheme parse_sampling_scheme(const std::string& name) {
  if (name == "bernoulli_half") return SamplingScheme::kBernoulliHalf;
  if (name == "size_stratified") return SamplingScheme::kSizeStratified;
  if (name == "exhaustive") return SamplingScheme::kExhaustive;
  throw ParseError(name, "unknown sampling scheme");
}

double shapley_kernel_weight(int n, int k, double pin_weight) {
  if (n < 1) throw DomainError("kernel weight needs n >= 1");
  if (k < 0 || k > n) {
    throw DomainError("coalition size " + std::to_string(k) +
                      " outside [0, " + std::to_string(n) + "]");
  }
  if (k == 0 || k == n) return pin_weight;
  return (n - 1) / (binomial(n, k) * k * (n - k));
}

double row_weight(int n, int k, RowWeighting weighting, double pin_weight) {
  const double kernel = shapley_kernel_weight(n, k, pin_weight);
  if (k == 0 || k == n || weighting == RowWeighting::kKernel) return kernel;
  return static_cast<double>(n - 1) / (static_cast<double>(k) * (n - k));
}

RowWeighting weighting_for(SamplingScheme scheme) {
  return scheme == SamplingScheme::kSizeStratified
             ? RowWeighting::kSizeCorrected
             : RowWeighting::kKernel;
}

std::vector<Coalition> interior_coalitions(int n_lines) {
  std::vector<Coalition> out;
  for (Coalition c : enumerate_coalitions(n_lines)) {
    if (c.size() == 0 || c.size() == n_lines) continue;
    out.push_back(c);
  }
  return out;
}

std::vector<Coalition> sample_binary_vectors(const SamplerConfig& config,
                                             int n_lines) {
  if (n_lines < 1 || n_lines > kMaxLines) {
    throw DomainError("line count " + std::to_string(n_lines) +
                      " outside [1, 64]");
  }
  if (config.scheme == SamplingScheme::kExhaustive) {
    return interior_coalitions(n_lines);
  }
  if (config.n_samples < 1) throw DomainError("n_samples must be >= 1");

  Rng rng(config.seed);
  std::vector<Coalition> out;
  out.reserve(config.n_samples);
  const std::uint64_t mask = Coalition::Grand(n_lines).bits();

  if (config.scheme == SamplingScheme::kBernoulliHalf) {
    for (int s = 0; s < config.n_samples; ++s) {
      out.emplace_back(n_lines, rng() & mask);
    }
    return out;
  }

  if (n_lines < 2) {
    throw DomainError("size-stratified sampling needs at least 2 lines");
  }
  std::vector<LineId> pool(n_lines);
  for (int s = 0; s < config.n_samples; ++s) {
    const int k = 1 + static_cast<int>(uniform_index(rng, n_lines - 1));
    std::iota(pool.begin(), pool.end(), 1);
    std::uint64_t bits = 0;
    for (int j = 0; j < k; ++j) {
      const auto pick = j + uniform_index(rng, n_lines - j);
      std::swap(pool[j], pool[pick]);
      bits |= std::uint64_t{1} << (pool[j] - 1);
    }
    out.emplace_back(n_lines, bits);
  }
  return out;
}

RegressionSystem build_system(std::span<const Coalition> vectors,
                              const Game& game,
                              const SystemOptions& options) {
  std::vector<BinaryVector> rows;
  rows.reserve(vectors.size());
  for (const Coalition& c : vectors) {
    if (c.width() != game.n_lines) {
      throw DomainError("vector width " + std::to_string(c.width()) +
                        " does not match game with " +
                        std::to_string(game.n_lines) + " lines");
    }
    try {
      rows.push_back({c, game(c)});
    } catch (const std::exception& e) {
      throw EvaluationError(c.bit_string(), e.what());
    }
  }
  const int n = game.n_lines;
  return assemble_system(n, rows, game(Coalition::Empty(n)),
                         game(Coalition::Grand(n)), options);
}

RegressionSystem assemble_system(int n_lines,
                                 std::span<const BinaryVector> rows,
                                 double empty_value, double grand_value,
                                 const SystemOptions& options) {
  if (!(options.pin_weight > 0)) {
    throw DomainError("pin weight must be positive");
  }
  const Eigen::Index n_rows = static_cast<Eigen::Index>(rows.size()) + 2;
  RegressionSystem system;
  system.has_intercept = true;
  system.design = Eigen::MatrixXd::Zero(n_rows, n_lines + 1);
  system.weights.resize(n_rows);
  system.targets.resize(n_rows);
  system.pinned.assign(n_rows, false);

  auto fill = [&](Eigen::Index r, const Coalition& c, double value) {
    if (c.width() != n_lines) {
      throw DomainError("row width " + std::to_string(c.width()) +
                        " does not match " + std::to_string(n_lines));
    }
    if (!std::isfinite(value)) {
      throw EvaluationError(c.bit_string(), "non-finite value");
    }
    system.design(r, 0) = 1.0;
    for (LineId line : c.lines()) system.design(r, line) = 1.0;
    const int k = c.size();
    system.weights(r) =
        row_weight(n_lines, k, options.weighting, options.pin_weight);
    system.pinned[r] = (k == 0 || k == n_lines);
    system.targets(r) = value;
  };

  Eigen::Index r = 0;
  for (const BinaryVector& row : rows) fill(r++, row.bits, row.value);
  fill(r++, Coalition::Empty(n_lines), empty_value);
  fill(r++, Coalition::Grand(n_lines), grand_value);
  return system;
}

WlsSolution solve_weighted_least_squares(const RegressionSystem& system,
                                         const SolverOptions& options) {
  using Eigen::Index;
  using Eigen::MatrixXd;
  using Eigen::VectorXd;

  const Index p = system.design.cols();
  const Index n_rows = system.design.rows();
  if (system.weights.size() != n_rows || system.targets.size() != n_rows ||
      static_cast<Index>(system.pinned.size()) != n_rows) {
    throw DomainError("regression system dimensions disagree");
  }
  if ((system.weights.array() <= 0).any()) {
    throw DomainError("regression weights must be positive");
  }

  // An infinite pin weight turns the pinned rows into equality constraints.
  bool hard_pins = false;
  bool finite_pins = false;
  for (Index r = 0; r < n_rows; ++r) {
    if (!system.pinned[r]) {
      if (!std::isfinite(system.weights(r))) {
        throw DomainError("only pinned rows may carry an infinite weight");
      }
      continue;
    }
    (std::isinf(system.weights(r)) ? hard_pins : finite_pins) = true;
  }
  if (hard_pins && finite_pins) {
    throw DomainError("pinned rows mix finite and infinite weights");
  }

  // Accumulate the pinned and unpinned parts separately.
  MatrixXd normal_light = MatrixXd::Zero(p, p);
  MatrixXd normal_heavy = MatrixXd::Zero(p, p);
  VectorXd rhs_light = VectorXd::Zero(p);
  VectorXd rhs_heavy = VectorXd::Zero(p);
  std::vector<Index> heavy_index;
  for (Index r = 0; r < n_rows; ++r) {
    const auto row = system.design.row(r);
    const double w = system.weights(r);
    if (system.pinned[r]) {
      heavy_index.push_back(r);
      if (hard_pins) continue;
      normal_heavy.noalias() += w * row.transpose() * row;
      rhs_heavy.noalias() += (w * system.targets(r)) * row.transpose();
    } else {
      normal_light.noalias() += w * row.transpose() * row;
      rhs_light.noalias() += (w * system.targets(r)) * row.transpose();
    }
  }

  // Orthonormal basis [Q | P] where Q spans the pinned rows.
  MatrixXd basis = MatrixXd::Identity(p, p);
  MatrixXd pinned_rows(static_cast<Index>(heavy_index.size()), p);
  VectorXd pinned_targets(static_cast<Index>(heavy_index.size()));
  Index r_heavy = 0;
  if (!heavy_index.empty()) {
    for (std::size_t j = 0; j < heavy_index.size(); ++j) {
      pinned_rows.row(static_cast<Index>(j)) =
          system.design.row(heavy_index[j]);
      pinned_targets(static_cast<Index>(j)) =
          system.targets(heavy_index[j]);
    }
    Eigen::ColPivHouseholderQR<MatrixXd> qr(pinned_rows.transpose());
    r_heavy = qr.rank();
    basis = qr.householderQ() * MatrixXd::Identity(p, p);
  }
  const Index q_free = p - r_heavy;
  const MatrixXd q_basis = basis.leftCols(r_heavy);
  const MatrixXd p_basis = basis.rightCols(q_free);

  VectorXd y = VectorXd::Zero(r_heavy);
  VectorXd z = VectorXd::Zero(q_free);

  // Pinned rows have no component along p_basis, so they only enter g11
  // and c1.
  const MatrixXd g12 = q_basis.transpose() * normal_light * p_basis;
  const MatrixXd g22 = p_basis.transpose() * normal_light * p_basis;
  const VectorXd c2 = p_basis.transpose() * rhs_light;

  MatrixXd schur = g22;
  VectorXd schur_rhs = c2;
  Eigen::LDLT<MatrixXd> g11_ldlt;
  if (r_heavy > 0 && hard_pins) {
    // The constraints fix y; z fits the unpinned rows given y.
    y = (pinned_rows * q_basis).colPivHouseholderQr().solve(pinned_targets);
    schur_rhs.noalias() -= g12.transpose() * y;
  } else if (r_heavy > 0) {
    const MatrixXd g11 =
        q_basis.transpose() * (normal_heavy + normal_light) * q_basis;
    const VectorXd c1 = q_basis.transpose() * (rhs_heavy + rhs_light);
    g11_ldlt.compute(g11);
    schur.noalias() -= g12.transpose() * g11_ldlt.solve(g12);
    schur_rhs.noalias() -= g12.transpose() * g11_ldlt.solve(c1);
  }

  if (q_free > 0) {
    schur = 0.5 * (schur + schur.transpose());
    const double scale = schur.trace() / static_cast<double>(q_free);
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(schur);
    const double min_eig = eig.eigenvalues()(0);
    if (!(scale > 0) || min_eig < options.rank_tolerance * scale) {
      const VectorXd direction = p_basis * eig.eigenvectors().col(0);
      throw RankDeficiencyError(
          "rank-deficient regression system: the unpinned rows do not "
          "determine every coefficient",
          std::vector<double>(direction.data(),
                              direction.data() + direction.size()));
    }
    schur.diagonal().array() += options.ridge * scale;
    z = schur.ldlt().solve(schur_rhs);
  }
  if (r_heavy > 0 && !hard_pins) {
    const VectorXd c1 = q_basis.transpose() * (rhs_heavy + rhs_light);
    y = g11_ldlt.solve(c1 - g12 * z);
  }

  const VectorXd x = q_basis * y + p_basis * z;
  WlsSolution solution;
  const Index offset = system.has_intercept ? 1 : 0;
  solution.intercept = system.has_intercept ? x(0) : 0.0;
  solution.phi.assign(x.data() + offset, x.data() + p);
  return solution;
}

ShapleyRanking estimate_shapley(const Game& game,
                                const SamplerConfig& config) {
  if (game.n_lines < 2) throw DomainError("estimation needs >= 2 lines");
  const std::vector<Coalition> vectors =
      sample_binary_vectors(config, game.n_lines);
  const RegressionSystem system =
      build_system(vectors, game,
                   {.pin_weight = config.pin_weight,
                    .weighting = weighting_for(config.scheme)});
  return rank_from_values(solve_weighted_least_squares(system).phi);
}

}  // namespace lidarsel
