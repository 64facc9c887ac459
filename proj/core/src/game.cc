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

#include "lidarsel/game.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "lidarsel/errors.h"
#include "lidarsel/numeric.h"

namespace lidarsel {
namespace {

std::uint64_t full_mask(int width) {
  return width >= 64 ? ~std::uint64_t{0}
                     : (std::uint64_t{1} << width) - 1;
}

void check_line(int width, LineId line) {
  if (line < 1 || line > width) {
    throw DomainError("line " + std::to_string(line) + " outside [1, " +
                      std::to_string(width) + "]");
  }
}

}  // namespace

Coalition::Coalition(int width, std::uint64_t bits)
    : width_(width), bits_(bits) {
  if (width < 0 || width > kMaxLines) {
    throw DomainError("coalition width " + std::to_string(width) +
                      " outside [0, 64]");
  }
  if ((bits & ~full_mask(width)) != 0) {
    throw DomainError("coalition bits exceed width " + std::to_string(width));
  }
}

Coalition Coalition::Grand(int width) {
  return Coalition(width, full_mask(width));
}

Coalition Coalition::FromLines(int width, std::span<const LineId> lines) {
  Coalition c = Empty(width);
  for (LineId line : lines) c = c.with(line);
  return c;
}

int Coalition::size() const noexcept { return std::popcount(bits_); }

bool Coalition::contains(LineId line) const {
  check_line(width_, line);
  return (bits_ >> (line - 1)) & 1u;
}

Coalition Coalition::with(LineId line) const {
  check_line(width_, line);
  Coalition c = *this;
  c.bits_ |= std::uint64_t{1} << (line - 1);
  return c;
}

Coalition Coalition::without(LineId line) const {
  check_line(width_, line);
  Coalition c = *this;
  c.bits_ &= ~(std::uint64_t{1} << (line - 1));
  return c;
}

std::vector<LineId> Coalition::lines() const {
  std::vector<LineId> out;
  out.reserve(size());
  for (int i = 0; i < width_; ++i) {
    if ((bits_ >> i) & 1u) out.push_back(i + 1);
  }
  return out;
}

std::string Coalition::bit_string() const {
  std::string s(width_, '0');
  for (int i = 0; i < width_; ++i) {
    if ((bits_ >> i) & 1u) s[i] = '1';
  }
  return s;
}

double Game::operator()(const Coalition& coalition) const {
  if (coalition.width() != n_lines) {
    throw DomainError("coalition width " + std::to_string(coalition.width()) +
                      " does not match game with " + std::to_string(n_lines) +
                      " lines");
  }
  return evaluate(coalition);
}

int ShapleyRanking::position(LineId line) const {
  auto it = std::find(order.begin(), order.end(), line);
  if (it == order.end()) {
    throw DomainError("line " + std::to_string(line) + " not in ranking");
  }
  return static_cast<int>(it - order.begin());
}

CoalitionRange::CoalitionRange(int n_lines, std::optional<LineId> exclude)
    : n_lines_(n_lines), exclude_(exclude) {
  if (n_lines < 0) throw DomainError("negative line count");
  if (n_lines > kMaxExactPlayers) {
    throw EnumerationLimitError(n_lines, kMaxExactPlayers);
  }
  if (exclude) check_line(n_lines, *exclude);
  count_ = std::uint64_t{1} << (n_lines - (exclude ? 1 : 0));
}

Coalition CoalitionRange::iterator::operator*() const {
  std::uint64_t bits = index_;
  if (range_->exclude_) {
    // Open a zero bit at the excluded position.
    const int e = *range_->exclude_ - 1;
    const std::uint64_t low = bits & ((std::uint64_t{1} << e) - 1);
    bits = ((bits >> e) << (e + 1)) | low;
  }
  return Coalition(range_->n_lines_, bits);
}

CoalitionRange enumerate_coalitions(int n_lines,
                                    std::optional<LineId> exclude) {
  return CoalitionRange(n_lines, exclude);
}

ShapleyRanking shapley_exact(const Game& game) {
  const int n = game.n_lines;
  if (n > kMaxExactPlayers) throw EnumerationLimitError(n, kMaxExactPlayers);
  if (n < 0) throw DomainError("negative line count");
  if (n == 0) return {};

  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<double> table(total);
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    table[bits] = game(Coalition(n, bits));
  }
  if (!std::isfinite(table[0])) {
    throw DomainError("characteristic function is not finite on the empty "
                      "coalition");
  }

  // weight[k] = k! (n - k - 1)! / n!
  std::vector<double> weight(n);
  for (int k = 0; k < n; ++k) {
    weight[k] = 1.0 / (n * binomial(n - 1, k));
  }

  std::vector<double> values(n);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    CompensatedSum sum;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      if (bits & bit) continue;
      const double marginal = table[bits | bit] - table[bits];
      sum.add(weight[std::popcount(bits)] * marginal);
    }
    values[i] = sum.value();
  }
  return rank_from_values(std::move(values));
}

ShapleyRanking rank_from_values(std::vector<double> values) {
  ShapleyRanking ranking;
  ranking.order.resize(values.size());
  // Descending line ids so that a stable sort leaves ties topmost-first.
  std::iota(ranking.order.rbegin(), ranking.order.rend(), 1);
  std::stable_sort(ranking.order.begin(), ranking.order.end(),
                   [&values](LineId a, LineId b) {
                     const double va = values[a - 1];
                     const double vb = values[b - 1];
                     if (std::isnan(va)) return false;
                     if (std::isnan(vb)) return true;
                     return va < vb;
                   });
  ranking.values = std::move(values);
  return ranking;
}

}  // namespace lidarsel
