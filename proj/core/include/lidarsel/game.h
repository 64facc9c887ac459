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

#ifndef LIDARSEL_GAME_H_
#define LIDARSEL_GAME_H_

#include <cstdint>
#include <functional>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lidarsel {

// Scan lines are numbered 1..D with the topmost line carrying index D.
using LineId = int;

inline constexpr int kMaxLines = 64;
inline constexpr int kMaxExactPlayers = 20;

// A subset of lines stored as a bit pattern; line i occupies bit i - 1.
class Coalition {
 public:
  Coalition() = default;
  Coalition(int width, std::uint64_t bits);

  static Coalition Empty(int width) { return Coalition(width, 0); }
  static Coalition Grand(int width);
  static Coalition FromLines(int width, std::span<const LineId> lines);

  int width() const noexcept { return width_; }
  std::uint64_t bits() const noexcept { return bits_; }
  int size() const noexcept;
  bool empty() const noexcept { return bits_ == 0; }

  bool contains(LineId line) const;
  Coalition with(LineId line) const;
  Coalition without(LineId line) const;

  // Members in ascending order.
  std::vector<LineId> lines() const;

  // "0"/"1" per line, line 1 first.
  std::string bit_string() const;

  friend bool operator==(const Coalition&, const Coalition&) = default;

 private:
  int width_ = 0;
  std::uint64_t bits_ = 0;
};

// A coalitional game over `n_lines` players. The characteristic function
// returns a cost (lower is better) and must be pure: the same coalition
// always maps to the same value, and it must be finite on the empty set.
struct Game {
  int n_lines = 0;
  std::function<double(const Coalition&)> evaluate;

  double operator()(const Coalition& coalition) const;
};

// Per-line values plus the induced importance order. values[i] belongs to
// line i + 1. Because the game is a cost, the most important line has the
// lowest value and comes first in `order`.
struct ShapleyRanking {
  std::vector<double> values;
  std::vector<LineId> order;

  int n_lines() const noexcept { return static_cast<int>(values.size()); }
  double value(LineId line) const { return values.at(line - 1); }
  // 0-based position of `line` in `order`.
  int position(LineId line) const;
};

// Lazily enumerates every coalition of `n_lines` players that does not
// contain `exclude`, in increasing bit order.
class CoalitionRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Coalition;
    using difference_type = std::ptrdiff_t;
    using pointer = const Coalition*;
    using reference = Coalition;

    iterator() = default;
    iterator(const CoalitionRange* range, std::uint64_t index)
        : range_(range), index_(index) {}

    Coalition operator*() const;
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      iterator copy = *this;
      ++index_;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.index_ == b.index_;
    }

   private:
    const CoalitionRange* range_ = nullptr;
    std::uint64_t index_ = 0;
  };

  CoalitionRange(int n_lines, std::optional<LineId> exclude);

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, count_); }
  std::uint64_t size() const noexcept { return count_; }

 private:
  int n_lines_;
  std::optional<LineId> exclude_;
  std::uint64_t count_;
};

// Throws EnumerationLimitError when n_lines exceeds kMaxExactPlayers.
CoalitionRange enumerate_coalitions(int n_lines,
                                    std::optional<LineId> exclude = {});

// Exact Shapley values by full enumeration of all 2^D coalitions. Each
// coalition is evaluated exactly once; sums run in a fixed order with
// compensation, so repeated calls are bit-identical.
ShapleyRanking shapley_exact(const Game& game);

// Sorts lines by ascending value. Ties go to the higher (topmost) line;
// NaN values sort last.
ShapleyRanking rank_from_values(std::vector<double> values);

}  // namespace lidarsel

#endif  // LIDARSEL_GAME_H_
