#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "algperm/errors.hpp"

namespace algperm {

/// An integer partition: weakly decreasing positive parts. Doubles as a Young
/// diagram (row lengths), a cycle type, and a sorted tableau content.
class Partition {
 public:
  Partition() = default;

  /// Parts must already be nonincreasing and positive.
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      detail::require(parts_[i] >= 1, "partition parts must be positive");
      detail::require(i == 0 || parts_[i - 1] >= parts_[i],
                      "partition parts must be nonincreasing");
    }
  }

  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  /// Sorts and drops zero entries; accepts any weak composition.
  static Partition from_composition(std::vector<int> entries) {
    for (int e : entries) detail::require(e >= 0, "negative composition entry");
    std::erase(entries, 0);
    std::sort(entries.begin(), entries.end(), std::greater<>());
    return Partition(std::move(entries));
  }

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  bool empty() const { return parts_.empty(); }

  /// Row i (0-based); zero past the last row.
  int row(int i) const { return i < length() ? parts_[i] : 0; }

  Partition conjugate() const {
    std::vector<int> cols;
    for (int j = 0; j < row(0); ++j) {
      int height = 0;
      while (height < length() && parts_[height] > j) ++height;
      cols.push_back(height);
    }
    return Partition(std::move(cols));
  }

  /// Number of diagonal cells (side of the Durfee square).
  int rank() const {
    int r = 0;
    while (r < length() && parts_[r] > r) ++r;
    return r;
  }

  /// Frobenius characteristics (b_1..b_r | a_1..a_r): b_i cells to the right
  /// of the i-th diagonal cell, a_i cells below it.
  std::pair<std::vector<int>, std::vector<int>> characteristics() const {
    const Partition conj = conjugate();
    std::vector<int> right, below;
    for (int i = 0; i < rank(); ++i) {
      right.push_back(parts_[i] - i - 1);
      below.push_back(conj.parts_[i] - i - 1);
    }
    return {right, below};
  }

  bool is_hook() const { return length() <= 1 || parts_[1] == 1; }

  std::string to_string() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < parts_.size(); ++i) out << (i ? "," : "") << parts_[i];
    out << ')';
    return out.str();
  }

  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

inline std::ostream& operator<<(std::ostream& out, const Partition& x) { return out << x.to_string(); }

/// All partitions of n, in decreasing lexicographic order ((n) first).
inline std::vector<Partition> partitions_of(int n) {
  detail::require(n >= 0, "partitions_of: negative weight");
  std::vector<Partition> out;
  std::vector<int> current;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      current.push_back(p);
      rec(remaining - p, p);
      current.pop_back();
    }
  };
  rec(n, n);
  return out;
}

/// All weak compositions of n into exactly k ordered nonnegative parts.
inline std::vector<std::vector<int>> weak_compositions(int n, int k) {
  detail::require(n >= 0 && k >= 1, "weak_compositions: need n >= 0, k >= 1");
  std::vector<std::vector<int>> out;
  std::vector<int> current(k, 0);
  std::function<void(int, int)> rec = [&](int slot, int remaining) {
    if (slot == k - 1) {
      current[slot] = remaining;
      out.push_back(current);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      current[slot] = v;
      rec(slot + 1, remaining - v);
    }
  };
  rec(0, n);
  return out;
}

}  // namespace algperm
