#pragma once

// Determinants of n×n matrices over A_d: the row-ordered Cayley determinant,
// the symmetrized determinant, and ordinary scalar determinants.

#include <Eigen/LU>

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "algperm/errors.hpp"
#include "algperm/exact.hpp"
#include "algperm/linalg.hpp"
#include "algperm/permutation.hpp"
#include "algperm/rng.hpp"

namespace algperm {

inline constexpr int kCayleyCap = 9;
inline constexpr int kSymProdCap = 12;
inline constexpr int kSdetCap = 7;

/// n×n matrix with entries in A_d. Absent cells are the zero element.
class AlgebraMatrix {
 public:
  AlgebraMatrix(int n, int d) : n_(n), d_(d), cells_(static_cast<std::size_t>(n) * n) {
    detail::require(n >= 1 && d >= 1, "AlgebraMatrix: need n >= 1 and d >= 1");
  }

  int n() const { return n_; }
  int d() const { return d_; }

  /// 0-based (row, col).
  const std::optional<ComplexMatrix>& cell(int row, int col) const { return cells_[index(row, col)]; }
  bool present(int row, int col) const { return cell(row, col).has_value(); }

  void set(int row, int col, ComplexMatrix value) {
    detail::require(value.dim() == d_, "AlgebraMatrix: cell dim mismatch");
    cells_[index(row, col)] = std::move(value);
  }
  void clear(int row, int col) { cells_[index(row, col)].reset(); }

  /// The cell, or an explicit zero matrix when absent.
  ComplexMatrix value(int row, int col) const {
    const auto& c = cell(row, col);
    return c ? *c : ComplexMatrix::zero(d_);
  }

 private:
  std::size_t index(int row, int col) const {
    detail::require(row >= 0 && row < n_ && col >= 0 && col < n_, "AlgebraMatrix: index out of range");
    return static_cast<std::size_t>(row) * n_ + col;
  }

  int n_;
  int d_;
  std::vector<std::optional<ComplexMatrix>> cells_;
};

namespace detail {

inline int greater_count(std::uint32_t set, int element) {
  return std::popcount(set >> (element + 1));
}

}  // namespace detail

/// Σ_α sign(α)·M_{1,α1}·M_{2,α2}⋯M_{n,αn}, products strictly in row order.
/// Evaluated by dynamic programming over the set of used columns: row |S|−1
/// is appended on the right of every partial product over S minus its column.
inline ComplexMatrix cayley_det(const AlgebraMatrix& m, int cap = kCayleyCap) {
  const int n = m.n();
  const int d = m.d();
  detail::require_cap(n, cap, "cayley_det size");
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::optional<ComplexMatrix>> partial(full + 1);
  partial[0] = ComplexMatrix::identity(d);
  for (std::uint32_t set = 1; set <= full; ++set) {
    const int row = std::popcount(set) - 1;
    std::optional<ComplexMatrix> acc;
    for (int col = 0; col < n; ++col) {
      if (!(set & (1u << col)) || !m.present(row, col)) continue;
      const auto& prev = partial[set & ~(1u << col)];
      if (!prev) continue;
      ComplexMatrix term = *prev * *m.cell(row, col);
      if (detail::greater_count(set, col) % 2) term *= -1.0;
      if (acc) *acc += term;
      else acc = std::move(term);
    }
    partial[set] = std::move(acc);
  }
  return partial[full] ? *partial[full] : ComplexMatrix::zero(d);
}

/// (1/n!)·Σ over all orderings of the product, via multilinear extraction:
/// (1/n!)·Σ_{S⊆[n]} (−1)^{n−|S|}·(Σ_{i∈S} σ_i)ⁿ.
inline ComplexMatrix sym_prod(const std::vector<ComplexMatrix>& factors, int cap = kSymProdCap) {
  const int n = static_cast<int>(factors.size());
  detail::require(n >= 1, "sym_prod: need at least one factor");
  detail::require_cap(n, cap, "sym_prod length");
  const int d = factors.front().dim();
  for (const ComplexMatrix& f : factors) detail::require(f.dim() == d, "sym_prod: dim mismatch");
  ComplexMatrix::Storage total = ComplexMatrix::Storage::Zero(d, d);
  for (std::uint32_t set = 1; set < (1u << n); ++set) {
    ComplexMatrix::Storage s = ComplexMatrix::Storage::Zero(d, d);
    for (int i = 0; i < n; ++i)
      if (set & (1u << i)) s += factors[i].eigen();
    ComplexMatrix::Storage power = s;
    for (int k = 1; k < n; ++k) power = power * s;
    if ((n - std::popcount(set)) % 2) total -= power;
    else total += power;
  }
  total /= to_double(factorial(n));
  return ComplexMatrix(std::move(total));
}

/// Σ_π sign(π)·sym_prod(M_{1,π1}, …, M_{n,πn}) over π with every cell present.
inline ComplexMatrix sdet_by_permutation(const AlgebraMatrix& m, int cap = kSdetCap) {
  const int n = m.n();
  detail::require_cap(n, cap, "sdet size");
  ComplexMatrix total = ComplexMatrix::zero(m.d());
  std::vector<int> cols(n);
  std::vector<ComplexMatrix> factors;
  factors.reserve(n);
  auto descend = [&](auto&& self, int row, std::uint32_t used, int inversions) -> void {
    if (row == n) {
      ComplexMatrix term = sym_prod(factors);
      if (inversions % 2) term *= -1.0;
      total += term;
      return;
    }
    for (int col = 0; col < n; ++col) {
      if ((used & (1u << col)) || !m.present(row, col)) continue;
      factors.push_back(*m.cell(row, col));
      self(self, row + 1, used | (1u << col), inversions + detail::greater_count(used, col));
      factors.pop_back();
    }
  };
  descend(descend, 0, 0u, 0);
  return total;
}

/// sdet M = (1/n!)·Σ_{α,α'} sign(α'α⁻¹)·Π_i M_{αi,α'i}. Dynamic programming
/// over (used rows, used columns): appending the pair (r, c) on the right of
/// a partial product multiplies the sign by (−1)^{#rows > r + #cols > c}.
inline ComplexMatrix sdet_exact(const AlgebraMatrix& m, int cap = kSdetCap) {
  const int n = m.n();
  const int d = m.d();
  detail::require_cap(n, cap, "sdet size");
  const std::uint32_t side = 1u << n;
  std::vector<std::optional<ComplexMatrix>> partial(static_cast<std::size_t>(side) * side);
  auto slot = [side](std::uint32_t rows, std::uint32_t cols) {
    return static_cast<std::size_t>(rows) * side + cols;
  };
  partial[slot(0, 0)] = ComplexMatrix::identity(d);
  std::vector<std::vector<std::uint32_t>> by_size(n + 1);
  for (std::uint32_t s = 0; s < side; ++s) by_size[std::popcount(s)].push_back(s);
  for (int k = 0; k < n; ++k) {
    for (std::uint32_t rows : by_size[k]) {
      for (std::uint32_t cols : by_size[k]) {
        const auto& prev = partial[slot(rows, cols)];
        if (!prev) continue;
        for (int r = 0; r < n; ++r) {
          if (rows & (1u << r)) continue;
          for (int c = 0; c < n; ++c) {
            if ((cols & (1u << c)) || !m.present(r, c)) continue;
            ComplexMatrix term = *prev * *m.cell(r, c);
            if ((detail::greater_count(rows, r) + detail::greater_count(cols, c)) % 2) term *= -1.0;
            auto& next = partial[slot(rows | (1u << r), cols | (1u << c))];
            if (next) *next += term;
            else next = std::move(term);
          }
        }
      }
    }
  }
  const auto& result = partial[slot(side - 1, side - 1)];
  if (!result) return ComplexMatrix::zero(d);
  return scale(*result, 1.0 / to_double(factorial(n)));
}

/// Unbiased Monte Carlo estimate of sdet M from uniformly sampled (α, α')
/// pairs: each pair contributes n!·sign(α'α⁻¹)·Π_i M_{αi,α'i}. Diagnostic
/// only; squaring it does not estimate |tr sdet M|².
inline ComplexMatrix sdet_sampled(const AlgebraMatrix& m, std::size_t pair_count, RngStream& stream) {
  detail::require(pair_count >= 1, "sdet_sampled: need at least one pair");
  const int n = m.n();
  const double weight = to_double(factorial(n));
  ComplexMatrix total = ComplexMatrix::zero(m.d());
  for (std::size_t s = 0; s < pair_count; ++s) {
    const Permutation alpha = sample_uniform(n, stream);
    const Permutation alpha_p = sample_uniform(n, stream);
    ComplexMatrix prod = ComplexMatrix::identity(m.d());
    bool zero = false;
    for (int i = 1; i <= n && !zero; ++i) {
      const auto& c = m.cell(alpha(i) - 1, alpha_p(i) - 1);
      if (!c) zero = true;
      else prod = prod * *c;
    }
    if (zero) continue;
    total += scale(prod, weight * sign(alpha_p * alpha.inverse()));
  }
  return scale(total, 1.0 / static_cast<double>(pair_count));
}

/// Ordinary determinant by partially pivoted LU.
inline Complex scalar_det(const Eigen::MatrixXcd& m) {
  detail::require(m.rows() == m.cols(), "scalar_det: matrix must be square");
  if (m.rows() == 0) return Complex(1.0);
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(m).determinant();
}

}  // namespace algperm
