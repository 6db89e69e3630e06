#pragma once

// Reference engines that deliberately avoid the fast paths they check:
// Wick pairings as symbolic deltas, loop counting by union-find, literal
// definition sums and factorial enumerations.

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>
#include <vector>

#include "algperm/delta_tensor.hpp"
#include "algperm/determinants.hpp"
#include "algperm/errors.hpp"
#include "algperm/exact.hpp"
#include "algperm/linalg.hpp"
#include "algperm/partition.hpp"
#include "algperm/permutation.hpp"

namespace algperm::oracles {

/// E[σ^{⊗k} ⊗ (σ*)^{⊗k}] for Gaussian σ: one term per bijection between the
/// k factors and the k conjugates, each with coefficient d^{−k}.
inline DeltaTensor wick_gaussian_moment(int k, int d) {
  detail::require(k >= 1 && d >= 1, "wick_gaussian_moment: need k, d >= 1");
  detail::require_cap(k, 3, "wick_gaussian_moment factor count");
  DeltaTensor out(4 * k);
  const Rational coeff = Rational(1) / Rational(ipow(d, k));
  std::vector<int> match(k);
  std::iota(match.begin(), match.end(), 0);
  do {
    SlotPairing pairing;
    for (int a = 0; a < k; ++a) {
      pairing.emplace_back(2 * a, 2 * k + 2 * match[a]);
      pairing.emplace_back(2 * a + 1, 2 * k + 2 * match[a] + 1);
    }
    out.add_term(coeff, std::move(pairing));
  } while (std::next_permutation(match.begin(), match.end()));
  return out;
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(int size) : parent_(size) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }
  int components() {
    int count = 0;
    for (int i = 0; i < static_cast<int>(parent_.size()); ++i)
      if (find(i) == i) ++count;
    return count;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

/// Σ_terms coefficient·d^{loops}, where the loops are the components of the
/// term's pairing joined with the wiring. The wiring must match every slot.
inline Rational contract(const DeltaTensor& t, const SlotPairing& wiring, int d) {
  const int arity = t.arity();
  std::vector<char> used(arity, 0);
  algperm::detail::require(static_cast<int>(wiring.size()) * 2 == arity, "contract: wiring must close every slot");
  for (auto [a, b] : wiring) {
    algperm::detail::require(a >= 0 && b >= 0 && a < arity && b < arity && a != b && !used[a] && !used[b],
                             "contract: wiring is not a perfect matching");
    used[a] = used[b] = 1;
  }
  Rational total = 0;
  for (const DeltaTerm& term : t.terms()) {
    detail::UnionFind uf(arity);
    for (auto [a, b] : term.pairing) uf.unite(a, b);
    for (auto [a, b] : wiring) uf.unite(a, b);
    total += term.coefficient * Rational(ipow(d, uf.components()));
  }
  return total;
}

/// n independent factors σ_1..σ_n, each with its own E[σ_a ⊗ σ_a*] block at
/// slots 4a..4a+3 (σ upper, σ lower, σ* upper, σ* lower).
inline DeltaTensor independent_pairs_moment(int n, int d) {
  DeltaTensor out(0);
  out.add_term(1, {});
  for (int a = 0; a < n; ++a) out = tensor_product(out, wick_gaussian_moment(1, d));
  return out;
}

/// Wiring of tr(σ_1⋯σ_n)·conj(tr(σ_{β1}⋯σ_{βn})) on independent_pairs_moment.
inline SlotPairing trace_pair_wiring(const Permutation& beta) {
  const int n = beta.degree();
  SlotPairing wiring;
  for (int a = 0; a < n; ++a) wiring.emplace_back(4 * a + 1, 4 * ((a + 1) % n));
  for (int p = 0; p < n; ++p) {
    const int here = beta(p + 1) - 1;
    const int next = beta((p + 1) % n + 1) - 1;
    wiring.emplace_back(4 * here + 3, 4 * next + 2);
  }
  return wiring;
}

/// (1/n!)·Σ_{α,α'} sign(α'α⁻¹)·Π_i M_{αi,α'i}, term by term.
inline ComplexMatrix literal_sdet(const AlgebraMatrix& m) {
  const int n = m.n();
  algperm::detail::require_cap(n, 4, "literal_sdet size");
  const std::vector<Permutation> group = enumerate(n);
  ComplexMatrix total = ComplexMatrix::zero(m.d());
  for (const Permutation& a : group) {
    for (const Permutation& b : group) {
      ComplexMatrix prod = ComplexMatrix::identity(m.d());
      for (int i = 1; i <= n; ++i) prod = prod * m.value(a(i) - 1, b(i) - 1);
      total += scale(prod, static_cast<double>(sign(b * a.inverse())));
    }
  }
  return scale(total, 1.0 / to_double(factorial(n)));
}

/// Σ_α sign(α)·Π_i M_{i,αi} in row order, enumerating all of S_n.
inline ComplexMatrix literal_cayley_det(const AlgebraMatrix& m) {
  const int n = m.n();
  algperm::detail::require_cap(n, 7, "literal_cayley_det size");
  ComplexMatrix total = ComplexMatrix::zero(m.d());
  for_each_permutation(n, [&](const Permutation& a) {
    ComplexMatrix prod = ComplexMatrix::identity(m.d());
    for (int i = 1; i <= n; ++i) prod = prod * m.value(i - 1, a(i) - 1);
    total += scale(prod, static_cast<double>(sign(a)));
  });
  return total;
}

/// Average of the product over all n! orderings.
inline ComplexMatrix sym_prod_by_orderings(const std::vector<ComplexMatrix>& factors) {
  const int n = static_cast<int>(factors.size());
  algperm::detail::require(n >= 1, "sym_prod_by_orderings: need at least one factor");
  algperm::detail::require_cap(n, 8, "sym_prod_by_orderings length");
  ComplexMatrix total = ComplexMatrix::zero(factors.front().dim());
  for_each_permutation(n, [&](const Permutation& order) {
    ComplexMatrix prod = ComplexMatrix::identity(factors.front().dim());
    for (int i = 1; i <= n; ++i) prod = prod * factors[order(i) - 1];
    total += prod;
  });
  return scale(total, 1.0 / to_double(factorial(n)));
}

/// Σ_α Π_i a_{i,αi} over all of S_n.
template <class T>
T naive_permanent(const std::vector<std::vector<T>>& a) {
  const int n = static_cast<int>(a.size());
  algperm::detail::require(n >= 1, "naive_permanent: empty matrix");
  algperm::detail::require_cap(n, 9, "naive_permanent size");
  T total = 0;
  for_each_permutation(n, [&](const Permutation& p) {
    T prod = 1;
    for (int i = 1; i <= n; ++i) prod *= a[i - 1][p(i) - 1];
    total += prod;
  });
  return total;
}

/// Leibniz expansion Σ_α sign(α)·Π_i m_{i,αi}.
inline Complex leibniz_det(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  algperm::detail::require(n >= 1 && m.cols() == n, "leibniz_det: need a nonempty square matrix");
  algperm::detail::require_cap(n, 8, "leibniz_det size");
  Complex total = 0;
  for_each_permutation(n, [&](const Permutation& p) {
    Complex prod = 1;
    for (int i = 1; i <= n; ++i) prod *= m(i - 1, p(i) - 1);
    total += static_cast<double>(sign(p)) * prod;
  });
  return total;
}

/// Hook length formula n!/Π hooks.
inline BigInt hook_length_dimension(const Partition& shape) {
  const Partition conj = shape.conjugate();
  BigInt hooks = 1;
  for (int i = 0; i < shape.length(); ++i)
    for (int j = 0; j < shape.row(i); ++j) hooks *= (shape.row(i) - j - 1) + (conj.row(j) - i - 1) + 1;
  return factorial(shape.weight()) / hooks;
}

}  // namespace algperm::oracles
