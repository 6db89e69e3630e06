#pragma once

// Exact character theory of S_n: Murnaghan–Nakayama characters, Kostka
// numbers, class functions with inner products and convolution, and the
// double-ribbon family T_n. No floating point anywhere in this header.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "algperm/errors.hpp"
#include "algperm/exact.hpp"
#include "algperm/partition.hpp"
#include "algperm/permutation.hpp"

namespace algperm {

/// Λ_t = (n−t, 1^t), the hook of height t+1.
inline Partition hook(int n, int t) {
  detail::require(n >= 1 && t >= 0 && t <= n - 1, "hook: need 0 <= t <= n-1");
  std::vector<int> parts{n - t};
  parts.insert(parts.end(), t, 1);
  return Partition(std::move(parts));
}

namespace detail {

// Beta-set encoding: removing a k-ribbon moves one bead from b to b−k; the
// ribbon height is the number of beads strictly between.
inline std::vector<int> to_beta(const Partition& shape) {
  const int len = shape.length();
  std::vector<int> beta(len);
  for (int i = 0; i < len; ++i) beta[i] = shape.row(i) + (len - 1 - i);
  return beta;  // strictly decreasing
}

inline Partition from_beta(std::vector<int> beta) {
  std::sort(beta.begin(), beta.end(), std::greater<>());
  const int len = static_cast<int>(beta.size());
  std::vector<int> parts;
  for (int i = 0; i < len; ++i) {
    const int part = beta[i] - (len - 1 - i);
    if (part > 0) parts.push_back(part);
  }
  return Partition(std::move(parts));
}

struct MnCache {
  std::mutex mutex;
  std::map<std::pair<Partition, Partition>, std::int64_t> values;
};

inline MnCache& mn_cache() {
  static MnCache cache;
  return cache;
}

}  // namespace detail

/// χ_shape at the class with the given cycle type, by the Murnaghan–Nakayama
/// rule: ribbons of the largest cycle length are removed first, each
/// contributing (−1)^(height). Memoized; safe to call from several threads.
inline std::int64_t mn_character(const Partition& shape, const Partition& cycle_type) {
  detail::require(shape.weight() == cycle_type.weight(), "mn_character: weight mismatch");
  if (shape.empty()) return 1;
  auto& cache = detail::mn_cache();
  const auto key = std::make_pair(shape, cycle_type);
  {
    std::lock_guard lock(cache.mutex);
    if (auto it = cache.values.find(key); it != cache.values.end()) return it->second;
  }
  const int k = cycle_type.parts().front();
  const std::vector<int> rest(cycle_type.parts().begin() + 1, cycle_type.parts().end());
  const Partition rest_type(rest);
  std::vector<int> beta = detail::to_beta(shape);
  std::int64_t total = 0;
  for (std::size_t idx = 0; idx < beta.size(); ++idx) {
    const int b = beta[idx];
    const int target = b - k;
    if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    int between = 0;
    for (int x : beta)
      if (x > target && x < b) ++between;
    std::vector<int> moved = beta;
    moved[idx] = target;
    const Partition remaining = detail::from_beta(std::move(moved));
    const std::int64_t sub = mn_character(remaining, rest_type);
    total += (between % 2 == 0) ? sub : -sub;
  }
  std::lock_guard lock(cache.mutex);
  cache.values.emplace(key, total);
  return total;
}

/// dim χ_λ, the character at the identity class.
inline std::int64_t character_dimension(const Partition& shape) {
  return mn_character(shape, Partition(std::vector<int>(shape.weight(), 1)));
}

/// dim χ_t = C(n−1, t).
inline BigInt hook_dimension(int n, int t) {
  detail::require(n >= 1 && t >= 0 && t <= n - 1, "hook_dimension: need 0 <= t <= n-1");
  return binomial(n - 1, t);
}

/// Number of semistandard tableaux of the given shape and content (rows weakly
/// increasing, columns strictly increasing). The content may be any weak
/// composition; Kostka numbers do not depend on its order.
inline BigInt kostka(const Partition& shape, const std::vector<int>& content) {
  int total = 0;
  for (int c : content) {
    detail::require(c >= 0, "kostka: negative content");
    total += c;
  }
  detail::require(total == shape.weight(), "kostka: weight mismatch");
  const int rows = shape.length();
  // Place the entries equal to v as a horizontal strip on top of the
  // previous shape, interlacing prev[i] <= next[i] <= prev[i-1].
  std::function<BigInt(std::size_t, const std::vector<int>&)> place =
      [&](std::size_t value, const std::vector<int>& prev) -> BigInt {
    if (value == content.size()) {
      for (int i = 0; i < rows; ++i)
        if (prev[i] != shape.row(i)) return 0;
      return 1;
    }
    BigInt count = 0;
    std::vector<int> next = prev;
    std::function<void(int, int)> fill = [&](int row, int remaining) {
      if (row == rows) {
        if (remaining == 0) count += place(value + 1, next);
        return;
      }
      const int upper = std::min(shape.row(row), row == 0 ? shape.row(0) : prev[row - 1]);
      for (int len = prev[row]; len <= upper && len - prev[row] <= remaining; ++len) {
        next[row] = len;
        fill(row + 1, remaining - (len - prev[row]));
      }
      next[row] = prev[row];
    };
    fill(0, content[value]);
    return count;
  };
  return place(0, std::vector<int>(rows, 0));
}

inline BigInt kostka(const Partition& shape, const Partition& content) {
  return kostka(shape, content.parts());
}

/// |class of cycle type μ| = n! / z_μ with z_μ = Π k^{m_k} m_k!.
inline BigInt class_size(const Partition& mu) {
  std::map<int, int> multiplicity;
  for (int part : mu.parts()) ++multiplicity[part];
  BigInt centralizer = 1;
  for (auto [k, m] : multiplicity) centralizer *= ipow(k, m) * factorial(m);
  return factorial(mu.weight()) / centralizer;
}

/// A rational-valued class function on S_n, one value per cycle type.
class ClassFunction {
 public:
  explicit ClassFunction(int degree) : degree_(degree) {
    detail::require(degree >= 1, "class function degree must be >= 1");
    for (const Partition& mu : partitions_of(degree)) values_.emplace(mu, Rational(0));
  }

  template <class F>
  static ClassFunction from(int degree, F&& value_at) {
    ClassFunction f(degree);
    for (auto& [mu, value] : f.values_) value = Rational(value_at(mu));
    return f;
  }

  int degree() const { return degree_; }
  const Rational& operator()(const Partition& mu) const { return values_.at(mu); }
  const Rational& at(const Permutation& p) const { return values_.at(cycle_type(p)); }
  void set(const Partition& mu, Rational value) { values_.at(mu) = std::move(value); }
  const std::map<Partition, Rational>& values() const { return values_; }

  ClassFunction& operator+=(const ClassFunction& other) {
    detail::require(degree_ == other.degree_, "class function degree mismatch");
    for (auto& [mu, value] : values_) value += other.values_.at(mu);
    return *this;
  }

  ClassFunction scaled(const Rational& factor) const {
    ClassFunction out = *this;
    for (auto& [mu, value] : out.values_) value *= factor;
    return out;
  }

  friend bool operator==(const ClassFunction&, const ClassFunction&) = default;

 private:
  int degree_;
  std::map<Partition, Rational> values_;
};

inline ClassFunction character(const Partition& shape) {
  return ClassFunction::from(shape.weight(),
                             [&](const Partition& mu) { return mn_character(shape, mu); });
}

/// π ↦ d^{c(π)}, the character of S_n acting on length-n words over d letters.
inline ClassFunction d_cycles_class_function(int n, int d) {
  detail::require(n >= 1 && d >= 1, "d_cycles_class_function: need n, d >= 1");
  return ClassFunction::from(n, [&](const Partition& mu) { return ipow(d, mu.length()); });
}

/// Uniform probability distribution on one conjugacy class (P_n for μ = (n),
/// P_{n,n} for μ = (n,n)).
inline ClassFunction uniform_on_class(const Partition& mu) {
  ClassFunction f(mu.weight());
  f.set(mu, make_ratio(1, class_size(mu)));
  return f;
}

/// ⟨f, g⟩ = (1/n!) Σ_π f(π) g(π); values are real so no conjugation.
inline Rational inner_product(const ClassFunction& f, const ClassFunction& g) {
  detail::require(f.degree() == g.degree(), "inner_product: degree mismatch");
  Rational total = 0;
  for (const auto& [mu, value] : f.values()) total += Rational(class_size(mu)) * value * g(mu);
  return total / Rational(factorial(f.degree()));
}

enum class ConvolutionMethod { kCharacterExpansion, kEnumeration };

/// (f * g)(π) = Σ_η f(η) g(η⁻¹π).
inline ClassFunction convolve(const ClassFunction& f, const ClassFunction& g,
                              ConvolutionMethod method = ConvolutionMethod::kCharacterExpansion,
                              int cap = kDefaultEnumerationCap) {
  detail::require(f.degree() == g.degree(), "convolve: degree mismatch");
  const int n = f.degree();
  ClassFunction out(n);
  if (method == ConvolutionMethod::kCharacterExpansion) {
    // χ * ψ = δ_{χψ} (n!/χ(1)) χ on irreducibles.
    const Rational group_order(factorial(n));
    for (const Partition& lambda : partitions_of(n)) {
      const ClassFunction chi = character(lambda);
      const Rational coeff = inner_product(chi, f) * inner_product(chi, g) * group_order /
                             Rational(character_dimension(lambda));
      if (coeff != 0) out += chi.scaled(coeff);
    }
    return out;
  }
  detail::require_cap(n, cap, "convolve enumeration degree");
  const std::vector<Permutation> group = enumerate(n, cap);
  std::map<Partition, Permutation> representative;
  for (const Permutation& p : group) representative.emplace(cycle_type(p), p);
  for (const auto& [mu, pi] : representative) {
    Rational total = 0;
    for (const Permutation& eta : group) {
      const Rational& fv = f.at(eta);
      if (fv == 0) continue;
      total += fv * g.at(eta.inverse() * pi);
    }
    out.set(mu, total);
  }
  return out;
}

/// A member of T_n: a partition τ of 2n with χ_τ(n,n) ≠ 0.
struct DoubleRibbonShape {
  Partition shape;
  std::int64_t character_at_nn;  // χ_τ at cycle type (n, n)
  int rank;
};

/// All partitions τ of 2n whose character at the class (n, n) is nonzero, in
/// decreasing lexicographic order.
inline std::vector<DoubleRibbonShape> t_n_family(int n) {
  detail::require(n >= 1, "t_n_family: n must be >= 1");
  const Partition nn{n, n};
  std::vector<DoubleRibbonShape> out;
  for (const Partition& tau : partitions_of(2 * n)) {
    const std::int64_t chi = mn_character(tau, nn);
    if (chi != 0) out.push_back({tau, chi, tau.rank()});
  }
  return out;
}

}  // namespace algperm
