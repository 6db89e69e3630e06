#pragma once

// The symmetric group S_n: one-line permutations with 1-based images.

#include <algorithm>
#include <compare>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "algperm/errors.hpp"
#include "algperm/partition.hpp"
#include "algperm/rng.hpp"

namespace algperm {

inline constexpr int kDefaultEnumerationCap = 10;

class Permutation {
 public:
  /// images[i-1] is the image of i; must be a bijection on {1..n}, n >= 1.
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    detail::require(!images_.empty(), "permutation degree must be >= 1");
    std::vector<char> seen(images_.size() + 1, 0);
    for (int v : images_) {
      detail::require(v >= 1 && v <= degree() && !seen[v], "images are not a bijection");
      seen[v] = 1;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> images(n);
    std::iota(images.begin(), images.end(), 1);
    return Permutation(std::move(images));
  }

  /// Builds a permutation of degree n from disjoint cycles, e.g. {{1,2},{3,4,5}}.
  static Permutation from_cycles(int n, std::initializer_list<std::initializer_list<int>> cycles) {
    std::vector<int> images(n);
    std::iota(images.begin(), images.end(), 1);
    for (const auto& cycle : cycles) {
      const std::vector<int> c(cycle);
      for (std::size_t i = 0; i < c.size(); ++i) {
        detail::require(c[i] >= 1 && c[i] <= n, "cycle entry out of range");
        images[c[i] - 1] = c[(i + 1) % c.size()];
      }
    }
    return Permutation(std::move(images));
  }

  int degree() const { return static_cast<int>(images_.size()); }

  /// Image of i, 1-based.
  int operator()(int i) const { return images_[i - 1]; }

  std::span<const int> images() const { return images_; }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (int i = 0; i < degree(); ++i) inv[images_[i] - 1] = i + 1;
    return Permutation(std::move(inv), Unchecked{});
  }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (images_[i] != i + 1) return false;
    return true;
  }

  std::string to_string() const {
    std::ostringstream out;
    out << '[';
    for (int i = 0; i < degree(); ++i) out << (i ? " " : "") << images_[i];
    out << ']';
    return out.str();
  }

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<int> images, Unchecked) : images_(std::move(images)) {}

  friend Permutation compose(const Permutation& p, const Permutation& q);
  friend Permutation block_embed(const Permutation& p, const Permutation& q);

  std::vector<int> images_;
};

inline std::ostream& operator<<(std::ostream& out, const Permutation& x) { return out << x.to_string(); }

/// i -> p(q(i)).
inline Permutation compose(const Permutation& p, const Permutation& q) {
  detail::require(p.degree() == q.degree(), "compose: degree mismatch");
  std::vector<int> out(p.degree());
  for (int i = 0; i < p.degree(); ++i) out[i] = p.images_[q.images_[i] - 1];
  return Permutation(std::move(out), Permutation::Unchecked{});
}

inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

/// [b, r] = b r b⁻¹ r⁻¹.
inline Permutation commutator(const Permutation& b, const Permutation& r) {
  detail::require(b.degree() == r.degree(), "commutator: degree mismatch");
  return b * r * b.inverse() * r.inverse();
}

/// p^q = q⁻¹ p q.
inline Permutation conjugate(const Permutation& p, const Permutation& q) {
  detail::require(p.degree() == q.degree(), "conjugate: degree mismatch");
  return q.inverse() * p * q;
}

/// Number of cycles, fixed points included.
inline int cycle_count(const Permutation& p) {
  const int n = p.degree();
  std::vector<char> seen(n + 1, 0);
  int cycles = 0;
  for (int start = 1; start <= n; ++start) {
    if (seen[start]) continue;
    ++cycles;
    for (int i = start; !seen[i]; i = p(i)) seen[i] = 1;
  }
  return cycles;
}

inline int sign(const Permutation& p) {
  return ((p.degree() - cycle_count(p)) % 2 == 0) ? 1 : -1;
}

/// Sorted cycle lengths.
inline Partition cycle_type(const Permutation& p) {
  const int n = p.degree();
  std::vector<char> seen(n + 1, 0);
  std::vector<int> lengths;
  for (int start = 1; start <= n; ++start) {
    if (seen[start]) continue;
    int len = 0;
    for (int i = start; !seen[i]; i = p(i)) {
      seen[i] = 1;
      ++len;
    }
    lengths.push_back(len);
  }
  return Partition::from_composition(std::move(lengths));
}

inline Partition conjugacy_class_of(const Permutation& p) { return cycle_type(p); }

/// The n-cycle (1 2 ... n).
inline Permutation rotation(int n) {
  detail::require(n >= 1, "rotation: n must be >= 1");
  std::vector<int> images(n);
  for (int i = 0; i < n; ++i) images[i] = (i + 1) % n + 1;
  return Permutation(std::move(images));
}

/// (p, q) in S_2n: p on the first n points, q on the last n.
inline Permutation block_embed(const Permutation& p, const Permutation& q) {
  detail::require(p.degree() == q.degree(), "block_embed: degree mismatch");
  const int n = p.degree();
  std::vector<int> out(2 * n);
  for (int i = 0; i < n; ++i) {
    out[i] = p.images_[i];
    out[n + i] = n + q.images_[i];
  }
  return Permutation(std::move(out), Permutation::Unchecked{});
}

/// w_k = (1 n+1)(2 n+2)...(k n+k) in S_2n; w_0 is the identity.
inline Permutation w_involution(int n, int k) {
  detail::require(n >= 1 && k >= 0 && k <= n, "w_involution: need 0 <= k <= n");
  std::vector<int> images(2 * n);
  std::iota(images.begin(), images.end(), 1);
  for (int i = 1; i <= k; ++i) std::swap(images[i - 1], images[n + i - 1]);
  return Permutation(std::move(images));
}

/// Calls f on every element of S_n in lexicographic order of images.
template <class F>
void for_each_permutation(int n, F&& f, int cap = kDefaultEnumerationCap) {
  detail::require(n >= 1, "enumerate: n must be >= 1");
  detail::require_cap(n, cap, "permutation enumeration degree");
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  do {
    f(Permutation(images));
  } while (std::next_permutation(images.begin(), images.end()));
}

inline std::vector<Permutation> enumerate(int n, int cap = kDefaultEnumerationCap) {
  std::vector<Permutation> out;
  for_each_permutation(n, [&](const Permutation& p) { out.push_back(p); }, cap);
  return out;
}

/// Fisher–Yates shuffle on the given stream.
inline Permutation sample_uniform(int n, RngStream& stream) {
  detail::require(n >= 1, "sample_uniform: n must be >= 1");
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  for (int i = n - 1; i > 0; --i) std::swap(images[i], images[stream.uniform_int(0, i)]);
  return Permutation(std::move(images));
}

}  // namespace algperm
