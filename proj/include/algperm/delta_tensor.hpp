#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "algperm/errors.hpp"
#include "algperm/exact.hpp"

namespace algperm {

/// One perfect matching of index slots; pair (a, b) means "slot a equals slot b".
using SlotPairing = std::vector<std::pair<int, int>>;

struct DeltaTerm {
  Rational coefficient;
  SlotPairing pairing;

  friend bool operator==(const DeltaTerm&, const DeltaTerm&) = default;
};

/// A symbolic tensor written as a rational combination of Kronecker-delta
/// patterns. Slot layout for moments of k factors σ and k conjugates σ*:
/// σ_a has slots (2a upper, 2a+1 lower); σ*_b has slots (2k+2b, 2k+2b+1).
/// Dense flattening puts slot 0 in the most significant position.
class DeltaTensor {
 public:
  explicit DeltaTensor(int arity) : arity_(arity) {
    detail::require(arity >= 0 && arity % 2 == 0, "delta tensor arity must be even");
  }

  int arity() const { return arity_; }
  const std::vector<DeltaTerm>& terms() const { return terms_; }

  void add_term(Rational coefficient, SlotPairing pairing) {
    std::vector<char> used(arity_, 0);
    detail::require(static_cast<int>(pairing.size()) * 2 == arity_, "pairing must cover all slots");
    for (auto& [a, b] : pairing) {
      detail::require(a >= 0 && a < arity_ && b >= 0 && b < arity_ && a != b && !used[a] && !used[b],
                      "pairing is not a perfect matching");
      used[a] = used[b] = 1;
      if (a > b) std::swap(a, b);
    }
    std::sort(pairing.begin(), pairing.end());
    terms_.push_back({std::move(coefficient), std::move(pairing)});
  }

  /// Merges equal pairings, drops zero terms, sorts. Two tensors are equal as
  /// symbolic sums iff their canonical forms are identical.
  DeltaTensor canonical() const {
    std::vector<DeltaTerm> sorted = terms_;
    std::sort(sorted.begin(), sorted.end(),
              [](const DeltaTerm& x, const DeltaTerm& y) { return x.pairing < y.pairing; });
    DeltaTensor out(arity_);
    for (const DeltaTerm& term : sorted) {
      if (!out.terms_.empty() && out.terms_.back().pairing == term.pairing) {
        out.terms_.back().coefficient += term.coefficient;
      } else {
        out.terms_.push_back(term);
      }
    }
    std::erase_if(out.terms_, [](const DeltaTerm& t) { return t.coefficient == 0; });
    return out;
  }

  DeltaTensor scaled(const Rational& factor) const {
    DeltaTensor out = *this;
    for (DeltaTerm& t : out.terms_) t.coefficient *= factor;
    return out;
  }

  DeltaTensor& operator+=(const DeltaTensor& other) {
    detail::require(arity_ == other.arity_, "delta tensor arity mismatch");
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
  }

  /// Dense values with each slot ranging over {0..d-1}.
  std::vector<double> to_dense(int d) const {
    std::size_t size = 1;
    for (int s = 0; s < arity_; ++s) size *= static_cast<std::size_t>(d);
    std::vector<double> out(size, 0.0);
    std::vector<int> idx(arity_, 0);
    for (std::size_t flat = 0; flat < size; ++flat) {
      std::size_t rest = flat;
      for (int s = arity_ - 1; s >= 0; --s) {
        idx[s] = static_cast<int>(rest % d);
        rest /= d;
      }
      double value = 0.0;
      for (const DeltaTerm& term : terms_) {
        bool hit = true;
        for (auto [a, b] : term.pairing) {
          if (idx[a] != idx[b]) {
            hit = false;
            break;
          }
        }
        if (hit) value += to_double(term.coefficient);
      }
      out[flat] = value;
    }
    return out;
  }

  std::string to_string() const {
    std::ostringstream out;
    for (const DeltaTerm& t : terms_) {
      out << to_fraction_string(t.coefficient) << " *";
      for (auto [a, b] : t.pairing) out << " d(" << a << "," << b << ")";
      out << '\n';
    }
    return out.str();
  }

  friend bool operator==(const DeltaTensor& x, const DeltaTensor& y) {
    const DeltaTensor cx = x.canonical();
    const DeltaTensor cy = y.canonical();
    return cx.arity_ == cy.arity_ && cx.terms_ == cy.terms_;
  }

 private:
  int arity_;
  std::vector<DeltaTerm> terms_;
};

/// Side-by-side product; the second tensor's slots are shifted past the first's.
inline DeltaTensor tensor_product(const DeltaTensor& x, const DeltaTensor& y) {
  DeltaTensor out(x.arity() + y.arity());
  const int shift = x.arity();
  for (const DeltaTerm& tx : x.terms()) {
    for (const DeltaTerm& ty : y.terms()) {
      SlotPairing pairing = tx.pairing;
      for (auto [a, b] : ty.pairing) pairing.emplace_back(a + shift, b + shift);
      out.add_term(tx.coefficient * ty.coefficient, std::move(pairing));
    }
  }
  return out;
}

/// Named delta patterns for σ⊗σ⊗σ*⊗σ* with slots (i j)(k l)(m n)(p q) = 0..7.
namespace delta_patterns {

/// δ^{ik} δ_{jl} on σ⊗σ* with slots (i j)(k l).
inline SlotPairing cupcap() { return {{0, 2}, {1, 3}}; }
/// δ^{im} δ_{jn} δ^{kp} δ_{lq}
inline SlotPairing cup1324() { return {{0, 4}, {1, 5}, {2, 6}, {3, 7}}; }
/// δ^{ip} δ_{jq} δ^{km} δ_{ln}
inline SlotPairing cup1423() { return {{0, 6}, {1, 7}, {2, 4}, {3, 5}}; }
/// δ^{im} δ^{kp} δ_{jq} δ_{ln}
inline SlotPairing mix1() { return {{0, 4}, {1, 7}, {2, 6}, {3, 5}}; }
/// δ^{ip} δ^{km} δ_{jn} δ_{lq}
inline SlotPairing mix2() { return {{0, 6}, {1, 5}, {2, 4}, {3, 7}}; }

}  // namespace delta_patterns

}  // namespace algperm
