#pragma once

// First and second moments of the symmetrized estimator at A = I_n, each by
// several independent routes, plus the bounds that sandwich them.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "algperm/characters.hpp"
#include "algperm/errors.hpp"
#include "algperm/exact.hpp"
#include "algperm/partition.hpp"
#include "algperm/permutation.hpp"
#include "algperm/rng.hpp"

namespace algperm {

/// Counts cycles of a permutation. Replaceable so that verification suites
/// can be exercised against a deliberately broken counter.
using CycleCounter = std::function<int(const Permutation&)>;

inline constexpr int kA2EnumerationCap = 4;
inline constexpr int kA2ClassCap = 4;      // 2n <= 8
inline constexpr int kA2CharacterCap = 5;  // 2n <= 10

/// counts[c] = number of enumerated elements with c cycles.
struct CycleHistogram {
  std::vector<BigInt> counts;
  BigInt total = 0;

  void add(int cycles, const BigInt& times = 1) {
    if (static_cast<int>(counts.size()) <= cycles) counts.resize(cycles + 1, 0);
    counts[cycles] += times;
    total += times;
  }

  /// Σ_c counts[c]·d^c.
  BigInt power_sum(int d) const {
    BigInt out = 0;
    for (std::size_t c = 0; c < counts.size(); ++c)
      if (counts[c] != 0) out += counts[c] * ipow(d, static_cast<unsigned>(c));
    return out;
  }
};

namespace detail {

// 0-based raw permutations for the hot enumeration loops.
using Raw = std::vector<int>;

inline Raw to_raw(const Permutation& p) {
  Raw out(p.degree());
  for (int i = 0; i < p.degree(); ++i) out[i] = p(i + 1) - 1;
  return out;
}

inline int raw_cycles(const int* p, int n) {
  std::array<char, 64> seen{};
  int cycles = 0;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (int i = s; !seen[i]; i = p[i]) seen[i] = 1;
  }
  return cycles;
}

inline void check_d(int n, int d) { require(n >= 1 && d >= 1, "need n >= 1 and d >= 1"); }

}  // namespace detail

/// a_d = (1/dⁿ)·C(n+d, n+1), minus C(d, n+1)/dⁿ when d > n.
inline ExactRatio a_d_closed(int n, int d) {
  detail::check_d(n, d);
  const BigInt num = binomial(n + d, n + 1) - binomial(d, n + 1);
  return make_ratio(num, ipow(d, n));
}

/// Histogram of c([β, r]) over β ∈ S_n.
inline CycleHistogram commutator_cycle_histogram(int n, const CycleCounter& counter = cycle_count,
                                                 int cap = kDefaultEnumerationCap) {
  const Permutation r = rotation(n);
  CycleHistogram hist;
  for_each_permutation(n, [&](const Permutation& beta) { hist.add(counter(commutator(beta, r))); },
                       cap);
  return hist;
}

/// (1/dⁿ)·(1/n!)·Σ_{β∈S_n} d^{c([β,r])}.
inline ExactRatio a_d_bruteforce(int n, int d, const CycleCounter& counter = cycle_count,
                                 int cap = kDefaultEnumerationCap) {
  detail::check_d(n, d);
  const CycleHistogram hist = commutator_cycle_histogram(n, counter, cap);
  return make_ratio(hist.power_sum(d), hist.total * ipow(d, n));
}

inline ExactRatio a_d_from_histogram(const CycleHistogram& hist, int n, int d) {
  return make_ratio(hist.power_sum(d), hist.total * ipow(d, n));
}

/// ⟨P_n * P_n, χ_t⟩ with P_n uniform on n-cycles.
inline Rational pn_square_hook_coefficient(int n, int t) {
  const ClassFunction pn = uniform_on_class(Partition{n});
  return inner_product(convolve(pn, pn), character(hook(n, t)));
}

/// (1/dⁿ)·n!·Σ_t ⟨P_n*P_n, χ_t⟩·⟨d^{c(·)}, χ_t⟩. Only hooks appear because
/// P_n is orthogonal to every other irreducible.
inline ExactRatio a_d_character(int n, int d) {
  detail::check_d(n, d);
  detail::require_cap(n, 12, "a_d_character degree");
  const ClassFunction pn = uniform_on_class(Partition{n});
  const ClassFunction pp = convolve(pn, pn);
  const ClassFunction dc = d_cycles_class_function(n, d);
  Rational total = 0;
  for (int t = 0; t < n; ++t) {
    const ClassFunction chi = character(hook(n, t));
    total += inner_product(pp, chi) * inner_product(dc, chi);
  }
  return total * Rational(factorial(n)) / Rational(ipow(d, n));
}

/// Σ_{k=1}^{min(d,n)} C(d,k)·C(n,k−1). The k = n+1 term, C(d,n+1), is what
/// the closed form subtracts.
inline BigInt hook_binomial_sum(int n, int d) {
  BigInt out = 0;
  for (int k = 1; k <= std::min(d, n); ++k) out += binomial(d, k) * binomial(n, k - 1);
  return out;
}

/// C(n+d, n+1) − C(d, n+1).
inline BigInt hook_binomial_closed(int n, int d) { return binomial(n + d, n + 1) - binomial(d, n + 1); }

/// Σ_t Σ_k C(d,k)·C(n−1,k−1)·C(k−1,t) / C(n−1,t): the hook expansion of
/// dⁿ·a_d with ⟨d^c, χ_t⟩ counted by number of distinct letters k.
inline Rational hook_character_sum(int n, int d) {
  Rational out = 0;
  for (int t = 0; t < n; ++t) {
    BigInt inner = 0;
    for (int k = 1; k <= std::min(d, n); ++k)
      inner += binomial(d, k) * binomial(n - 1, k - 1) * binomial(k - 1, t);
    out += make_ratio(inner, binomial(n - 1, t));
  }
  return out;
}

/// Cycle histograms of (r⁻¹,r⁻¹)^{(α,β)} w_k (r,r)^{(γ,δ)} w_k, one per k.
struct SecondMomentHistograms {
  int n = 0;
  std::vector<CycleHistogram> by_k;  // index k = 0..n
};

enum class A2Enumeration {
  kFull,         // all (α,β,γ,δ) ∈ S_n⁴
  kCycleClasses  // conjugates of r range over n-cycles, each hit n times
};

inline SecondMomentHistograms second_moment_histograms(int n, A2Enumeration mode = A2Enumeration::kFull,
                                                       int cap = kA2EnumerationCap) {
  detail::require(n >= 1, "second moment: n must be >= 1");
  detail::require_cap(n, cap, "a2 enumeration degree");
  const Permutation r = rotation(n);
  const Permutation r_inv = r.inverse();
  std::vector<detail::Raw> left, right;
  if (mode == A2Enumeration::kFull) {
    for_each_permutation(n, [&](const Permutation& a) {
      left.push_back(detail::to_raw(conjugate(r_inv, a)));
      right.push_back(detail::to_raw(conjugate(r, a)));
    });
  } else {
    for_each_permutation(n, [&](const Permutation& a) {
      if (cycle_count(a) == 1) {
        left.push_back(detail::to_raw(a.inverse()));
        right.push_back(detail::to_raw(a));
      }
    });
  }
  const int m = static_cast<int>(left.size());
  SecondMomentHistograms out{n, {}};
  const int two_n = 2 * n;
  std::vector<int> w(two_n), x(two_n);
  std::vector<std::uint64_t> counts(two_n + 1);
  for (int k = 0; k <= n; ++k) {
    for (int i = 0; i < two_n; ++i) w[i] = i;
    for (int i = 0; i < k; ++i) std::swap(w[i], w[n + i]);
    std::fill(counts.begin(), counts.end(), 0);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
          for (int e = 0; e < m; ++e) {
            // x = L ∘ w ∘ R ∘ w with L = (left[a], left[b]), R = (right[c], right[e]).
            for (int i = 0; i < two_n; ++i) {
              int j = w[i];
              j = j < n ? right[c][j] : n + right[e][j - n];
              j = w[j];
              x[i] = j < n ? left[a][j] : n + left[b][j - n];
            }
            ++counts[detail::raw_cycles(x.data(), two_n)];
          }
    CycleHistogram hist;
    for (int c = 0; c <= two_n; ++c)
      if (counts[c]) hist.add(c, BigInt(counts[c]));
    out.by_k.push_back(std::move(hist));
  }
  return out;
}

namespace detail {

inline ExactRatio a2_from(const SecondMomentHistograms& h, int d, bool tilde) {
  const int n = h.n;
  Rational total = 0;
  for (int k = 0; k <= n; ++k) {
    const BigInt weight = tilde ? binomial(n, k) * binomial(n, k) : binomial(n, k);
    total += Rational(weight) * make_ratio(h.by_k[k].power_sum(d), h.by_k[k].total);
  }
  return total / Rational(ipow(d, 2 * n));
}

}  // namespace detail

/// a_d^(2) = Σ_k C(n,k)·(1/d^{2n})·E_{α,β,γ,δ} d^{c(...)}.
inline ExactRatio a2_from_histograms(const SecondMomentHistograms& h, int d) {
  return detail::a2_from(h, d, false);
}

/// ã_d^(2): as a_d^(2) with C(n,k)² in place of C(n,k).
inline ExactRatio a2_tilde_from_histograms(const SecondMomentHistograms& h, int d) {
  return detail::a2_from(h, d, true);
}

inline ExactRatio a2_bruteforce(int n, int d, A2Enumeration mode = A2Enumeration::kFull,
                                int cap = kA2EnumerationCap) {
  detail::check_d(n, d);
  return a2_from_histograms(second_moment_histograms(n, mode, cap), d);
}

inline ExactRatio a2_tilde_bruteforce(int n, int d, A2Enumeration mode = A2Enumeration::kFull,
                                      int cap = kA2EnumerationCap) {
  detail::check_d(n, d);
  return a2_tilde_from_histograms(second_moment_histograms(n, mode, cap), d);
}

struct MonteCarloValue {
  double mean = 0.0;
  double stderr_mean = 0.0;
  std::size_t samples = 0;
};

/// Sampled a_d^(2) (or ã with `tilde`) for n beyond the enumeration cap: each
/// sample draws k from the C(n,k) weights and four uniform permutations.
inline MonteCarloValue a2_monte_carlo(int n, int d, std::size_t samples, RngStream& stream,
                                      bool tilde = false) {
  detail::check_d(n, d);
  detail::require(samples >= 2, "a2_monte_carlo: need at least two samples");
  std::vector<double> weights(n + 1);
  double weight_total = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double c = to_double(binomial(n, k));
    weights[k] = tilde ? c * c : c;
    weight_total += weights[k];
  }
  std::discrete_distribution<int> pick_k(weights.begin(), weights.end());
  const Permutation r = rotation(n);
  const Permutation r_inv = r.inverse();
  double sum = 0.0, sq = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const int k = pick_k(stream.engine());
    const Permutation a = sample_uniform(n, stream), b = sample_uniform(n, stream);
    const Permutation c = sample_uniform(n, stream), e = sample_uniform(n, stream);
    const Permutation w = w_involution(n, k);
    const Permutation x = block_embed(conjugate(r_inv, a), conjugate(r_inv, b)) * w *
                          block_embed(conjugate(r, c), conjugate(r, e)) * w;
    const double v = weight_total * std::pow(static_cast<double>(d), cycle_count(x) - 2 * n);
    sum += v;
    sq += v * v;
  }
  const double m = static_cast<double>(samples);
  const double mean = sum / m;
  const double var = std::max(0.0, (sq - m * mean * mean) / (m - 1));
  return {mean, std::sqrt(var / m), samples};
}

/// Histogram of c((r,r)^σ (r,r)) over σ ∈ S_{2n}.
inline CycleHistogram symmetrized_class_histogram(int n, int cap = kA2ClassCap) {
  detail::require(n >= 1, "symmetrized class: n must be >= 1");
  detail::require_cap(n, cap, "a2 class enumeration degree");
  const Permutation rr = block_embed(rotation(n), rotation(n));
  const detail::Raw base = detail::to_raw(rr);
  const int two_n = 2 * n;
  std::vector<std::uint64_t> counts(two_n + 1, 0);
  std::vector<int> conj(two_n), x(two_n);
  for_each_permutation(two_n, [&](const Permutation& s) {
    // (rr)^σ = σ⁻¹ rr σ, then composed with rr.
    const detail::Raw sr = detail::to_raw(s);
    detail::Raw si(two_n);
    for (int i = 0; i < two_n; ++i) si[sr[i]] = i;
    for (int i = 0; i < two_n; ++i) conj[i] = si[base[sr[i]]];
    for (int i = 0; i < two_n; ++i) x[i] = conj[base[i]];
    ++counts[detail::raw_cycles(x.data(), two_n)];
  }, 2 * cap);
  CycleHistogram hist;
  for (int c = 0; c <= two_n; ++c)
    if (counts[c]) hist.add(c, BigInt(counts[c]));
  return hist;
}

/// ã_d^(2) = C(2n,n)·(1/d^{2n})·E_{σ∈S_{2n}} d^{c((r,r)^σ (r,r))}.
inline ExactRatio a2_tilde_class(int n, int d, int cap = kA2ClassCap) {
  detail::check_d(n, d);
  const CycleHistogram hist = symmetrized_class_histogram(n, cap);
  return Rational(binomial(2 * n, n)) * make_ratio(hist.power_sum(d), hist.total * ipow(d, 2 * n));
}

/// Number of semistandard tableaux of the given shape with entries in 1..d,
/// i.e. Σ_ρ K^shape_ρ over weak compositions ρ with d parts.
inline BigInt bounded_tableaux_count(const Partition& shape, int d) {
  detail::require(d >= 1, "bounded_tableaux_count: d must be >= 1");
  if (shape.length() > d) return 0;
  std::map<Partition, BigInt> memo;
  BigInt total = 0;
  for (const std::vector<int>& rho : weak_compositions(shape.weight(), d)) {
    const Partition sorted = Partition::from_composition(rho);
    auto it = memo.find(sorted);
    if (it == memo.end()) it = memo.emplace(sorted, kostka(shape, sorted)).first;
    total += it->second;
  }
  return total;
}

/// ã_d^(2) = C(2n,n)·(1/d^{2n})·Σ_{τ∈T_n} χ_τ(n,n)²·Σ_ρ K^τ_ρ / dim τ.
inline ExactRatio a2_tilde_character(int n, int d, int cap = kA2CharacterCap) {
  detail::check_d(n, d);
  detail::require_cap(n, cap, "a2 character degree");
  Rational total = 0;
  for (const DoubleRibbonShape& tau : t_n_family(n)) {
    const BigInt chi_sq = BigInt(tau.character_at_nn) * tau.character_at_nn;
    total += make_ratio(chi_sq * bounded_tableaux_count(tau.shape, d),
                        BigInt(character_dimension(tau.shape)));
  }
  return total * Rational(binomial(2 * n, n)) / Rational(ipow(d, 2 * n));
}

/// The trivial-character term of ã: (1/d^{2n})·C(2n,n)·C(2n+d−1, 2n).
inline ExactRatio a2_tilde_trivial_term(int n, int d) {
  detail::check_d(n, d);
  return make_ratio(binomial(2 * n, n) * binomial(2 * n + d - 1, 2 * n), ipow(d, 2 * n));
}

struct SandwichReport {
  int n = 0;
  int d = 0;
  ExactRatio a2;
  ExactRatio a2_tilde;
  ExactRatio a2_lower;        // ã / C(n, ⌊n/2⌋)
  ExactRatio tilde_floor;     // trivial-character term
  ExactRatio tilde_ceiling;   // 4n² × trivial-character term
  bool holds = false;
};

/// ã/C(n,⌊n/2⌋) ≤ a^(2) ≤ ã and floor ≤ ã ≤ 4n²·floor. Throws CheckFailure
/// naming (n, d) and the offending values when any inequality fails.
inline SandwichReport sandwich_check(int n, int d, int cap = kA2EnumerationCap) {
  detail::check_d(n, d);
  const SecondMomentHistograms h = second_moment_histograms(n, A2Enumeration::kFull, cap);
  SandwichReport rep;
  rep.n = n;
  rep.d = d;
  rep.a2 = a2_from_histograms(h, d);
  rep.a2_tilde = a2_tilde_from_histograms(h, d);
  rep.a2_lower = rep.a2_tilde / Rational(binomial(n, n / 2));
  rep.tilde_floor = a2_tilde_trivial_term(n, d);
  rep.tilde_ceiling = rep.tilde_floor * (4 * n * n);
  rep.holds = rep.a2_lower <= rep.a2 && rep.a2 <= rep.a2_tilde && rep.tilde_floor <= rep.a2_tilde &&
              rep.a2_tilde <= rep.tilde_ceiling;
  if (!rep.holds) {
    throw CheckFailure("sandwich fails at (n=" + std::to_string(n) + ", d=" + std::to_string(d) +
                       "): a2=" + to_fraction_string(rep.a2) + " a2_tilde=" + to_fraction_string(rep.a2_tilde) +
                       " lower=" + to_fraction_string(rep.a2_lower) +
                       " floor=" + to_fraction_string(rep.tilde_floor) +
                       " ceiling=" + to_fraction_string(rep.tilde_ceiling));
  }
  return rep;
}

struct IdentityRatios {
  ExactRatio unsym_gaussian_ratio;  // (1+1/d)ⁿ + (1−1/d)ⁿ
  ExactRatio sym_gaussian_ratio;    // a^(2) / a_d²
};

inline ExactRatio unsym_gaussian_ratio(int n, int d) {
  detail::check_d(n, d);
  Rational up = 1, down = 1;
  const Rational step(1, d);
  for (int i = 0; i < n; ++i) {
    up *= 1 + step;
    down *= 1 - step;
  }
  return up + down;
}

inline IdentityRatios identity_matrix_ratios(int n, int d, int cap = kA2EnumerationCap) {
  const ExactRatio a = a_d_closed(n, d);
  return {unsym_gaussian_ratio(n, d), a2_bruteforce(n, d, A2Enumeration::kFull, cap) / (a * a)};
}

struct BoundProfile {
  int n = 0;
  int d = 0;
  double exp_envelope = 0.0;       // 4·exp(4n²/d)
  ExactRatio lemma_envelope;       // 4n²·C(2n,n)·C(2n+d−1,2n) / (d^{2n}·a_d²)
  ExactRatio lower_floor;          // C(2n,n)·C(2n+d−1,2n) / (C(n,⌊n/2⌋)·(d^n a_d)²)
};

inline BoundProfile bound_profiles(int n, int d) {
  detail::check_d(n, d);
  BoundProfile p;
  p.n = n;
  p.d = d;
  p.exp_envelope = 4.0 * std::exp(4.0 * n * n / static_cast<double>(d));
  const ExactRatio a = a_d_closed(n, d);
  const ExactRatio trivial = a2_tilde_trivial_term(n, d);
  p.lemma_envelope = trivial * (4 * n * n) / (a * a);
  const BigInt scaled_a = hook_binomial_closed(n, d);
  p.lower_floor = make_ratio(binomial(2 * n, n) * binomial(2 * n + d - 1, 2 * n),
                             binomial(n, n / 2) * scaled_a * scaled_a);
  return p;
}

}  // namespace algperm
