#pragma once

// Random instances M from A, the estimators built on det M and sdet M, seeded
// campaigns, and the exact permanent and cycle-cover references.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "algperm/determinants.hpp"
#include "algperm/errors.hpp"
#include "algperm/exact.hpp"
#include "algperm/linalg.hpp"
#include "algperm/permutation.hpp"
#include "algperm/rng.hpp"
#include "algperm/statistics.hpp"

namespace algperm {

/// The nonnegative n×n matrix whose permanent is estimated.
class InstanceMatrix {
 public:
  InstanceMatrix(int n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
    detail::require(n >= 1, "InstanceMatrix: n must be >= 1");
    detail::require(entries_.size() == static_cast<std::size_t>(n) * n, "InstanceMatrix: need n*n entries");
    for (double v : entries_) detail::require(std::isfinite(v) && v >= 0.0, "InstanceMatrix: entries must be finite and >= 0");
  }

  static InstanceMatrix identity(int n) {
    std::vector<double> e(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = 1.0;
    return InstanceMatrix(n, std::move(e));
  }

  static InstanceMatrix ones(int n) { return InstanceMatrix(n, std::vector<double>(static_cast<std::size_t>(n) * n, 1.0)); }

  /// Row-major 0/1 bits, bit (i*n + j) for entry (i, j).
  static InstanceMatrix from_bits(int n, std::uint64_t bits) {
    std::vector<double> e(static_cast<std::size_t>(n) * n);
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = (bits >> k) & 1u ? 1.0 : 0.0;
    return InstanceMatrix(n, std::move(e));
  }

  int n() const { return n_; }
  double operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<double>& entries() const { return entries_; }

  bool is_integer() const {
    return std::all_of(entries_.begin(), entries_.end(), [](double v) { return v == std::floor(v) && v < 9.0e15; });
  }
  bool is_binary() const {
    return std::all_of(entries_.begin(), entries_.end(), [](double v) { return v == 0.0 || v == 1.0; });
  }

  friend bool operator==(const InstanceMatrix&, const InstanceMatrix&) = default;

 private:
  int n_;
  std::vector<double> entries_;
};

enum class EstimatorKind { kTrace, kTraceSym, kFrobenius, kFrobeniusSym, kGgSign, kUnitCircle, kScalarGaussian };

inline bool is_matrix_kind(EstimatorKind k) {
  return k == EstimatorKind::kTrace || k == EstimatorKind::kTraceSym || k == EstimatorKind::kFrobenius ||
         k == EstimatorKind::kFrobeniusSym;
}

inline bool is_symmetrized(EstimatorKind k) {
  return k == EstimatorKind::kTraceSym || k == EstimatorKind::kFrobeniusSym;
}

inline std::string to_string(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::kTrace: return "trace";
    case EstimatorKind::kTraceSym: return "trace_sym";
    case EstimatorKind::kFrobenius: return "frobenius";
    case EstimatorKind::kFrobeniusSym: return "frobenius_sym";
    case EstimatorKind::kGgSign: return "gg_sign";
    case EstimatorKind::kUnitCircle: return "unit_circle";
    case EstimatorKind::kScalarGaussian: return "scalar_gaussian";
  }
  return "?";
}

inline EstimatorKind parse_estimator_kind(const std::string& name) {
  for (EstimatorKind k : {EstimatorKind::kTrace, EstimatorKind::kTraceSym, EstimatorKind::kFrobenius,
                          EstimatorKind::kFrobeniusSym, EstimatorKind::kGgSign, EstimatorKind::kUnitCircle,
                          EstimatorKind::kScalarGaussian})
    if (to_string(k) == name) return k;
  throw InvalidInput("unknown estimator '" + name + "'");
}

/// Which estimator to sample; measure and d are present iff the kind uses A_d.
struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::kTrace;
  std::optional<Measure> measure;
  std::optional<int> d;

  static EstimatorSpec matrix(EstimatorKind kind, Measure measure, int d) {
    EstimatorSpec s{kind, measure, d};
    s.validate();
    return s;
  }
  static EstimatorSpec scalar(EstimatorKind kind) {
    EstimatorSpec s{kind, std::nullopt, std::nullopt};
    s.validate();
    return s;
  }

  void validate() const {
    if (is_matrix_kind(kind)) {
      detail::require(measure.has_value() && d.has_value(), to_string(kind) + " needs a measure and d");
      detail::require(*d >= 1, "d must be >= 1");
    } else {
      detail::require(!measure && !d, to_string(kind) + " takes no measure or d");
    }
  }
};

struct RunStats {
  std::size_t trials = 0;
  double mean = 0.0;
  double variance = 0.0;
  double critical_ratio_estimate = 0.0;
  double stderr_mean = 0.0;
  std::uint64_t master_seed = 0;
  double second_moment = 0.0;
  double stderr_second_moment = 0.0;
  double stderr_critical_ratio = 0.0;

  friend bool operator==(const RunStats&, const RunStats&) = default;
};

inline RunStats make_run_stats(std::span<const double> samples, std::uint64_t master_seed) {
  const SampleSummary first = summarize(samples);
  const SampleSummary second = second_moment(samples);
  const RatioEstimate ratio = critical_ratio(samples);
  RunStats s;
  s.trials = samples.size();
  s.mean = first.mean;
  s.variance = first.variance;
  s.stderr_mean = first.stderr_mean;
  s.critical_ratio_estimate = ratio.value;
  s.stderr_critical_ratio = ratio.stderr_value;
  s.second_moment = second.mean;
  s.stderr_second_moment = second.stderr_mean;
  s.master_seed = master_seed;
  return s;
}

/// cell (i,j) = sqrt(A_ij)·ρ_ij with ρ_ij drawn from the measure; absent where A_ij = 0.
inline AlgebraMatrix build_random_instance(const InstanceMatrix& a, const EstimatorSpec& spec, RngStream& stream) {
  spec.validate();
  detail::require(is_matrix_kind(spec.kind), "build_random_instance needs a matrix estimator");
  const int n = a.n();
  const int d = *spec.d;
  AlgebraMatrix m(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (a(i, j) == 0.0) continue;
      ComplexMatrix rho = sample(*spec.measure, d, stream);
      if (a(i, j) != 1.0) rho *= std::sqrt(a(i, j));
      m.set(i, j, std::move(rho));
    }
  }
  return m;
}

/// All four matrix-algebra estimators read off one M; sdet-based values are
/// only computed when requested.
struct MatrixEstimates {
  double trace = 0.0;          // |tr det M|²
  double frobenius = 0.0;      // ‖det M‖²
  double trace_sym = 0.0;      // |tr sdet M|²
  double frobenius_sym = 0.0;  // ‖sdet M‖²
};

inline MatrixEstimates evaluate_matrix_estimators(const AlgebraMatrix& m, bool with_det, bool with_sdet) {
  MatrixEstimates out;
  if (with_det) {
    const ComplexMatrix det = cayley_det(m);
    out.trace = std::norm(trace(det));
    out.frobenius = frobenius_sq(det);
  }
  if (with_sdet) {
    const ComplexMatrix sdet = sdet_exact(m);
    out.trace_sym = std::norm(trace(sdet));
    out.frobenius_sym = frobenius_sq(sdet);
  }
  return out;
}

inline double pick(const MatrixEstimates& e, EstimatorKind k) {
  switch (k) {
    case EstimatorKind::kTrace: return e.trace;
    case EstimatorKind::kTraceSym: return e.trace_sym;
    case EstimatorKind::kFrobenius: return e.frobenius;
    case EstimatorKind::kFrobeniusSym: return e.frobenius_sym;
    default: throw InvalidInput("not a matrix estimator: " + to_string(k));
  }
}

namespace detail {

inline double scalar_sample(const InstanceMatrix& a, EstimatorKind kind, RngStream& stream) {
  const int n = a.n();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  const double unit = std::sqrt(0.5);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (a(i, j) == 0.0) continue;
      const double scale_ij = std::sqrt(a(i, j));
      Complex rho;
      switch (kind) {
        case EstimatorKind::kGgSign: rho = stream.uniform_int(0, 1) ? 1.0 : -1.0; break;
        case EstimatorKind::kUnitCircle: rho = std::polar(1.0, 2.0 * std::numbers::pi * stream.uniform01()); break;
        default: {
          const double re = stream.normal(unit);
          const double im = stream.normal(unit);
          rho = Complex(re, im);
        }
      }
      m(i, j) = scale_ij * rho;
    }
  }
  return std::norm(scalar_det(m));
}

}  // namespace detail

/// One sample of the estimator.
inline double evaluate(const InstanceMatrix& a, const EstimatorSpec& spec, RngStream& stream) {
  spec.validate();
  if (!is_matrix_kind(spec.kind)) return detail::scalar_sample(a, spec.kind, stream);
  const AlgebraMatrix m = build_random_instance(a, spec, stream);
  const bool sym = is_symmetrized(spec.kind);
  return pick(evaluate_matrix_estimators(m, !sym, sym), spec.kind);
}

/// Stream family for a spec. All matrix kinds with the same (measure, d) share
/// it, so trace and Frobenius campaigns with one seed see the same draws of M.
inline std::uint64_t campaign_id(const EstimatorSpec& spec) {
  spec.validate();
  if (is_matrix_kind(spec.kind))
    return detail::splitmix64(0x6d61747269780000ULL ^ (static_cast<std::uint64_t>(*spec.measure) << 32) ^
                              static_cast<std::uint64_t>(*spec.d));
  return detail::splitmix64(0x7363616c61720000ULL ^ static_cast<std::uint64_t>(spec.kind));
}

inline unsigned default_thread_count() { return std::max(1u, std::thread::hardware_concurrency()); }

namespace detail {

template <class F>
void parallel_trials(std::size_t trials, unsigned threads, F&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::size_t>(trials, 1024))));
  if (threads == 1) {
    for (std::size_t t = 0; t < trials; ++t) body(t);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t t = w; t < trials; t += threads) body(t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

/// Samples of several matrix kinds on shared draws of M; trial t uses the
/// stream (master_seed, [campaign_id, t]).
inline std::vector<std::vector<double>> sample_matrix_kinds(const InstanceMatrix& a, Measure measure, int d,
                                                            const std::vector<EstimatorKind>& kinds,
                                                            std::size_t trials, std::uint64_t master_seed,
                                                            unsigned threads = default_thread_count()) {
  detail::require(!kinds.empty(), "sample_matrix_kinds: no kinds requested");
  bool need_det = false, need_sdet = false;
  for (EstimatorKind k : kinds) {
    detail::require(is_matrix_kind(k), "sample_matrix_kinds: scalar kind " + to_string(k));
    (is_symmetrized(k) ? need_sdet : need_det) = true;
  }
  if (need_det) detail::require_cap(a.n(), kCayleyCap, "cayley_det size");
  if (need_sdet) detail::require_cap(a.n(), kSdetCap, "sdet size");
  const EstimatorSpec spec = EstimatorSpec::matrix(kinds.front(), measure, d);
  const std::uint64_t id = campaign_id(spec);
  std::vector<std::vector<double>> out(kinds.size(), std::vector<double>(trials));
  detail::parallel_trials(trials, threads, [&](std::size_t t) {
    RngStream stream(master_seed, {id, static_cast<std::uint64_t>(t)});
    const MatrixEstimates e = evaluate_matrix_estimators(build_random_instance(a, spec, stream), need_det, need_sdet);
    for (std::size_t k = 0; k < kinds.size(); ++k) out[k][t] = pick(e, kinds[k]);
  });
  return out;
}

inline std::vector<double> sample_campaign(const InstanceMatrix& a, const EstimatorSpec& spec, std::size_t trials,
                                           std::uint64_t master_seed, unsigned threads = default_thread_count()) {
  spec.validate();
  if (is_matrix_kind(spec.kind))
    return sample_matrix_kinds(a, *spec.measure, *spec.d, {spec.kind}, trials, master_seed, threads).front();
  const std::uint64_t id = campaign_id(spec);
  std::vector<double> out(trials);
  detail::parallel_trials(trials, threads, [&](std::size_t t) {
    RngStream stream(master_seed, {id, static_cast<std::uint64_t>(t)});
    out[t] = detail::scalar_sample(a, spec.kind, stream);
  });
  return out;
}

/// Deterministic in (A, spec, trials, master_seed); independent of threads.
inline RunStats run_campaign(const InstanceMatrix& a, const EstimatorSpec& spec, std::size_t trials,
                             std::uint64_t master_seed, unsigned threads = default_thread_count()) {
  detail::require(trials >= 2, "run_campaign: need at least two trials");
  return make_run_stats(sample_campaign(a, spec, trials, master_seed, threads), master_seed);
}

inline constexpr int kRyserCap = 20;

/// Ryser's formula perm A = (−1)ⁿ Σ_{S⊆[n]} (−1)^{|S|} Π_i Σ_{j∈S} a_ij with
/// Gray-code subset order.
template <class T>
T ryser_permanent(const std::vector<std::vector<T>>& a) {
  const int n = static_cast<int>(a.size());
  detail::require(n >= 1, "ryser_permanent: empty matrix");
  for (const auto& row : a) detail::require(static_cast<int>(row.size()) == n, "ryser_permanent: matrix must be square");
  detail::require_cap(n, kRyserCap, "ryser_permanent size");
  std::vector<T> row_sums(n, T(0));
  T total = 0;
  std::uint32_t gray = 0;
  for (std::uint32_t step = 1; step < (1u << n); ++step) {
    const int flip = std::countr_zero(step);
    const std::uint32_t next = gray ^ (1u << flip);
    const bool adding = next & (1u << flip);
    for (int i = 0; i < n; ++i) {
      if (adding) row_sums[i] += a[i][flip];
      else row_sums[i] -= a[i][flip];
    }
    gray = next;
    T prod = 1;
    for (int i = 0; i < n && prod != T(0); ++i) prod *= row_sums[i];
    if ((n - std::popcount(gray)) % 2) total -= prod;
    else total += prod;
  }
  return total;
}

inline std::vector<std::vector<double>> to_rows(const InstanceMatrix& a) {
  std::vector<std::vector<double>> rows(a.n(), std::vector<double>(a.n()));
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) rows[i][j] = a(i, j);
  return rows;
}

inline double ryser_permanent(const InstanceMatrix& a) { return ryser_permanent(to_rows(a)); }

/// Exact permanent of an integer matrix.
inline BigInt ryser_permanent_exact(const InstanceMatrix& a) {
  detail::require(a.is_integer(), "ryser_permanent_exact: entries must be integers");
  std::vector<std::vector<BigInt>> rows(a.n(), std::vector<BigInt>(a.n()));
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) rows[i][j] = static_cast<long long>(a(i, j));
  return ryser_permanent(rows);
}

inline constexpr int kCycleCoverCap = 6;

/// Σ_C 2^{t(C)} over double cycle covers C ⊢ A, where t(C) counts the
/// components that are genuine cycles rather than doubled edges. Built by
/// grouping ordered pairs (α, β) of permutations supported on A by the edge
/// multiset they cover; each group must have exactly 2^{t(C)} members.
inline BigInt cycle_cover_square(const InstanceMatrix& a) {
  detail::require(a.is_binary(), "cycle_cover_square: A must be a {0,1} matrix");
  const int n = a.n();
  detail::require_cap(n, kCycleCoverCap, "cycle_cover_square size");
  std::vector<std::vector<int>> supported;
  for_each_permutation(n, [&](const Permutation& p) {
    for (int i = 1; i <= n; ++i)
      if (a(i - 1, p(i) - 1) == 0.0) return;
    supported.emplace_back(p.images().begin(), p.images().end());
  });
  // Cover key: for each row, its two columns (sorted).
  std::map<std::vector<int>, std::pair<std::uint64_t, int>> covers;
  for (const auto& alpha : supported) {
    for (const auto& beta : supported) {
      std::vector<int> key(2 * n);
      for (int i = 0; i < n; ++i) {
        key[2 * i] = std::min(alpha[i], beta[i]);
        key[2 * i + 1] = std::max(alpha[i], beta[i]);
      }
      auto [it, fresh] = covers.try_emplace(key, 0, 0);
      ++it->second.first;
      if (fresh) {
        // Rows i and columns c as vertices 0..n-1 and n..2n-1; count the
        // components that contain a row with two distinct columns.
        std::vector<int> parent(2 * n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
          while (parent[x] != x) x = parent[x] = parent[parent[x]];
          return x;
        };
        for (int i = 0; i < n; ++i) {
          parent[find(i)] = find(n + alpha[i] - 1);
          parent[find(i)] = find(n + beta[i] - 1);
        }
        std::vector<char> cyclic(2 * n, 0);
        for (int i = 0; i < n; ++i)
          if (alpha[i] != beta[i]) cyclic[find(i)] = 1;
        it->second.second = static_cast<int>(std::count(cyclic.begin(), cyclic.end(), 1));
      }
    }
  }
  BigInt total = 0;
  for (const auto& [key, entry] : covers) {
    const auto [pairs, t] = entry;
    if (pairs != (std::uint64_t{1} << t))
      throw CheckFailure("cycle cover with t=" + std::to_string(t) + " induced by " + std::to_string(pairs) +
                         " permutation pairs");
    total += BigInt(1) << t;
  }
  return total;
}

/// Shared-randomness comparison of the trace and Frobenius estimators. Each
/// ratio bound is tested as a paired difference, e.g. d·X_Frob − X ≥ 0, whose
/// mean must not fall below −slack standard errors.
struct FrobeniusReport {
  int d = 0;
  std::size_t trials = 0;
  SampleSummary x;
  SampleSummary x_frob;
  SampleSummary x_sq;
  SampleSummary x_frob_sq;
  std::array<SampleSummary, 4> differences;  // d·X_F−X, d·X−X_F, d²X_F²−X², d²X²−X_F²
  double slack = 5.0;
  bool holds = false;
};

/// Builds the report from paired samples x[t] = |tr det M_t|², f[t] = ‖det M_t‖².
inline FrobeniusReport frobenius_report(std::span<const double> x, std::span<const double> f, int d,
                                        double slack = 5.0) {
  detail::require(x.size() == f.size(), "frobenius_report: sample count mismatch");
  const std::size_t trials = x.size();
  FrobeniusReport rep;
  rep.d = d;
  rep.trials = trials;
  rep.slack = slack;
  rep.x = summarize(x);
  rep.x_frob = summarize(f);
  rep.x_sq = second_moment(x);
  rep.x_frob_sq = second_moment(f);
  const double dd = d, d2 = dd * dd;
  std::array<std::vector<double>, 4> diff;
  for (auto& v : diff) v.resize(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    diff[0][t] = dd * f[t] - x[t];
    diff[1][t] = dd * x[t] - f[t];
    diff[2][t] = d2 * f[t] * f[t] - x[t] * x[t];
    diff[3][t] = d2 * x[t] * x[t] - f[t] * f[t];
  }
  rep.holds = true;
  for (int i = 0; i < 4; ++i) {
    rep.differences[i] = summarize(diff[i]);
    if (rep.differences[i].mean < -slack * rep.differences[i].stderr_mean) rep.holds = false;
  }
  return rep;
}

inline FrobeniusReport frobenius_consistency(const InstanceMatrix& a, Measure measure, int d, std::size_t trials,
                                             std::uint64_t master_seed, double slack = 5.0,
                                             unsigned threads = default_thread_count()) {
  const auto samples = sample_matrix_kinds(a, measure, d, {EstimatorKind::kTrace, EstimatorKind::kFrobenius}, trials,
                                           master_seed, threads);
  return frobenius_report(samples[0], samples[1], d, slack);
}

}  // namespace algperm
