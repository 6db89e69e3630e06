#pragma once

// Verification suites: one function per acceptance criterion, each returning
// a list of named checks with PASS / FAIL / SKIP status and both sides of
// every comparison.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "algperm/characters.hpp"
#include "algperm/determinants.hpp"
#include "algperm/estimators.hpp"
#include "algperm/linalg.hpp"
#include "algperm/moments.hpp"
#include "algperm/oracles.hpp"
#include "algperm/statistics.hpp"

namespace algperm::verify {

enum class Status { kPass, kFail, kSkip };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::kPass: return "PASS";
    case Status::kFail: return "FAIL";
    case Status::kSkip: return "SKIP";
  }
  return "?";
}

struct Check {
  std::string name;
  Status status = Status::kPass;
  std::string detail;
};

struct CriterionReport {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const {
    for (const Check& c : checks)
      if (c.status == Status::kFail) return false;
    return true;
  }
  std::size_t count(Status s) const {
    std::size_t k = 0;
    for (const Check& c : checks)
      if (c.status == s) ++k;
    return k;
  }
};

struct Options {
  int cap_n = 7;                 // largest n enumerated anywhere
  std::size_t trials = 100000;   // per statistical campaign
  std::uint64_t seed = 20260101;
  double slack = 5.0;            // standard errors
  unsigned threads = default_thread_count();
  CycleCounter counter = cycle_count;
};

namespace detail {

inline std::string fraction(const Rational& r) { return to_fraction_string(r); }

inline std::string num(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

inline std::string nd(int n, int d) { return "n=" + std::to_string(n) + " d=" + std::to_string(d); }

class Recorder {
 public:
  explicit Recorder(CriterionReport& rep) : rep_(rep) {}

  void exact(const std::string& name, const Rational& lhs, const Rational& rhs, const std::string& sides) {
    rep_.checks.push_back({name, lhs == rhs ? Status::kPass : Status::kFail,
                           sides + ": " + fraction(lhs) + " vs " + fraction(rhs)});
  }
  void truth(const std::string& name, bool ok, const std::string& detail) {
    rep_.checks.push_back({name, ok ? Status::kPass : Status::kFail, detail});
  }
  void skip(const std::string& name, const std::string& why) { rep_.checks.push_back({name, Status::kSkip, why}); }

  /// |estimate − target| ≤ slack·se.
  void within(const std::string& name, double estimate, double se, double target, double slack) {
    const double z = standard_errors_from(estimate, se, target);
    rep_.checks.push_back({name, z <= slack ? Status::kPass : Status::kFail,
                           "estimate " + num(estimate) + " ± " + num(se) + " vs " + num(target) + " (" + num(z) +
                               " SE)"});
  }

  /// Guards a check body so an exception becomes a FAIL rather than aborting the suite.
  template <class F>
  void guarded(const std::string& name, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      rep_.checks.push_back({name, Status::kFail, std::string("exception: ") + e.what()});
    }
  }

 private:
  CriterionReport& rep_;
};

template <class F>
CriterionReport timed(int id, std::string title, F&& body) {
  CriterionReport rep{id, std::move(title), {}, 0.0};
  const auto start = std::chrono::steady_clock::now();
  Recorder rec(rep);
  body(rec);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline RngStream stream_for(const Options& o, std::uint64_t criterion) { return RngStream(o.seed, {0xC0FFEEull, criterion}); }

}  // namespace detail

/// Five fixed {0,1} instances with n ≤ 4.
inline std::vector<std::pair<std::string, InstanceMatrix>> test_battery() {
  const InstanceMatrix tridiagonal(4, {1, 1, 0, 0, 1, 1, 1, 0, 0, 1, 1, 1, 0, 0, 1, 1});
  const InstanceMatrix derangements(4, {0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0});
  const InstanceMatrix band(4, {1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1, 0, 0, 1});
  return {{"I_4", InstanceMatrix::identity(4)},
          {"J_3", InstanceMatrix::ones(3)},
          {"tridiag_4", tridiagonal},
          {"J_4-I", derangements},
          {"cyclic_band_4", band}};
}

/// a_d three-route agreement, plus the n/n! floor.
inline CriterionReport ad_routes(const Options& o) {
  return detail::timed(1, "a_d closed == bruteforce == character", [&](detail::Recorder& rec) {
    for (int n = 1; n <= 7; ++n) {
      const std::string base = "a_d n=" + std::to_string(n);
      if (n > o.cap_n) {
        rec.skip(base, "n exceeds cap " + std::to_string(o.cap_n));
        continue;
      }
      rec.guarded(base, [&] {
        const CycleHistogram hist = commutator_cycle_histogram(n, o.counter);
        const Rational floor = make_ratio(n, factorial(n));
        for (int d = 1; d <= 8; ++d) {
          const Rational closed = a_d_closed(n, d);
          const Rational brute = a_d_from_histogram(hist, n, d);
          const Rational chr = a_d_character(n, d);
          rec.exact("a_d closed==bruteforce " + detail::nd(n, d), closed, brute, "closed vs bruteforce");
          rec.exact("a_d closed==character " + detail::nd(n, d), closed, chr, "closed vs character");
          rec.truth("a_d >= n/n! " + detail::nd(n, d), brute >= floor,
                    detail::fraction(brute) + " >= " + detail::fraction(floor));
        }
      });
    }
  });
}

/// Σ_{k≤min(d,n)} C(d,k)C(n,k−1) == C(n+d,n+1) − C(d,n+1), and the hook sum.
inline CriterionReport binomial_identity(const Options&) {
  return detail::timed(2, "binomial identity for the a_d closed form", [&](detail::Recorder& rec) {
    for (int n = 1; n <= 10; ++n) {
      for (int d = 1; d <= 10; ++d) {
        const Rational closed(hook_binomial_closed(n, d));
        rec.exact("binomial sum " + detail::nd(n, d), Rational(hook_binomial_sum(n, d)), closed, "sum vs closed");
        rec.exact("hook character sum " + detail::nd(n, d), hook_character_sum(n, d), closed, "hook sum vs closed");
      }
    }
  });
}

/// χ_t at the n-cycle, dimensions and Kostka numbers of hooks.
inline CriterionReport hook_laws(const Options& o) {
  return detail::timed(3, "hook characters, dimensions, Kostka numbers", [&](detail::Recorder& rec) {
    for (int n = 1; n <= 7; ++n) {
      const std::string base = "hooks n=" + std::to_string(n);
      if (n > o.cap_n) {
        rec.skip(base, "n exceeds cap " + std::to_string(o.cap_n));
        continue;
      }
      rec.guarded(base, [&] {
        for (int t = 0; t < n; ++t) {
          const Partition lambda = hook(n, t);
          const std::string tag = " n=" + std::to_string(n) + " t=" + std::to_string(t);
          rec.exact("chi_t(n-cycle)" + tag, Rational(mn_character(lambda, Partition{n})), Rational(t % 2 ? -1 : 1),
                    "MN vs (-1)^t");
          rec.exact("dim chi_t" + tag, Rational(character_dimension(lambda)), Rational(hook_dimension(n, t)),
                    "MN vs C(n-1,t)");
          rec.exact("dim chi_t hook-length" + tag, Rational(oracles::hook_length_dimension(lambda)),
                    Rational(hook_dimension(n, t)), "hook-length vs C(n-1,t)");
          bool kostka_ok = true;
          std::string first_bad;
          for (const Partition& mu : partitions_of(n)) {
            const BigInt k = kostka(lambda, mu);
            const BigInt expect = binomial(mu.length() - 1, t);
            if (k != expect && kostka_ok) {
              kostka_ok = false;
              first_bad = "content " + mu.to_string() + ": " + k.str() + " vs " + expect.str();
            }
            std::vector<int> reversed(mu.parts().rbegin(), mu.parts().rend());
            if (kostka(lambda, reversed) != k && kostka_ok) {
              kostka_ok = false;
              first_bad = "content order changes count at " + mu.to_string();
            }
          }
          rec.truth("K^{hook}_N == C(k-1,t)" + tag, kostka_ok, kostka_ok ? "all contents of weight n" : first_bad);
        }
      });
    }
  });
}

/// ã by three routes, and the two-sided sandwich around a^(2).
inline CriterionReport a2_routes(const Options& o) {
  return detail::timed(4, "a2_tilde routes and sandwich", [&](detail::Recorder& rec) {
    for (int n = 1; n <= 4; ++n) {
      const std::string base = "a2 n=" + std::to_string(n);
      if (n > o.cap_n) {
        rec.skip(base, "n exceeds cap " + std::to_string(o.cap_n));
        continue;
      }
      rec.guarded(base, [&] {
        const SecondMomentHistograms h = second_moment_histograms(n);
        const CycleHistogram cls = symmetrized_class_histogram(n);
        for (int d = 1; d <= 4; ++d) {
          const Rational brute = a2_tilde_from_histograms(h, d);
          const Rational klass = Rational(binomial(2 * n, n)) * make_ratio(cls.power_sum(d), cls.total * ipow(d, 2 * n));
          const Rational chr = a2_tilde_character(n, d);
          rec.exact("a2_tilde bruteforce==class " + detail::nd(n, d), brute, klass, "bruteforce vs class");
          rec.exact("a2_tilde bruteforce==character " + detail::nd(n, d), brute, chr, "bruteforce vs character");
          const Rational a2 = a2_from_histograms(h, d);
          const Rational lower = brute / Rational(binomial(n, n / 2));
          rec.truth("a2_tilde/C(n,n/2) <= a2 <= a2_tilde " + detail::nd(n, d), lower <= a2 && a2 <= brute,
                    detail::fraction(lower) + " <= " + detail::fraction(a2) + " <= " + detail::fraction(brute));
          const Rational floor = a2_tilde_trivial_term(n, d);
          const Rational ceiling = floor * (4 * n * n);
          rec.truth("trivial term <= a2_tilde <= 4n^2 trivial term " + detail::nd(n, d),
                    floor <= brute && brute <= ceiling,
                    detail::fraction(floor) + " <= " + detail::fraction(brute) + " <= " + detail::fraction(ceiling));
        }
      });
    }
  });
}

/// Σ_C 2^{t(C)} == (perm A)².
inline CriterionReport cycle_covers(const Options& o) {
  return detail::timed(5, "cycle-cover expansion of perm^2", [&](detail::Recorder& rec) {
    for (int n = 1; n <= 3; ++n) {
      const std::string name = "all {0,1} matrices n=" + std::to_string(n);
      if (n > o.cap_n) {
        rec.skip(name, "n exceeds cap " + std::to_string(o.cap_n));
        continue;
      }
      rec.guarded(name, [&] {
        std::size_t bad = 0, total = 0;
        std::string first;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * n)); ++bits, ++total) {
          const InstanceMatrix a = InstanceMatrix::from_bits(n, bits);
          const BigInt p = ryser_permanent_exact(a);
          const BigInt c = cycle_cover_square(a);
          if (c != p * p && bad++ == 0) first = "bits " + std::to_string(bits) + ": " + c.str() + " vs " + BigInt(p * p).str();
        }
        rec.truth(name, bad == 0, std::to_string(total) + " matrices" + (bad ? ", first mismatch " + first : ""));
      });
    }
    const std::string name = "100 random {0,1} matrices n=4";
    if (o.cap_n < 4) {
      rec.skip(name, "n exceeds cap " + std::to_string(o.cap_n));
      return;
    }
    rec.guarded(name, [&] {
      RngStream stream = detail::stream_for(o, 5);
      std::size_t bad = 0;
      std::string first;
      for (int i = 0; i < 100; ++i) {
        const std::uint64_t bits = stream.engine()() & 0xFFFFu;
        const InstanceMatrix a = InstanceMatrix::from_bits(4, bits);
        const BigInt p = ryser_permanent_exact(a);
        const BigInt c = cycle_cover_square(a);
        if (c != p * p && bad++ == 0) first = "bits " + std::to_string(bits) + ": " + c.str() + " vs " + BigInt(p * p).str();
      }
      rec.truth(name, bad == 0, bad ? "first mismatch " + first : "all equal");
    });
  });
}

/// Wick and Weingarten closed forms against symbolic and Monte Carlo values.
inline CriterionReport tensor_moments(const Options& o) {
  return detail::timed(6, "Gaussian and Haar tensor moments", [&](detail::Recorder& rec) {
    for (int d = 1; d <= 4; ++d) {
      rec.truth("wick k=1 == cupcap d=" + std::to_string(d),
                oracles::wick_gaussian_moment(1, d) == cupcap_closed_form(d), "symbolic delta tensors");
      rec.truth("wick k=2 == gaussian fourth moment d=" + std::to_string(d),
                oracles::wick_gaussian_moment(2, d) == gaussian_fourth_moment_closed_form(d), "symbolic delta tensors");
    }
    auto mc = [&](const std::string& name, Measure m, int d, int k, const DeltaTensor& exact, std::uint64_t tag) {
      rec.guarded(name, [&] {
        RngStream stream = detail::stream_for(o, 600 + tag);
        const TensorEstimate est = tensor_moment(m, d, k, k, o.trials, stream);
        const double worst = max_standard_errors(est, exact.to_dense(d));
        rec.truth(name, worst <= o.slack,
                  std::to_string(est.mean.size()) + " entries, worst " + detail::num(worst) + " SE");
      });
    };
    mc("gaussian E[s x s*] d=2 Monte Carlo", Measure::kGaussian, 2, 1, cupcap_closed_form(2), 1);
    mc("gaussian E[s s s* s*] d=2 Monte Carlo", Measure::kGaussian, 2, 2, gaussian_fourth_moment_closed_form(2), 2);
    mc("haar E[s x s*] d=2 Monte Carlo", Measure::kHaar, 2, 1, cupcap_closed_form(2), 3);
    mc("haar E[s s s* s*] d=2 Monte Carlo", Measure::kHaar, 2, 2, haar_fourth_moment_closed_form(2), 4);
    mc("haar E[s s s* s*] d=3 Monte Carlo", Measure::kHaar, 3, 2, haar_fourth_moment_closed_form(3), 5);
    for (int d = 2; d <= 4; ++d) {
      const SandwichGaps g = haar_fourth_moment_sandwich(d);
      const double tol = 1e-12;
      rec.truth("haar fourth moment sandwich d=" + std::to_string(d),
                g.lower_gap_min_eigenvalue >= -tol && g.upper_gap_min_eigenvalue >= -tol,
                "min eigenvalues " + detail::num(g.lower_gap_min_eigenvalue) + ", " +
                    detail::num(g.upper_gap_min_eigenvalue) + " (>= -1e-12)");
    }
  });
}

/// Campaign means of X and X_s against perm A and a_d·perm A.
inline CriterionReport unbiasedness(const Options& o) {
  return detail::timed(7, "estimator unbiasedness on the battery", [&](detail::Recorder& rec) {
    for (const auto& [label, a] : test_battery()) {
      const double perm = ryser_permanent(a);
      for (Measure m : {Measure::kGaussian, Measure::kHaar}) {
        for (int d : {2, 3}) {
          const std::string tag = label + " " + to_string(m) + " d=" + std::to_string(d);
          if (a.n() > o.cap_n) {
            rec.skip(tag, "n exceeds cap " + std::to_string(o.cap_n));
            continue;
          }
          rec.guarded(tag, [&] {
            const auto s = sample_matrix_kinds(a, m, d, {EstimatorKind::kTrace, EstimatorKind::kTraceSym}, o.trials,
                                               o.seed, o.threads);
            const SampleSummary x = summarize(s[0]);
            const SampleSummary xs = summarize(s[1]);
            rec.within("E[X] == perm " + tag, x.mean, x.stderr_mean, perm, o.slack);
            rec.within("E[X_s] == a_d perm " + tag, xs.mean, xs.stderr_mean, to_double(a_d_closed(a.n(), d)) * perm,
                       o.slack);
          });
        }
      }
    }
  });
}

/// Exact second moments at A = I_n.
inline CriterionReport identity_second_moments(const Options& o) {
  return detail::timed(8, "second moments at the identity matrix", [&](detail::Recorder& rec) {
    for (int n = 1; n <= 4; ++n) {
      for (int d : {2, 3}) {
        const std::string tag = "critical ratio X on I_n gaussian " + detail::nd(n, d);
        if (n > o.cap_n) {
          rec.skip(tag, "n exceeds cap " + std::to_string(o.cap_n));
          continue;
        }
        rec.guarded(tag, [&] {
          const RunStats s = run_campaign(InstanceMatrix::identity(n),
                                          EstimatorSpec::matrix(EstimatorKind::kTrace, Measure::kGaussian, d),
                                          o.trials, o.seed, o.threads);
          rec.within(tag, s.critical_ratio_estimate, s.stderr_critical_ratio, to_double(unsym_gaussian_ratio(n, d)),
                     o.slack);
        });
      }
    }
    const std::string tag = "E[X_s^2] on I_3 gaussian d=2";
    if (o.cap_n < 3) {
      rec.skip(tag, "n exceeds cap " + std::to_string(o.cap_n));
      return;
    }
    rec.guarded(tag, [&] {
      const RunStats s = run_campaign(InstanceMatrix::identity(3),
                                      EstimatorSpec::matrix(EstimatorKind::kTraceSym, Measure::kGaussian, 2), o.trials,
                                      o.seed, o.threads);
      rec.within(tag, s.second_moment, s.stderr_second_moment, to_double(a2_bruteforce(3, 2)), o.slack);
    });
  });
}

/// 1/d ≤ E[X_Frob]/E[X] ≤ d and 1/d² ≤ E[X_Frob²]/E[X²] ≤ d² on shared draws.
inline CriterionReport frobenius_sandwich(const Options& o) {
  return detail::timed(9, "Frobenius versus trace estimators", [&](detail::Recorder& rec) {
    static const char* kNames[4] = {"d X_F - X >= 0", "d X - X_F >= 0", "d^2 X_F^2 - X^2 >= 0",
                                    "d^2 X^2 - X_F^2 >= 0"};
    for (const auto& [label, a] : test_battery()) {
      for (Measure m : {Measure::kGaussian, Measure::kHaar}) {
        for (int d : {2, 3}) {
          const std::string tag = label + " " + to_string(m) + " d=" + std::to_string(d);
          if (a.n() > o.cap_n) {
            rec.skip(tag, "n exceeds cap " + std::to_string(o.cap_n));
            continue;
          }
          rec.guarded(tag, [&] {
            const FrobeniusReport r = frobenius_consistency(a, m, d, o.trials, o.seed, o.slack, o.threads);
            for (int i = 0; i < 4; ++i) {
              const SampleSummary& s = r.differences[i];
              rec.truth(std::string(kNames[i]) + " " + tag, s.mean >= -o.slack * s.stderr_mean,
                        "mean " + detail::num(s.mean) + " ± " + detail::num(s.stderr_mean));
            }
            if (label == "I_4" && m == Measure::kGaussian)
              rec.within("E[X_F] == d on " + tag, r.x_frob.mean, r.x_frob.stderr_mean, d, o.slack);
          });
        }
      }
    }
  });
}

/// sdet, sym_prod and Cayley determinant against their literal definitions.
inline CriterionReport determinant_routes(const Options& o) {
  return detail::timed(10, "determinant route equivalences", [&](detail::Recorder& rec) {
    RngStream stream = detail::stream_for(o, 10);
    auto relative = [](const ComplexMatrix& x, const ComplexMatrix& ref) {
      return max_abs_diff(x, ref) / std::max(1.0, max_abs(ref));
    };
    if (o.cap_n < 3) {
      rec.skip("sdet_exact == literal_sdet", "n exceeds cap " + std::to_string(o.cap_n));
    } else {
      rec.guarded("sdet_exact == literal_sdet", [&] {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
          const int n = 1 + i % 3;
          AlgebraMatrix m(n, 2);
          for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) m.set(r, c, sample_gaussian(2, stream));
          worst = std::max(worst, relative(sdet_exact(m), oracles::literal_sdet(m)));
        }
        rec.truth("sdet_exact == literal_sdet (50 instances, n<=3, d=2)", worst <= 1e-10,
                  "worst relative difference " + detail::num(worst));
      });
    }
    if (o.cap_n < 4) {
      rec.skip("sym_prod == ordering average", "n exceeds cap " + std::to_string(o.cap_n));
    } else {
      rec.guarded("sym_prod == ordering average", [&] {
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
          std::vector<ComplexMatrix> f;
          for (int k = 0; k < 4; ++k) f.push_back(sample_gaussian(2, stream));
          worst = std::max(worst, relative(sym_prod(f), oracles::sym_prod_by_orderings(f)));
        }
        rec.truth("sym_prod == ordering average (n=4, d=2)", worst <= 1e-10,
                  "worst relative difference " + detail::num(worst));
      });
    }
    rec.guarded("commutative embedding", [&] {
      double worst = 0.0;
      const int top = std::min(5, o.cap_n);
      for (int n = 1; n <= top; ++n) {
        AlgebraMatrix m(n, 3);
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c)
            if (stream.uniform01() < 0.8)
              m.set(r, c, scale(ComplexMatrix::identity(3), Complex(stream.normal(1.0), stream.normal(1.0))));
        worst = std::max(worst, relative(sdet_exact(m), cayley_det(m)));
      }
      rec.truth("cayley_det == sdet_exact on commuting cells (n<=" + std::to_string(top) + ")", worst <= 1e-12,
                "worst relative difference " + detail::num(worst));
    });
  });
}

using CriterionFn = std::function<CriterionReport(const Options&)>;

/// Criterion functions by id, 1..10.
inline std::vector<CriterionFn> all_criteria() {
  return {ad_routes,     binomial_identity,       hook_laws,          a2_routes,         cycle_covers,
          tensor_moments, unbiasedness, identity_second_moments, frobenius_sandwich, determinant_routes};
}

/// Named groups of criteria for the CLI.
inline std::vector<int> suite_members(const std::string& suite) {
  if (suite == "exact") return {1, 2, 3, 4, 5};
  if (suite == "determinants") return {10};
  if (suite == "statistical") return {6, 7, 8, 9};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  if (suite == "a_d") return {1};
  if (suite == "a2") return {4};
  if (suite == "characters") return {3};
  if (suite == "cycle_cover") return {5};
  throw InvalidInput("unknown suite '" + suite + "' (exact|determinants|statistical|all|a_d|a2|characters|cycle_cover)");
}

inline CriterionReport run_criterion(int id, const Options& o) {
  algperm::detail::require(id >= 1 && id <= 10, "criterion id must be in 1..10");
  return all_criteria()[id - 1](o);
}

}  // namespace algperm::verify
