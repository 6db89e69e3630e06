#pragma once

// The `algperm` command line: perm, estimate, verify, tables.
// Exit status: 0 success, 1 verification failure, 2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "algperm/estimators.hpp"
#include "algperm/matrix_io.hpp"
#include "algperm/moments.hpp"
#include "algperm/verify.hpp"

namespace algperm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

struct Config {
  std::string command;
  std::string matrix_path;
  std::string estimator = "trace";
  std::string measure;
  int d = 0;
  std::size_t trials = 100000;
  std::uint64_t seed = 42;
  std::string format = "json";
  int cap_n = 7;
  std::string suite = "exact";
  int n_max = 4;
  int d_max = 4;
  unsigned threads = default_thread_count();
};

/// Resolves estimator/measure/d into a validated spec.
inline EstimatorSpec make_spec(const Config& c) {
  const EstimatorKind kind = parse_estimator_kind(c.estimator);
  if (is_matrix_kind(kind)) {
    if (c.measure.empty()) throw InvalidInput(c.estimator + " requires --measure haar|gaussian");
    if (c.d < 1) throw InvalidInput(c.estimator + " requires --d >= 1");
    return EstimatorSpec::matrix(kind, parse_measure(c.measure), c.d);
  }
  if (!c.measure.empty() || c.d != 0) throw InvalidInput(c.estimator + " is a scalar estimator; omit --measure and --d");
  return EstimatorSpec::scalar(kind);
}

inline std::string decimal(double v) { return format_decimal(v); }

inline int cmd_perm(const Config& c, std::ostream& out) {
  const InstanceMatrix a = read_matrix_file(c.matrix_path);
  if (a.is_integer()) out << ryser_permanent_exact(a) << '\n';
  else out << decimal(ryser_permanent(a)) << '\n';
  return kExitOk;
}

inline int cmd_estimate(const Config& c, std::ostream& out) {
  const InstanceMatrix a = read_matrix_file(c.matrix_path);
  const EstimatorSpec spec = make_spec(c);
  if (c.trials < 2) throw InvalidInput("--trials must be >= 2");
  const RunStats s = run_campaign(a, spec, c.trials, c.seed, c.threads);
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["estimator"] = to_string(spec.kind);
    j["measure"] = spec.measure ? nlohmann::ordered_json(to_string(*spec.measure)) : nlohmann::ordered_json();
    j["d"] = spec.d ? nlohmann::ordered_json(*spec.d) : nlohmann::ordered_json();
    j["n"] = a.n();
    j["trials"] = s.trials;
    j["mean"] = s.mean;
    j["variance"] = s.variance;
    j["critical_ratio"] = s.critical_ratio_estimate;
    j["stderr_mean"] = s.stderr_mean;
    j["seed"] = s.master_seed;
    out << j.dump(2) << '\n';
  } else {
    out << "estimator,measure,d,n,trials,mean,variance,critical_ratio,stderr_mean,seed\n";
    out << to_string(spec.kind) << ',' << (spec.measure ? to_string(*spec.measure) : "") << ','
        << (spec.d ? std::to_string(*spec.d) : "") << ',' << a.n() << ',' << s.trials << ',' << decimal(s.mean) << ','
        << decimal(s.variance) << ',' << decimal(s.critical_ratio_estimate) << ',' << decimal(s.stderr_mean) << ','
        << s.master_seed << '\n';
  }
  return kExitOk;
}

inline verify::Options verify_options(const Config& c) {
  verify::Options o;
  o.cap_n = c.cap_n;
  o.trials = c.trials;
  o.seed = c.seed;
  o.threads = c.threads;
  return o;
}

/// Runs the named suite; prints one line per check and a summary per criterion.
inline int run_verify(const std::vector<int>& ids, const verify::Options& o, std::ostream& out) {
  bool ok = true;
  for (int id : ids) {
    const verify::CriterionReport rep = verify::run_criterion(id, o);
    for (const verify::Check& ch : rep.checks)
      out << "  [" << verify::to_string(ch.status) << "] " << ch.name << " -- " << ch.detail << '\n';
    out << (rep.passed() ? "PASS" : "FAIL") << " criterion " << id << ": " << rep.title << " (" << rep.count(verify::Status::kPass)
        << " pass, " << rep.count(verify::Status::kFail) << " fail, " << rep.count(verify::Status::kSkip) << " skipped, "
        << std::fixed << std::setprecision(2) << rep.seconds << " s)" << std::defaultfloat << '\n';
    ok = ok && rep.passed();
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

inline int cmd_verify(const Config& c, std::ostream& out) {
  return run_verify(verify::suite_members(c.suite), verify_options(c), out);
}

/// One CSV row per (n, d): exact values as fractions and decimals.
inline int cmd_tables(const Config& c, std::ostream& out) {
  if (c.n_max < 1 || c.d_max < 1) throw InvalidInput("--n-max and --d-max must be >= 1");
  out << "n,d,a_d,a_d_decimal,a2,a2_decimal,a2_tilde,a2_tilde_decimal,unsym_ratio,unsym_ratio_decimal,"
         "sym_ratio,sym_ratio_decimal,lemma_envelope,lemma_envelope_decimal,exp_envelope,lower_floor,"
         "lower_floor_decimal\n";
  auto both = [](const Rational& r) { return to_fraction_string(r) + "," + decimal(to_double(r)); };
  const int a2_top = std::min({c.n_max, c.cap_n, kA2EnumerationCap});
  for (int n = 1; n <= c.n_max; ++n) {
    std::optional<SecondMomentHistograms> h;
    if (n <= a2_top) h = second_moment_histograms(n);
    for (int d = 1; d <= c.d_max; ++d) {
      const Rational a = a_d_closed(n, d);
      const BoundProfile p = bound_profiles(n, d);
      out << n << ',' << d << ',' << both(a) << ',';
      if (h) {
        const Rational a2 = a2_from_histograms(*h, d);
        out << both(a2) << ',' << both(a2_tilde_from_histograms(*h, d)) << ',';
        out << both(unsym_gaussian_ratio(n, d)) << ',' << both(a2 / (a * a)) << ',';
      } else {
        out << ",,,," << both(unsym_gaussian_ratio(n, d)) << ",,,";
      }
      out << both(p.lemma_envelope) << ',' << decimal(p.exp_envelope) << ',' << both(p.lower_floor) << '\n';
    }
  }
  return kExitOk;
}

/// Parses argv and dispatches. Never throws; errors become exit status 2.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Permanent estimators over matrix algebras", "algperm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "algperm 1.0.0");

  auto* perm = app.add_subcommand("perm", "exact permanent by Ryser's formula");
  perm->add_option("--matrix", c.matrix_path, "matrix file")->required();

  auto* estimate = app.add_subcommand("estimate", "run a seeded Monte Carlo campaign");
  estimate->add_option("--matrix", c.matrix_path, "matrix file")->required();
  estimate->add_option("--estimator", c.estimator,
                       "trace|trace_sym|frobenius|frobenius_sym|gg_sign|unit_circle|scalar_gaussian");
  estimate->add_option("--measure", c.measure, "haar|gaussian (matrix estimators)");
  estimate->add_option("--d", c.d, "algebra dimension (matrix estimators)");
  estimate->add_option("--trials", c.trials, "number of samples");
  estimate->add_option("--seed", c.seed, "master seed");
  estimate->add_option("--format", c.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  estimate->add_option("--threads", c.threads, "worker threads (results do not depend on it)");

  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  verify_cmd->add_option("--suite", c.suite, "exact|determinants|statistical|all|a_d|a2|characters|cycle_cover");
  verify_cmd->add_option("--cap-n", c.cap_n, "largest n to enumerate; larger checks are skipped");
  verify_cmd->add_option("--trials", c.trials, "samples per statistical campaign");
  verify_cmd->add_option("--seed", c.seed, "master seed");
  verify_cmd->add_option("--threads", c.threads, "worker threads");

  auto* tables = app.add_subcommand("tables", "CSV of exact moments and envelopes");
  tables->add_option("--n-max", c.n_max, "largest n");
  tables->add_option("--d-max", c.d_max, "largest d");
  tables->add_option("--cap-n", c.cap_n, "largest n for the second-moment enumeration");
  tables->add_option("--format", c.format, "csv")->check(CLI::IsMember({"csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run 'algperm --help' for usage\n";
    return kExitUsage;
  }
  try {
    if (*perm) return cmd_perm(c, out);
    if (*estimate) return cmd_estimate(c, out);
    if (*verify_cmd) return cmd_verify(c, out);
    if (*tables) return cmd_tables(c, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace algperm::cli
