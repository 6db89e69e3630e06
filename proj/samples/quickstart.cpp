// Estimates the permanent of a small 0/1 matrix with the trace estimator and
// compares the result to the exact value and the exact second-moment ratio.
#include <iostream>

#include "algperm/algperm.hpp"

int main() {
  using namespace algperm;
  const InstanceMatrix a(4, {1, 1, 0, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 0});
  std::cout << "exact permanent: " << ryser_permanent_exact(a) << '\n';

  for (EstimatorKind kind : {EstimatorKind::kTrace, EstimatorKind::kTraceSym}) {
    const EstimatorSpec spec = EstimatorSpec::matrix(kind, Measure::kGaussian, 3);
    const RunStats s = run_campaign(a, spec, 20000, 7, 1);
    std::cout << to_string(kind) << ": mean " << s.mean << " +/- " << s.stderr_mean << ", second moment / mean^2 "
              << s.critical_ratio_estimate << '\n';
  }

  const EstimatorSpec gg = EstimatorSpec::scalar(EstimatorKind::kGgSign);
  const RunStats s = run_campaign(a, gg, 20000, 7, 1);
  std::cout << "gg_sign: mean " << s.mean << " +/- " << s.stderr_mean << '\n';

  // trace_sym is biased: on I_n its mean is a_d rather than 1.
  std::cout << "a_d(4, 3) = " << to_fraction_string(a_d_closed(4, 3)) << '\n';
  const IdentityRatios r = identity_matrix_ratios(4, 3);
  std::cout << "identity ratios at n=4 d=3: unsymmetrized " << to_fraction_string(r.unsym_gaussian_ratio)
            << ", symmetrized " << to_fraction_string(r.sym_gaussian_ratio) << '\n';
}
