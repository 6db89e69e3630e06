#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "algperm/estimators.hpp"
#include "algperm/moments.hpp"
#include "algperm/oracles.hpp"

namespace {

using algperm::BigInt;
using algperm::EstimatorKind;
using algperm::EstimatorSpec;
using algperm::InstanceMatrix;
using algperm::Measure;
using algperm::RngStream;

const InstanceMatrix kSample4 = InstanceMatrix(4, {1, 1, 0, 1,  //
                                                   0, 1, 1, 1,  //
                                                   1, 0, 1, 1,  //
                                                   1, 1, 1, 0});

double naive_perm(const InstanceMatrix& a) { return algperm::oracles::naive_permanent(algperm::to_rows(a)); }

bool within(const algperm::RunStats& s, double target, double k = 5.0) {
  return std::abs(s.mean - target) <= k * s.stderr_mean;
}

TEST(InstanceMatrix, Validation) {
  EXPECT_THROW(InstanceMatrix(2, {1, 0, 1}), algperm::InvalidInput);
  EXPECT_THROW(InstanceMatrix(1, {-1}), algperm::InvalidInput);
  EXPECT_THROW(InstanceMatrix(0, {}), algperm::InvalidInput);
  EXPECT_TRUE(InstanceMatrix::identity(3).is_binary());
  EXPECT_FALSE(InstanceMatrix(1, {2.5}).is_integer());
  EXPECT_EQ(InstanceMatrix::from_bits(2, 0b1001), InstanceMatrix::identity(2));
}

TEST(EstimatorSpec, ParsingAndValidation) {
  for (auto k : {EstimatorKind::kTrace, EstimatorKind::kTraceSym, EstimatorKind::kFrobenius, EstimatorKind::kFrobeniusSym,
                 EstimatorKind::kGgSign, EstimatorKind::kUnitCircle, EstimatorKind::kScalarGaussian})
    EXPECT_EQ(algperm::parse_estimator_kind(algperm::to_string(k)), k);
  EXPECT_THROW(algperm::parse_estimator_kind("godsil"), algperm::InvalidInput);
  EXPECT_THROW(EstimatorSpec::matrix(EstimatorKind::kGgSign, Measure::kHaar, 2), algperm::InvalidInput);
  EXPECT_THROW(EstimatorSpec::matrix(EstimatorKind::kTrace, Measure::kHaar, 0), algperm::InvalidInput);
  EXPECT_THROW(EstimatorSpec::scalar(EstimatorKind::kTrace), algperm::InvalidInput);
}

TEST(BuildRandomInstance, ZeroMatrixHasNoCells) {
  RngStream s(1);
  const auto m = algperm::build_random_instance(InstanceMatrix(3, std::vector<double>(9, 0.0)),
                                                EstimatorSpec::matrix(EstimatorKind::kTrace, Measure::kGaussian, 2), s);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_FALSE(m.present(i, j));
}

TEST(BuildRandomInstance, BinaryCellsAreRawSamples) {
  for (Measure measure : {Measure::kGaussian, Measure::kHaar}) {
    RngStream s(2, {5}), mirror(2, {5});
    const auto m = algperm::build_random_instance(kSample4, EstimatorSpec::matrix(EstimatorKind::kTrace, measure, 3), s);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        ASSERT_EQ(m.present(i, j), kSample4(i, j) == 1.0);
        if (m.present(i, j)) {
          EXPECT_EQ(m.cell(i, j)->eigen(), algperm::sample(measure, 3, mirror).eigen());
        }
      }
  }
}

TEST(BuildRandomInstance, EntryFourDoublesTheSample) {
  const InstanceMatrix four(1, {4.0});
  const auto spec = EstimatorSpec::matrix(EstimatorKind::kTrace, Measure::kGaussian, 2);
  RngStream s(3), mirror(3);
  const auto m = algperm::build_random_instance(four, spec, s);
  const auto raw = algperm::sample_gaussian(2, mirror);
  EXPECT_LE(algperm::max_abs_diff(*m.cell(0, 0), algperm::scale(raw, 2.0)), 1e-15);
  const auto stats = algperm::run_campaign(four, spec, 100000, 77);
  EXPECT_TRUE(within(stats, 4.0)) << stats.mean << " +- " << stats.stderr_mean;
}

TEST(Evaluate, GodsilGutmanOnIdentityIsOne) {
  const auto spec = EstimatorSpec::scalar(EstimatorKind::kGgSign);
  RngStream s(4);
  for (int n = 1; n <= 6; ++n)
    for (int rep = 0; rep < 50; ++rep) EXPECT_NEAR(algperm::evaluate(InstanceMatrix::identity(n), spec, s), 1.0, 1e-12);
}

TEST(Evaluate, SingleTraceHasUnitMean) {
  for (Measure m : {Measure::kGaussian, Measure::kHaar}) {
    const auto stats = algperm::run_campaign(InstanceMatrix::identity(1),
                                             EstimatorSpec::matrix(EstimatorKind::kTrace, m, 3), 100000, 5);
    EXPECT_TRUE(within(stats, 1.0)) << algperm::to_string(m) << ' ' << stats.mean;
  }
}

TEST(Evaluate, ZeroRowGivesZero) {
  InstanceMatrix a = InstanceMatrix::ones(3);
  std::vector<double> e = a.entries();
  for (int j = 0; j < 3; ++j) e[3 + j] = 0.0;
  const InstanceMatrix zero_row(3, e);
  RngStream s(6);
  for (auto k : {EstimatorKind::kTrace, EstimatorKind::kTraceSym, EstimatorKind::kFrobenius, EstimatorKind::kFrobeniusSym})
    for (Measure m : {Measure::kGaussian, Measure::kHaar})
      for (int rep = 0; rep < 20; ++rep)
        EXPECT_EQ(algperm::evaluate(zero_row, EstimatorSpec::matrix(k, m, 2), s), 0.0);
  for (auto k : {EstimatorKind::kGgSign, EstimatorKind::kUnitCircle, EstimatorKind::kScalarGaussian})
    for (int rep = 0; rep < 20; ++rep) EXPECT_EQ(algperm::evaluate(zero_row, EstimatorSpec::scalar(k), s), 0.0);
}

TEST(EstimatorProperty, SamplesAreNonnegative) {
  for (auto k : {EstimatorKind::kTrace, EstimatorKind::kTraceSym, EstimatorKind::kFrobenius, EstimatorKind::kFrobeniusSym})
    for (Measure m : {Measure::kGaussian, Measure::kHaar})
      for (double v : algperm::sample_campaign(kSample4, EstimatorSpec::matrix(k, m, 2), 500, 8)) EXPECT_GE(v, 0.0);
  for (auto k : {EstimatorKind::kGgSign, EstimatorKind::kUnitCircle, EstimatorKind::kScalarGaussian})
    for (double v : algperm::sample_campaign(kSample4, EstimatorSpec::scalar(k), 500, 8)) EXPECT_GE(v, 0.0);
}

TEST(RunCampaign, TraceIsUnbiased) {
  const double perm = naive_perm(kSample4);
  EXPECT_EQ(perm, algperm::ryser_permanent(kSample4));
  const auto stats =
      algperm::run_campaign(kSample4, EstimatorSpec::matrix(EstimatorKind::kTrace, Measure::kGaussian, 2), 100000, 42);
  EXPECT_TRUE(within(stats, perm)) << stats.mean << " +- " << stats.stderr_mean << " vs " << perm;
}

TEST(RunCampaign, TraceSymMeanIsScaledByAd) {
  const double target = algperm::to_double(algperm::a_d_closed(4, 2)) * naive_perm(kSample4);
  const auto stats =
      algperm::run_campaign(kSample4, EstimatorSpec::matrix(EstimatorKind::kTraceSym, Measure::kGaussian, 2), 100000, 42);
  EXPECT_TRUE(within(stats, target)) << stats.mean << " +- " << stats.stderr_mean << " vs " << target;
}

TEST(RunCampaign, ScalarEstimatorsAreUnbiased) {
  const double perm = naive_perm(kSample4);
  for (auto k : {EstimatorKind::kGgSign, EstimatorKind::kUnitCircle, EstimatorKind::kScalarGaussian}) {
    const auto stats = algperm::run_campaign(kSample4, EstimatorSpec::scalar(k), 100000, 43);
    EXPECT_TRUE(within(stats, perm)) << algperm::to_string(k) << ' ' << stats.mean << " +- " << stats.stderr_mean;
  }
}

TEST(RunCampaign, BitIdenticalOnRepeat) {
  const auto spec = EstimatorSpec::matrix(EstimatorKind::kTraceSym, Measure::kHaar, 2);
  const auto a = algperm::run_campaign(kSample4, spec, 3000, 9, 1);
  const auto b = algperm::run_campaign(kSample4, spec, 3000, 9, 1);
  EXPECT_EQ(a, b);
  const auto c = algperm::run_campaign(kSample4, spec, 3000, 10, 1);
  EXPECT_NE(a.mean, c.mean);
}

TEST(RunCampaign, IndependentOfThreadCount) {
  for (auto spec : {EstimatorSpec::matrix(EstimatorKind::kTrace, Measure::kGaussian, 3),
                    EstimatorSpec::scalar(EstimatorKind::kUnitCircle)}) {
    const auto one = algperm::sample_campaign(kSample4, spec, 2000, 11, 1);
    const auto many = algperm::sample_campaign(kSample4, spec, 2000, 11, 4);
    EXPECT_EQ(one, many);
  }
}

TEST(RunCampaign, SharedDrawsAcrossMatrixKinds) {
  const auto trace = algperm::sample_campaign(kSample4, EstimatorSpec::matrix(EstimatorKind::kTrace, Measure::kHaar, 2), 200, 12);
  const auto kinds = algperm::sample_matrix_kinds(kSample4, Measure::kHaar, 2,
                                                  {EstimatorKind::kFrobenius, EstimatorKind::kTrace}, 200, 12);
  EXPECT_EQ(kinds[1], trace);
  for (std::size_t t = 0; t < trace.size(); ++t) EXPECT_LE(trace[t], 2.0 * kinds[0][t] * (1 + 1e-12));
}

TEST(RunCampaign, RejectsBadInput) {
  const auto spec = EstimatorSpec::matrix(EstimatorKind::kTraceSym, Measure::kGaussian, 2);
  EXPECT_THROW(algperm::run_campaign(kSample4, spec, 1, 0), algperm::InvalidInput);
  EXPECT_THROW(algperm::run_campaign(InstanceMatrix::identity(8), spec, 10, 0), algperm::ResourceLimit);
}

TEST(RunStats, CriticalRatioFields) {
  const std::vector<double> xs = {1.0, 3.0, 1.0, 3.0};
  const auto s = algperm::make_run_stats(xs, 5);
  EXPECT_DOUBLE_EQ(s.mean, 2.0);
  EXPECT_DOUBLE_EQ(s.second_moment, 5.0);
  EXPECT_DOUBLE_EQ(s.critical_ratio_estimate, 1.25);
  EXPECT_DOUBLE_EQ(s.variance, 4.0 / 3.0);
  EXPECT_EQ(s.master_seed, 5u);
  const auto flat = algperm::make_run_stats(std::vector<double>(10, 2.0), 0);
  EXPECT_DOUBLE_EQ(flat.critical_ratio_estimate, 1.0);
  EXPECT_DOUBLE_EQ(flat.stderr_critical_ratio, 0.0);
}

TEST(Ryser, Examples) {
  for (int n = 1; n <= 8; ++n) {
    EXPECT_EQ(algperm::ryser_permanent_exact(InstanceMatrix::identity(n)), 1);
    EXPECT_EQ(algperm::ryser_permanent_exact(InstanceMatrix::ones(n)), algperm::factorial(n));
    EXPECT_DOUBLE_EQ(algperm::ryser_permanent(InstanceMatrix::ones(n)), algperm::to_double(algperm::factorial(n)));
  }
}

TEST(Ryser, MatchesFactorialExpansion) {
  RngStream s(13);
  for (int rep = 0; rep < 20; ++rep) {
    const InstanceMatrix a = InstanceMatrix::from_bits(6, s.engine()() & ((std::uint64_t{1} << 36) - 1));
    EXPECT_EQ(algperm::ryser_permanent_exact(a), BigInt(naive_perm(a)));
  }
  std::vector<std::vector<double>> real(5, std::vector<double>(5));
  for (auto& row : real)
    for (auto& v : row) v = s.uniform01() * 3.0;
  const double ryser = algperm::ryser_permanent(real), naive = algperm::oracles::naive_permanent(real);
  EXPECT_NEAR(ryser, naive, 1e-10 * naive);
}

TEST(Ryser, RejectsOversize) {
  EXPECT_THROW(algperm::ryser_permanent(InstanceMatrix::identity(21)), algperm::ResourceLimit);
  EXPECT_THROW(algperm::ryser_permanent_exact(InstanceMatrix(1, {0.5})), algperm::InvalidInput);
}

TEST(CycleCovers, Examples) {
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(algperm::cycle_cover_square(InstanceMatrix::identity(n)), 1);
  EXPECT_EQ(algperm::cycle_cover_square(InstanceMatrix::ones(2)), 4);
}

TEST(CycleCovers, SquareOfPermanent) {
  for (int n = 1; n <= 3; ++n)
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * n)); ++bits) {
      const InstanceMatrix a = InstanceMatrix::from_bits(n, bits);
      const BigInt p = algperm::ryser_permanent_exact(a);
      ASSERT_EQ(algperm::cycle_cover_square(a), BigInt(p * p)) << bits;
    }
  RngStream s(14);
  for (int rep = 0; rep < 100; ++rep) {
    const InstanceMatrix a = InstanceMatrix::from_bits(4, s.engine()() & 0xFFFFu);
    const BigInt p = algperm::ryser_permanent_exact(a);
    ASSERT_EQ(algperm::cycle_cover_square(a), BigInt(p * p));
  }
  const BigInt five = algperm::ryser_permanent_exact(InstanceMatrix::ones(5));
  EXPECT_EQ(algperm::cycle_cover_square(InstanceMatrix::ones(5)), BigInt(five * five));
}

TEST(CycleCovers, RejectsNonBinary) {
  EXPECT_THROW(algperm::cycle_cover_square(InstanceMatrix(1, {2.0})), algperm::InvalidInput);
  EXPECT_THROW(algperm::cycle_cover_square(InstanceMatrix::identity(7)), algperm::ResourceLimit);
}

TEST(Frobenius, IdentityMatrixTargets) {
  const auto rep = algperm::frobenius_consistency(InstanceMatrix::identity(3), Measure::kGaussian, 3, 100000, 15);
  EXPECT_LE(std::abs(rep.x_frob.mean - 3.0), 5 * rep.x_frob.stderr_mean) << rep.x_frob.mean;
  EXPECT_LE(std::abs(rep.x.mean - 1.0), 5 * rep.x.stderr_mean) << rep.x.mean;
  EXPECT_TRUE(rep.holds);
}

TEST(Frobenius, DimensionOneCoincides) {
  const auto samples = algperm::sample_matrix_kinds(kSample4, Measure::kGaussian, 1,
                                                    {EstimatorKind::kTrace, EstimatorKind::kFrobenius}, 1000, 16);
  for (std::size_t t = 0; t < samples[0].size(); ++t)
    EXPECT_NEAR(samples[0][t], samples[1][t], 1e-12 * std::max(1.0, samples[1][t]));
}

TEST(Frobenius, ReportFlagsViolations) {
  const std::vector<double> x(100, 10.0), f(100, 1.0);
  EXPECT_FALSE(algperm::frobenius_report(x, f, 2).holds);
  EXPECT_TRUE(algperm::frobenius_report(x, f, 10).holds);
}

}  // namespace
