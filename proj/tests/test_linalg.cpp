#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "algperm/linalg.hpp"
#include "algperm/statistics.hpp"

namespace {

using algperm::Complex;
using algperm::ComplexMatrix;
using algperm::Measure;
using algperm::RngStream;

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

// E[σ⊗σ*] written out entrywise; flat index ((i*d + j)*d + k)*d + l.
std::vector<double> cupcap_entries(int d) {
  std::vector<double> out;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) out.push_back(delta(i, k) * delta(j, l) / d);
  return out;
}

// Fourth moments over slots (i j)(k l)(m n)(p q), σ⊗σ⊗σ*⊗σ*. Haar uses the
// degree-two Weingarten function summed over row and column matchings.
std::vector<double> fourth_entries(int d, bool haar) {
  const double dd = d;
  const double wg_same = 1.0 / (dd * dd - 1.0), wg_swap = -1.0 / (dd * (dd * dd - 1.0));
  std::vector<double> out;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          for (int m = 0; m < d; ++m)
            for (int n = 0; n < d; ++n)
              for (int p = 0; p < d; ++p)
                for (int q = 0; q < d; ++q) {
                  const double rows_id = delta(i, m) * delta(k, p), rows_sw = delta(i, p) * delta(k, m);
                  const double cols_id = delta(j, n) * delta(l, q), cols_sw = delta(j, q) * delta(l, n);
                  if (!haar) {
                    out.push_back((rows_id * cols_id + rows_sw * cols_sw) / (dd * dd));
                  } else {
                    out.push_back(wg_same * (rows_id * cols_id + rows_sw * cols_sw) +
                                  wg_swap * (rows_id * cols_sw + rows_sw * cols_id));
                  }
                }
  return out;
}

ComplexMatrix random_matrix(int d, RngStream& s) {
  ComplexMatrix a(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = Complex(s.normal(1.0), s.normal(1.0));
  return a;
}

TEST(ComplexMatrix, TraceAndFrobeniusOfIdentity) {
  for (int d = 1; d <= 6; ++d) {
    EXPECT_EQ(algperm::trace(ComplexMatrix::identity(d)), Complex(d));
    EXPECT_EQ(algperm::frobenius_sq(ComplexMatrix::identity(d)), d);
  }
}

TEST(ComplexMatrix, FrobeniusMatchesElementwiseSum) {
  RngStream s(3);
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexMatrix a = random_matrix(3, s);
    double sum = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) sum += std::norm(a(i, j));
    const double f = algperm::frobenius_sq(a);
    EXPECT_NEAR(f, sum, 1e-12 * sum);
    EXPECT_NEAR(algperm::trace(a * algperm::dagger(a)).real(), sum, 1e-12 * sum);
  }
}

TEST(ComplexMatrix, RejectsBadShapes) {
  EXPECT_THROW(ComplexMatrix(0), algperm::InvalidInput);
  EXPECT_THROW(ComplexMatrix(Eigen::MatrixXcd(2, 3)), algperm::InvalidInput);
  EXPECT_THROW(ComplexMatrix::identity(2) + ComplexMatrix::identity(3), algperm::InvalidInput);
}

TEST(LinalgProperty, DaggerInvolutionAndTraceCyclicity) {
  RngStream s(4);
  for (int d = 1; d <= 5; ++d)
    for (int rep = 0; rep < 10; ++rep) {
      const ComplexMatrix a = random_matrix(d, s), b = random_matrix(d, s);
      EXPECT_EQ(algperm::max_abs_diff(algperm::dagger(algperm::dagger(a)), a), 0.0);
      const Complex ab = algperm::trace(a * b), ba = algperm::trace(b * a);
      EXPECT_LE(std::abs(ab - ba), 1e-12 * std::max(1.0, std::abs(ab)));
    }
}

TEST(ParseMeasure, Names) {
  EXPECT_EQ(algperm::parse_measure("haar"), Measure::kHaar);
  EXPECT_EQ(algperm::parse_measure("gaussian"), Measure::kGaussian);
  EXPECT_THROW(algperm::parse_measure("ginibre"), algperm::InvalidInput);
}

TEST(SampleGaussian, EntryMoments) {
  const int d = 2;
  const std::size_t trials = 100000;
  RngStream s(2026, {1});
  std::vector<double> re(trials), im(trials), sq(trials), quart(trials);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      RngStream local = s.substream({static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)});
      for (std::size_t t = 0; t < trials; ++t) {
        const Complex e = algperm::sample_gaussian(d, local)(i, j);
        re[t] = e.real();
        im[t] = e.imag();
        sq[t] = std::norm(e);
        quart[t] = sq[t] * sq[t];
      }
      const auto mre = algperm::summarize(re), mim = algperm::summarize(im);
      const auto msq = algperm::summarize(sq), mq = algperm::summarize(quart);
      EXPECT_LE(std::abs(mre.mean), 5 * mre.stderr_mean);
      EXPECT_LE(std::abs(mim.mean), 5 * mim.stderr_mean);
      EXPECT_LE(std::abs(msq.mean - 1.0 / d), 5 * msq.stderr_mean) << msq.mean;
      EXPECT_LE(std::abs(mq.mean - 2.0 / (d * d)), 5 * mq.stderr_mean) << mq.mean;
    }
}

TEST(SampleHaar, Unitary) {
  RngStream s(5);
  for (int d = 1; d <= 6; ++d)
    for (int rep = 0; rep < 20; ++rep) {
      const ComplexMatrix u = algperm::sample_haar(d, s);
      EXPECT_NEAR(algperm::frobenius_sq(u), d, 1e-10);
      EXPECT_LE(algperm::max_abs_diff(algperm::dagger(u) * u, ComplexMatrix::identity(d)), 1e-10);
      EXPECT_NEAR(std::abs(algperm::determinant(u)), 1.0, 1e-10);
    }
}

TEST(Sampling, BitIdenticalForSameStream) {
  for (Measure m : {Measure::kGaussian, Measure::kHaar}) {
    RngStream a(99, {7, 8}), b(99, {7, 8}), c(99, {7, 9});
    const ComplexMatrix x = algperm::sample(m, 4, a), y = algperm::sample(m, 4, b), z = algperm::sample(m, 4, c);
    EXPECT_EQ(x.eigen(), y.eigen());
    EXPECT_NE(x.eigen(), z.eigen());
  }
}

TEST(TensorMoment, HaarCupcapAtDimensionTwo) {
  RngStream s(31, {2});
  const auto est = algperm::tensor_moment_2(Measure::kHaar, 2, 100000, s);
  EXPECT_LE(algperm::max_standard_errors(est, cupcap_entries(2)), 5.0);
}

TEST(TensorMoment, HaarTensorSquareHasNoInvariant) {
  RngStream s(31, {3});
  const auto est = algperm::tensor_moment(Measure::kHaar, 2, 2, 0, 100000, s);
  EXPECT_LE(algperm::max_standard_errors(est, std::vector<double>(16, 0.0)), 5.0);
}

TEST(TensorMoment, GaussianCupcapAtDimensionTwo) {
  RngStream s(31, {4});
  const auto est = algperm::tensor_moment_2(Measure::kGaussian, 2, 100000, s);
  EXPECT_LE(algperm::max_standard_errors(est, cupcap_entries(2)), 5.0);
}

TEST(TensorMoment, GaussianFourthAtDimensionTwo) {
  RngStream s(31, {5});
  const auto est = algperm::tensor_moment_4(Measure::kGaussian, 2, 100000, s);
  EXPECT_LE(algperm::max_standard_errors(est, fourth_entries(2, false)), 5.0);
}

TEST(TensorMoment, HaarFourthAtDimensionTwo) {
  RngStream s(31, {6});
  const auto est = algperm::tensor_moment_4(Measure::kHaar, 2, 100000, s);
  EXPECT_LE(algperm::max_standard_errors(est, fourth_entries(2, true)), 5.0);
}

TEST(TensorMoment, RejectsLargeShapes) {
  RngStream s(1);
  EXPECT_THROW(algperm::tensor_moment_4(Measure::kHaar, 5, 10, s), algperm::InvalidInput);
  EXPECT_THROW(algperm::tensor_moment(Measure::kHaar, 2, 0, 0, 10, s), algperm::InvalidInput);
}

TEST(ClosedForms, MatchEntrywiseFormulas) {
  for (int d = 1; d <= 4; ++d) {
    EXPECT_EQ(algperm::cupcap_closed_form(d).to_dense(d), cupcap_entries(d));
    const auto g = algperm::gaussian_fourth_moment_closed_form(d).to_dense(d);
    const auto expect = fourth_entries(d, false);
    ASSERT_EQ(g.size(), expect.size());
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g[i], expect[i], 1e-15);
  }
  for (int d = 2; d <= 4; ++d) {
    const auto h = algperm::haar_fourth_moment_closed_form(d).to_dense(d);
    const auto expect = fourth_entries(d, true);
    for (std::size_t i = 0; i < h.size(); ++i) EXPECT_NEAR(h[i], expect[i], 1e-15);
  }
  EXPECT_THROW(algperm::haar_fourth_moment_closed_form(1), algperm::InvalidInput);
}

TEST(ClosedForms, HaarSandwichIsSemidefinite) {
  for (int d = 2; d <= 4; ++d) {
    const auto gaps = algperm::haar_fourth_moment_sandwich(d);
    EXPECT_GE(gaps.lower_gap_min_eigenvalue, -1e-12) << d;
    EXPECT_GE(gaps.upper_gap_min_eigenvalue, -1e-12) << d;
  }
}

TEST(ClosedForms, HaarTraceIdentities) {
  // Contracting σ with σ* twice gives E|tr σ|⁴ = 2 for Haar at d >= 2.
  for (int d = 2; d <= 4; ++d) {
    const auto h = algperm::haar_fourth_moment_closed_form(d).to_dense(d);
    double total = 0.0;
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k)
        for (int m = 0; m < d; ++m)
          for (int p = 0; p < d; ++p) {
            const std::size_t flat =
                ((((((static_cast<std::size_t>(i) * d + i) * d + k) * d + k) * d + m) * d + m) * d + p) * d + p;
            total += h[flat];
          }
    EXPECT_NEAR(total, 2.0, 1e-12) << d;
  }
}

}  // namespace
