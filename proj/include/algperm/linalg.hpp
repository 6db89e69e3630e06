#pragma once

// Dense complex d×d matrices (the algebra A_d) and the two random-matrix
// measures used as entries of M: Gaussian and Haar.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "algperm/delta_tensor.hpp"
#include "algperm/errors.hpp"
#include "algperm/rng.hpp"

namespace algperm {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  using Storage = Eigen::MatrixXcd;

  explicit ComplexMatrix(int dim) : m_(Storage::Zero(check_dim(dim), dim)) {}

  explicit ComplexMatrix(Storage m) : m_(std::move(m)) {
    detail::require(m_.rows() == m_.cols() && m_.rows() >= 1, "ComplexMatrix must be square, dim >= 1");
  }

  static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }
  static ComplexMatrix identity(int dim) {
    return ComplexMatrix(Storage(Storage::Identity(check_dim(dim), dim)));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  Complex operator()(int i, int j) const { return m_(i, j); }
  Complex& operator()(int i, int j) { return m_(i, j); }

  const Storage& eigen() const { return m_; }
  Storage& eigen() { return m_; }

  bool is_finite() const { return m_.allFinite(); }

  ComplexMatrix& operator+=(const ComplexMatrix& other) {
    detail::require(dim() == other.dim(), "matrix add: dim mismatch");
    m_ += other.m_;
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& other) {
    detail::require(dim() == other.dim(), "matrix sub: dim mismatch");
    m_ -= other.m_;
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    m_ *= s;
    return *this;
  }

 private:
  static int check_dim(int dim) {
    detail::require(dim >= 1, "matrix dim must be >= 1");
    return dim;
  }
  Storage m_;
};

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require(a.dim() == b.dim(), "matmul: dim mismatch");
  return ComplexMatrix(ComplexMatrix::Storage(a.eigen() * b.eigen()));
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

inline ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = a;
  out += b;
  return out;
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) { return add(a, b); }
inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = a;
  out -= b;
  return out;
}

inline ComplexMatrix scale(const ComplexMatrix& a, Complex s) {
  ComplexMatrix out = a;
  out *= s;
  return out;
}

inline ComplexMatrix operator*(Complex s, const ComplexMatrix& a) { return scale(a, s); }

inline Complex trace(const ComplexMatrix& a) { return a.eigen().trace(); }

inline ComplexMatrix dagger(const ComplexMatrix& a) {
  return ComplexMatrix(ComplexMatrix::Storage(a.eigen().adjoint()));
}

/// ‖a‖² = tr a a†, computed as the sum of squared entry moduli.
inline double frobenius_sq(const ComplexMatrix& a) { return a.eigen().squaredNorm(); }

inline Complex determinant(const ComplexMatrix& a) { return a.eigen().determinant(); }

/// Largest |a_ij − b_ij|.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require(a.dim() == b.dim(), "max_abs_diff: dim mismatch");
  return (a.eigen() - b.eigen()).cwiseAbs().maxCoeff();
}

/// Largest entry modulus.
inline double max_abs(const ComplexMatrix& a) { return a.eigen().cwiseAbs().maxCoeff(); }

enum class Measure { kGaussian, kHaar };

inline std::string to_string(Measure m) { return m == Measure::kGaussian ? "gaussian" : "haar"; }

inline Measure parse_measure(const std::string& name) {
  if (name == "gaussian") return Measure::kGaussian;
  if (name == "haar") return Measure::kHaar;
  throw InvalidInput("unknown measure '" + name + "' (expected haar|gaussian)");
}

/// I.i.d. complex Gaussian entries, mean 0, E|entry|² = 1/d (real and
/// imaginary parts each variance 1/(2d)).
inline ComplexMatrix sample_gaussian(int d, RngStream& stream) {
  ComplexMatrix out(d);
  const double stddev = std::sqrt(1.0 / (2.0 * d));
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      const double re = stream.normal(stddev);
      const double im = stream.normal(stddev);
      out(i, j) = Complex(re, im);
    }
  }
  return out;
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix, then column i
/// of Q multiplied by R_ii/|R_ii| so that the implied R has positive diagonal.
inline ComplexMatrix sample_haar(int d, RngStream& stream) {
  const ComplexMatrix z = sample_gaussian(d, stream);
  Eigen::HouseholderQR<ComplexMatrix::Storage> qr(z.eigen());
  ComplexMatrix::Storage q = qr.householderQ();
  const ComplexMatrix::Storage& r = qr.matrixQR();
  for (int i = 0; i < d; ++i) {
    const Complex rii = r(i, i);
    const double mag = std::abs(rii);
    if (mag > 0.0) q.col(i) *= rii / mag;
  }
  return ComplexMatrix(std::move(q));
}

inline ComplexMatrix sample(Measure measure, int d, RngStream& stream) {
  return measure == Measure::kGaussian ? sample_gaussian(d, stream) : sample_haar(d, stream);
}

/// Monte Carlo estimate of a moment tensor with per-entry standard errors.
/// Flattening follows DeltaTensor: slot 0 most significant.
struct TensorEstimate {
  int d = 0;
  int arity = 0;
  std::size_t trials = 0;
  std::vector<Complex> mean;
  std::vector<double> stderr_real;
  std::vector<double> stderr_imag;
};

/// E[σ^{⊗factors} ⊗ (σ*)^{⊗conjugates}] by Monte Carlo. Each σ contributes an
/// (upper, lower) slot pair; the unconjugated factors come first.
inline TensorEstimate tensor_moment(Measure measure, int d, int factors, int conjugates,
                                    std::size_t trials, RngStream& stream) {
  detail::require(d >= 1 && factors >= 0 && conjugates >= 0 && factors + conjugates >= 1,
                  "tensor_moment: bad shape");
  detail::require(trials >= 2, "tensor_moment: need at least two trials");
  const int arity = 2 * (factors + conjugates);
  detail::require_cap(arity * static_cast<long long>(std::ceil(std::log2(d + 1))), 28,
                      "tensor_moment size (bits)");
  auto kron_power = [d](const ComplexMatrix& s, int count, bool conj) {
    std::vector<Complex> v{Complex(1.0)};
    for (int f = 0; f < count; ++f) {
      std::vector<Complex> next;
      next.reserve(v.size() * d * d);
      for (const Complex& x : v)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) next.push_back(x * (conj ? std::conj(s(i, j)) : s(i, j)));
      v.swap(next);
    }
    return v;
  };
  std::size_t size = 1;
  for (int s = 0; s < arity; ++s) size *= static_cast<std::size_t>(d);
  std::vector<double> sum_re(size, 0.0), sum_im(size, 0.0), sq_re(size, 0.0), sq_im(size, 0.0);
  for (std::size_t t = 0; t < trials; ++t) {
    const ComplexMatrix s = sample(measure, d, stream);
    const std::vector<Complex> left = kron_power(s, factors, false);
    const std::vector<Complex> right = kron_power(s, conjugates, true);
    std::size_t flat = 0;
    for (const Complex& x : left) {
      for (const Complex& y : right) {
        const Complex v = x * y;
        sum_re[flat] += v.real();
        sum_im[flat] += v.imag();
        sq_re[flat] += v.real() * v.real();
        sq_im[flat] += v.imag() * v.imag();
        ++flat;
      }
    }
  }
  TensorEstimate out{d, arity, trials, std::vector<Complex>(size), std::vector<double>(size),
                     std::vector<double>(size)};
  const double n = static_cast<double>(trials);
  for (std::size_t i = 0; i < size; ++i) {
    const double mre = sum_re[i] / n;
    const double mim = sum_im[i] / n;
    out.mean[i] = Complex(mre, mim);
    const double var_re = std::max(0.0, (sq_re[i] - n * mre * mre) / (n - 1));
    const double var_im = std::max(0.0, (sq_im[i] - n * mim * mim) / (n - 1));
    out.stderr_real[i] = std::sqrt(var_re / n);
    out.stderr_imag[i] = std::sqrt(var_im / n);
  }
  return out;
}

/// E[σ⊗σ*], slots (i j)(k l).
inline TensorEstimate tensor_moment_2(Measure measure, int d, std::size_t trials, RngStream& stream) {
  return tensor_moment(measure, d, 1, 1, trials, stream);
}

/// E[σ⊗σ⊗σ*⊗σ*], slots (i j)(k l)(m n)(p q).
inline TensorEstimate tensor_moment_4(Measure measure, int d, std::size_t trials, RngStream& stream) {
  detail::require(d <= 4, "tensor_moment_4: d must be <= 4");
  return tensor_moment(measure, d, 2, 2, trials, stream);
}

/// Largest |estimate − exact| / SE over all entries, real and imaginary parts
/// separately (exact values are real). Entries with zero SE must match to 1e-12.
inline double max_standard_errors(const TensorEstimate& est, const std::vector<double>& exact) {
  detail::require(exact.size() == est.mean.size(), "max_standard_errors: size mismatch");
  double worst = 0.0;
  auto score = [](double diff, double se) {
    if (se == 0.0) return std::abs(diff) <= 1e-12 ? 0.0 : INFINITY;
    return std::abs(diff) / se;
  };
  for (std::size_t i = 0; i < exact.size(); ++i) {
    worst = std::max(worst, score(est.mean[i].real() - exact[i], est.stderr_real[i]));
    worst = std::max(worst, score(est.mean[i].imag(), est.stderr_imag[i]));
  }
  return worst;
}

/// E[σ⊗σ*] = (1/d) δ^{ik} δ_{jl}, both measures.
inline DeltaTensor cupcap_closed_form(int d) {
  DeltaTensor t(4);
  t.add_term(Rational(1, d), delta_patterns::cupcap());
  return t;
}

/// Gaussian E[σ⊗σ⊗σ*⊗σ*] = (1/d²)(cup1324 + cup1423).
inline DeltaTensor gaussian_fourth_moment_closed_form(int d) {
  DeltaTensor t(8);
  t.add_term(Rational(1, d * d), delta_patterns::cup1324());
  t.add_term(Rational(1, d * d), delta_patterns::cup1423());
  return t;
}

/// Haar E[σ⊗σ⊗σ*⊗σ*] = (1/(d²−1))(cup1324 + cup1423 − (1/d)(mix1 + mix2)), d >= 2.
inline DeltaTensor haar_fourth_moment_closed_form(int d) {
  detail::require(d >= 2, "haar fourth moment closed form needs d >= 2");
  const Rational base(1, d * d - 1);
  const Rational cross = -base / d;
  DeltaTensor t(8);
  t.add_term(base, delta_patterns::cup1324());
  t.add_term(base, delta_patterns::cup1423());
  t.add_term(cross, delta_patterns::mix1());
  t.add_term(cross, delta_patterns::mix2());
  return t;
}

/// Views an 8-slot moment tensor as an operator on (C^d)^{⊗4}: rows are the
/// upper slots (i,k,m,p), columns the lower slots (j,l,n,q).
inline Eigen::MatrixXd moment_operator(const DeltaTensor& t, int d) {
  detail::require(t.arity() == 8, "moment_operator: arity must be 8");
  const std::vector<double> dense = t.to_dense(d);
  const int side = d * d * d * d;
  Eigen::MatrixXd op(side, side);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          for (int m = 0; m < d; ++m)
            for (int n = 0; n < d; ++n)
              for (int p = 0; p < d; ++p)
                for (int q = 0; q < d; ++q) {
                  const std::size_t flat =
                      ((((((static_cast<std::size_t>(i) * d + j) * d + k) * d + l) * d + m) * d + n) * d + p) * d + q;
                  op(((i * d + k) * d + m) * d + p, ((j * d + l) * d + n) * d + q) = dense[flat];
                }
  return op;
}

/// Smallest eigenvalues of the two gaps in the semidefinite sandwich
///   (1/(1+1/d)) G ⪯ E_Haar ⪯ (1/(1−1/d)) G,   G = (1/d²)(cup1324 + cup1423).
struct SandwichGaps {
  double lower_gap_min_eigenvalue;  // of E_Haar − G/(1+1/d)
  double upper_gap_min_eigenvalue;  // of G/(1−1/d) − E_Haar
};

inline SandwichGaps haar_fourth_moment_sandwich(int d) {
  const Eigen::MatrixXd haar = moment_operator(haar_fourth_moment_closed_form(d), d);
  const Eigen::MatrixXd g = moment_operator(gaussian_fourth_moment_closed_form(d), d);
  const double dd = d;
  const Eigen::MatrixXd lower = haar - g / (1.0 + 1.0 / dd);
  const Eigen::MatrixXd upper = g / (1.0 - 1.0 / dd) - haar;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> lo(lower, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> hi(upper, Eigen::EigenvaluesOnly);
  return {lo.eigenvalues().minCoeff(), hi.eigenvalues().minCoeff()};
}

}  // namespace algperm
