#pragma once

// Dense complex matrices on C^n, Hermitian functional calculus and the
// Loewner order. Everything here is sized for n <= 64.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pdcone/errors.hpp"

namespace pdcone {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  // n x n zero matrix.
  explicit ComplexMatrix(std::size_t n);
  // Row-major entries; throws DimensionError unless entries.size() == n*n.
  ComplexMatrix(std::size_t n, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> d);
  static ComplexMatrix diagonal(std::initializer_list<double> d);
  // |x><x|
  static ComplexMatrix outer(std::span<const cplx> x);
  // Columns are the given vectors.
  static ComplexMatrix from_columns(const std::vector<CVector>& cols);

  std::size_t dim() const { return n_; }
  const std::vector<cplx>& entries() const { return a_; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  CVector column(std::size_t j) const;

  ComplexMatrix adjoint() const;
  ComplexMatrix conj() const;
  ComplexMatrix transpose() const;
  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend CVector operator*(const ComplexMatrix& a, std::span<const cplx> x);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

// tr(A B) without forming the product.
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);
// <A x, x>
cplx quadratic_form(const ComplexMatrix& a, std::span<const cplx> x);
double vector_norm(std::span<const cplx> x);
// General inverse by Gaussian elimination with partial pivoting.
ComplexMatrix inverse(const ComplexMatrix& a);

class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  // Validates conjugate symmetry within 1e-12 * max|a_ij|, then stores the
  // exact Hermitian part (A + A*)/2. Throws DomainError otherwise.
  explicit HermitianMatrix(ComplexMatrix a);

  // Hermitian part of a matrix that is Hermitian up to roundoff by
  // construction (U f(L) U*, T A T*, ...). No tolerance check.
  static HermitianMatrix hermitian_part(const ComplexMatrix& a);
  static HermitianMatrix identity(std::size_t n) { return HermitianMatrix(ComplexMatrix::identity(n)); }
  static HermitianMatrix diagonal(std::initializer_list<double> d) {
    return HermitianMatrix(ComplexMatrix::diagonal(d));
  }

  std::size_t dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  // Real by construction.
  double trace() const { return m_.trace().real(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);

 private:
  struct Unchecked {};
  HermitianMatrix(ComplexMatrix a, Unchecked);
  ComplexMatrix m_;
};

// Smallest eigenvalue must exceed 1e-12 * max(1, lambda_max).
inline constexpr double kPdThreshold = 1e-12;

class PDMatrix : public HermitianMatrix {
 public:
  PDMatrix() = default;
  // Throws DomainError naming lambda_min when the matrix is not PD.
  explicit PDMatrix(HermitianMatrix a);
  explicit PDMatrix(ComplexMatrix a) : PDMatrix(HermitianMatrix(std::move(a))) {}

  static PDMatrix identity(std::size_t n) { return PDMatrix(ComplexMatrix::identity(n)); }
  static PDMatrix diagonal(std::initializer_list<double> d) { return PDMatrix(ComplexMatrix::diagonal(d)); }
  static PDMatrix diagonal(std::span<const double> d) { return PDMatrix(ComplexMatrix::diagonal(d)); }

  double lambda_min() const { return lambda_min_; }
  double lambda_max() const { return lambda_max_; }

 private:
  double lambda_min_ = 0.0;
  double lambda_max_ = 0.0;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns

  ComplexMatrix reconstruct() const;
};

// Cyclic complex Jacobi. Converged when the off-diagonal Frobenius mass is
// <= 1e-14 ||A||_F; throws ConvergenceError after 100 sweeps.
EigenDecomposition eig_hermitian(const HermitianMatrix& a);

// Ascending singular values, from the Hermitian dilation [[0, A], [A*, 0]].
std::vector<double> singular_values(const ComplexMatrix& a);

using ScalarFunction = std::function<double(double)>;

// U f(L) U*. Throws DomainError naming the first eigenvalue on which f is
// not finite.
HermitianMatrix apply_function(const ScalarFunction& f, const HermitianMatrix& a);
HermitianMatrix apply_function(const ScalarFunction& f, const EigenDecomposition& e);

// exp(H) is PD for every Hermitian H.
PDMatrix matrix_exp(const HermitianMatrix& h);
HermitianMatrix matrix_log(const PDMatrix& a);
PDMatrix matrix_sqrt(const PDMatrix& a);
PDMatrix matrix_inverse(const PDMatrix& a);

enum class NormKind { Trace, Frobenius, Operator };

double uinorm(NormKind kind, const ComplexMatrix& a);
inline double uinorm(NormKind kind, const HermitianMatrix& a) { return uinorm(kind, a.matrix()); }

// Y^{-1/2} X Y^{-1/2}
PDMatrix whiten(const PDMatrix& x, const PDMatrix& y);

double logdet(const PDMatrix& a);

// lambda_min(C - B) >= -tol * max(1, ||C - B||_F)
bool loewner_leq(const HermitianMatrix& b, const HermitianMatrix& c, double tol);

// Haar-like random unitary: modified Gram-Schmidt on a seeded complex
// Gaussian matrix (R's diagonal is positive, which fixes the phases).
ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed);
// U diag(lambda) U* with lambda uniform in [lo, hi].
PDMatrix random_pd(std::size_t dim, std::uint64_t seed, double lo, double hi);
// U diag(spectrum) U* with U = random_unitary(dim, seed).
HermitianMatrix random_hermitian_with_spectrum(std::span<const double> spectrum, std::uint64_t seed);
// Entries i.i.d. complex Gaussian, Hermitian part taken.
HermitianMatrix random_hermitian(std::size_t dim, std::uint64_t seed);
// Uniformly random unit vector in C^n.
CVector random_unit_vector(std::size_t dim, std::uint64_t seed);

}  // namespace pdcone
