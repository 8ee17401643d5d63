#include "pdcone/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rng.hpp"

namespace pdcone {

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), a_(n * n) {}

ComplexMatrix::ComplexMatrix(std::size_t n, std::vector<cplx> entries) : n_(n), a_(std::move(entries)) {
  if (a_.size() != n * n) {
    std::ostringstream msg;
    msg << "matrix of dim " << n << " needs " << n * n << " entries, got " << a_.size();
    throw DimensionError(msg.str());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> d) {
  return diagonal(std::span<const double>(d.begin(), d.size()));
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> x) {
  ComplexMatrix m(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) m(i, j) = x[i] * std::conj(x[j]);
  return m;
}

ComplexMatrix ComplexMatrix::from_columns(const std::vector<CVector>& cols) {
  const std::size_t n = cols.size();
  ComplexMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (cols[j].size() != n) throw DimensionError("from_columns: column length differs from column count");
    for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

CVector ComplexMatrix::column(std::size_t j) const {
  CVector c(n_);
  for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
  return c;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix m(*this);
  for (auto& z : m.a_) z = std::conj(z);
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : a_) m = std::max(m, std::abs(z));
  return m;
}

static void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionError(msg.str());
  }
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_dim(n_, o.n_, "matrix addition");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_dim(n_, o.n_, "matrix subtraction");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : a_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.n_, b.n_, "matrix product");
  const std::size_t n = a.n_;
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

CVector operator*(const ComplexMatrix& a, std::span<const cplx> x) {
  require_same_dim(a.n_, x.size(), "matrix-vector product");
  CVector y(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i)
    for (std::size_t j = 0; j < a.n_; ++j) y[i] += a(i, j) * x[j];
  return y;
}

cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "trace_product");
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
  return t;
}

cplx quadratic_form(const ComplexMatrix& a, std::span<const cplx> x) {
  const CVector ax = a * x;
  cplx s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += ax[i] * std::conj(x[i]);
  return s;
}

double vector_norm(std::span<const cplx> x) {
  double s = 0.0;
  for (const auto& z : x) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix lu = a;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  const double scale = a.max_abs();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(lu(r, col)) > std::abs(lu(piv, col))) piv = r;
    if (!(std::abs(lu(piv, col)) > 1e-14 * scale))
      throw DomainError("inverse: matrix is numerically singular");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu(piv, j), lu(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const cplx d = lu(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      lu(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const cplx f = lu(r, col);
      if (f == cplx(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        lu(r, j) -= f * lu(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------

HermitianMatrix::HermitianMatrix(ComplexMatrix a, Unchecked) : m_(std::move(a)) {}

HermitianMatrix HermitianMatrix::hermitian_part(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx z = 0.5 * (a(i, j) + std::conj(a(j, i)));
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return HermitianMatrix(std::move(h), Unchecked{});
}

HermitianMatrix::HermitianMatrix(ComplexMatrix a) {
  const double tol = 1e-12 * a.max_abs();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j) {
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) {
        std::ostringstream msg;
        msg << "matrix is not Hermitian: entry (" << i << "," << j << ") = " << a(i, j) << " but entry (" << j << ","
            << i << ") = " << a(j, i);
        throw DomainError(msg.str());
      }
    }
  m_ = hermitian_part(a).m_;
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.m_ + b.m_, HermitianMatrix::Unchecked{});
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.m_ - b.m_, HermitianMatrix::Unchecked{});
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix(a.m_ * cplx(s), HermitianMatrix::Unchecked{});
}

PDMatrix::PDMatrix(HermitianMatrix a) : HermitianMatrix(std::move(a)) {
  const auto e = eig_hermitian(*this);
  lambda_min_ = e.eigenvalues.empty() ? 0.0 : e.eigenvalues.front();
  lambda_max_ = e.eigenvalues.empty() ? 0.0 : e.eigenvalues.back();
  if (dim() == 0) throw DomainError("positive definite matrix must have dim >= 1");
  if (!(lambda_min_ > kPdThreshold * std::max(1.0, lambda_max_))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "matrix is not positive definite: lambda_min = " << lambda_min_ << ", lambda_max = " << lambda_max_;
    throw DomainError(msg.str());
  }
}

// ---------------------------------------------------------------------------

ComplexMatrix EigenDecomposition::reconstruct() const {
  const std::size_t n = eigenvectors.dim();
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += eigenvectors(i, k) * eigenvalues[k] * std::conj(eigenvectors(j, k));
      m(i, j) = s;
    }
  return m;
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kJacobiTol = 1e-14;

double off_diagonal_mass(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Zeroes a(p,q) with J = D R, D = diag(1, e^{-i arg a_pq}) acting on (p,q)
// and R the real symmetric Jacobi rotation of the phase-rotated block.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const cplx g = a(p, q);
  const double ag = std::abs(g);
  if (ag == 0.0) return;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * ag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const cplx ph = std::conj(g / ag);
  const cplx jpp = c, jpq = s, jqp = -s * ph, jqq = c * ph;

  const std::size_t n = a.dim();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p), akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k), aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v(k, p), vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
}

}  // namespace

EigenDecomposition eig_hermitian(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double norm = a.frobenius_norm();

  bool converged = false;
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    if (off_diagonal_mass(a) <= kJacobiTol * norm) {
      converged = true;
      break;
    }
    if (sweep == kMaxSweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "eig_hermitian: no convergence after " << kMaxSweeps << " sweeps (dim " << n << ")";
    throw ConvergenceError(msg.str());
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition e;
  e.eigenvalues.resize(n);
  e.eigenvectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    e.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) e.eigenvectors(i, k) = v(i, order[k]);
  }
  return e;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix d(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      d(i, n + j) = a(i, j);
      d(n + j, i) = std::conj(a(i, j));
    }
  const auto e = eig_hermitian(HermitianMatrix::hermitian_part(d));
  std::vector<double> s(e.eigenvalues.begin() + static_cast<std::ptrdiff_t>(n), e.eigenvalues.end());
  for (auto& x : s) x = std::max(x, 0.0);
  return s;
}

HermitianMatrix apply_function(const ScalarFunction& f, const EigenDecomposition& e) {
  const std::size_t n = e.eigenvalues.size();
  std::vector<double> fv(n);
  for (std::size_t k = 0; k < n; ++k) {
    fv[k] = f(e.eigenvalues[k]);
    if (!std::isfinite(fv[k])) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "apply_function: eigenvalue " << e.eigenvalues[k] << " is outside the domain of the function";
      throw DomainError(msg.str());
    }
  }
  const ComplexMatrix& u = e.eigenvectors;
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += u(i, k) * fv[k] * std::conj(u(j, k));
      m(i, j) = s;
      m(j, i) = std::conj(s);
    }
  return HermitianMatrix::hermitian_part(m);
}

HermitianMatrix apply_function(const ScalarFunction& f, const HermitianMatrix& a) {
  return apply_function(f, eig_hermitian(a));
}

PDMatrix matrix_exp(const HermitianMatrix& h) {
  return PDMatrix(apply_function([](double x) { return std::exp(x); }, h));
}

HermitianMatrix matrix_log(const PDMatrix& a) {
  return apply_function([](double x) { return x > 0.0 ? std::log(x) : std::nan(""); }, a);
}

PDMatrix matrix_sqrt(const PDMatrix& a) {
  return PDMatrix(apply_function([](double x) { return x >= 0.0 ? std::sqrt(x) : std::nan(""); }, a));
}

PDMatrix matrix_inverse(const PDMatrix& a) {
  return PDMatrix(apply_function([](double x) { return 1.0 / x; }, a));
}

double uinorm(NormKind kind, const ComplexMatrix& a) {
  switch (kind) {
    case NormKind::Frobenius:
      return a.frobenius_norm();
    case NormKind::Trace: {
      const auto s = singular_values(a);
      return std::accumulate(s.begin(), s.end(), 0.0);
    }
    case NormKind::Operator: {
      const auto s = singular_values(a);
      return s.empty() ? 0.0 : s.back();
    }
  }
  return 0.0;
}

PDMatrix whiten(const PDMatrix& x, const PDMatrix& y) {
  require_same_dim(x.dim(), y.dim(), "whiten");
  const auto yis = apply_function([](double v) { return 1.0 / std::sqrt(v); }, y).matrix();
  return PDMatrix(HermitianMatrix::hermitian_part(yis * x.matrix() * yis));
}

double logdet(const PDMatrix& a) {
  const auto e = eig_hermitian(a);
  double s = 0.0;
  for (double l : e.eigenvalues) s += std::log(l);
  return s;
}

bool loewner_leq(const HermitianMatrix& b, const HermitianMatrix& c, double tol) {
  require_same_dim(b.dim(), c.dim(), "loewner_leq");
  const HermitianMatrix d = c - b;
  const auto e = eig_hermitian(d);
  if (e.eigenvalues.empty()) return true;
  return e.eigenvalues.front() >= -tol * std::max(1.0, d.matrix().frobenius_norm());
}

// ---------------------------------------------------------------------------

ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
  detail::Rng rng(seed, detail::Stream::Unitary);
  std::vector<CVector> cols(dim, CVector(dim));
  for (auto& c : cols)
    for (auto& z : c) z = rng.complex_normal();
  for (std::size_t j = 0; j < dim; ++j) {
    // Two Gram-Schmidt passes keep the columns orthonormal to ~1e-16.
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) {
        cplx proj = 0.0;
        for (std::size_t i = 0; i < dim; ++i) proj += std::conj(cols[k][i]) * cols[j][i];
        for (std::size_t i = 0; i < dim; ++i) cols[j][i] -= proj * cols[k][i];
      }
    const double nrm = vector_norm(cols[j]);
    for (auto& z : cols[j]) z /= nrm;
  }
  return ComplexMatrix::from_columns(cols);
}

HermitianMatrix random_hermitian_with_spectrum(std::span<const double> spectrum, std::uint64_t seed) {
  // U (l I) U* = l I; skip the rotation so scalar matrices come out exact.
  if (!spectrum.empty() && std::all_of(spectrum.begin(), spectrum.end(), [&](double l) { return l == spectrum[0]; }))
    return HermitianMatrix(ComplexMatrix::diagonal(spectrum));
  EigenDecomposition e;
  e.eigenvalues.assign(spectrum.begin(), spectrum.end());
  e.eigenvectors = random_unitary(spectrum.size(), seed);
  return HermitianMatrix::hermitian_part(e.reconstruct());
}

PDMatrix random_pd(std::size_t dim, std::uint64_t seed, double lo, double hi) {
  if (dim < 1) throw PreconditionError("random_pd: dim must be >= 1");
  if (!(lo > 0.0) || !(lo <= hi) || !std::isfinite(hi)) {
    std::ostringstream msg;
    msg << "random_pd: invalid spectrum range [" << lo << ", " << hi << "]";
    throw PreconditionError(msg.str());
  }
  detail::Rng rng(seed, detail::Stream::Spectrum);
  std::vector<double> spec(dim);
  for (auto& l : spec) l = lo + (hi - lo) * rng.uniform();
  return PDMatrix(random_hermitian_with_spectrum(spec, seed));
}

HermitianMatrix random_hermitian(std::size_t dim, std::uint64_t seed) {
  detail::Rng rng(seed, detail::Stream::Hermitian);
  ComplexMatrix g(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  return HermitianMatrix::hermitian_part(g);
}

CVector random_unit_vector(std::size_t dim, std::uint64_t seed) {
  detail::Rng rng(seed, detail::Stream::Vector);
  CVector x(dim);
  for (auto& z : x) z = rng.complex_normal();
  const double nrm = vector_norm(x);
  for (auto& z : x) z /= nrm;
  return x;
}

}  // namespace pdcone
