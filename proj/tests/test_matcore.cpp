#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pdcone/matcore.hpp"

using namespace pdcone;

namespace {

const cplx I{0.0, 1.0};

double residual(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).frobenius_norm(); }

// Lower Cholesky factor, used as an independent route to the spectrum of X Y^{-1}.
ComplexMatrix cholesky(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix l(n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / l(j, j).real();
    }
  }
  return l;
}

}  // namespace

TEST_CASE("eig_hermitian on hand-derived spectra") {
  SUBCASE("real symmetric [[2,1],[1,2]]") {
    const auto e = eig_hermitian(HermitianMatrix(ComplexMatrix(2, {2, 1, 1, 2})));
    CHECK(e.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-14));
  }
  SUBCASE("identity") {
    const auto e = eig_hermitian(HermitianMatrix::identity(3));
    for (double l : e.eigenvalues) CHECK(l == 1.0);
    CHECK(residual(e.eigenvectors.adjoint() * e.eigenvectors, ComplexMatrix::identity(3)) <= 1e-14);
  }
  SUBCASE("Pauli-Y") {
    const auto e = eig_hermitian(HermitianMatrix(ComplexMatrix(2, {0, -I, I, 0})));
    CHECK(e.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(residual(e.reconstruct(), ComplexMatrix(2, {0, -I, I, 0})) <= 1e-14);
  }
  SUBCASE("zero matrix and 1x1") {
    const auto z = eig_hermitian(HermitianMatrix(ComplexMatrix(3)));
    for (double l : z.eigenvalues) CHECK(l == 0.0);
    const auto s = eig_hermitian(HermitianMatrix(ComplexMatrix(1, {-4.5})));
    CHECK(s.eigenvalues[0] == -4.5);
  }
}

TEST_CASE("eig_hermitian reconstruction and orthonormality on random inputs") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 1 + seed % 8;
    const auto a = random_hermitian(n, seed);
    const auto e = eig_hermitian(a);
    CHECK(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
    CHECK(residual(e.reconstruct(), a.matrix()) <= 1e-10 * a.matrix().frobenius_norm());
    CHECK(residual(e.eigenvectors.adjoint() * e.eigenvectors, ComplexMatrix::identity(n)) <= 1e-10);
  }
}

TEST_CASE("eig_hermitian handles degenerate spectra") {
  const double spec[] = {1.0, 1.0, 2.0};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = random_hermitian_with_spectrum(spec, seed);
    const auto e = eig_hermitian(a);
    CHECK(e.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(e.eigenvalues[2] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(residual(e.reconstruct(), a.matrix()) <= 1e-10 * a.matrix().frobenius_norm());
  }
}

TEST_CASE("apply_function") {
  SUBCASE("log of diag(1, e)") {
    const auto r = apply_function([](double x) { return std::log(x); }, HermitianMatrix::diagonal({1.0, std::numbers::e}));
    CHECK(std::abs(r(0, 0) - 0.0) <= 1e-15);
    CHECK(std::abs(r(1, 1) - 1.0) <= 1e-15);
    CHECK(std::abs(r(0, 1)) <= 1e-15);
  }
  SUBCASE("square of [[2,1],[1,2]] is [[5,4],[4,5]]") {
    const auto r = apply_function([](double x) { return x * x; }, HermitianMatrix(ComplexMatrix(2, {2, 1, 1, 2})));
    CHECK(residual(r.matrix(), ComplexMatrix(2, {5, 4, 4, 5})) <= 1e-13);
  }
  SUBCASE("identity function returns the input") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto a = random_hermitian(4, seed);
      const auto r = apply_function([](double x) { return x; }, a);
      CHECK(residual(r.matrix(), a.matrix()) <= 1e-12 * std::max(1.0, a.matrix().frobenius_norm()));
    }
  }
  SUBCASE("result commutes with the argument") {
    const auto a = random_pd(5, 3, 0.5, 4.0);
    const auto r = apply_function([](double x) { return std::sqrt(x); }, a);
    const double comm = residual(r.matrix() * a.matrix(), a.matrix() * r.matrix());
    CHECK(comm <= 1e-9 * a.matrix().frobenius_norm() * 2.0);
  }
  SUBCASE("log of a non-positive eigenvalue names the eigenvalue") {
    const auto a = HermitianMatrix::diagonal({2.0, -3.0});
    try {
      apply_function([](double x) { return std::log(x); }, a);
      FAIL("expected DomainError");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("-3") != std::string::npos);
    }
  }
}

TEST_CASE("exp and log compose to the identity on PD matrices") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto a = random_pd(1 + seed % 6, seed, 0.1, 10.0);
    const auto back = matrix_exp(matrix_log(a));
    CHECK(residual(back.matrix(), a.matrix()) <= 1e-8 * a.matrix().frobenius_norm());
  }
}

TEST_CASE("uinorm") {
  CHECK(uinorm(NormKind::Trace, ComplexMatrix::diagonal({2.0, -3.0})) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(uinorm(NormKind::Frobenius, ComplexMatrix(2, {1, 1, 1, 1})) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(uinorm(NormKind::Operator, ComplexMatrix::diagonal({2.0, -3.0})) == doctest::Approx(3.0).epsilon(1e-14));

  SUBCASE("norm axioms and unitary invariance on random samples") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const std::size_t n = 1 + seed % 6;
      ComplexMatrix a = random_hermitian(n, seed).matrix() * random_unitary(n, seed + 1000);  // not Hermitian
      const ComplexMatrix b = random_hermitian(n, seed + 77).matrix();
      const auto u = random_unitary(n, seed + 2000);
      const auto v = random_unitary(n, seed + 3000);
      for (auto kind : {NormKind::Trace, NormKind::Frobenius, NormKind::Operator}) {
        const double na = uinorm(kind, a);
        CHECK(std::abs(uinorm(kind, u * a * v) - na) <= 1e-9 * na);
        CHECK(uinorm(kind, a * cplx(-2.5, 1.0)) == doctest::Approx(na * std::abs(cplx(-2.5, 1.0))).epsilon(1e-12));
        CHECK(uinorm(kind, a + b) <= uinorm(kind, a) + uinorm(kind, b) + 1e-12);
      }
    }
  }
}

TEST_CASE("whiten") {
  SUBCASE("X = Y gives the identity") {
    const auto x = random_pd(4, 11, 0.2, 5.0);
    CHECK(residual(whiten(x, x).matrix(), ComplexMatrix::identity(4)) <= 1e-12);
  }
  SUBCASE("Y = I is a no-op") {
    const auto w = whiten(PDMatrix::diagonal({4.0, 9.0}), PDMatrix::identity(2));
    CHECK(residual(w.matrix(), ComplexMatrix::diagonal({4.0, 9.0})) <= 1e-14);
  }
  SUBCASE("1x1 scalar quotient") { CHECK(whiten(PDMatrix::diagonal({8.0}), PDMatrix::diagonal({2.0}))(0, 0).real() == doctest::Approx(4.0)); }
  SUBCASE("spectrum matches X Y^{-1} via a Cholesky similarity") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const std::size_t n = 1 + seed % 6;
      const auto x = random_pd(n, 2 * seed, 0.1, 10.0);
      const auto y = random_pd(n, 2 * seed + 1, 0.1, 10.0);
      const auto l = cholesky(y.matrix());
      const auto li = inverse(l);
      const auto oracle = eig_hermitian(HermitianMatrix::hermitian_part(li * x.matrix() * li.adjoint())).eigenvalues;
      const auto got = eig_hermitian(whiten(x, y)).eigenvalues;
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(got[i] - oracle[i]) <= 1e-9 * std::max(1.0, oracle.back()));
    }
  }
  SUBCASE("dimension mismatch") { CHECK_THROWS_AS(whiten(PDMatrix::identity(2), PDMatrix::identity(3)), DimensionError); }
}

TEST_CASE("logdet") {
  CHECK(logdet(PDMatrix::identity(5)) == doctest::Approx(0.0));
  CHECK(logdet(PDMatrix::diagonal({std::numbers::e, std::exp(2.0)})) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(std::abs(logdet(PDMatrix::diagonal({2.0, 0.5}))) <= 1e-15);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = random_pd(1 + seed % 6, seed, 0.1, 10.0);
    CHECK(std::abs(logdet(a) - matrix_log(a).trace()) <= 1e-9);
  }
}

TEST_CASE("loewner_leq") {
  CHECK(loewner_leq(HermitianMatrix::diagonal({1, 1}), HermitianMatrix::diagonal({2, 3}), 0.0));
  CHECK_FALSE(loewner_leq(HermitianMatrix::diagonal({2, 0.5}), HermitianMatrix::identity(2), 0.0));
  const auto b = random_hermitian(3, 5);
  CHECK(loewner_leq(b, b, 0.0));

  SUBCASE("partial order on constructed samples") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const std::size_t n = 1 + seed % 5;
      const auto a = random_hermitian(n, seed);
      const auto p1 = random_pd(n, seed + 100, 0.01, 2.0);
      const auto p2 = random_pd(n, seed + 200, 0.01, 2.0);
      const auto b1 = a + p1;
      const auto c1 = b1 + p2;
      CHECK(loewner_leq(a, b1, 1e-12));
      CHECK(loewner_leq(b1, c1, 1e-12));
      CHECK(loewner_leq(a, c1, 1e-12));  // transitive
      CHECK_FALSE(loewner_leq(b1, a, 1e-12));  // antisymmetric: a != b1
      CHECK(loewner_leq(a, a + 1e-15 * HermitianMatrix::identity(n), 1e-12));
      CHECK(loewner_leq(a + 1e-15 * HermitianMatrix::identity(n), a, 1e-12));
    }
  }
}

TEST_CASE("random_pd") {
  const auto a = random_pd(3, 7, 0.5, 5.0);
  const auto b = random_pd(3, 7, 0.5, 5.0);
  CHECK(a.matrix() == b.matrix());
  CHECK_FALSE(a.matrix() == random_pd(3, 8, 0.5, 5.0).matrix());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = random_pd(1 + seed % 7, seed, 0.3, 4.0);
    CHECK(loewner_leq(0.3 * HermitianMatrix::identity(p.dim()), p, 1e-12));
    CHECK(loewner_leq(p, 4.0 * HermitianMatrix::identity(p.dim()), 1e-12));
  }
  const auto forced = random_pd(1, 99, 2.0, 2.0);
  CHECK(std::abs(forced(0, 0) - 2.0) <= 1e-15);
  CHECK_THROWS_AS(random_pd(2, 1, 0.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(random_pd(2, 1, 2.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(random_pd(0, 1, 1.0, 2.0), PreconditionError);
}

TEST_CASE("random_unitary is unitary") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 1 + seed % 8;
    const auto u = random_unitary(n, seed);
    CHECK(residual(u.adjoint() * u, ComplexMatrix::identity(n)) <= 1e-13);
  }
}

TEST_CASE("matrix type invariants") {
  CHECK_THROWS_AS(ComplexMatrix(2, {1, 2, 3}), DimensionError);
  CHECK_THROWS_AS(HermitianMatrix(ComplexMatrix(2, {2, I, I, 2})), DomainError);
  CHECK_THROWS_AS(HermitianMatrix(ComplexMatrix(1, {cplx(1.0, 0.5)})), DomainError);
  // Tiny asymmetry within tolerance is symmetrized exactly.
  const HermitianMatrix h(ComplexMatrix(2, {2, cplx(1.0, 1e-14), cplx(1.0, 1e-14), 2}));
  CHECK(h(0, 1) == std::conj(h(1, 0)));
  CHECK_THROWS_AS(PDMatrix::diagonal({1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(PDMatrix::diagonal({1.0, -1.0}), DomainError);
  CHECK_THROWS_AS(PDMatrix::diagonal({1e6, 1e-7}), DomainError);  // below 1e-12 * lambda_max
  CHECK_NOTHROW(PDMatrix::diagonal({1.0, 1e-11}));
}

TEST_CASE("singular_values and inverse") {
  const auto s = singular_values(ComplexMatrix(2, {0, 2, -3, 0}));
  CHECK(s[0] == doctest::Approx(2.0));
  CHECK(s[1] == doctest::Approx(3.0));
  const auto t = random_hermitian(4, 9).matrix() + ComplexMatrix::identity(4) * cplx(0.0, 3.0);
  CHECK(residual(inverse(t) * t, ComplexMatrix::identity(4)) <= 1e-12);
  CHECK_THROWS_AS(inverse(ComplexMatrix(2, {1, 2, 2, 4})), DomainError);
}
