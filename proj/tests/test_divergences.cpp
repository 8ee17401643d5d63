#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pdcone/divergences.hpp"

using namespace pdcone;

namespace {

const std::vector<std::string> kSpecs = {
    "bregman:power:2",  "bregman:power:1.5",   "bregman:entropy",   "bregman:neglog",
    "bregman:logaffine:-2:1:3", "jensen:0.3:power:2", "jensen:0.5:neglog", "jensen:0.7:entropy",
    "gdm:trace:stein",  "gdm:frobenius:stein", "gdm:operator:logdetalpha:0.5", "stein",
    "umegaki",          "logdetalpha:0.5",     "logdetalpha:0.3"};

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)) + 1e-12;
}

// Scalar divergences, written out from the defining formulas.
double scalar_bregman(const ConvexGenerator& f, double x, double y) { return f.eval(x) - f.eval(y) - f.deriv(y) * (x - y); }
double scalar_jensen(const ConvexGenerator& f, double l, double x, double y) {
  return l * f.eval(x) + (1 - l) * f.eval(y) - f.eval(l * x + (1 - l) * y);
}

PDMatrix congruence(const ComplexMatrix& u, const PDMatrix& a) {
  return PDMatrix(HermitianMatrix::hermitian_part(u * a.matrix() * u.adjoint()));
}

}  // namespace

TEST_CASE("bregman examples") {
  CHECK(bregman(power_generator(2), PDMatrix::diagonal({3, 1}), PDMatrix::identity(2)) == doctest::Approx(4.0).epsilon(1e-14));
  const auto x = random_pd(3, 5, 0.2, 4.0);
  CHECK(bregman(neglog_generator(), x, x) == 0.0);
  CHECK(bregman(neglog_generator(), PDMatrix::diagonal({2, 1}), PDMatrix::identity(2)) ==
        doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("jensen examples") {
  const auto x = random_pd(3, 5, 0.2, 4.0);
  CHECK(jensen(entropy_generator(), 0.4, x, x) == 0.0);
  CHECK(jensen(neglog_generator(), 0.5, PDMatrix::diagonal({4}), PDMatrix::diagonal({1})) ==
        doctest::Approx(std::log(2.5) - 0.5 * std::log(4.0)).epsilon(1e-14));
  SUBCASE("PSD boundary with a generator that has a finite limit at 0") {
    const auto x = HermitianMatrix::diagonal({2, 0});
    const auto y = HermitianMatrix::diagonal({0, 2});
    CHECK(jensen(power_generator(2), 0.5, x, y) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(jensen(neglog_generator(), 0.5, x, y), DomainError);
  }
  CHECK_THROWS_AS(jensen(power_generator(2), 1.0, x, x), PreconditionError);
  CHECK_THROWS_AS(jensen(power_generator(2), 0.0, x, x), PreconditionError);
}

TEST_CASE("bregman on the PSD boundary needs both limits") {
  const auto x = HermitianMatrix::diagonal({3, 0});
  const auto y = HermitianMatrix::diagonal({1, 0});
  // power(2): tr (X - Y)^2 = 4.
  CHECK(bregman(power_generator(2), x, y) == doctest::Approx(4.0));
  CHECK_THROWS_AS(bregman(entropy_generator(), x, y), DomainError);
  CHECK_THROWS_AS(bregman(neglog_generator(), x, y), DomainError);
  CHECK_THROWS_AS(bregman(power_generator(2), HermitianMatrix::diagonal({1, -1}), y), DomainError);
}

TEST_CASE("symmetrized_bregman") {
  const auto a = random_pd(3, 1, 0.2, 4.0);
  CHECK(symmetrized_bregman(power_generator(2), a, a) == 0.0);
  CHECK(symmetrized_bregman(power_generator(2), PDMatrix::diagonal({3, 1}), PDMatrix::identity(2)) ==
        doctest::Approx(8.0).epsilon(1e-14));
  CHECK(symmetrized_bregman(neglog_generator(), PDMatrix::diagonal({4, 1}), PDMatrix::identity(2)) ==
        doctest::Approx(2.25).epsilon(1e-14));
  for (std::uint64_t s = 0; s < 40; ++s) {
    const auto x = random_pd(1 + s % 5, 2 * s, 0.1, 10.0);
    const auto y = random_pd(1 + s % 5, 2 * s + 1, 0.1, 10.0);
    for (const auto& f : {power_generator(2), entropy_generator(), neglog_generator()}) {
      CHECK(close_rel(symmetrized_bregman(f, x, y), bregman(f, x, y) + bregman(f, y, x), 1e-8));
    }
  }
}

TEST_CASE("gdm examples") {
  const auto x = random_pd(3, 9, 0.2, 4.0);
  CHECK(gdm(NormKind::Trace, stein_gauge(), x, x) <= 1e-14);
  CHECK(gdm(NormKind::Trace, stein_gauge(), PDMatrix::diagonal({2, 1}), PDMatrix::identity(2)) ==
        doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-14));
  CHECK(gdm(NormKind::Trace, logdet_alpha_gauge(0.5), PDMatrix::diagonal({4}), PDMatrix::diagonal({1})) ==
        doctest::Approx(0.22314355131420976).epsilon(1e-13));
  SUBCASE("equals N applied to g of the whitened matrix") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto a = random_pd(1 + s % 5, 2 * s, 0.1, 10.0);
      const auto b = random_pd(1 + s % 5, 2 * s + 1, 0.1, 10.0);
      const auto g = logdet_alpha_gauge(0.3);
      const auto gw = apply_function(g.eval, whiten(a, b));
      for (auto n : {NormKind::Trace, NormKind::Frobenius, NormKind::Operator})
        CHECK(close_rel(gdm(n, g, a, b), uinorm(n, gw), 1e-10));
    }
  }
}

TEST_CASE("closed forms") {
  CHECK(stein_loss(PDMatrix::diagonal({2, 1}), PDMatrix::identity(2)) == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-14));
  CHECK(stein_loss(PDMatrix::identity(2), PDMatrix::diagonal({2, 2})) == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-14));
  CHECK(umegaki(PDMatrix::identity(2), PDMatrix::diagonal({std::numbers::e, 1})) ==
        doctest::Approx(std::numbers::e - 2.0).epsilon(1e-14));
  CHECK(umegaki(PDMatrix::diagonal({2}), PDMatrix::diagonal({1})) == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-14));
  CHECK(logdet_alpha(0.5, PDMatrix::diagonal({4}), PDMatrix::diagonal({1})) == doctest::Approx(std::log(1.25)).epsilon(1e-14));
  CHECK(logdet_alpha(0.5, PDMatrix::diagonal({4, 1}), PDMatrix::diagonal({1, 4})) ==
        doctest::Approx(2.0 * std::log(2.5) - std::log(4.0)).epsilon(1e-14));
  const auto x = random_pd(4, 2, 0.1, 10.0);
  CHECK(stein_loss(x, x) <= 1e-12);
  CHECK(umegaki(x, x) <= 1e-12);
  CHECK(logdet_alpha(0.3, x, x) <= 1e-12);
  CHECK_THROWS_AS(logdet_alpha(1.5, x, x), PreconditionError);
}

TEST_CASE("closed-form equivalences on random pairs") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const std::size_t n = 1 + s % 6;
    const auto x = random_pd(n, 2 * s, 0.1, 10.0);
    const auto y = random_pd(n, 2 * s + 1, 0.1, 10.0);
    const double st = stein_loss(x, y);
    CHECK(close_rel(st, bregman(neglog_generator(), x, y), 1e-8));
    CHECK(close_rel(st, gdm(NormKind::Trace, stein_gauge(), x, y), 1e-8));
    CHECK(close_rel(umegaki(x, y), bregman(entropy_generator(), x, y), 1e-8));
    for (double l : {0.3, 0.5, 0.7}) {
      const double ld = logdet_alpha(l, x, y);
      CHECK(close_rel(ld, jensen(neglog_generator(), l, x, y), 1e-8));
      CHECK(close_rel(ld, gdm(NormKind::Trace, logdet_alpha_gauge(l), x, y), 1e-8));
    }
  }
}

TEST_CASE("nonnegativity and invariances for every spec") {
  for (const auto& text : kSpecs) {
    CAPTURE(text);
    const auto spec = DivergenceSpec::parse(text);
    for (std::uint64_t s = 0; s < 25; ++s) {
      const std::size_t n = 1 + s % 6;
      const auto x = random_pd(n, 2 * s, 0.1, 10.0);
      const auto y = random_pd(n, 2 * s + 1, 0.1, 10.0);
      const double d = evaluate(spec, x, y);
      CHECK(d >= 0.0);
      CHECK(d > 1e-8);
      CHECK(evaluate(spec, x, x) <= 1e-8);

      const auto u = random_unitary(n, 1000 + s);
      CHECK(close_rel(evaluate(spec, congruence(u, x), congruence(u, y)), d, 1e-8));
      const auto xc = PDMatrix(HermitianMatrix(x.matrix().conj()));
      const auto yc = PDMatrix(HermitianMatrix(y.matrix().conj()));
      CHECK(close_rel(evaluate(spec, xc, yc), d, 1e-8));
    }
  }
}

TEST_CASE("affine shifts of the generator do not change Bregman or Jensen values") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto x = random_pd(1 + s % 4, 2 * s, 0.1, 10.0);
    const auto y = random_pd(1 + s % 4, 2 * s + 1, 0.1, 10.0);
    for (const auto& f : {power_generator(2), entropy_generator(), neglog_generator()}) {
      const auto g = with_affine_shift(f, -1.7, 4.2);
      CHECK(close_rel(bregman(f, x, y), bregman(g, x, y), 1e-8));
      CHECK(close_rel(jensen(f, 0.4, x, y), jensen(g, 0.4, x, y), 1e-8));
    }
  }
}

TEST_CASE("diagonal inputs reduce to sums of scalar divergences") {
  const std::vector<double> xs = {0.3, 2.0, 7.5, 1.0};
  const std::vector<double> ys = {1.1, 0.4, 5.0, 1.0};
  const auto x = PDMatrix::diagonal(xs);
  const auto y = PDMatrix::diagonal(ys);
  for (const auto& f : {power_generator(2), power_generator(1.5), entropy_generator(), neglog_generator()}) {
    double hb = 0.0, hj = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      hb += scalar_bregman(f, xs[i], ys[i]);
      hj += scalar_jensen(f, 0.3, xs[i], ys[i]);
    }
    CHECK(std::abs(bregman(f, x, y) - hb) <= 1e-9);
    CHECK(std::abs(jensen(f, 0.3, x, y) - hj) <= 1e-9);
  }
  double st = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) st += xs[i] / ys[i] - std::log(xs[i] / ys[i]) - 1.0;
  CHECK(std::abs(stein_loss(x, y) - st) <= 1e-9);
  CHECK(std::abs(gdm(NormKind::Trace, stein_gauge(), x, y) - st) <= 1e-9);
}

TEST_CASE("square root of the S-divergence satisfies the triangle inequality") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t n = 2 + s % 3;
    const auto x = random_pd(n, 3 * s, 0.1, 10.0);
    const auto y = random_pd(n, 3 * s + 1, 0.1, 10.0);
    const auto z = random_pd(n, 3 * s + 2, 0.1, 10.0);
    auto d = [](const PDMatrix& a, const PDMatrix& b) { return std::sqrt(logdet_alpha(0.5, a, b)); };
    CHECK(d(x, z) <= d(x, y) + d(y, z) + 1e-10);
  }
}

TEST_CASE("spec strings") {
  for (const auto& text : kSpecs) CHECK(DivergenceSpec::parse(text).to_string() == text);
  CHECK_THROWS_AS(DivergenceSpec::parse("jensen:1.5:neglog"), ParseError);
  CHECK_THROWS_AS(DivergenceSpec::parse("jensen:neglog"), ParseError);
  CHECK_THROWS_AS(DivergenceSpec::parse("gdm:nuclear:stein"), ParseError);
  CHECK_THROWS_AS(DivergenceSpec::parse("stein:1"), ParseError);
  CHECK_THROWS_AS(DivergenceSpec::parse("kl"), ParseError);
  CHECK_THROWS_AS(DivergenceSpec::parse("logdetalpha:0"), ParseError);
  CHECK_THROWS_AS(DivergenceSpec::parse("bregman:power:0.5"), ParseError);
}

TEST_CASE("clamp") {
  CHECK(clamp_divergence(-5e-10, 0.1) == 0.0);
  CHECK(clamp_divergence(0.25, 1.0) == 0.25);
  CHECK_THROWS_AS(clamp_divergence(-1e-6, 1.0), ConsistencyError);
  CHECK_THROWS_AS(bregman(power_generator(2), PDMatrix::identity(2), PDMatrix::identity(3)), DimensionError);
}
