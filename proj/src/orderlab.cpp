#include "pdcone/orderlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rng.hpp"

namespace pdcone {

std::vector<double> ProbeOptions::default_schedule() {
  std::vector<double> s;
  for (int k = 0; k <= 6; ++k) s.push_back(std::pow(10.0, k));
  return s;
}

namespace {

double trace_of(const ConvexGenerator& f, const HermitianMatrix& a) {
  double t = 0.0;
  for (double l : eig_hermitian(a).eigenvalues) t += f.value(std::max(l, 0.0));
  return t;
}

HermitianMatrix fprime(const ConvexGenerator& f, const HermitianMatrix& a) {
  return apply_function([&f](double v) { return f.derivative(v); }, a);
}

void require_same_dims(std::initializer_list<std::size_t> dims, const char* what) {
  const std::size_t n = *dims.begin();
  for (std::size_t d : dims)
    if (d != n) throw DimensionError(std::string(what) + ": dimension mismatch");
}

// Eigenvector of the smallest eigenvalue of H, with that eigenvalue.
std::pair<CVector, double> lowest_eigvec(const HermitianMatrix& h) {
  const auto e = eig_hermitian(h);
  return {e.eigenvectors.column(0), e.eigenvalues.front()};
}

bool escapes(const std::vector<std::pair<double, double>>& trace, double factor) {
  if (trace.size() < 2) return false;
  for (std::size_t k = 1; k < trace.size(); ++k)
    if (!(trace[k].second < trace[k - 1].second)) return false;
  return trace.back().second < -factor * (1.0 + std::abs(trace.front().second));
}

PDMatrix sample_a(std::size_t n, const ProbeOptions& opts, int k) {
  return random_pd(n, detail::splitmix64(opts.seed) + static_cast<std::uint64_t>(k), opts.sample_lo, opts.sample_hi);
}

void finish(ProbeVerdict& v, const ProbeOptions& opts) {
  v.min_observed = std::numeric_limits<double>::infinity();
  for (double s : v.samples) v.min_observed = std::min(v.min_observed, s);
  for (const auto& [t, d] : v.witness_trace) v.min_observed = std::min(v.min_observed, d);
  v.escaped = escapes(v.witness_trace, opts.escape_factor);
  bool bound_ok = true;
  if (v.ordered && v.analytic_bound) bound_ok = v.min_observed >= *v.analytic_bound - opts.bound_tol;
  v.bounded_below_evidence = !v.escaped && bound_ok;
}

void require_unit(std::span<const cplx> x, const char* what) {
  if (std::abs(vector_norm(x) - 1.0) > 1e-12) throw PreconditionError(std::string(what) + ": x must be a unit vector");
}

}  // namespace

double bregman_left_diff(const ConvexGenerator& f, const PDMatrix& b, const PDMatrix& c, const PDMatrix& a) {
  require_same_dims({a.dim(), b.dim(), c.dim()}, "bregman_left_diff");
  const double lin = trace_product(fprime(f, a).matrix(), (c - b).matrix()).real();
  return trace_of(f, b) - trace_of(f, c) + lin;
}

double bregman_right_diff(const ConvexGenerator& f, const PDMatrix& a, const PDMatrix& b, const PDMatrix& c) {
  require_same_dims({a.dim(), b.dim(), c.dim()}, "bregman_right_diff");
  const auto fb = fprime(f, b), fc = fprime(f, c);
  const double lin = trace_product((fc - fb).matrix(), a.matrix()).real();
  const double cst = trace_of(f, c) - trace_of(f, b) -
                     (trace_product(fc.matrix(), c.matrix()).real() - trace_product(fb.matrix(), b.matrix()).real());
  return lin + cst;
}

double jensen_left_diff(const ConvexGenerator& f, double lambda, const PDMatrix& a, const PDMatrix& b,
                        const PDMatrix& c) {
  require_same_dims({a.dim(), b.dim(), c.dim()}, "jensen_left_diff");
  if (!(lambda > 0.0 && lambda < 1.0)) throw PreconditionError("jensen_left_diff: lambda must lie in (0,1)");
  const auto mc = lambda * a + (1.0 - lambda) * c;
  const auto mb = lambda * a + (1.0 - lambda) * b;
  return (1.0 - lambda) * (trace_of(f, b) - trace_of(f, c)) + trace_of(f, mc) - trace_of(f, mb);
}

PDMatrix claimA_witness(std::span<const cplx> x, double t) {
  require_unit(x, "claimA_witness");
  if (!(t > 0.0)) throw PreconditionError("claimA_witness: t must be positive");
  const std::size_t n = x.size();
  return PDMatrix(HermitianMatrix::hermitian_part(ComplexMatrix::identity(n) + ComplexMatrix::outer(x) * cplx(t - 1.0)));
}

double default_claimB_shift(double lambda, const PDMatrix& c) {
  return (1.0 - lambda) * c.lambda_max() * 1.01 + 0.01;
}

PDMatrix claimB_witness(double lambda, const PDMatrix& c, std::span<const cplx> x, double m, double t) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw PreconditionError("claimB_witness: lambda must lie in (0,1)");
  require_unit(x, "claimB_witness");
  if (x.size() != c.dim()) throw DimensionError("claimB_witness: x and C differ in dimension");
  if (!(t >= 0.0)) throw PreconditionError("claimB_witness: t must be nonnegative");
  const std::size_t n = c.dim();
  const auto base = m * HermitianMatrix::identity(n) - (1.0 - lambda) * c;
  if (!(eig_hermitian(base).eigenvalues.front() > 0.0)) {
    std::ostringstream msg;
    msg << "claimB_witness: m = " << m << " too small, m I - (1-l) C is not positive definite";
    throw PreconditionError(msg.str());
  }
  const auto a = base.matrix() + ComplexMatrix::outer(x) * cplx(t);
  return PDMatrix(HermitianMatrix::hermitian_part(a * cplx(1.0 / lambda)));
}

ProbeVerdict probe_claimA(const ConvexGenerator& f, const PDMatrix& b, const PDMatrix& c, const ProbeOptions& opts) {
  if (!f.deriv_bounded_below || !f.deriv_unbounded_above)
    throw PreconditionError("probe_claimA: generator " + f.name + " must have f' bounded below and unbounded above");
  require_same_dims({b.dim(), c.dim()}, "probe_claimA");
  ProbeVerdict v;
  v.probe.side = ProbeSide::BregmanLeft;
  v.probe.b = b;
  v.probe.c = c;
  v.ordered = loewner_leq(b, c, opts.order_tol);
  const double k = *f.deriv_bounded_below;
  v.analytic_bound = trace_of(f, b) - trace_of(f, c) + k * (c - b).trace();

  v.probe.x = lowest_eigvec(c - b).first;
  for (double t : opts.t_schedule) v.witness_trace.emplace_back(t, bregman_left_diff(f, b, c, claimA_witness(v.probe.x, t)));
  for (int i = 0; i < opts.random_trials; ++i) v.samples.push_back(bregman_left_diff(f, b, c, sample_a(b.dim(), opts, i)));
  finish(v, opts);
  return v;
}

ProbeVerdict probe_fprime_order(const ConvexGenerator& f, const PDMatrix& b, const PDMatrix& c,
                                const ProbeOptions& opts) {
  if (!f.strictly_convex) throw PreconditionError("probe_fprime_order: generator " + f.name + " must be strictly convex");
  require_same_dims({b.dim(), c.dim()}, "probe_fprime_order");
  ProbeVerdict v;
  v.probe.side = ProbeSide::BregmanRight;
  v.probe.b = b;
  v.probe.c = c;
  const auto fb = fprime(f, b), fc = fprime(f, c);
  v.ordered = loewner_leq(fb, fc, opts.order_tol);
  // With f'(B) <= f'(C) the linear term tr (f'(C) - f'(B)) A is nonnegative.
  v.analytic_bound = trace_of(f, c) - trace_of(f, b) -
                     (trace_product(fc.matrix(), c.matrix()).real() - trace_product(fb.matrix(), b.matrix()).real());

  v.probe.x = lowest_eigvec(fc - fb).first;
  for (double t : opts.t_schedule)
    v.witness_trace.emplace_back(t, bregman_right_diff(f, claimA_witness(v.probe.x, t), b, c));
  for (int i = 0; i < opts.random_trials; ++i) v.samples.push_back(bregman_right_diff(f, sample_a(b.dim(), opts, i), b, c));
  finish(v, opts);
  return v;
}

ProbeVerdict probe_claimB(const ConvexGenerator& f, double lambda, const PDMatrix& b, const PDMatrix& c,
                          const ProbeOptions& opts, std::optional<double> m) {
  if (!f.limit_at_zero || !f.deriv_unbounded_above)
    throw PreconditionError("probe_claimB: generator " + f.name +
                            " must have a finite limit at 0 and f' unbounded above");
  if (!(lambda > 0.0 && lambda < 1.0)) throw PreconditionError("probe_claimB: lambda must lie in (0,1)");
  require_same_dims({b.dim(), c.dim()}, "probe_claimB");
  const std::size_t n = b.dim();

  ProbeVerdict v;
  v.probe.side = ProbeSide::JensenLeft;
  v.probe.b = b;
  v.probe.c = c;
  v.probe.lambda = lambda;
  v.ordered = loewner_leq(b, c, opts.order_tol);
  const double trfb = trace_of(f, b), trfc = trace_of(f, c);
  // Weyl: the spectrum of lA + (1-l)C dominates that of lA + (1-l)B, so a
  // nondecreasing f leaves only the constant term.
  if (f.deriv_bounded_below && *f.deriv_bounded_below >= 0.0) v.analytic_bound = (1.0 - lambda) * (trfb - trfc);

  const auto e = eig_hermitian(c - b);  // column 0: most negative direction
  v.probe.x = e.eigenvectors.column(0);
  const double eps = -e.eigenvalues.front();
  const double shift = m.value_or(default_claimB_shift(lambda, c));
  v.probe.shift_m = shift;
  v.probe.epsilon = eps;

  // K(B,C) from the Peierls bound in the basis of eigenvectors of C - B.
  const auto shifted = shift * HermitianMatrix::identity(n) + (1.0 - lambda) * (b - c);
  double k_bc = (1.0 - lambda) * (trfb - trfc) + static_cast<double>(n - 1) * f.value(shift);
  for (std::size_t j = 1; j < n; ++j) k_bc -= f.value(quadratic_form(shifted.matrix(), e.eigenvectors.column(j)).real());

  for (double t : opts.t_schedule) {
    const auto a = claimB_witness(lambda, c, v.probe.x, shift, t);
    v.witness_trace.emplace_back(t, jensen_left_diff(f, lambda, a, b, c));
    v.upper_bound_trace.push_back(f.value(shift + t) - f.value(shift + t + (1.0 - lambda) * eps) + k_bc);
  }
  for (int i = 0; i < opts.random_trials; ++i)
    v.samples.push_back(jensen_left_diff(f, lambda, sample_a(n, opts, i), b, c));
  finish(v, opts);
  return v;
}

double homogeneity_defect(const DivergenceSpec& spec, double t, const PDMatrix& x, const PDMatrix& y) {
  if (!(t > 0.0)) throw PreconditionError("homogeneity_defect: t must be positive");
  const PDMatrix tx(t * x), ty(t * y);
  return std::abs(evaluate(spec, tx, ty) - evaluate(spec, x, y));
}

InequalityReport peierls_check(const ConvexGenerator& f, const HermitianMatrix& a, const std::vector<CVector>& basis) {
  const std::size_t n = a.dim();
  if (basis.size() != n) throw PreconditionError("peierls_check: basis must have dim(A) vectors");
  for (std::size_t i = 0; i < n; ++i) {
    if (basis[i].size() != n) throw PreconditionError("peierls_check: basis vector has the wrong length");
    for (std::size_t j = 0; j < n; ++j) {
      cplx ip = 0.0;
      for (std::size_t k = 0; k < n; ++k) ip += std::conj(basis[i][k]) * basis[j][k];
      if (std::abs(ip - (i == j ? 1.0 : 0.0)) > 1e-10) throw PreconditionError("peierls_check: basis is not orthonormal");
    }
  }
  InequalityReport r;
  for (const auto& y : basis) r.lhs += f.value(quadratic_form(a.matrix(), y).real());
  r.rhs = trace_of(f, a);
  r.pass = r.lhs <= r.rhs + 1e-9 * std::max(1.0, std::abs(r.lhs) + std::abs(r.rhs));
  return r;
}

InequalityReport weyl_check(const HermitianMatrix& b, const HermitianMatrix& c) {
  if (!loewner_leq(b, c, 1e-10)) throw PreconditionError("weyl_check: requires B <= C");
  InequalityReport r;
  r.lhs_values = eig_hermitian(b).eigenvalues;
  r.rhs_values = eig_hermitian(c).eigenvalues;
  r.pass = true;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r.lhs_values.size(); ++i) {
    r.pass = r.pass && r.lhs_values[i] <= r.rhs_values[i] + 1e-9;
    if (r.rhs_values[i] - r.lhs_values[i] < worst) {
      worst = r.rhs_values[i] - r.lhs_values[i];
      r.lhs = r.lhs_values[i];
      r.rhs = r.rhs_values[i];
    }
  }
  return r;
}

InequalityReport trace_exp_monotone_check(const HermitianMatrix& h1, const HermitianMatrix& h2) {
  if (!loewner_leq(h1, h2, 1e-10)) throw PreconditionError("trace_exp_monotone_check: requires H1 <= H2");
  InequalityReport r;
  for (double l : eig_hermitian(h1).eigenvalues) r.lhs += std::exp(l);
  for (double l : eig_hermitian(h2).eigenvalues) r.rhs += std::exp(l);
  r.pass = r.lhs <= r.rhs + 1e-9 * std::max(1.0, r.rhs);
  return r;
}

}  // namespace pdcone
