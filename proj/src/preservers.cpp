#include "pdcone/preservers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rng.hpp"

namespace pdcone {

namespace {

void require_invertible(const ComplexMatrix& t, const char* what) {
  if (t.dim() == 0) throw DomainError(std::string(what) + ": empty matrix");
  const auto s = singular_values(t);
  if (!(s.front() > 1e-12 * s.back())) {
    std::ostringstream msg;
    msg << what << ": T is singular (sigma_min = " << s.front() << ", sigma_max = " << s.back() << ")";
    throw DomainError(msg.str());
  }
}

void require_dim(std::size_t want, std::size_t got, const char* what) {
  if (want != got) {
    std::ostringstream msg;
    msg << what << ": map acts on dim " << want << " but the argument has dim " << got;
    throw DimensionError(msg.str());
  }
}

}  // namespace

CongruenceMap::CongruenceMap(ComplexMatrix t, bool conjugate_first) : t_(std::move(t)), conjugate_first_(conjugate_first) {
  require_invertible(t_, "congruence map");
}

CongruenceMap CongruenceMap::inverse() const {
  // B = T conj(A) T*  =>  A = conj(T^{-1}) conj(B) conj(T^{-1})*.
  const auto ti = pdcone::inverse(t_);
  return CongruenceMap(conjugate_first_ ? ti.conj() : ti, conjugate_first_);
}

ExpLogMap::ExpLogMap(ComplexMatrix t, HermitianMatrix x) : t_(std::move(t)), x_(std::move(x)) {
  require_invertible(t_, "exp-log map");
  if (x_.dim() != t_.dim()) throw DimensionError("exp-log map: T and X differ in dimension");
}

ExpLogMap ExpLogMap::inverse() const {
  const auto ti = pdcone::inverse(t_);
  return ExpLogMap(ti, HermitianMatrix::hermitian_part(ti * x_.matrix() * ti.adjoint() * cplx(-1.0)));
}

PDMatrix apply_congruence(const CongruenceMap& m, const PDMatrix& a) {
  require_dim(m.dim(), a.dim(), "apply_congruence");
  const ComplexMatrix& src = m.conjugate_first() ? a.matrix().conj() : a.matrix();
  return PDMatrix(HermitianMatrix::hermitian_part(m.t() * src * m.t().adjoint()));
}

PDMatrix apply_explog(const ExpLogMap& m, const PDMatrix& a) {
  require_dim(m.dim(), a.dim(), "apply_explog");
  const auto inner = m.t() * matrix_log(a).matrix() * m.t().adjoint();
  return matrix_exp(HermitianMatrix::hermitian_part(inner) + m.offset());
}

PDMatrix apply_map(const PdMap& m, const PDMatrix& a) {
  struct Visitor {
    const PDMatrix& a;
    PDMatrix operator()(const CongruenceMap& c) const { return apply_congruence(c, a); }
    PDMatrix operator()(const ExpLogMap& e) const { return apply_explog(e, a); }
  };
  return std::visit(Visitor{a}, m);
}

std::size_t map_dim(const PdMap& m) {
  return std::visit([](const auto& x) { return x.dim(); }, m);
}

PolarDecomposition polar_decompose(const ComplexMatrix& t) {
  require_invertible(t, "polar_decompose");
  const PDMatrix p = matrix_sqrt(PDMatrix(HermitianMatrix::hermitian_part(t.adjoint() * t)));
  const auto pinv = apply_function([](double x) { return 1.0 / x; }, p);
  return {t * pinv.matrix(), p};
}

PreservationReport check_preserves(const DivergenceSpec& spec, const PdMap& map, int trials, std::uint64_t seed,
                                   double tol, const PreservationOptions& opts) {
  if (trials < 1) throw PreconditionError("check_preserves: trials must be >= 1");
  PreservationReport r;
  r.spec = spec.to_string();
  r.trials = trials;
  const std::size_t dim = map_dim(map);
  for (int k = 0; k < trials; ++k) {
    const std::uint64_t base = detail::splitmix64(seed) + 2 * static_cast<std::uint64_t>(k);
    const auto a = random_pd(dim, base, opts.lo, opts.hi);
    const auto b = random_pd(dim, base + 1, opts.lo, opts.hi);
    const double before = evaluate(spec, a, b);
    const double after = evaluate(spec, apply_map(map, a), apply_map(map, b));
    const double dev = std::abs(after - before);
    r.max_deviation = std::max(r.max_deviation, dev);
    if (dev <= tol * std::max(1.0, std::abs(before))) {
      ++r.passes;
    } else {
      ++r.failures;
      if (!r.first_counterexample) r.first_counterexample = PreservationCounterexample{a, b, before, after};
    }
  }
  return r;
}

}  // namespace pdcone
