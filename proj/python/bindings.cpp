#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pdcone/divergences.hpp"
#include "pdcone/errors.hpp"
#include "pdcone/generators.hpp"
#include "pdcone/matcore.hpp"
#include "pdcone/matrix_io.hpp"
#include "pdcone/orderlab.hpp"
#include "pdcone/preservers.hpp"
#include "pdcone/verify.hpp"

namespace py = pybind11;
using namespace pdcone;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw DimensionError("expected a square 2-D array");
  const auto n = static_cast<std::size_t>(a.shape(0));
  ComplexMatrix m(n);
  const auto r = a.unchecked<2>();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = r(i, j);
  return m;
}

CArray to_array(const ComplexMatrix& m) {
  const auto n = static_cast<py::ssize_t>(m.dim());
  CArray out({n, n});
  auto w = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < n; ++i)
    for (py::ssize_t j = 0; j < n; ++j) w(i, j) = m(i, j);
  return out;
}

HermitianMatrix to_hermitian(const CArray& a) { return HermitianMatrix(to_matrix(a)); }
PDMatrix to_pd(const CArray& a) { return PDMatrix(to_matrix(a)); }

py::dict verdict_dict(const ProbeVerdict& v) {
  py::dict d;
  d["ordered"] = v.ordered;
  d["bounded_below_evidence"] = v.bounded_below_evidence;
  d["escaped"] = v.escaped;
  d["min_observed"] = v.min_observed;
  d["analytic_bound"] = v.analytic_bound;
  d["samples"] = v.samples;
  d["witness_trace"] = v.witness_trace;
  d["upper_bound_trace"] = v.upper_bound_trace;
  d["x"] = v.probe.x;
  d["epsilon"] = v.probe.epsilon;
  d["shift_m"] = v.probe.shift_m;
  return d;
}

ProbeOptions probe_options(std::optional<std::vector<double>> schedule, int random_trials, std::uint64_t seed) {
  ProbeOptions o;
  if (schedule) o.t_schedule = *schedule;
  o.random_trials = random_trials;
  o.seed = seed;
  return o;
}

PdMap make_map(const CArray& t, bool conjugate, std::optional<CArray> offset) {
  if (offset) {
    if (conjugate) throw PreconditionError("exp-log maps have no conjugate-linear form here");
    return ExpLogMap(to_matrix(t), to_hermitian(*offset));
  }
  return CongruenceMap(to_matrix(t), conjugate);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Divergences, preservers and order probes on the positive definite cone";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  m.def(
      "eigh",
      [](const CArray& a) {
        const auto e = eig_hermitian(to_hermitian(a));
        return py::make_tuple(e.eigenvalues, to_array(e.eigenvectors));
      },
      py::arg("a"), "Ascending eigenvalues and unitary eigenvectors of a Hermitian matrix.");
  m.def("singular_values", [](const CArray& a) { return singular_values(to_matrix(a)); }, py::arg("a"));
  m.def("expm", [](const CArray& a) { return to_array(matrix_exp(to_hermitian(a)).matrix()); }, py::arg("a"));
  m.def("logm", [](const CArray& a) { return to_array(matrix_log(to_pd(a)).matrix()); }, py::arg("a"));
  m.def("sqrtm", [](const CArray& a) { return to_array(matrix_sqrt(to_pd(a)).matrix()); }, py::arg("a"));
  m.def(
      "loewner_leq", [](const CArray& b, const CArray& c, double tol) { return loewner_leq(to_hermitian(b), to_hermitian(c), tol); },
      py::arg("b"), py::arg("c"), py::arg("tol") = 1e-10);

  m.def("random_pd", [](std::size_t dim, std::uint64_t seed, double lo, double hi) {
    return to_array(random_pd(dim, seed, lo, hi).matrix());
  }, py::arg("dim"), py::arg("seed"), py::arg("lo") = 0.1, py::arg("hi") = 10.0);
  m.def("random_unitary", [](std::size_t dim, std::uint64_t seed) { return to_array(random_unitary(dim, seed)); },
        py::arg("dim"), py::arg("seed"));

  m.def(
      "divergence",
      [](std::string_view spec, const CArray& x, const CArray& y) {
        return evaluate(DivergenceSpec::parse(spec), to_pd(x), to_pd(y));
      },
      py::arg("spec"), py::arg("x"), py::arg("y"), "Evaluate D(X, Y) for a spec string such as 'stein'.");
  m.def("normalize_spec", [](std::string_view spec) { return DivergenceSpec::parse(spec).to_string(); },
        py::arg("spec"));
  m.def(
      "bregman",
      [](std::string_view generator, const CArray& x, const CArray& y) {
        return bregman(std_generator(generator), to_hermitian(x), to_hermitian(y));
      },
      py::arg("generator"), py::arg("x"), py::arg("y"), "Bregman divergence; PSD arguments allowed where the generator has limits at 0.");
  m.def(
      "jensen",
      [](std::string_view generator, double lambda, const CArray& x, const CArray& y) {
        return jensen(std_generator(generator), lambda, to_hermitian(x), to_hermitian(y));
      },
      py::arg("generator"), py::arg("lam"), py::arg("x"), py::arg("y"));

  m.def(
      "check_gauge",
      [](std::string_view gauge, double lo, double hi, int points) {
        const auto r = check_gauge(std_gauge(gauge), log_grid(lo, hi, points));
        py::dict d;
        d["a1"] = r.a1_pass;
        d["a2"] = r.a2_pass;
        d["min_ratio"] = r.min_ratio;
        return d;
      },
      py::arg("gauge"), py::arg("lo") = 1e-2, py::arg("hi") = 1e2, py::arg("points") = 200);

  m.def(
      "apply_map",
      [](const CArray& t, const CArray& a, bool conjugate, std::optional<CArray> offset) {
        return to_array(apply_map(make_map(t, conjugate, offset), to_pd(a)).matrix());
      },
      py::arg("t"), py::arg("a"), py::arg("conjugate") = false, py::arg("offset") = py::none(),
      "A -> T A T* (T conj(A) T* when conjugate), or exp(T log(A) T* + offset) when offset is given.");
  m.def(
      "check_preserves",
      [](std::string_view spec, const CArray& t, int trials, std::uint64_t seed, double tol, bool conjugate,
         std::optional<CArray> offset) {
        const auto r = check_preserves(DivergenceSpec::parse(spec), make_map(t, conjugate, offset), trials, seed, tol);
        py::dict d;
        d["spec"] = r.spec;
        d["trials"] = r.trials;
        d["failures"] = r.failures;
        d["max_deviation"] = r.max_deviation;
        d["preserved"] = r.pass();
        return d;
      },
      py::arg("spec"), py::arg("t"), py::arg("trials") = 100, py::arg("seed") = 0, py::arg("tol") = 1e-8,
      py::arg("conjugate") = false, py::arg("offset") = py::none());

  m.def(
      "probe_claimA",
      [](std::string_view generator, const CArray& b, const CArray& c, std::optional<std::vector<double>> schedule,
         int random_trials, std::uint64_t seed) {
        return verdict_dict(probe_claimA(std_generator(generator), to_pd(b), to_pd(c),
                                         probe_options(schedule, random_trials, seed)));
      },
      py::arg("generator"), py::arg("b"), py::arg("c"), py::arg("t_schedule") = py::none(),
      py::arg("random_trials") = 20, py::arg("seed") = 0);
  m.def(
      "probe_claimB",
      [](std::string_view generator, double lambda, const CArray& b, const CArray& c,
         std::optional<std::vector<double>> schedule, int random_trials, std::uint64_t seed) {
        return verdict_dict(probe_claimB(std_generator(generator), lambda, to_pd(b), to_pd(c),
                                         probe_options(schedule, random_trials, seed)));
      },
      py::arg("generator"), py::arg("lam"), py::arg("b"), py::arg("c"), py::arg("t_schedule") = py::none(),
      py::arg("random_trials") = 20, py::arg("seed") = 0);
  m.def(
      "probe_fprime_order",
      [](std::string_view generator, const CArray& b, const CArray& c, std::optional<std::vector<double>> schedule,
         int random_trials, std::uint64_t seed) {
        return verdict_dict(probe_fprime_order(std_generator(generator), to_pd(b), to_pd(c),
                                               probe_options(schedule, random_trials, seed)));
      },
      py::arg("generator"), py::arg("b"), py::arg("c"), py::arg("t_schedule") = py::none(),
      py::arg("random_trials") = 20, py::arg("seed") = 0);
  m.def(
      "homogeneity_defect",
      [](std::string_view spec, double t, const CArray& x, const CArray& y) {
        return homogeneity_defect(DivergenceSpec::parse(spec), t, to_pd(x), to_pd(y));
      },
      py::arg("spec"), py::arg("t"), py::arg("x"), py::arg("y"));

  m.def("suite_names", &suite_names);
  m.def(
      "run_suite",
      [](std::string_view name, std::size_t dim, int trials, std::uint64_t seed, std::optional<double> tol) {
        const auto r = run_suite(name, {dim, trials, seed, tol});
        py::dict d;
        d["name"] = r.name;
        d["passed"] = r.pass();
        d["trials"] = r.trials;
        d["failures"] = r.failures;
        d["worst"] = r.worst;
        d["line"] = r.line();
        return d;
      },
      py::arg("name"), py::arg("dim") = 4, py::arg("trials") = 100, py::arg("seed") = 42, py::arg("tol") = py::none());

  m.def("parse_matrix", [](std::string_view text) { return to_array(parse_matrix_text(text)); }, py::arg("text"));
  m.def("format_matrix", [](const CArray& a) { return format_matrix(to_matrix(a)); }, py::arg("a"));
}
