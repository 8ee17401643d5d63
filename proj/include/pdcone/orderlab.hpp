#pragma once

// Numerical probes of the order characterizations behind the preserver
// theorems:
//
//   {H_f(B,A) - H_f(C,A) : A > 0} bounded below  <=>  B <= C
//   {J_{f,l}(A,B) - J_{f,l}(A,C) : A > 0} bounded below  <=>  B <= C
//   {H_f(A,B) - H_f(A,C) : A > 0} bounded below  <=>  f'(B) <= f'(C)
//
// Boundedness is not decidable from samples, so a probe combines two kinds
// of evidence: random samples checked against the analytic lower bound that
// holds in the ordered case, and a constructive witness family A_t driven
// along a t schedule. The witness "escapes" when its differences decrease
// strictly and end below -escape_factor * (1 + |first value|).

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pdcone/divergences.hpp"
#include "pdcone/generators.hpp"
#include "pdcone/matcore.hpp"

namespace pdcone {

enum class ProbeSide {
  BregmanLeft,   // H_f(B,A) - H_f(C,A)
  BregmanRight,  // H_f(A,B) - H_f(A,C)
  JensenLeft,    // J_{f,l}(A,B) - J_{f,l}(A,C)
};

struct ProbeOptions {
  std::vector<double> t_schedule = default_schedule();
  int random_trials = 20;
  std::uint64_t seed = 0;
  double escape_factor = 1e3;
  double bound_tol = 1e-8;
  double order_tol = 1e-10;  // passed to loewner_leq
  double sample_lo = 0.1;    // spectra of the random A samples
  double sample_hi = 10.0;

  // t = 10^k, k = 0..6.
  static std::vector<double> default_schedule();
};

/// What was probed: the pair, the witness direction and the witness
/// parameters.
struct BoundednessProbe {
  ProbeSide side = ProbeSide::BregmanLeft;
  PDMatrix b;
  PDMatrix c;
  CVector x;                      // unit witness direction
  std::optional<double> lambda;   // Jensen weight
  std::optional<double> shift_m;  // Jensen witness shift
  std::optional<double> epsilon;  // <(B - C) x, x> for the Jensen witness
};

struct ProbeVerdict {
  BoundednessProbe probe;
  bool ordered = false;  // B <= C, or f'(B) <= f'(C) for BregmanRight
  bool bounded_below_evidence = false;
  bool escaped = false;
  double min_observed = 0.0;  // min over samples and witness_trace
  std::optional<double> analytic_bound;
  std::vector<double> samples;
  std::vector<std::pair<double, double>> witness_trace;  // (t, difference)
  // Jensen only: f(m+t) - f(m+t+(1-l) eps) + K(B,C), an upper bound for
  // each witness difference.
  std::vector<double> upper_bound_trace;
};

// tr f(B) - tr f(C) + tr f'(A)(C - B)
double bregman_left_diff(const ConvexGenerator& f, const PDMatrix& b, const PDMatrix& c, const PDMatrix& a);

// tr (f'(C) - f'(B)) A + tr (f(C) - f(B) - (f'(C) C - f'(B) B))
double bregman_right_diff(const ConvexGenerator& f, const PDMatrix& a, const PDMatrix& b, const PDMatrix& c);

// (1-l)(tr f(B) - tr f(C)) + tr f(lA + (1-l)C) - tr f(lA + (1-l)B)
double jensen_left_diff(const ConvexGenerator& f, double lambda, const PDMatrix& a, const PDMatrix& b,
                        const PDMatrix& c);

// t P_x + (I - P_x). x must be a unit vector.
PDMatrix claimA_witness(std::span<const cplx> x, double t);

// (1/l)(m I + t P_x - (1-l) C). Requires m I - (1-l) C to be PD and t >= 0.
PDMatrix claimB_witness(double lambda, const PDMatrix& c, std::span<const cplx> x, double m, double t);

// (1-l) lambda_max(C) * 1.01 + 0.01
double default_claimB_shift(double lambda, const PDMatrix& c);

// Requires f' bounded below and unbounded above.
ProbeVerdict probe_claimA(const ConvexGenerator& f, const PDMatrix& b, const PDMatrix& c, const ProbeOptions& opts = {});

// Requires f strictly convex.
ProbeVerdict probe_fprime_order(const ConvexGenerator& f, const PDMatrix& b, const PDMatrix& c,
                                const ProbeOptions& opts = {});

// Requires a finite limit of f at 0 and f' unbounded above. m defaults to
// default_claimB_shift().
ProbeVerdict probe_claimB(const ConvexGenerator& f, double lambda, const PDMatrix& b, const PDMatrix& c,
                          const ProbeOptions& opts = {}, std::optional<double> m = std::nullopt);

// |D(tX, tY) - D(X, Y)|
double homogeneity_defect(const DivergenceSpec& spec, double t, const PDMatrix& x, const PDMatrix& y);

struct InequalityReport {
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
  // Weyl: ascending eigenvalues of B (lhs) and C (rhs).
  std::vector<double> lhs_values;
  std::vector<double> rhs_values;

  double margin() const { return rhs - lhs; }
};

// sum_j f(<A y_j, y_j>) <= tr f(A). Throws PreconditionError when the basis
// is not orthonormal within 1e-10.
InequalityReport peierls_check(const ConvexGenerator& f, const HermitianMatrix& a, const std::vector<CVector>& basis);

// B <= C implies lambda_i(B) <= lambda_i(C). Throws PreconditionError
// unless loewner_leq(B, C, 1e-10).
InequalityReport weyl_check(const HermitianMatrix& b, const HermitianMatrix& c);

// H1 <= H2 implies tr exp(H1) <= tr exp(H2). Same precondition as weyl_check.
InequalityReport trace_exp_monotone_check(const HermitianMatrix& h1, const HermitianMatrix& h2);

}  // namespace pdcone
