#pragma once

// Trace-form divergences on the positive definite cone.
//
// Every function returns a nonnegative value. Results in
// [-1e-9 max(1, s), 0), where s is the magnitude of the terms that cancel,
// are roundoff and are returned as 0; anything more negative throws
// ConsistencyError.

#include <string>
#include <string_view>
#include <variant>

#include "pdcone/generators.hpp"
#include "pdcone/matcore.hpp"

namespace pdcone {

struct BregmanSpec {
  ConvexGenerator f;
};
struct JensenSpec {
  ConvexGenerator f;
  double lambda;
};
struct GdmSpec {
  NormKind norm;
  GaugeFunction g;
};
struct SteinSpec {};
struct UmegakiSpec {};
struct LogDetAlphaSpec {
  double lambda;
};

/// Selects one divergence. String form (used by the CLI):
///   bregman:<generator>  jensen:<l>:<generator>  gdm:<norm>:<gauge>
///   stein  umegaki  logdetalpha:<l>
/// where <norm> is trace, frobenius or operator.
struct DivergenceSpec {
  std::variant<BregmanSpec, JensenSpec, GdmSpec, SteinSpec, UmegakiSpec, LogDetAlphaSpec> kind;

  static DivergenceSpec parse(std::string_view text);
  std::string to_string() const;
};

std::string_view norm_name(NormKind kind);
NormKind parse_norm(std::string_view name);

// tr(f(X) - f(Y) - f'(Y)(X - Y)). PSD arguments with zero eigenvalues are
// accepted only when f declares both limit_at_zero and deriv_limit_at_zero.
double bregman(const ConvexGenerator& f, const HermitianMatrix& x, const HermitianMatrix& y);

// tr(l f(X) + (1-l) f(Y) - f(l X + (1-l) Y)). PSD arguments need
// limit_at_zero.
double jensen(const ConvexGenerator& f, double lambda, const HermitianMatrix& x, const HermitianMatrix& y);

// tr (f'(A) - f'(B))(A - B) = H_f(A,B) + H_f(B,A).
double symmetrized_bregman(const ConvexGenerator& f, const HermitianMatrix& a, const HermitianMatrix& b);

// N(g(Y^{-1/2} X Y^{-1/2})).
double gdm(NormKind norm, const GaugeFunction& g, const PDMatrix& x, const PDMatrix& y);

// tr X Y^{-1} - log det X Y^{-1} - n.
double stein_loss(const PDMatrix& x, const PDMatrix& y);

// tr(A (log A - log B) - (A - B)).
double umegaki(const PDMatrix& a, const PDMatrix& b);

// log det(l X + (1-l) Y) - l log det X - (1-l) log det Y.
double logdet_alpha(double lambda, const PDMatrix& x, const PDMatrix& y);

double evaluate(const DivergenceSpec& spec, const PDMatrix& x, const PDMatrix& y);

// Rounds roundoff-level negatives to 0 and rejects real violations.
double clamp_divergence(double raw, double scale);

}  // namespace pdcone
