#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdcone/matcore.hpp"

namespace pdcone {

/// A differentiable convex function on (0, inf) together with the facts the
/// order characterizations depend on. The flags are declared, not inferred;
/// check_convexity() audits them numerically.
struct ConvexGenerator {
  std::string name;  // stable identifier, e.g. "power:2"
  ScalarFunction eval;
  ScalarFunction deriv;
  std::optional<double> limit_at_zero;        // lim_{x->0+} f(x) when finite
  std::optional<double> deriv_limit_at_zero;  // lim_{x->0+} f'(x) when finite
  bool strictly_convex = true;
  std::optional<double> deriv_bounded_below;  // a lower bound k <= f'
  bool deriv_unbounded_above = false;

  // f(x) for x > 0; at exactly 0 the declared limit is substituted.
  // Throws DomainError for x < 0 or for 0 without a finite limit.
  double value(double x) const;
  double derivative(double x) const;
};

ConvexGenerator power_generator(double p);  // x^p, p > 1
ConvexGenerator entropy_generator();        // x log x - x
ConvexGenerator neglog_generator();         // -log x
// a log x + b x + c with a <= 0.
ConvexGenerator log_affine_generator(double a, double b, double c);
// f + b x + c; Bregman and Jensen divergences do not see the shift.
ConvexGenerator with_affine_shift(const ConvexGenerator& f, double b, double c);

// Parses "power:p", "entropy", "neglog", "logaffine:a:b:c".
ConvexGenerator std_generator(std::string_view id);

/// Scalar g with g(y) = 0 iff y = 1 and |g(y^2)| >= K |g(y)|.
struct GaugeFunction {
  std::string name;
  ScalarFunction eval;
  double K = 2.0;

  double operator()(double y) const { return eval(y); }
};

GaugeFunction stein_gauge();                     // y - log y - 1
GaugeFunction logdet_alpha_gauge(double lambda); // log((l y + 1 - l) / y^l)

// Parses "stein", "logdetalpha:l".
GaugeFunction std_gauge(std::string_view id);

struct ConvexityReport {
  bool pass = false;
  // max over sampled (x, y, l) of f(lx+(1-l)y) - l f(x) - (1-l) f(y) beyond
  // the 1e-9 (1 + |f(x)| + |f(y)|) allowance; <= 0 when convex.
  double worst_midpoint_violation = 0.0;
  // max decrease of f' between consecutive grid points (relative).
  double worst_deriv_decrease = 0.0;
  // max |central difference - f'| / (|f'| + |f|/x) on the log grid.
  double worst_fd_error = 0.0;
  // |f(10^-k) - limit| non-increasing for k = 4..8 (true when no limit).
  bool limit_approach_ok = true;
};

ConvexityReport check_convexity(const ConvexGenerator& f, int grid_size, std::uint64_t seed);

struct GaugeReport {
  bool a1_pass = false;
  bool a2_pass = false;
  // (a1): largest |g| at y = 1 and, off the 1e-9 band, the smallest |g|.
  double a1_value_at_one = 0.0;
  double a1_min_off_band = 0.0;
  // (a2): min over the grid (outside (1 - 1e-6, 1 + 1e-6)) of |g(y^2)|/|g(y)|.
  double min_ratio = 0.0;
  double a2_worst_margin = 0.0;  // min_ratio - K

  bool pass() const { return a1_pass && a2_pass; }
};

// The point y = 1 is always probed for (a1) in addition to the grid.
GaugeReport check_gauge(const GaugeFunction& g, std::span<const double> grid);

// count points log-spaced over [lo, hi], endpoints included.
std::vector<double> log_grid(double lo, double hi, int count);

}  // namespace pdcone
