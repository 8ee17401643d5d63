#include "pdcone/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rng.hpp"
#include "text.hpp"

namespace pdcone {

namespace {

double at_zero_or_throw(const std::optional<double>& lim, const std::string& name, const char* what) {
  if (!lim) throw DomainError(name + ": " + what + " has no finite limit at 0");
  return *lim;
}

void require_nonnegative(double x, const std::string& name) {
  if (x < 0.0 || std::isnan(x)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << name << ": argument " << x << " is outside (0, inf)";
    throw DomainError(msg.str());
  }
}

}  // namespace

double ConvexGenerator::value(double x) const {
  require_nonnegative(x, name);
  if (x == 0.0) return at_zero_or_throw(limit_at_zero, name, "f");
  return eval(x);
}

double ConvexGenerator::derivative(double x) const {
  require_nonnegative(x, name);
  if (x == 0.0) return at_zero_or_throw(deriv_limit_at_zero, name, "f'");
  return deriv(x);
}

ConvexGenerator power_generator(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw PreconditionError("power generator needs p > 1, got " + detail::format_number(p));
  ConvexGenerator g;
  g.name = "power:" + detail::format_number(p);
  g.eval = [p](double x) { return std::pow(x, p); };
  g.deriv = [p](double x) { return p * std::pow(x, p - 1.0); };
  g.limit_at_zero = 0.0;
  g.deriv_limit_at_zero = 0.0;
  g.strictly_convex = true;
  g.deriv_bounded_below = 0.0;
  g.deriv_unbounded_above = true;
  return g;
}

ConvexGenerator entropy_generator() {
  ConvexGenerator g;
  g.name = "entropy";
  g.eval = [](double x) { return x * std::log(x) - x; };
  g.deriv = [](double x) { return std::log(x); };
  g.limit_at_zero = 0.0;
  g.strictly_convex = true;
  g.deriv_unbounded_above = true;
  return g;
}

ConvexGenerator neglog_generator() {
  ConvexGenerator g;
  g.name = "neglog";
  g.eval = [](double x) { return -std::log(x); };
  g.deriv = [](double x) { return -1.0 / x; };
  g.strictly_convex = true;
  return g;
}

ConvexGenerator log_affine_generator(double a, double b, double c) {
  if (!(a <= 0.0)) throw PreconditionError("logaffine generator needs a <= 0 for convexity, got " + detail::format_number(a));
  ConvexGenerator g;
  g.name = "logaffine:" + detail::format_number(a) + ":" + detail::format_number(b) + ":" + detail::format_number(c);
  g.eval = [a, b, c](double x) { return a * std::log(x) + b * x + c; };
  g.deriv = [a, b](double x) { return a / x + b; };
  g.strictly_convex = a < 0.0;
  if (a == 0.0) {
    g.eval = [b, c](double x) { return b * x + c; };
    g.limit_at_zero = c;
    g.deriv_limit_at_zero = b;
    g.deriv_bounded_below = b;
  }
  return g;
}

ConvexGenerator with_affine_shift(const ConvexGenerator& f, double b, double c) {
  ConvexGenerator g = f;
  g.name = f.name + "+affine:" + detail::format_number(b) + ":" + detail::format_number(c);
  g.eval = [e = f.eval, b, c](double x) { return e(x) + b * x + c; };
  g.deriv = [d = f.deriv, b](double x) { return d(x) + b; };
  if (g.limit_at_zero) *g.limit_at_zero += c;
  if (g.deriv_limit_at_zero) *g.deriv_limit_at_zero += b;
  if (g.deriv_bounded_below) *g.deriv_bounded_below += b;
  return g;
}

ConvexGenerator std_generator(std::string_view id) {
  const auto parts = detail::split(id, ':');
  const auto& head = parts[0];
  if (head == "power" && parts.size() == 2) return power_generator(detail::parse_double(parts[1], "power exponent"));
  if (head == "entropy" && parts.size() == 1) return entropy_generator();
  if (head == "neglog" && parts.size() == 1) return neglog_generator();
  if (head == "logaffine" && parts.size() == 4)
    return log_affine_generator(detail::parse_double(parts[1], "logaffine a"), detail::parse_double(parts[2], "logaffine b"),
                                detail::parse_double(parts[3], "logaffine c"));
  throw ParseError("unknown generator '" + std::string(id) +
                   "' (expected power:p, entropy, neglog or logaffine:a:b:c)");
}

// ---------------------------------------------------------------------------

static void require_open_unit(double lambda, const char* what) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw PreconditionError(std::string(what) + ": lambda must lie in (0,1), got " + detail::format_number(lambda));
}

GaugeFunction stein_gauge() {
  return {"stein", [](double y) { return y - std::log(y) - 1.0; }, 2.0};
}

GaugeFunction logdet_alpha_gauge(double lambda) {
  require_open_unit(lambda, "logdetalpha gauge");
  return {"logdetalpha:" + detail::format_number(lambda),
          [lambda](double y) { return std::log(lambda * y + (1.0 - lambda)) - lambda * std::log(y); }, 2.0};
}

GaugeFunction std_gauge(std::string_view id) {
  const auto parts = detail::split(id, ':');
  if (parts[0] == "stein" && parts.size() == 1) return stein_gauge();
  if (parts[0] == "logdetalpha" && parts.size() == 2)
    return logdet_alpha_gauge(detail::parse_double(parts[1], "logdetalpha lambda"));
  throw ParseError("unknown gauge '" + std::string(id) + "' (expected stein or logdetalpha:l)");
}

// ---------------------------------------------------------------------------

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g(static_cast<std::size_t>(count));
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  const double a = std::log10(lo), b = std::log10(hi);
  for (int k = 0; k < count; ++k) g[static_cast<std::size_t>(k)] = std::pow(10.0, a + (b - a) * k / (count - 1));
  return g;
}

ConvexityReport check_convexity(const ConvexGenerator& f, int grid_size, std::uint64_t seed) {
  if (grid_size < 3) throw PreconditionError("check_convexity: grid_size must be >= 3");
  ConvexityReport r;
  r.worst_midpoint_violation = -std::numeric_limits<double>::infinity();

  detail::Rng rng(seed, detail::Stream::Uniform);
  auto log_uniform = [&] { return std::pow(10.0, -3.0 + 6.0 * rng.uniform()); };
  for (int k = 0; k < grid_size; ++k) {
    double x = log_uniform(), y = log_uniform();
    if (x > y) std::swap(x, y);
    const double l = rng.uniform();
    const double fx = f.eval(x), fy = f.eval(y);
    const double lhs = f.eval(l * x + (1.0 - l) * y);
    const double rhs = l * fx + (1.0 - l) * fy;
    const double allowance = 1e-9 * (1.0 + std::abs(fx) + std::abs(fy));
    r.worst_midpoint_violation = std::max(r.worst_midpoint_violation, lhs - rhs - allowance);
  }

  const auto grid = log_grid(1e-3, 1e3, grid_size);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double d0 = f.deriv(grid[k]), d1 = f.deriv(grid[k + 1]);
    const double scale = 1.0 + std::abs(d0) + std::abs(d1);
    r.worst_deriv_decrease = std::max(r.worst_deriv_decrease, (d0 - d1) / scale);
  }
  for (double x : grid) {
    const double h = 1e-5 * x;
    const double fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
    const double d = f.deriv(x);
    const double scale = std::abs(d) + std::abs(f.eval(x)) / x + 1e-300;
    r.worst_fd_error = std::max(r.worst_fd_error, std::abs(fd - d) / scale);
  }

  if (f.limit_at_zero) {
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 4; k <= 8; ++k) {
      const double gap = std::abs(f.eval(std::pow(10.0, -k)) - *f.limit_at_zero);
      if (gap > prev) r.limit_approach_ok = false;
      prev = gap;
    }
  }

  r.pass = r.worst_midpoint_violation <= 0.0 && r.worst_deriv_decrease <= 1e-12 && r.worst_fd_error <= 1e-6 &&
           r.limit_approach_ok;
  return r;
}

GaugeReport check_gauge(const GaugeFunction& g, std::span<const double> grid) {
  constexpr double kZeroTol = 1e-9;
  constexpr double kA2Exclusion = 1e-6;
  GaugeReport r;
  r.a1_value_at_one = std::abs(g(1.0));
  r.a1_min_off_band = std::numeric_limits<double>::infinity();
  r.min_ratio = std::numeric_limits<double>::infinity();
  bool a1 = r.a1_value_at_one <= kZeroTol;
  for (double y : grid) {
    if (!(y > 0.0)) throw PreconditionError("check_gauge: grid points must be positive");
    const double gy = std::abs(g(y));
    if (std::abs(y - 1.0) <= kZeroTol) {
      a1 = a1 && gy <= kZeroTol;
    } else {
      r.a1_min_off_band = std::min(r.a1_min_off_band, gy);
      a1 = a1 && gy > kZeroTol;
    }
    if (std::abs(y - 1.0) < kA2Exclusion || gy == 0.0) continue;
    r.min_ratio = std::min(r.min_ratio, std::abs(g(y * y)) / gy);
  }
  r.a1_pass = a1;
  r.a2_worst_margin = r.min_ratio - g.K;
  r.a2_pass = r.min_ratio >= g.K - 1e-9;
  return r;
}

}  // namespace pdcone
