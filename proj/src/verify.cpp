#include "pdcone/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "pdcone/divergences.hpp"
#include "pdcone/errors.hpp"
#include "pdcone/generators.hpp"
#include "pdcone/matcore.hpp"
#include "pdcone/orderlab.hpp"
#include "pdcone/preservers.hpp"
#include "rng.hpp"

namespace pdcone {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// "n:re,im,re,im,..." row-major.
std::string encode(const ComplexMatrix& a) {
  std::string s = std::to_string(a.dim()) + ":";
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      s += (i || j ? "," : "") + fmt17(a(i, j).real()) + "," + fmt17(a(i, j).imag());
  return s;
}

class Tally {
 public:
  Tally(std::string name, double tol) {
    r_.name = std::move(name);
    r_.tol = tol;
  }

  void dev(double d) {
    if (std::isnan(d)) d = INFINITY;
    r_.worst = std::max(r_.worst, d);
  }

  // describe() is only called for the first failure.
  void trial(bool ok, const std::function<std::string()>& describe) {
    ++r_.trials;
    if (ok) {
      ++r_.passes;
      return;
    }
    ++r_.failures;
    if (!r_.counterexample) r_.counterexample = describe();
  }

  SuiteReport done() { return std::move(r_); }

 private:
  SuiteReport r_;
};

// Per-trial seed streams, distinct per suite.
struct Seeds {
  std::uint64_t base;
  Seeds(std::uint64_t seed, std::uint64_t suite) : base(detail::splitmix64(seed ^ (suite * 0x9e3779b97f4a7c15ULL))) {}
  std::uint64_t operator()(int trial, int slot = 0) const {
    return base + 64 * static_cast<std::uint64_t>(trial) + static_cast<std::uint64_t>(slot);
  }
};

std::size_t dim_for(int k, std::size_t lo, std::size_t hi) {
  hi = std::max(hi, lo);
  return lo + static_cast<std::size_t>(k) % (hi - lo + 1);
}

double rel_dev(double a, double b) {
  const double d = std::abs(a - b);
  return d == 0.0 ? 0.0 : d / std::max(std::abs(a), std::abs(b));
}

// Invertible and not unitary: singular values in [0.5, 2], the largest pinned at 2.
ComplexMatrix random_invertible(std::size_t n, std::uint64_t seed) {
  auto s = eig_hermitian(random_pd(n, seed, 0.5, 2.0)).eigenvalues;
  s.back() = 2.0;
  return random_unitary(n, seed + 1) * ComplexMatrix::diagonal(s) * random_unitary(n, seed + 2);
}

// Evaluates a spec, turning library errors into a NaN so the caller records a failure.
double safe_eval(const DivergenceSpec& spec, const PDMatrix& x, const PDMatrix& y) {
  try {
    return evaluate(spec, x, y);
  } catch (const Error&) {
    return NAN;
  }
}

std::vector<DivergenceSpec> parse_all(const std::vector<std::string>& texts) {
  std::vector<DivergenceSpec> out;
  for (const auto& t : texts) out.push_back(DivergenceSpec::parse(t));
  return out;
}

std::string pair_tokens(const PDMatrix& a, const PDMatrix& b) {
  return "a=" + encode(a.matrix()) + " b=" + encode(b.matrix());
}

// ---------------------------------------------------------------------------

SuiteReport closedforms(const VerifyOptions& o, double tol) {
  Tally t("closedforms", tol);
  const Seeds seeds(o.seed, 1);
  const auto specs = parse_all(catalog_specs());
  const auto neglog = neglog_generator();
  const auto ent = entropy_generator();
  const auto stein_g = stein_gauge();

  for (int k = 0; k < o.trials; ++k) {
    const std::size_t n = dim_for(k, 1, o.dim);
    const auto x = random_pd(n, seeds(k, 0), 0.1, 10.0);
    const auto y = random_pd(n, seeds(k, 1), 0.1, 10.0);
    bool ok = true;
    std::string what;
    auto check = [&](const char* name, double a, double b) {
      const double d = rel_dev(a, b);
      t.dev(d);
      if (!(std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)) + 1e-12) && ok) {
        ok = false;
        what = std::string("identity=") + name + " lhs=" + fmt17(a) + " rhs=" + fmt17(b);
      }
    };
    check("stein-bregman-neglog", stein_loss(x, y), bregman(neglog, x, y));
    check("umegaki-bregman-entropy", umegaki(x, y), bregman(ent, x, y));
    check("gdm-trace-stein", gdm(NormKind::Trace, stein_g, x, y), stein_loss(x, y));
    for (double l : {0.3, 0.5, 0.7}) {
      check("logdetalpha-jensen-neglog", logdet_alpha(l, x, y), jensen(neglog, l, x, y));
      check("gdm-trace-logdetalpha", gdm(NormKind::Trace, logdet_alpha_gauge(l), x, y), logdet_alpha(l, x, y));
    }

    // Nonnegativity and identity of indiscernibles across the catalog.
    const auto h = random_hermitian(n, seeds(k, 2));
    const PDMatrix x_near(x + (1e-9 * x.matrix().frobenius_norm() / h.matrix().frobenius_norm()) * h);
    const double sep = (x - y).matrix().frobenius_norm() /
                       std::max(x.matrix().frobenius_norm(), y.matrix().frobenius_norm());
    for (std::size_t s = 0; s < specs.size() && ok; ++s) {
      const double v = safe_eval(specs[s], x, y);
      const double same = safe_eval(specs[s], x, x);
      const double near = safe_eval(specs[s], x, x_near);
      if (!(v >= -1e-9) || !(same <= 1e-8) || !(near <= 1e-8) || (sep >= 1e-3 && !(v > 1e-8))) {
        ok = false;
        what = "spec=" + catalog_specs()[s] + " value=" + fmt17(v) + " self=" + fmt17(same) + " near=" + fmt17(near);
      }
    }
    t.trial(ok, [&] { return what + " " + pair_tokens(x, y); });
  }
  return t.done();
}

SuiteReport invariance(const VerifyOptions& o, double tol) {
  Tally t("invariance", tol);
  const Seeds seeds(o.seed, 2);
  const auto specs = parse_all(catalog_specs());
  for (int k = 0; k < o.trials; ++k) {
    const std::size_t n = dim_for(k, 1, o.dim);
    const auto a = random_pd(n, seeds(k, 0), 0.1, 10.0);
    const auto b = random_pd(n, seeds(k, 1), 0.1, 10.0);
    const auto u = random_unitary(n, seeds(k, 2));
    const CongruenceMap maps[] = {CongruenceMap(u), CongruenceMap(u, true)};
    bool ok = true;
    std::string what;
    for (std::size_t s = 0; s < specs.size(); ++s) {
      const double d0 = safe_eval(specs[s], a, b);
      for (const auto& m : maps) {
        const double d1 = safe_eval(specs[s], apply_congruence(m, a), apply_congruence(m, b));
        const double d = std::abs(d1 - d0) / std::max(1.0, std::abs(d0));
        t.dev(d);
        if (!(d <= tol) && ok) {
          ok = false;
          what = "spec=" + catalog_specs()[s] + (m.conjugate_first() ? " map=antiunitary" : " map=unitary") +
                 " original=" + fmt17(d0) + " transformed=" + fmt17(d1) + " u=" + encode(u);
        }
      }
    }
    t.trial(ok, [&] { return what + " " + pair_tokens(a, b); });
  }
  return t.done();
}

SuiteReport preservers(const VerifyOptions& o, double tol) {
  Tally t("preservers", tol);
  const Seeds seeds(o.seed, 3);
  const std::vector<std::string> kept = {"stein", "logdetalpha:0.3", "logdetalpha:0.5", "gdm:operator:stein",
                                         "gdm:frobenius:logdetalpha:0.5"};
  const std::vector<std::string> broken = {"bregman:power:2", "umegaki", "jensen:0.5:power:2"};
  const auto kept_specs = parse_all(kept), broken_specs = parse_all(broken);
  const auto umeg = DivergenceSpec::parse("umegaki");
  std::vector<double> broken_worst(broken.size(), 0.0);
  double explog_offset_worst = 0.0;

  for (int k = 0; k < o.trials; ++k) {
    const std::size_t n = dim_for(k, 2, o.dim);
    const auto tm = random_invertible(n, seeds(k, 0));
    const auto a = random_pd(n, seeds(k, 3), 0.1, 10.0);
    const auto b = random_pd(n, seeds(k, 4), 0.1, 10.0);
    bool ok = true;
    std::string what;
    auto record = [&](const std::string& label, double d0, double d1) {
      const double d = std::abs(d1 - d0) / std::max(1.0, std::abs(d0));
      t.dev(d);
      if (!(d <= tol) && ok) {
        ok = false;
        what = label + " original=" + fmt17(d0) + " transformed=" + fmt17(d1);
      }
    };
    for (bool conj : {false, true}) {
      const CongruenceMap m(tm, conj);
      const auto ma = apply_congruence(m, a), mb = apply_congruence(m, b);
      for (std::size_t s = 0; s < kept.size(); ++s)
        record("spec=" + kept[s] + " t=" + encode(tm), safe_eval(kept_specs[s], a, b), safe_eval(kept_specs[s], ma, mb));
      if (!conj) {
        for (std::size_t s = 0; s < broken.size(); ++s) {
          const double d0 = safe_eval(broken_specs[s], a, b), d1 = safe_eval(broken_specs[s], ma, mb);
          broken_worst[s] = std::max(broken_worst[s], std::abs(d1 - d0));
        }
      }
    }
    // exp(U log A U*) preserves Umegaki; a nonzero offset X does not.
    const auto u = random_unitary(n, seeds(k, 5));
    const ExpLogMap plain(u, HermitianMatrix(ComplexMatrix(n)));
    record("spec=umegaki map=explog-unitary", safe_eval(umeg, a, b),
           safe_eval(umeg, apply_explog(plain, a), apply_explog(plain, b)));
    const ExpLogMap shifted(u, random_hermitian(n, seeds(k, 6)));
    explog_offset_worst = std::max(explog_offset_worst, std::abs(safe_eval(umeg, apply_explog(shifted, a),
                                                                           apply_explog(shifted, b)) -
                                                                 safe_eval(umeg, a, b)));
    t.trial(ok, [&] { return what + " " + pair_tokens(a, b); });
  }
  for (std::size_t s = 0; s < broken.size(); ++s) {
    t.trial(broken_worst[s] > 0.1, [&] {
      return "expected-negative spec=" + broken[s] + " max_deviation=" + fmt17(broken_worst[s]);
    });
  }
  t.trial(explog_offset_worst > 0.1, [&] {
    return "expected-negative spec=umegaki map=explog-offset max_deviation=" + fmt17(explog_offset_worst);
  });
  return t.done();
}

SuiteReport homogeneity(const VerifyOptions& o, double tol) {
  Tally t("homogeneity", tol);
  const Seeds seeds(o.seed, 4);
  const std::vector<std::string> zero = {"stein",
                                         "logdetalpha:0.3",
                                         "logdetalpha:0.5",
                                         "logdetalpha:0.7",
                                         "bregman:neglog",
                                         "bregman:logaffine:-2:1:3",
                                         "bregman:logaffine:-0.5:-1:0",
                                         "jensen:0.5:logaffine:-1:2:1",
                                         "jensen:0.3:neglog",
                                         "gdm:trace:stein",
                                         "gdm:operator:logdetalpha:0.5"};
  const std::vector<std::string> nonzero = {"bregman:power:2", "bregman:power:1.5", "bregman:entropy", "umegaki",
                                            "jensen:0.5:power:2", "jensen:0.5:entropy"};
  const auto zs = parse_all(zero), ns = parse_all(nonzero);
  const double ts[] = {0.1, 0.5, 2.0, 10.0};

  for (int k = 0; k < o.trials; ++k) {
    const std::size_t n = dim_for(k, 1, o.dim);
    const auto x = random_pd(n, seeds(k, 0), 0.1, 10.0);
    const auto y = random_pd(n, seeds(k, 1), 0.1, 10.0);
    bool ok = true;
    std::string what;
    for (std::size_t s = 0; s < zs.size(); ++s) {
      for (double tt : ts) {
        double d = NAN;
        try {
          d = homogeneity_defect(zs[s], tt, x, y);
        } catch (const Error&) {
        }
        t.dev(d);
        if (!(d <= tol) && ok) {
          ok = false;
          what = "spec=" + zero[s] + " t=" + fmt17(tt) + " defect=" + fmt17(d);
        }
      }
    }
    t.trial(ok, [&] { return what + " " + pair_tokens(x, y); });
  }
  // Constructed point where every non-log-affine spec must show a defect.
  const auto x = PDMatrix::diagonal({4, 1}), y = PDMatrix::diagonal({1, 2});
  for (std::size_t s = 0; s < ns.size(); ++s) {
    const double d = homogeneity_defect(ns[s], 10.0, x, y);
    t.trial(d > 0.1, [&] { return "expected-negative spec=" + nonzero[s] + " t=10 defect=" + fmt17(d); });
  }
  return t.done();
}

// B <= C by construction: C = B + PSD with a rank-one bump.
std::pair<PDMatrix, PDMatrix> ordered_pair(std::size_t n, std::uint64_t seed) {
  const auto b = random_pd(n, seed, 0.1, 10.0);
  const auto p = random_pd(n, seed + 1, 0.01, 2.0);
  const auto v = random_unit_vector(n, seed + 2);
  return {b, PDMatrix(b + p + HermitianMatrix::hermitian_part(ComplexMatrix::outer(v)))};
}

// C = B + H with one eigenvalue of H in [-0.8, -0.5] and B >= I, so C > 0 and B is not <= C.
std::pair<PDMatrix, PDMatrix> unordered_pair(std::size_t n, std::uint64_t seed) {
  const auto b = random_pd(n, seed, 1.0, 3.0);
  auto h = eig_hermitian(random_pd(n, seed + 1, 1e-3, 1.0)).eigenvalues;
  h[0] = -0.5 - 0.3 * h[0];
  return {b, PDMatrix(b + random_hermitian_with_spectrum(h, seed + 2))};
}

std::string probe_tokens(const ProbeVerdict& v) {
  std::string s = "ordered=" + std::string(v.ordered ? "1" : "0") + " escaped=" + (v.escaped ? "1" : "0") +
                  " min_observed=" + fmt17(v.min_observed);
  if (v.analytic_bound) s += " bound=" + fmt17(*v.analytic_bound);
  if (!v.witness_trace.empty()) s += " witness_last=" + fmt17(v.witness_trace.back().second);
  return s + " " + pair_tokens(v.probe.b, v.probe.c);
}

// Ordered pairs must respect the analytic bound; unordered ones must escape.
void judge_probe(Tally& t, const ProbeVerdict& v, bool expect_ordered, const std::string& label) {
  bool ok = v.ordered == expect_ordered;
  if (expect_ordered) {
    const double gap = v.analytic_bound ? *v.analytic_bound - v.min_observed : 0.0;
    t.dev(std::max(0.0, gap));
    ok = ok && v.bounded_below_evidence;
  } else {
    ok = ok && v.escaped && !v.bounded_below_evidence;
  }
  t.trial(ok, [&] { return label + " " + probe_tokens(v); });
}

SuiteReport claimA(const VerifyOptions& o, double tol) {
  Tally t("claimA", tol);
  const Seeds seeds(o.seed, 5);
  const auto f = power_generator(2);
  for (int k = 0; k < o.trials; ++k) {
    const std::size_t n = dim_for(k, 1, o.dim);
    ProbeOptions po;
    po.seed = seeds(k, 9);
    po.bound_tol = tol;
    const bool ordered = k % 2 == 0;
    const auto [b, c] = ordered ? ordered_pair(n, seeds(k, 0)) : unordered_pair(n, seeds(k, 0));
    judge_probe(t, probe_claimA(f, b, c, po), ordered, "f=power:2");
  }
  return t.done();
}

SuiteReport claimB(const VerifyOptions& o, double tol) {
  Tally t("claimB", tol);
  const Seeds seeds(o.seed, 6);
  const auto f = power_generator(2);
  for (int k = 0; k < o.trials; ++k) {
    const std::size_t n = dim_for(k, 1, o.dim);
    const double lambda = (k / 2) % 2 == 0 ? 0.5 : 0.3;
    ProbeOptions po;
    po.seed = seeds(k, 9);
    po.bound_tol = tol;
    const bool ordered = k % 2 == 0;
    const auto [b, c] = ordered ? ordered_pair(n, seeds(k, 0)) : unordered_pair(n, seeds(k, 0));
    judge_probe(t, probe_claimB(f, lambda, b, c, po), ordered, "f=power:2 lambda=" + fmt17(lambda));
  }
  return t.done();
}

SuiteReport fprime_order(const VerifyOptions& o, double tol) {
  Tally t("fprime-order", tol);
  const Seeds seeds(o.seed, 7);
  const auto f = entropy_generator();
  for (int k = 0; k < o.trials; ++k) {
    const std::size_t n = dim_for(k, 1, o.dim);
    const auto b = random_pd(n, seeds(k, 0), 0.5, 2.0);
    const bool ordered = k % 2 == 0;
    const auto lb = matrix_log(b);
    PDMatrix c = b;
    if (ordered) {
      c = matrix_exp(lb + HermitianMatrix::hermitian_part(random_pd(n, seeds(k, 1), 0.05, 1.0).matrix()));
    } else {
      const auto [h0, h1] = unordered_pair(n, seeds(k, 2));
      c = matrix_exp(lb + (h1 - h0));
    }
    ProbeOptions po;
    po.seed = seeds(k, 9);
    po.bound_tol = tol;
    const auto v = probe_fprime_order(f, b, c, po);
    const bool log_order = loewner_leq(lb, matrix_log(c), po.order_tol);
    const bool ok = v.ordered == log_order && v.bounded_below_evidence == log_order && log_order == ordered;
    if (ordered && v.analytic_bound) t.dev(std::max(0.0, *v.analytic_bound - v.min_observed));
    t.trial(ok, [&] { return "f=entropy log_order=" + std::string(log_order ? "1" : "0") + " " + probe_tokens(v); });
  }
  return t.done();
}

SuiteReport metric_sqrt(const VerifyOptions& o, double tol) {
  Tally t("metric-sqrt", tol);
  const Seeds seeds(o.seed, 8);
  auto d = [](const PDMatrix& a, const PDMatrix& b) { return std::sqrt(logdet_alpha(0.5, a, b)); };
  for (int k = 0; k < o.trials; ++k) {
    const std::size_t n = dim_for(k, 2, o.dim);
    const auto x = random_pd(n, seeds(k, 0), 0.1, 10.0);
    const auto z = random_pd(n, seeds(k, 1), 0.1, 10.0);
    // Every third triple takes Y = (X + Z) / 2.
    const auto y = k % 3 == 2 ? PDMatrix(0.5 * x + 0.5 * z) : random_pd(n, seeds(k, 2), 0.1, 10.0);
    const double excess = d(x, z) - d(x, y) - d(y, z);
    t.dev(std::max(0.0, excess));
    t.trial(excess <= tol, [&] {
      return "excess=" + fmt17(excess) + " x=" + encode(x.matrix()) + " y=" + encode(y.matrix()) +
             " z=" + encode(z.matrix());
    });
  }
  return t.done();
}

SuiteReport gauges(const VerifyOptions&, double tol) {
  Tally t("gauges", tol);
  const auto grid = log_grid(1e-2, 1e2, 200);
  std::vector<GaugeFunction> gs = {stein_gauge(), logdet_alpha_gauge(0.3), logdet_alpha_gauge(0.5),
                                   logdet_alpha_gauge(0.7)};
  for (const auto& g : gs) {
    const auto r = check_gauge(g, grid);
    t.dev(std::max(0.0, -r.a2_worst_margin));
    t.trial(r.a1_pass && r.min_ratio >= g.K - tol, [&] {
      return "gauge=" + g.name + " a1=" + (r.a1_pass ? "1" : "0") + " min_ratio=" + fmt17(r.min_ratio);
    });
  }
  // K = 5 is beyond what the Stein gauge satisfies near y = 1.
  auto strict = stein_gauge();
  strict.K = 5.0;
  const auto r5 = check_gauge(strict, grid);
  t.trial(!r5.a2_pass, [&] { return "expected-negative gauge=stein K=5 min_ratio=" + fmt17(r5.min_ratio); });

  for (const char* id : {"power:1.5", "power:2", "power:3", "entropy", "neglog", "logaffine:-2:1:3"}) {
    const auto f = std_generator(id);
    const auto r = check_convexity(f, 64, 7);
    t.trial(r.pass, [&] {
      return std::string("generator=") + id + " midpoint=" + fmt17(r.worst_midpoint_violation) +
             " deriv_decrease=" + fmt17(r.worst_deriv_decrease) + " fd_error=" + fmt17(r.worst_fd_error);
    });
  }
  return t.done();
}

SuiteReport inequalities(const VerifyOptions& o, double tol) {
  Tally t("inequalities", tol);
  const Seeds seeds(o.seed, 9);
  const ConvexGenerator fs[] = {power_generator(2), entropy_generator(), neglog_generator()};
  for (int k = 0; k < o.trials; ++k) {
    const std::size_t n = dim_for(k, 1, o.dim);
    const auto& f = fs[k % 3];
    const auto a = random_pd(n, seeds(k, 0), 0.1, 10.0);
    const auto u = random_unitary(n, seeds(k, 1));
    const auto e = eig_hermitian(a);
    std::vector<CVector> rb, eb;
    for (std::size_t j = 0; j < n; ++j) {
      rb.push_back(u.column(j));
      eb.push_back(e.eigenvectors.column(j));
    }
    const auto pr = peierls_check(f, a, rb);
    const auto pe = peierls_check(f, a, eb);
    const double eq_gap = std::abs(pe.lhs - pe.rhs) / std::max(1.0, std::abs(pe.rhs));
    t.dev(eq_gap);

    const auto b = random_hermitian(n, seeds(k, 2));
    const auto c = b + HermitianMatrix::hermitian_part(random_pd(n, seeds(k, 3), 1e-3, 2.0).matrix());
    const auto w = weyl_check(b, c);
    const auto te = trace_exp_monotone_check(b, c);

    const bool ok = pr.pass && pe.pass && eq_gap <= tol && w.pass && te.pass;
    t.trial(ok, [&] {
      return "f=" + f.name + " peierls=" + (pr.pass ? "1" : "0") + " eigenbasis_gap=" + fmt17(eq_gap) +
             " weyl=" + (w.pass ? "1" : "0") + " trace_exp=" + (te.pass ? "1" : "0") + " a=" + encode(a.matrix());
    });
  }
  return t.done();
}

SuiteReport eigensolver(const VerifyOptions& o, double tol) {
  Tally t("eigensolver", tol);
  const Seeds seeds(o.seed, 10);
  for (int k = 0; k < o.trials; ++k) {
    const std::size_t n = dim_for(k, 1, o.dim);
    const bool degenerate = k % 3 == 0;
    std::vector<double> spectrum;
    HermitianMatrix a{ComplexMatrix(n)};
    if (degenerate) {
      // 1, 1, 2, 2, 3, ... : every eigenvalue (but possibly the last) doubled.
      for (std::size_t i = 0; i < n; ++i) spectrum.push_back(1.0 + static_cast<double>(i / 2));
      if (n == 3) spectrum = {1, 1, 2};
      a = random_hermitian_with_spectrum(spectrum, seeds(k, 0));
    } else {
      a = random_hermitian(n, seeds(k, 0));
    }
    const auto e = eig_hermitian(a);
    const double scale = std::max(1.0, a.matrix().frobenius_norm());
    const double recon = (e.reconstruct() - a.matrix()).frobenius_norm() / scale;
    const double orth =
        (e.eigenvectors.adjoint() * e.eigenvectors - ComplexMatrix::identity(n)).frobenius_norm();
    double spec_err = 0.0;
    for (std::size_t i = 0; i < spectrum.size(); ++i)
      spec_err = std::max(spec_err, std::abs(e.eigenvalues[i] - spectrum[i]) / scale);
    const bool sorted = std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end());
    const double d = std::max({recon, orth, spec_err});
    t.dev(d);
    t.trial(d <= tol && sorted, [&] {
      return "reconstruction=" + fmt17(recon) + " orthonormality=" + fmt17(orth) + " spectrum=" + fmt17(spec_err) +
             " a=" + encode(a.matrix());
    });
  }
  return t.done();
}

struct SuiteEntry {
  const char* name;
  double tol;
  SuiteReport (*run)(const VerifyOptions&, double);
};

const SuiteEntry kSuites[] = {
    {"closedforms", 1e-8, closedforms},   {"invariance", 1e-8, invariance},
    {"homogeneity", 1e-9, homogeneity},   {"claimA", 1e-8, claimA},
    {"claimB", 1e-8, claimB},             {"fprime-order", 1e-8, fprime_order},
    {"metric-sqrt", 1e-10, metric_sqrt},  {"gauges", 1e-9, gauges},
    {"inequalities", 1e-10, inequalities}, {"preservers", 1e-8, preservers},
    {"eigensolver", 1e-10, eigensolver},
};

const SuiteEntry& find_suite(std::string_view name) {
  for (const auto& s : kSuites)
    if (name == s.name) return s;
  std::string known;
  for (const auto& s : kSuites) known += std::string(known.empty() ? "" : ", ") + s.name;
  throw ParseError("unknown suite '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace

std::string SuiteReport::line() const {
  return std::string(pass() ? "PASS " : "FAIL ") + name + " trials=" + std::to_string(trials) + " worst=" + fmt(worst);
}

std::string SuiteReport::dump() const {
  std::string s = "suite=" + name + " status=" + (pass() ? "PASS" : "FAIL") + " trials=" + std::to_string(trials) +
                  " passes=" + std::to_string(passes) + " failures=" + std::to_string(failures) +
                  " worst=" + fmt17(worst) + " tol=" + fmt17(tol) + "\n";
  if (counterexample) s += "suite=" + name + " counterexample " + *counterexample + "\n";
  return s;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : kSuites) v.emplace_back(s.name);
    return v;
  }();
  return names;
}

double default_tolerance(std::string_view suite) { return find_suite(suite).tol; }

SuiteReport run_suite(std::string_view suite, const VerifyOptions& opts) {
  const auto& entry = find_suite(suite);
  if (opts.dim < 1) throw PreconditionError("verify: dim must be >= 1");
  if (opts.trials < 1) throw PreconditionError("verify: trials must be >= 1");
  const double tol = opts.tol.value_or(entry.tol);
  if (!(tol > 0.0)) throw PreconditionError("verify: tol must be positive");
  return entry.run(opts, tol);
}

const std::vector<std::string>& catalog_specs() {
  static const std::vector<std::string> specs = {
      "bregman:power:2",  "bregman:power:1.5",   "bregman:entropy",
      "bregman:neglog",   "bregman:logaffine:-2:1:3", "jensen:0.3:power:2",
      "jensen:0.5:neglog", "jensen:0.7:entropy",  "gdm:trace:stein",
      "gdm:frobenius:stein", "gdm:operator:logdetalpha:0.5", "stein",
      "umegaki",          "logdetalpha:0.5",     "logdetalpha:0.3"};
  return specs;
}

}  // namespace pdcone
