#include "pdcone/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "text.hpp"

namespace pdcone {

namespace {

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw DimensionError(msg.str());
  }
}

void require_open_unit(double lambda, const char* what) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    std::ostringstream msg;
    msg << what << ": lambda must lie in (0,1), got " << lambda;
    throw PreconditionError(msg.str());
  }
}

// Eigendecomposition of a PSD argument with roundoff-level eigenvalues
// snapped to exactly 0.
struct PsdSpectrum {
  EigenDecomposition eig;
  bool singular = false;
};

PsdSpectrum psd_spectrum(const HermitianMatrix& a, const char* what) {
  PsdSpectrum s{eig_hermitian(a), false};
  if (s.eig.eigenvalues.empty()) return s;
  const double cut = kPdThreshold * std::max(1.0, s.eig.eigenvalues.back());
  for (double& l : s.eig.eigenvalues) {
    if (l < -cut) {
      std::ostringstream msg;
      msg.precision(17);
      msg << what << ": argument is not positive semidefinite (eigenvalue " << l << ")";
      throw DomainError(msg.str());
    }
    if (l <= cut) {
      l = 0.0;
      s.singular = true;
    }
  }
  return s;
}

double trace_of(const ConvexGenerator& f, const EigenDecomposition& e) {
  double t = 0.0;
  for (double l : e.eigenvalues) t += f.value(l);
  return t;
}

// Re tr(P Q) for Hermitian P, Q; the imaginary part is roundoff.
double real_trace_product(const ComplexMatrix& p, const ComplexMatrix& q) {
  const cplx t = trace_product(p, q);
  const double scale = p.frobenius_norm() * q.frobenius_norm();
  if (std::abs(t.imag()) > 1e-10 * std::max(scale, 1e-300) && std::abs(t.imag()) > 1e-300) {
    std::ostringstream msg;
    msg << "trace of Hermitian product has imaginary part " << t.imag() << " at scale " << scale;
    throw ConsistencyError(msg.str());
  }
  return t.real();
}

}  // namespace

double clamp_divergence(double raw, double scale) {
  if (raw >= 0.0) return raw;
  if (raw >= -1e-9 * std::max(1.0, scale)) return 0.0;
  std::ostringstream msg;
  msg.precision(17);
  msg << "divergence evaluated to " << raw << " (scale " << scale << "); expected a nonnegative value";
  throw ConsistencyError(msg.str());
}

double bregman(const ConvexGenerator& f, const HermitianMatrix& x, const HermitianMatrix& y) {
  require_same_dim(x, y, "bregman");
  const auto sx = psd_spectrum(x, "bregman");
  const auto sy = psd_spectrum(y, "bregman");
  if ((sx.singular || sy.singular) && !(f.limit_at_zero && f.deriv_limit_at_zero))
    throw DomainError("bregman: singular PSD argument needs finite limits of f and f' at 0 for generator " + f.name);
  const double tfx = trace_of(f, sx.eig);
  const double tfy = trace_of(f, sy.eig);
  const auto fpy = apply_function([&f](double v) { return f.derivative(v); }, sy.eig);
  const double lin = real_trace_product(fpy.matrix(), (x - y).matrix());
  return clamp_divergence(tfx - tfy - lin, std::abs(tfx) + std::abs(tfy) + std::abs(lin));
}

double jensen(const ConvexGenerator& f, double lambda, const HermitianMatrix& x, const HermitianMatrix& y) {
  require_open_unit(lambda, "jensen");
  require_same_dim(x, y, "jensen");
  const auto sx = psd_spectrum(x, "jensen");
  const auto sy = psd_spectrum(y, "jensen");
  const auto sm = psd_spectrum(lambda * x + (1.0 - lambda) * y, "jensen");
  if ((sx.singular || sy.singular || sm.singular) && !f.limit_at_zero)
    throw DomainError("jensen: singular PSD argument needs a finite limit of f at 0 for generator " + f.name);
  const double a = lambda * trace_of(f, sx.eig);
  const double b = (1.0 - lambda) * trace_of(f, sy.eig);
  const double c = trace_of(f, sm.eig);
  return clamp_divergence(a + b - c, std::abs(a) + std::abs(b) + std::abs(c));
}

double symmetrized_bregman(const ConvexGenerator& f, const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b, "symmetrized_bregman");
  const auto sa = psd_spectrum(a, "symmetrized_bregman");
  const auto sb = psd_spectrum(b, "symmetrized_bregman");
  auto fp = [&f](double v) { return f.derivative(v); };
  const auto diff = apply_function(fp, sa.eig) - apply_function(fp, sb.eig);
  const double v = real_trace_product(diff.matrix(), (a - b).matrix());
  return clamp_divergence(v, diff.matrix().frobenius_norm() * (a - b).matrix().frobenius_norm());
}

double gdm(NormKind norm, const GaugeFunction& g, const PDMatrix& x, const PDMatrix& y) {
  require_same_dim(x, y, "gdm");
  // g(W) is Hermitian, so its singular values are |g(w_i)|.
  const auto e = eig_hermitian(whiten(x, y));
  double sum = 0.0, sumsq = 0.0, mx = 0.0;
  for (double w : e.eigenvalues) {
    const double gw = g(w);
    if (!std::isfinite(gw)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "gdm: gauge " << g.name << " is not finite at eigenvalue " << w;
      throw DomainError(msg.str());
    }
    sum += std::abs(gw);
    sumsq += gw * gw;
    mx = std::max(mx, std::abs(gw));
  }
  switch (norm) {
    case NormKind::Trace:
      return sum;
    case NormKind::Frobenius:
      return std::sqrt(sumsq);
    case NormKind::Operator:
      return mx;
  }
  return 0.0;
}

double stein_loss(const PDMatrix& x, const PDMatrix& y) {
  require_same_dim(x, y, "stein_loss");
  const double tr = real_trace_product(x.matrix(), matrix_inverse(y).matrix());
  const double ldx = logdet(x), ldy = logdet(y);
  const double n = static_cast<double>(x.dim());
  return clamp_divergence(tr - ldx + ldy - n, std::abs(tr) + std::abs(ldx) + std::abs(ldy) + n);
}

double umegaki(const PDMatrix& a, const PDMatrix& b) {
  require_same_dim(a, b, "umegaki");
  const auto ea = eig_hermitian(a);
  double alog = 0.0;
  for (double l : ea.eigenvalues) alog += l * std::log(l);
  const double cross = real_trace_product(a.matrix(), matrix_log(b).matrix());
  const double ta = a.trace(), tb = b.trace();
  return clamp_divergence(alog - cross - ta + tb, std::abs(alog) + std::abs(cross) + std::abs(ta) + std::abs(tb));
}

double logdet_alpha(double lambda, const PDMatrix& x, const PDMatrix& y) {
  require_open_unit(lambda, "logdet_alpha");
  require_same_dim(x, y, "logdet_alpha");
  const double mix = logdet(PDMatrix(lambda * x + (1.0 - lambda) * y));
  const double lx = lambda * logdet(x), ly = (1.0 - lambda) * logdet(y);
  return clamp_divergence(mix - lx - ly, std::abs(mix) + std::abs(lx) + std::abs(ly));
}

double evaluate(const DivergenceSpec& spec, const PDMatrix& x, const PDMatrix& y) {
  struct Visitor {
    const PDMatrix& x;
    const PDMatrix& y;
    double operator()(const BregmanSpec& s) const { return bregman(s.f, x, y); }
    double operator()(const JensenSpec& s) const { return jensen(s.f, s.lambda, x, y); }
    double operator()(const GdmSpec& s) const { return gdm(s.norm, s.g, x, y); }
    double operator()(const SteinSpec&) const { return stein_loss(x, y); }
    double operator()(const UmegakiSpec&) const { return umegaki(x, y); }
    double operator()(const LogDetAlphaSpec& s) const { return logdet_alpha(s.lambda, x, y); }
  };
  return std::visit(Visitor{x, y}, spec.kind);
}

// ---------------------------------------------------------------------------

std::string_view norm_name(NormKind kind) {
  switch (kind) {
    case NormKind::Trace:
      return "trace";
    case NormKind::Frobenius:
      return "frobenius";
    case NormKind::Operator:
      return "operator";
  }
  return "?";
}

NormKind parse_norm(std::string_view name) {
  if (name == "trace") return NormKind::Trace;
  if (name == "frobenius") return NormKind::Frobenius;
  if (name == "operator") return NormKind::Operator;
  throw ParseError("unknown norm '" + std::string(name) + "' (expected trace, frobenius or operator)");
}

DivergenceSpec DivergenceSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  const auto rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const bool has_rest = colon != std::string_view::npos;

  try {
    if (head == "stein" && !has_rest) return {SteinSpec{}};
    if (head == "umegaki" && !has_rest) return {UmegakiSpec{}};
    if (head == "logdetalpha" && has_rest) {
      const double l = detail::parse_double(rest, "logdetalpha lambda");
      require_open_unit(l, "logdetalpha");
      return {LogDetAlphaSpec{l}};
    }
    if (head == "bregman" && has_rest) return {BregmanSpec{std_generator(rest)}};
    if (head == "jensen" && has_rest) {
      const auto c2 = rest.find(':');
      if (c2 == std::string_view::npos) throw ParseError("jensen spec needs jensen:<lambda>:<generator>");
      const double l = detail::parse_double(rest.substr(0, c2), "jensen lambda");
      require_open_unit(l, "jensen");
      return {JensenSpec{std_generator(rest.substr(c2 + 1)), l}};
    }
    if (head == "gdm" && has_rest) {
      const auto c2 = rest.find(':');
      if (c2 == std::string_view::npos) throw ParseError("gdm spec needs gdm:<norm>:<gauge>");
      return {GdmSpec{parse_norm(rest.substr(0, c2)), std_gauge(rest.substr(c2 + 1))}};
    }
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("divergence spec '") + std::string(text) + "': " + e.what());
  }
  throw ParseError("unknown divergence spec '" + std::string(text) + "'");
}

std::string DivergenceSpec::to_string() const {
  struct Visitor {
    std::string operator()(const BregmanSpec& s) const { return "bregman:" + s.f.name; }
    std::string operator()(const JensenSpec& s) const {
      return "jensen:" + detail::format_number(s.lambda) + ":" + s.f.name;
    }
    std::string operator()(const GdmSpec& s) const { return "gdm:" + std::string(norm_name(s.norm)) + ":" + s.g.name; }
    std::string operator()(const SteinSpec&) const { return "stein"; }
    std::string operator()(const UmegakiSpec&) const { return "umegaki"; }
    std::string operator()(const LogDetAlphaSpec& s) const { return "logdetalpha:" + detail::format_number(s.lambda); }
  };
  return std::visit(Visitor{}, kind);
}

}  // namespace pdcone
