#include "pdcone/commands.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pdcone/divergences.hpp"
#include "pdcone/errors.hpp"
#include "pdcone/matrix_io.hpp"
#include "text.hpp"

namespace pdcone {

namespace {

std::string fmt15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

std::size_t parse_size(std::string_view s, std::string_view what) {
  const double v = detail::parse_double(s, what);
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e6) throw ParseError(std::string(what) + ": expected a positive integer");
  return static_cast<std::size_t>(v);
}

std::uint64_t parse_seed(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(std::string(what) + ": '" + std::string(s) + "' is not a seed");
  return v;
}

}  // namespace

PdMap parse_map(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("map '" + std::string(text) + "': missing ':'");
  const auto kind = text.substr(0, colon);
  const auto rest = text.substr(colon + 1);
  if (kind == "unitary" || kind == "antiunitary") {
    const auto parts = detail::split(rest, ':');
    if (parts.size() != 2) throw ParseError("map '" + std::string(text) + "': expected " + std::string(kind) + ":<n>:<seed>");
    const auto n = parse_size(parts[0], "map dimension");
    return CongruenceMap(random_unitary(n, parse_seed(parts[1], "map seed")), kind == "antiunitary");
  }
  if (kind == "congruence" || kind == "conjcongruence")
    return CongruenceMap(read_matrix(std::string(rest)), kind == "conjcongruence");
  if (kind == "explog") {
    const auto sep = rest.rfind(':');
    if (sep == std::string_view::npos) throw ParseError("map '" + std::string(text) + "': expected explog:<T.mat>:<X.mat>");
    return ExpLogMap(read_matrix(std::string(rest.substr(0, sep))), read_hermitian(std::string(rest.substr(sep + 1))));
  }
  throw ParseError("map '" + std::string(text) + "': unknown kind '" + std::string(kind) + "'");
}

int cmd_compute(std::string_view spec, const std::string& x_path, const std::string& y_path, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    const auto s = DivergenceSpec::parse(spec);
    const auto x = read_pd(x_path);
    const auto y = read_pd(y_path);
    out << fmt15(evaluate(s, x, y)) << "\n";
    return 0;
  });
}

int cmd_gen(std::size_t dim, std::uint64_t seed, double lo, double hi, const std::string& out_path, std::ostream& err) {
  return guarded(err, [&] {
    write_matrix(out_path, random_pd(dim, seed, lo, hi).matrix());
    return 0;
  });
}

int cmd_verify(std::string_view suite, const VerifyOptions& opts, const std::optional<std::string>& dump_path,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<std::string> names;
    if (suite == "all") {
      names = suite_names();
    } else {
      default_tolerance(suite);  // rejects unknown names before any work
      names.emplace_back(suite);
    }
    std::ofstream dump;
    if (dump_path) {
      dump.open(*dump_path, std::ios::trunc);
      if (!dump) throw Error("cannot write '" + *dump_path + "'");
    }
    bool all_pass = true;
    for (const auto& name : names) {
      const auto r = run_suite(name, opts);
      out << r.line() << "\n" << std::flush;
      if (dump_path) dump << r.dump();
      all_pass = all_pass && r.pass();
    }
    if (dump_path && !dump.flush()) throw Error("write to '" + *dump_path + "' failed");
    return all_pass ? 0 : 1;
  });
}

int cmd_preserves(std::string_view spec, std::string_view map, int trials, std::uint64_t seed, double tol,
                  std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto s = DivergenceSpec::parse(spec);
    const auto m = parse_map(map);
    const auto r = check_preserves(s, m, trials, seed, tol);
    out << (r.pass() ? "PRESERVED " : "NOT-PRESERVED ") << "spec=" << r.spec << " trials=" << r.trials
        << " failures=" << r.failures << " max_deviation=" << fmt15(r.max_deviation) << "\n";
    if (r.first_counterexample) {
      const auto& c = *r.first_counterexample;
      out << "counterexample original=" << fmt15(c.original) << " transformed=" << fmt15(c.transformed) << "\n"
          << "A:\n" << format_matrix(c.a.matrix()) << "B:\n" << format_matrix(c.b.matrix());
    }
    return r.pass() ? 0 : 1;
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Divergences on the positive definite cone"};
  app.require_subcommand(1);

  std::string spec, x_path, y_path;
  auto* compute = app.add_subcommand("compute", "Evaluate a divergence D(X, Y)");
  compute->add_option("--spec", spec, "Divergence spec, e.g. stein, bregman:power:2")->required();
  compute->add_option("X", x_path, "Matrix file for X")->required();
  compute->add_option("Y", y_path, "Matrix file for Y")->required();

  std::size_t dim = 0;
  std::uint64_t seed = 0;
  double lo = 0.1, hi = 10.0;
  std::string out_path;
  auto* gen = app.add_subcommand("gen", "Write a seeded random PD matrix");
  gen->add_option("--dim", dim, "Dimension")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Seed")->required();
  gen->add_option("--lo", lo, "Smallest eigenvalue bound")->capture_default_str();
  gen->add_option("--hi", hi, "Largest eigenvalue bound")->capture_default_str();
  gen->add_option("-o,--output", out_path, "Output path")->required();

  std::string suite;
  VerifyOptions vopts;
  double vtol = 0.0;
  std::string dump_path;
  auto* verify = app.add_subcommand("verify", "Run property suites");
  verify->add_option("--suite", suite, "Suite name or 'all'")->required();
  verify->add_option("--dim", vopts.dim, "Largest dimension")->capture_default_str();
  verify->add_option("--trials", vopts.trials, "Seeded trials per suite")->capture_default_str();
  verify->add_option("--seed", vopts.seed, "Seed")->capture_default_str();
  auto* tol_opt = verify->add_option("--tol", vtol, "Tolerance (suite default when omitted)");
  auto* dump_opt = verify->add_option("--dump", dump_path, "Write key=value report to this path");

  std::string pspec, pmap;
  int ptrials = 100;
  std::uint64_t pseed = 42;
  double ptol = 1e-8;
  auto* pres = app.add_subcommand("preserves", "Check whether a map preserves a divergence on random pairs");
  pres->add_option("--spec", pspec, "Divergence spec")->required();
  pres->add_option("--map", pmap, "unitary:<n>:<seed>, antiunitary:<n>:<seed>, congruence:<T>, "
                                  "conjcongruence:<T>, explog:<T>:<X>")
      ->required();
  pres->add_option("--trials", ptrials, "Random pairs")->capture_default_str();
  pres->add_option("--seed", pseed, "Seed")->capture_default_str();
  pres->add_option("--tol", ptol, "Relative tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (*compute) return cmd_compute(spec, x_path, y_path, out, err);
  if (*gen) return cmd_gen(dim, seed, lo, hi, out_path, err);
  if (*verify) {
    if (*tol_opt) vopts.tol = vtol;
    return cmd_verify(suite, vopts, *dump_opt ? std::optional<std::string>(dump_path) : std::nullopt, out, err);
  }
  return cmd_preserves(pspec, pmap, ptrials, pseed, ptol, out, err);
}

}  // namespace pdcone
