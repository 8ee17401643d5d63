#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "pdcone/divergences.hpp"
#include "pdcone/matcore.hpp"

namespace pdcone {

/// A |-> T A T*, or A |-> T conj(A) T* when conjugate_first is set (the
/// conjugate-linear case in a fixed basis).
class CongruenceMap {
 public:
  // Throws DomainError unless sigma_min(T) > 1e-12 sigma_max(T).
  explicit CongruenceMap(ComplexMatrix t, bool conjugate_first = false);

  const ComplexMatrix& t() const { return t_; }
  bool conjugate_first() const { return conjugate_first_; }
  std::size_t dim() const { return t_.dim(); }

  CongruenceMap inverse() const;

 private:
  ComplexMatrix t_;
  bool conjugate_first_;
};

/// A |-> exp(T (log A) T* + X).
class ExpLogMap {
 public:
  ExpLogMap(ComplexMatrix t, HermitianMatrix x);

  const ComplexMatrix& t() const { return t_; }
  const HermitianMatrix& offset() const { return x_; }
  std::size_t dim() const { return t_.dim(); }

  // T -> T^{-1}, X -> -T^{-1} X T^{-1}*.
  ExpLogMap inverse() const;

 private:
  ComplexMatrix t_;
  HermitianMatrix x_;
};

using PdMap = std::variant<CongruenceMap, ExpLogMap>;

PDMatrix apply_congruence(const CongruenceMap& m, const PDMatrix& a);
PDMatrix apply_explog(const ExpLogMap& m, const PDMatrix& a);
PDMatrix apply_map(const PdMap& m, const PDMatrix& a);
std::size_t map_dim(const PdMap& m);

struct PolarDecomposition {
  ComplexMatrix unitary;
  PDMatrix positive;  // sqrt(T* T)
};

// T = U P. Throws DomainError for singular T.
PolarDecomposition polar_decompose(const ComplexMatrix& t);

struct PreservationCounterexample {
  PDMatrix a;
  PDMatrix b;
  double original = 0.0;     // D(A, B)
  double transformed = 0.0;  // D(phi A, phi B)
};

struct PreservationReport {
  std::string spec;
  int trials = 0;
  int passes = 0;
  int failures = 0;
  double max_deviation = 0.0;  // max |D(phi A, phi B) - D(A, B)|
  std::optional<PreservationCounterexample> first_counterexample;

  bool pass() const { return failures == 0; }
};

struct PreservationOptions {
  double lo = 0.1;  // spectra of the sampled pairs
  double hi = 10.0;
};

// Samples PD pairs (A, B) with seeds derived from (seed, trial index) and
// compares D(phi A, phi B) against D(A, B). A trial passes when the
// deviation is at most tol * max(1, |D(A, B)|).
PreservationReport check_preserves(const DivergenceSpec& spec, const PdMap& map, int trials, std::uint64_t seed,
                                   double tol, const PreservationOptions& opts = {});

}  // namespace pdcone
