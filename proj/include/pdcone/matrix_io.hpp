#pragma once

// Plain-text matrix files:
//
//   n
//   re(0,0) im(0,0) re(0,1) im(0,1) ...   (row 0: 2n numbers)
//   ...                                   (n rows)
//
// Lines starting with '#' and blank lines are ignored. Output uses 17
// significant digits, so write followed by read is bit-exact.

#include <string>
#include <string_view>

#include "pdcone/matcore.hpp"

namespace pdcone {

// Any square complex matrix. ParseError messages carry "<source>:<line>:<col>".
ComplexMatrix parse_matrix_text(std::string_view text, std::string_view source = "<input>");

// DomainError when the matrix is not Hermitian within 1e-12 max|a_ij|
// (names the offending entry) or, for the PD variant, not positive definite
// (names lambda_min).
HermitianMatrix parse_hermitian_text(std::string_view text, std::string_view source = "<input>");
PDMatrix parse_pd_text(std::string_view text, std::string_view source = "<input>");

// File variants; an unreadable file is an Error.
ComplexMatrix read_matrix(const std::string& path);
HermitianMatrix read_hermitian(const std::string& path);
PDMatrix read_pd(const std::string& path);

std::string format_matrix(const ComplexMatrix& a);
void write_matrix(const std::string& path, const ComplexMatrix& a);

}  // namespace pdcone
