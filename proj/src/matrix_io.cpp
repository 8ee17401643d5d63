#include "pdcone/matrix_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "text.hpp"

namespace pdcone {

namespace {

struct Token {
  std::string_view text;
  std::size_t line;
  std::size_t col;
};

std::string where(std::string_view source, std::size_t line, std::size_t col) {
  std::ostringstream s;
  s << source << ":" << line << ":" << col;
  return s.str();
}

// Splits one line into whitespace-separated tokens with 1-based columns.
std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), line_no, start + 1});
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void check_hermitian(const ComplexMatrix& a, std::string_view source) {
  const double tol = 1e-12 * a.max_abs();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = i; j < a.dim(); ++j) {
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) {
        std::ostringstream msg;
        msg << source << ": not Hermitian: entry (" << i << "," << j << ") = " << a(i, j) << " but (" << j << "," << i
            << ") = " << a(j, i);
        throw DomainError(msg.str());
      }
    }
  }
}

}  // namespace

ComplexMatrix parse_matrix_text(std::string_view text, std::string_view source) {
  std::vector<std::vector<Token>> rows;
  std::size_t line_no = 0;
  std::size_t last_line = 0;
  for (std::string_view line : detail::split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto toks = tokenize(line, line_no);
    if (toks.empty() || toks.front().text.front() == '#') continue;
    rows.push_back(std::move(toks));
    last_line = line_no;
  }
  if (rows.empty()) throw ParseError(std::string(source) + ": empty matrix file");

  const auto& head = rows.front();
  if (head.size() != 1)
    throw ParseError(where(source, head[1].line, head[1].col) + ": expected a single dimension on the first line");
  std::size_t n = 0;
  {
    const auto t = head[0];
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size() || n == 0)
      throw ParseError(where(source, t.line, t.col) + ": dimension must be a positive integer, got '" +
                       std::string(t.text) + "'");
  }
  if (rows.size() - 1 < n)
    throw ParseError(where(source, last_line + 1, 1) + ": expected " + std::to_string(n) + " rows, found " +
                     std::to_string(rows.size() - 1));
  if (rows.size() - 1 > n) {
    const auto& extra = rows[n + 1].front();
    throw ParseError(where(source, extra.line, extra.col) + ": unexpected data after " + std::to_string(n) + " rows");
  }

  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = rows[i + 1];
    if (r.size() != 2 * n) {
      const auto& at = r.size() > 2 * n ? r[2 * n] : r.back();
      throw ParseError(where(source, at.line, at.col) + ": row " + std::to_string(i) + " has " +
                       std::to_string(r.size()) + " numbers, expected " + std::to_string(2 * n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      double v[2];
      for (int k = 0; k < 2; ++k) {
        const auto& t = r[2 * j + k];
        v[k] = detail::parse_double(t.text, where(source, t.line, t.col));
        if (!std::isfinite(v[k])) throw ParseError(where(source, t.line, t.col) + ": non-finite entry");
      }
      a(i, j) = cplx(v[0], v[1]);
    }
  }
  return a;
}

HermitianMatrix parse_hermitian_text(std::string_view text, std::string_view source) {
  auto a = parse_matrix_text(text, source);
  check_hermitian(a, source);
  return HermitianMatrix::hermitian_part(a);
}

PDMatrix parse_pd_text(std::string_view text, std::string_view source) {
  auto h = parse_hermitian_text(text, source);
  try {
    return PDMatrix(std::move(h));
  } catch (const DomainError& e) {
    throw DomainError(std::string(source) + ": " + e.what());
  }
}

ComplexMatrix read_matrix(const std::string& path) { return parse_matrix_text(slurp(path), path); }
HermitianMatrix read_hermitian(const std::string& path) { return parse_hermitian_text(slurp(path), path); }
PDMatrix read_pd(const std::string& path) { return parse_pd_text(slurp(path), path); }

std::string format_matrix(const ComplexMatrix& a) {
  std::string out = std::to_string(a.dim()) + "\n";
  char buf[64];
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      std::snprintf(buf, sizeof buf, "%s%.17g %.17g", j ? " " : "", a(i, j).real(), a(i, j).imag());
      out += buf;
    }
    out += "\n";
  }
  return out;
}

void write_matrix(const std::string& path, const ComplexMatrix& a) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out << format_matrix(a);
  if (!out.flush()) throw Error("write to '" + path + "' failed");
}

}  // namespace pdcone
