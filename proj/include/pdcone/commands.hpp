#pragma once

// Subcommands of the pdcone tool. Exit codes: 0 success, 1 a check failed,
// 2 usage, parse or domain error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "pdcone/preservers.hpp"
#include "pdcone/verify.hpp"

namespace pdcone {

int cmd_compute(std::string_view spec, const std::string& x_path, const std::string& y_path, std::ostream& out,
                std::ostream& err);

int cmd_gen(std::size_t dim, std::uint64_t seed, double lo, double hi, const std::string& out_path, std::ostream& err);

// suite is a suite name or "all".
int cmd_verify(std::string_view suite, const VerifyOptions& opts, const std::optional<std::string>& dump_path,
               std::ostream& out, std::ostream& err);

int cmd_preserves(std::string_view spec, std::string_view map, int trials, std::uint64_t seed, double tol,
                  std::ostream& out, std::ostream& err);

// unitary:<n>:<seed>  antiunitary:<n>:<seed>  congruence:<T.mat>
// conjcongruence:<T.mat>  explog:<T.mat>:<X.mat>
PdMap parse_map(std::string_view text);

// Full command line, argv[0] included.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pdcone
