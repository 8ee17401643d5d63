#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "pdcone/commands.hpp"
#include "pdcone/matrix_io.hpp"

using namespace pdcone;
namespace fs = std::filesystem;

namespace {

const cplx I{0.0, 1.0};

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("pdcone_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content = "") const {
    const auto p = (path / name).string();
    if (!content.empty()) std::ofstream(p) << content;
    return p;
  }
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pdcone");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse_matrix_text examples") {
  const auto one = parse_matrix_text("1\n2 0\n");
  CHECK(one == ComplexMatrix::diagonal({2}));
  const auto two = parse_hermitian_text("2\n2 0 1 0\n1 0 2 0\n");
  CHECK(two.matrix() == ComplexMatrix(2, {2, 1, 1, 2}));
  CHECK_THROWS_AS(parse_hermitian_text("2\n2 0 0 1\n0 1 2 0\n"), DomainError);
  // i above the diagonal and -i below is Hermitian.
  CHECK(parse_hermitian_text("2\n2 0 0 1\n0 -1 2 0\n").matrix() == ComplexMatrix(2, {2, I, -I, 2}));
}

TEST_CASE("comments, blank lines and CRLF are ignored") {
  const auto a = parse_matrix_text("# header\n\n2\r\n# row 0\n1 0 0 0\r\n\n0 0 1 0\n");
  CHECK(a == ComplexMatrix::identity(2));
}

TEST_CASE("malformed files report line and column") {
  auto message = [](std::string_view text) {
    try {
      parse_matrix_text(text, "m.mat");
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("") == "m.mat: empty matrix file");
  CHECK(message("x\n1 0\n").find("m.mat:1:1") != std::string::npos);
  CHECK(message("0\n").find("m.mat:1:1") != std::string::npos);
  CHECK(message("2 3\n").find("m.mat:1:3") != std::string::npos);
  CHECK(message("2\n1 0 0 0\n").find("expected 2 rows") != std::string::npos);
  CHECK(message("1\n1 0 5\n").find("m.mat:2:5") != std::string::npos);
  CHECK(message("1\n1 zz\n").find("m.mat:2:3") != std::string::npos);
  CHECK(message("1\n1 0\n1 0\n").find("m.mat:3:1") != std::string::npos);
  CHECK(message("1\nnan 0\n").find("non-finite") != std::string::npos);
}

TEST_CASE("PD validation reports lambda_min") {
  try {
    parse_pd_text("2\n1 0 2 0\n2 0 1 0\n", "n.mat");
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("n.mat") != std::string::npos);
    const auto at = msg.find("lambda_min = ");
    REQUIRE(at != std::string::npos);
    CHECK(std::stod(msg.substr(at + 13)) == doctest::Approx(-1.0));
  }
}

TEST_CASE("write then read is bit-exact") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const std::size_t n = 1 + s % 6;
    const auto a = random_pd(n, s, 1e-3, 1e3).matrix();
    CHECK(parse_matrix_text(format_matrix(a)) == a);
    const auto g = random_unitary(n, s);
    CHECK(parse_matrix_text(format_matrix(g)) == g);
  }
  CHECK(format_matrix(ComplexMatrix::diagonal({2})) == "1\n2 0\n");
  CHECK(format_matrix(ComplexMatrix(2, {0.1, I, cplx(0, -1), 2})) == "2\n0.10000000000000001 0 0 1\n0 -1 2 0\n");
  // Signed zeros survive the round trip.
  const ComplexMatrix nz(1, {cplx(-0.0, -0.0)});
  CHECK(std::signbit(parse_matrix_text(format_matrix(nz))(0, 0).real()));
}

TEST_CASE("file helpers") {
  TempDir tmp;
  const auto p = tmp.file("a.mat");
  const auto a = random_pd(3, 1, 0.5, 5.0);
  write_matrix(p, a.matrix());
  CHECK(read_pd(p).matrix() == a.matrix());
  CHECK_THROWS_AS(read_matrix(tmp.file("missing.mat")), Error);
  CHECK_THROWS_AS(write_matrix((tmp.path / "no" / "such" / "dir.mat").string(), a.matrix()), Error);
}

TEST_CASE("compute examples") {
  TempDir tmp;
  const auto x = tmp.file("x.mat", "2\n2 0 0 0\n0 0 1 0\n");
  const auto id = tmp.file("i.mat", "2\n1 0 0 0\n0 0 1 0\n");
  const auto four = tmp.file("4.mat", "1\n4 0\n");
  const auto one = tmp.file("1.mat", "1\n1 0\n");

  auto r = cli({"compute", "--spec", "stein", x, id});
  CHECK(r.code == 0);
  CHECK(r.out == "0.306852819440055\n");
  r = cli({"compute", "--spec", "jensen:0.5:neglog", four, one});
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(0.223143551314210).epsilon(1e-14));
  r = cli({"compute", "--spec", "bregman:power:2", x, x});
  CHECK(r.out == "0\n");

  CHECK(cli({"compute", "--spec", "nonsense", x, id}).code == 2);
  CHECK(cli({"compute", "--spec", "stein", x, tmp.file("missing.mat")}).code == 2);
  CHECK(cli({"compute", "--spec", "stein", x, one}).code == 2);  // dimension mismatch
  const auto herm = tmp.file("h.mat", "2\n2 0 0 1\n0 1 2 0\n");
  r = cli({"compute", "--spec", "stein", herm, id});
  CHECK(r.code == 2);
  CHECK(r.err.find("not Hermitian") != std::string::npos);
  CHECK(cli({"compute", "--spec", "stein", x}).code == 2);
}

TEST_CASE("gen") {
  TempDir tmp;
  const auto p = tmp.file("g.mat");
  CHECK(cli({"gen", "--dim", "1", "--seed", "5", "--lo", "2", "--hi", "2", "-o", p}).code == 0);
  CHECK(slurp(p) == "1\n2 0\n");

  const auto p1 = tmp.file("g1.mat"), p2 = tmp.file("g2.mat");
  CHECK(cli({"gen", "--dim", "3", "--seed", "7", "--lo", "0.5", "--hi", "5", "-o", p1}).code == 0);
  CHECK(cli({"gen", "--dim", "3", "--seed", "7", "--lo", "0.5", "--hi", "5", "-o", p2}).code == 0);
  CHECK(slurp(p1) == slurp(p2));
  const auto g = read_pd(p1);
  CHECK(g.lambda_min() >= 0.5 - 1e-12);
  CHECK(g.lambda_max() <= 5.0 + 1e-12);

  // Defaults lo = 0.1, hi = 10.
  CHECK(cli({"gen", "--dim", "4", "--seed", "1", "-o", p1}).code == 0);
  CHECK(read_pd(p1).matrix() == random_pd(4, 1, 0.1, 10.0).matrix());

  CHECK(cli({"gen", "--dim", "2", "--seed", "1", "--lo", "3", "--hi", "1", "-o", p}).code == 2);
  CHECK(cli({"gen", "--dim", "0", "--seed", "1", "-o", p}).code == 2);
  CHECK(cli({"gen", "--dim", "2", "--seed", "1", "-o", (tmp.path / "x" / "y.mat").string()}).code == 2);
}

TEST_CASE("verify") {
  TempDir tmp;
  auto r = cli({"verify", "--suite", "closedforms", "--dim", "4", "--trials", "100", "--seed", "42", "--tol", "1e-8"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("PASS closedforms trials=100 worst=", 0) == 0);

  r = cli({"verify", "--suite", "homogeneity", "--dim", "3", "--trials", "50", "--seed", "42", "--tol", "1e-9"});
  CHECK(r.code == 0);
  r = cli({"verify", "--suite", "metric-sqrt", "--dim", "3", "--trials", "500", "--seed", "42", "--tol", "1e-10"});
  CHECK(r.code == 0);

  // An impossible tolerance turns a suite red and exits 1.
  r = cli({"verify", "--suite", "eigensolver", "--tol", "1e-300"});
  CHECK(r.code == 1);
  CHECK(r.out.rfind("FAIL eigensolver", 0) == 0);

  CHECK(cli({"verify", "--suite", "bogus"}).code == 2);
  CHECK(cli({"verify", "--suite", "claimA", "--trials", "0"}).code == 2);
  CHECK(cli({"verify"}).code == 2);

  const auto d1 = tmp.file("d1.txt"), d2 = tmp.file("d2.txt");
  const auto a = cli({"verify", "--suite", "all", "--dim", "3", "--trials", "20", "--seed", "9", "--dump", d1});
  const auto b = cli({"verify", "--suite", "all", "--dim", "3", "--trials", "20", "--seed", "9", "--dump", d2});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(slurp(d1) == slurp(d2));
  std::istringstream lines(a.out);
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    CHECK(line.find(suite_names()[count]) == 5);
    ++count;
  }
  CHECK(count == suite_names().size());
  CHECK(slurp(d1).find("suite=preservers status=PASS") != std::string::npos);

  const auto d3 = tmp.file("d3.txt");
  cli({"verify", "--suite", "eigensolver", "--tol", "1e-300", "--dump", d3});
  CHECK(slurp(d3).find("suite=eigensolver counterexample reconstruction=") != std::string::npos);
}

TEST_CASE("preserves") {
  TempDir tmp;
  const auto t = tmp.file("t.mat", "2\n1 0 0 0\n0 0 2 0\n");
  auto r = cli({"preserves", "--spec", "stein", "--map", "congruence:" + t});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("PRESERVED spec=stein trials=100", 0) == 0);
  r = cli({"preserves", "--spec", "bregman:power:2", "--map", "congruence:" + t, "--trials", "20"});
  CHECK(r.code == 1);
  CHECK(r.out.find("counterexample") != std::string::npos);
  CHECK(cli({"preserves", "--spec", "umegaki", "--map", "antiunitary:3:4"}).code == 0);
  CHECK(cli({"preserves", "--spec", "umegaki", "--map", "unitary:2:4"}).code == 0);

  const auto zero = tmp.file("z.mat", "2\n0 0 0 0\n0 0 0 0\n");
  const auto off = tmp.file("o.mat", "2\n1 0 0 0\n0 0 -1 0\n");
  const auto id = tmp.file("i.mat", "2\n1 0 0 0\n0 0 1 0\n");
  const auto u = tmp.file("u.mat", format_matrix(random_unitary(2, 3)));
  CHECK(cli({"preserves", "--spec", "umegaki", "--map", "explog:" + u + ":" + zero}).code == 0);
  CHECK(cli({"preserves", "--spec", "umegaki", "--map", "explog:" + id + ":" + off}).code == 1);

  CHECK(cli({"preserves", "--spec", "stein", "--map", "bogus:1"}).code == 2);
  CHECK(cli({"preserves", "--spec", "stein", "--map", "unitary:2"}).code == 2);
  CHECK(cli({"preserves", "--spec", "stein", "--map", "congruence:" + zero}).code == 2);  // singular T
}

TEST_CASE("help exits 0") {
  const auto r = cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("compute") != std::string::npos);
}
