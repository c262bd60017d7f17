#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "debranges/cli.hpp"
#include "debranges/errors.hpp"
#include "debranges/io.hpp"

using namespace debranges;

namespace {

const std::string kPresets = DEBRANGES_PRESET_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "debranges");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "debranges_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("nodes at the half-integers") {
  const auto r = invoke({"nodes", "--hb", kPresets + "/pw_ef.json", "--alpha", "0", "--n-lo", "-2",
                         "--n-hi", "2"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,lambda,residual");
  const std::vector<double> expect = {-1.0, -0.5, 0.0, 0.5, 1.0};
  for (double x : expect) {
    REQUIRE(std::getline(in, line));
    const auto a = line.find(',');
    const auto b = line.find(',', a + 1);
    CHECK(std::abs(std::stod(line.substr(a + 1, b - a - 1)) - x) < 1e-14);
    CHECK(std::stod(line.substr(b + 1)) <= 1e-10);
  }
}

TEST_CASE("alpha outside [0, pi) is normalized without moving the targets") {
  const auto base = invoke({"nodes", "--preset", "pw", "--alpha", "0.5", "--n-lo", "0", "--n-hi", "2"});
  const auto shifted = invoke({"nodes", "--preset", "pw", "--alpha", io::format_double(0.5 + std::numbers::pi),
                               "--n-lo", "-1", "--n-hi", "1"});
  REQUIRE(base.code == 0);
  REQUIRE(shifted.code == 0);
  auto lambdas = [](const std::string& csv) {
    std::vector<double> out;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      const auto a = line.find(',');
      out.push_back(std::stod(line.substr(a + 1, line.find(',', a + 1) - a - 1)));
    }
    return out;
  };
  const auto x = lambdas(base.out);
  const auto y = lambdas(shifted.out);
  REQUIRE(x.size() == y.size());
  for (std::size_t k = 0; k < x.size(); ++k) CHECK(std::abs(x[k] - y[k]) < 1e-12);
}

TEST_CASE("bounds on Paley-Wiener integer nodes") {
  const auto r = invoke({"bounds", "--hb", kPresets + "/pw_e.json", "--n-lo", "-500", "--n-hi", "500",
                         "--normalize"});
  REQUIRE(r.code == 0);
  const auto j = io::json::parse(r.out);
  CHECK(j.at("A_est").get<double>() >= 0.98);
  CHECK(j.at("B_est").get<double>() <= 1.02);
  CHECK(j.at("normalize").get<bool>());
  CHECK(j.at("window") == io::json::array({-500, 500}));
  CHECK(j.at("min_gram_eig").get<double>() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("reconstruct, kernel and multiplex subcommands") {
  const auto rec = invoke({"reconstruct", "--hb", kPresets + "/pw_e.json", "--ref",
                           kPresets + "/sinc_half.json", "--n-lo", "-200", "--n-hi", "200",
                           "--grid", "-3:3:0.25"});
  REQUIRE(rec.code == 0);
  CHECK(rec.out.rfind("x,re,im,ref_re,ref_im,err\n", 0) == 0);
  REQUIRE(rec.err.rfind("max_err=", 0) == 0);
  CHECK(std::stod(rec.err.substr(8)) < 2e-3);

  // the same reconstruction from a samples file
  const auto nodes = solve_nodes(HermiteBiehler::exponential(std::numbers::pi), 0.0, -200, 200);
  const auto f = io::read_combination_file(kPresets + "/sinc_half.json", nodes.generator);
  std::vector<io::SampleRow> rows;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    rows.push_back({nodes.index(k), nodes.nodes[k], f(nodes.nodes[k])});
  }
  const auto path = scratch("samples.csv");
  {
    std::ofstream os(path);
    io::write_samples_csv(os, rows);
  }
  const auto from_file = invoke({"reconstruct", "--hb", kPresets + "/pw_e.json", "--samples",
                                 path.string(), "--grid", "-3:3:0.25"});
  REQUIRE(from_file.code == 0);
  std::istringstream a(rec.out);
  std::istringstream b(from_file.out);
  std::string la;
  std::string lb;
  std::getline(a, la);
  std::getline(b, lb);
  while (std::getline(a, la) && std::getline(b, lb)) {
    CHECK(la.substr(0, lb.size()) == lb);
  }

  const auto ker = invoke({"kernel", "--preset", "pw", "--center", "0", "--grid", "0:1:0.5"});
  REQUIRE(ker.code == 0);
  CHECK(ker.out.find("\n0.5,0.6366197723675814,0,1\n") != std::string::npos);

  const auto mux = invoke({"multiplex", "--preset", "nonpw", "--n-lo", "-200", "--n-hi", "200",
                           "--trials", "2", "--sigma", "0.01", "--seed", "4"});
  REQUIRE(mux.code == 0);
  const auto j = io::json::parse(mux.out);
  REQUIRE(j.size() == 2);
  CHECK(j[0].at("sigma").get<double>() == 0.01);
  CHECK(j[0].at("err_f").get<double>() < 1.0);
}

TEST_CASE("identical config and seed give identical bytes") {
  const auto p1 = scratch("stream1.csv");
  const auto p2 = scratch("stream2.csv");
  const std::vector<std::string> common = {"multiplex", "--preset", "pw", "--n-lo", "-50", "--n-hi",
                                           "50", "--sigma", "0.05", "--drop", "0.1", "--seed", "9"};
  auto a1 = common;
  a1.insert(a1.end(), {"--stream-out", p1.string()});
  auto a2 = common;
  a2.insert(a2.end(), {"--stream-out", p2.string()});
  const auto r1 = invoke(a1);
  const auto r2 = invoke(a2);
  REQUIRE(r1.code == 0);
  CHECK(r1.out == r2.out);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(slurp(p1) == slurp(p2));
  CHECK(!slurp(p1).empty());
}

TEST_CASE("exit codes") {
  CHECK(invoke({"nodes"}).code == 1);                                   // no generator
  CHECK(invoke({"nodes", "--preset", "bogus"}).code == 1);
  CHECK(invoke({"nodes", "--hb", "/nonexistent.json"}).code == 1);
  CHECK(invoke({"nodes", "--preset", "pw", "--n-lo", "3", "--n-hi", "1"}).code == 1);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({"kernel", "--preset", "pw", "--grid", "1:0:0.1"}).code == 1);

  // polynomial generator: target outside the attainable phase range
  const auto poly = scratch("poly.json");
  {
    std::ofstream os(poly);
    os << R"({"exp_coefficient": 0, "roots": [[0, -1]]})";
  }
  const auto r = invoke({"nodes", "--hb", poly.string(), "--n-lo", "0", "--n-hi", "3"});
  CHECK(r.code == 2);
  CHECK(r.err.find("range") != std::string::npos);

  const auto v = invoke({"verify", "--preset", "pw"});
  CHECK(v.code == 0);
  CHECK(v.out.find("FAIL") == std::string::npos);
}

TEST_CASE("grid parsing") {
  const auto g = cli::parse_grid("-1:1:0.5");
  CHECK(g.points() == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
  CHECK_THROWS_AS(cli::parse_grid("1:2"), InputError);
  CHECK_THROWS_AS(cli::parse_grid("0:1:0"), InputError);
}
