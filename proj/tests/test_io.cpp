#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "debranges/errors.hpp"
#include "debranges/io.hpp"
#include "debranges/presets.hpp"

using namespace debranges;
using std::numbers::pi;

TEST_CASE("HB JSON round trip") {
  const HermiteBiehler e(1.25, {cplx{0.1, -0.3}, cplx{-2.0, -1e-7}}, cplx{0.5, -1.0 / 3.0});
  const io::json j = io::hb_to_json(e);
  const HermiteBiehler back = io::hb_from_json(io::json::parse(j.dump()));
  CHECK(back == e);
  CHECK(io::hb_to_json(back).dump() == j.dump());

  const auto minimal = io::hb_from_json(io::json::parse(R"({"exp_coefficient": 3.5})"));
  CHECK(minimal.exp_coefficient() == 3.5);
  CHECK(minimal.roots().empty());
  CHECK(minimal.leading_scale() == cplx{1.0, 0.0});
}

TEST_CASE("HB JSON validation names the offending root") {
  const auto bad = io::json::parse(R"({"exp_coefficient": 1, "roots": [[0, -1], [2, 0.5]]})");
  CHECK_THROWS_WITH_AS(io::hb_from_json(bad), doctest::Contains("roots[1]"), InputError);
  CHECK_THROWS_AS(io::hb_from_json(io::json::parse(R"({"exp_coefficient": -1})")), InputError);
  CHECK_THROWS_AS(io::hb_from_json(io::json::parse(R"({"roots": "x"})")), InputError);
  CHECK_THROWS_AS(io::read_hb_file("/nonexistent/e.json"), InputError);
}

TEST_CASE("shipped preset files match the built-in presets") {
  const std::string dir = DEBRANGES_PRESET_DIR;
  CHECK(io::read_hb_file(dir + "/pw_e.json") == paley_wiener_preset().e);
  CHECK(io::read_hb_file(dir + "/nonpw_e.json") == polynomial_preset().e);
  CHECK(io::read_hb_file(dir + "/pw_ef.json") == product(paley_wiener_preset().e, paley_wiener_preset().f));
  const auto f = io::read_combination_file(dir + "/sinc_half.json", paley_wiener_preset().e);
  CHECK(f.size() == 1);
  CHECK(f.centers()[0] == cplx{0.5, 0.0});
  CHECK_THROWS_AS(preset_by_name("nope"), InputError);
}

TEST_CASE("combination JSON round trip") {
  const auto e = HermiteBiehler::exponential(pi);
  const KernelCombination f(e, {cplx{0.5, 0.25}, cplx{-1.0, 0.0}}, {cplx{1.0, -2.0}, cplx{0.1, 0.0}});
  const auto back = io::combination_from_json(io::json::parse(io::combination_to_json(f).dump()), e);
  CHECK(std::ranges::equal(back.centers(), f.centers()));
  CHECK(std::ranges::equal(back.coefficients(), f.coefficients()));
  CHECK_THROWS_AS(io::combination_from_json(io::json::parse(R"({"centers": [[0,0]], "coefficients": []})"), e),
                  InputError);
}

TEST_CASE("CSV writers and reader") {
  const NodeSet ns = solve_nodes(HermiteBiehler::exponential(2 * pi), 0.0, -1, 1);
  std::ostringstream nodes;
  io::write_nodes_csv(nodes, ns);
  const std::string text = nodes.str();
  CHECK(text.rfind("n,lambda,residual\n", 0) == 0);
  CHECK(text.find("\n0,0,") != std::string::npos);
  CHECK(text.find("\n1,0.5,") != std::string::npos);

  const std::vector<io::SampleRow> rows = {{-1, -0.5, cplx{0.1, 0.2}}, {0, 0.0, cplx{1.0, 0.0}},
                                           {1, 0.5, cplx{1.0 / 3.0, -1e-300}}};
  std::ostringstream out;
  io::write_samples_csv(out, rows);
  std::istringstream in(out.str());
  const auto back = io::read_samples_csv(in, "mem");
  REQUIRE(back.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(back[k].n == rows[k].n);
    CHECK(back[k].lambda == rows[k].lambda);
    CHECK(back[k].value == rows[k].value);
  }

  std::istringstream gap("n,lambda,re,im\n0,0,1,0\n2,1,1,0\n");
  CHECK_THROWS_AS(io::read_samples_csv(gap, "gap"), InputError);
  std::istringstream junk("n,lambda,re,im\n0,zero,1,0\n");
  CHECK_THROWS_WITH_AS(io::read_samples_csv(junk, "junk"), doctest::Contains("junk"), InputError);
}

TEST_CASE("report JSON shapes") {
  const auto r = io::frame_report_json({0.99, 1.01, -5, 5, true, 0.5});
  CHECK(r.at("A_est").get<double>() == 0.99);
  CHECK(r.at("B_est").get<double>() == 1.01);
  CHECK(r.at("window") == io::json::array({-5, 5}));
  CHECK(r.at("normalize").get<bool>());
  CHECK(r.at("min_gram_eig").get<double>() == 0.5);
  const auto t = io::multiplex_trial_json({0.01, 0.1, -3, 3, 0.2, 0.3});
  CHECK(t.at("err_f").get<double>() == 0.2);
  CHECK(t.at("window") == io::json::array({-3, 3}));
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
