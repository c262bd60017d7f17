#include <doctest.h>

#include <cmath>
#include <numbers>

#include "debranges/errors.hpp"
#include "debranges/frames.hpp"
#include "debranges/kernel.hpp"
#include "oracles.hpp"

using namespace debranges;
using std::numbers::pi;

namespace {

HermiteBiehler pw() { return HermiteBiehler::exponential(pi); }

std::vector<HermiteBiehler> family() {
  return {pw(), HermiteBiehler(0.0, {cplx{0.0, -1.0}}), HermiteBiehler(pi, {cplx{0.0, -1.0}}),
          HermiteBiehler(0.7, {cplx{1.5, -0.3}, cplx{-2.0, -2.0}}, cplx{0.5, -1.2}),
          HermiteBiehler(2.0, {cplx{0.2, -0.4}}, cplx{0.0, 3.0})};
}

}  // namespace

TEST_CASE("Paley-Wiener kernel against the sinc closed form") {
  CHECK(std::abs(kernel(pw(), 0.0, 0.5) - 2.0 / pi) < 1e-15);
  CHECK(std::abs(kernel(pw(), 0.0, 1.0)) < 1e-16);
  CHECK(std::abs(kernel(pw(), 0.0, 0.0) - 1.0) < 1e-15);

  oracle::Rng rng(21);
  for (int k = 0; k < 200; ++k) {
    const cplx w = rng.point(5.0, -1.5, 1.5);
    const cplx z = rng.point(5.0, -1.5, 1.5);
    const cplx ref = oracle::sinc_kernel(pi, w, z);
    CHECK(std::abs(kernel(pw(), w, z) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("kernel_diag examples") {
  oracle::Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const double x = rng.uniform(-50, 50);
    CHECK(kernel_diag(pw(), x) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(kernel_diag(HermiteBiehler(0.0, {cplx{0.0, -1.0}}), x) ==
          doctest::Approx(1.0 / pi).epsilon(1e-14));
    CHECK(kernel_diag(HermiteBiehler::exponential(2 * pi), x) ==
          doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("kernel invariants") {
  oracle::Rng rng(2);
  for (const auto& e : family()) {
    for (int k = 0; k < 100; ++k) {
      const cplx w = rng.point(4.0, -1.0, 1.0);
      const cplx z = rng.point(4.0, -1.0, 1.0);
      CHECK(std::abs(kernel(e, w, z) - std::conj(kernel(e, z, w))) <=
            1e-10 * std::max(1.0, std::abs(kernel(e, w, z))));

      const double x = rng.uniform(-10, 10);
      const double d = kernel_diag(e, x);
      CHECK(std::abs(kernel(e, x, x) - d) <= 1e-8 * d);

      // both sides of the switch, evaluated at the same point
      const cplx near{x + 2 * kDiagonalEpsilon, 0.0};
      const cplx dq = kernel(e, x, near);
      CHECK(std::abs(dq - kernel_limit(e, x, near)) <= 1e-6 * std::abs(dq));
    }
  }
}

TEST_CASE("decomposition of K_EF into the two embedded kernels") {
  oracle::Rng rng(4);
  const auto fam = family();
  for (const auto& e : fam) {
    for (const auto& f : fam) {
      const HermiteBiehler ef = product(e, f);
      for (int k = 0; k < 20; ++k) {
        const cplx w = rng.point(3.0, -1.0, 1.0);
        const cplx z = rng.point(3.0, -1.0, 1.0);
        const cplx lhs = kernel(ef, w, z);
        const cplx t1 = std::conj(f.eval(w)) * f.eval(z) * kernel(e, w, z);
        const cplx t2 = e.eval(std::conj(w)) * e.eval_star(z) * kernel(f, w, z);
        const double scale = std::max({std::abs(lhs), std::abs(t1), std::abs(t2)});
        CHECK(std::abs(lhs - (t1 + t2)) <= 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("gram matrices") {
  const std::vector<cplx> ints = {0.0, 1.0};
  const Eigen::MatrixXcd g = gram(pw(), ints);
  CHECK((g - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);

  const std::vector<cplx> half = {0.0, 0.5};
  const Eigen::MatrixXcd h = gram(pw(), half);
  CHECK(std::abs(h(0, 1) - 2.0 / pi) < 1e-15);
  CHECK(std::abs(h(1, 0) - 2.0 / pi) < 1e-15);
  CHECK(std::abs(h(1, 1) - 1.0) < 1e-15);

  const auto e = family()[3];
  const std::vector<cplx> one = {cplx{0.4, 0.0}};
  CHECK(std::abs(gram(e, one)(0, 0) - kernel_diag(e, 0.4)) < 1e-12 * kernel_diag(e, 0.4));

  oracle::Rng rng(8);
  for (const auto& gen : family()) {
    for (int size = 1; size <= 12; ++size) {
      std::vector<cplx> pts;
      for (int k = 0; k < size; ++k) pts.push_back(rng.point(3.0, -1.0, 1.0));
      const Eigen::MatrixXcd m = gram(gen, pts);
      CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() == 0.0);
      CHECK(min_eigenvalue(m) >= -1e-10 * std::max(1.0, max_eigenvalue(m)));
    }
  }

  const std::vector<cplx> dup = {0.0, 1.0, 0.0};
  CHECK_THROWS_WITH_AS(gram(pw(), dup), doctest::Contains("0 and 2"), InputError);
}

TEST_CASE("kernel combinations") {
  const KernelCombination k0(pw(), {0.0}, {1.0});
  for (int n = 1; n <= 5; ++n) {
    CHECK(std::abs(eval_combination(k0, double(n))) < 1e-15);
    CHECK(std::abs(eval_combination(k0, double(-n))) < 1e-15);
  }
  const KernelCombination empty(pw());
  CHECK(eval_combination(empty, cplx{0.3, 0.2}) == cplx{0.0, 0.0});
  CHECK(norm_squared(empty) == 0.0);

  const KernelCombination two(pw(), {0.0, 1.0}, {1.0, 1.0});
  CHECK(std::abs(eval_combination(two, 0.0) - 1.0) < 1e-15);
  CHECK(norm_squared(k0) == doctest::Approx(1.0));
  CHECK(norm_squared(two) == doctest::Approx(2.0));

  CHECK_THROWS_AS(KernelCombination(pw(), {0.0, 1.0}, {1.0}), InputError);
}

TEST_CASE("reproducing property closes through the Gram matrix") {
  oracle::Rng rng(9);
  for (const auto& e : family()) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<cplx> centers;
      std::vector<cplx> coefs;
      for (int k = 0; k < 4; ++k) {
        centers.push_back(rng.point(3.0, -1.0, 1.0));
        coefs.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1));
      }
      const cplx w = rng.point(3.0, -1.0, 1.0);
      // Gram of centers + {w}: <f, K_w> = sum_j c_j G(last, j)
      std::vector<cplx> pts = centers;
      pts.push_back(w);
      const Eigen::MatrixXcd g = gram(e, pts);
      cplx via_gram{0.0, 0.0};
      for (std::size_t j = 0; j < centers.size(); ++j) {
        via_gram += coefs[j] * g(static_cast<Eigen::Index>(centers.size()), static_cast<Eigen::Index>(j));
      }
      const KernelCombination f(e, centers, coefs);
      CHECK(std::abs(f(w) - via_gram) <= 1e-9 * std::max(1.0, std::abs(via_gram)));
      CHECK(norm_squared(f) >= 0.0);
    }
  }
}
