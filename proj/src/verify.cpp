#include "debranges/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include "debranges/frames.hpp"
#include "debranges/kernel.hpp"
#include "debranges/multiplex.hpp"
#include "debranges/nodes.hpp"
#include "debranges/quadrature.hpp"

namespace debranges {

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  cplx point(double re, double im_lo, double im_hi) { return {uniform(-re, re), uniform(im_lo, im_hi)}; }
  KernelCombination combination(const HermiteBiehler& e, int terms, double re, double im) {
    std::vector<cplx> centers;
    std::vector<cplx> coefs;
    for (int k = 0; k < terms; ++k) {
      centers.push_back(point(re, -im, im));
      coefs.emplace_back(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
    }
    return KernelCombination(e, std::move(centers), std::move(coefs));
  }

 private:
  std::mt19937_64 rng_;
};

double rel(cplx a, cplx b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

CheckResult at_most(std::string name, double measured, double tol) {
  return {std::move(name), measured <= tol, measured, tol};
}

}  // namespace

std::vector<CheckResult> verify_preset(const Preset& preset, std::uint64_t seed,
                                       const QuadratureSpec& quad) {
  const HermiteBiehler& e = preset.e;
  const HermiteBiehler& f = preset.f;
  const HermiteBiehler ef = product(e, f);
  Sampler rnd(seed);
  std::vector<CheckResult> out;

  // hb
  {
    double worst = -1.0;
    for (int k = 0; k < 200; ++k) {
      const cplx z = rnd.point(5.0, 1e-3, 3.0);
      worst = std::max(worst, std::abs(e.eval_star(z)) / std::abs(e.eval(z)));
    }
    out.push_back({"hb.inequality |E*|/|E| < 1", worst < 1.0, worst, 1.0});
  }
  {
    double worst = 0.0;
    double worst_fd = 0.0;
    double worst_der = 0.0;
    double worst_add = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double x = rnd.uniform(-10.0, 10.0);
      const PhaseValue p = e.phase(x);
      const cplx ex = e.eval(cplx{x, 0.0});
      worst = std::max(worst, rel(ex, std::abs(ex) * std::exp(cplx{0.0, -p.phi})));
      const double h = 1e-5;
      const double fd = (e.phase(x + h).phi - e.phase(x - h).phi) / (2 * h);
      worst_fd = std::max(worst_fd, std::abs(fd - p.phi_prime));
      const cplx dfd = (e.eval(cplx{x + h, 0.0}) - e.eval(cplx{x - h, 0.0})) / (2 * h);
      worst_der = std::max(worst_der, rel(e.eval_derivative(cplx{x, 0.0}), dfd));
      worst_add = std::max(worst_add, std::abs(ef.phase(x).phi_prime -
                                               (p.phi_prime + f.phase(x).phi_prime)));
    }
    out.push_back(at_most("hb.phase consistency", worst, 1e-12));
    out.push_back(at_most("hb.phase derivative vs FD", worst_fd, 1e-6));
    out.push_back(at_most("hb.derivative vs FD", worst_der, 1e-6));
    out.push_back(at_most("hb.product phase additivity", worst_add, 1e-12));
  }

  // kernel
  {
    double herm = 0.0;
    double diag = 0.0;
    double cont = 0.0;
    double decomp = 0.0;
    for (int k = 0; k < 100; ++k) {
      const cplx w = rnd.point(4.0, -1.0, 1.0);
      const cplx z = rnd.point(4.0, -1.0, 1.0);
      herm = std::max(herm, std::abs(kernel(e, w, z) - std::conj(kernel(e, z, w))));
      const double x = rnd.uniform(-10.0, 10.0);
      diag = std::max(diag, rel(kernel(e, x, x), kernel_diag(e, x)));
      const cplx xs{x + 2 * kDiagonalEpsilon, 0.0};
      cont = std::max(cont, rel(kernel(e, x, xs), kernel_limit(e, x, xs)));
      const cplx t1 = std::conj(f.eval(w)) * f.eval(z) * kernel(e, w, z);
      const cplx t2 = e.eval(std::conj(w)) * e.eval_star(z) * kernel(f, w, z);
      const cplx lhs = kernel(ef, w, z);
      decomp = std::max(decomp, std::abs(lhs - (t1 + t2)) /
                                    std::max({std::abs(lhs), std::abs(t1), std::abs(t2)}));
    }
    out.push_back(at_most("kernel.hermitian symmetry", herm, 1e-10));
    out.push_back(at_most("kernel.diagonal vs phase formula", diag, 1e-8));
    out.push_back(at_most("kernel.continuity at 2 eps", cont, 1e-6));
    out.push_back(at_most("kernel.decomposition K_EF", decomp, 1e-9));
  }
  {
    double min_eig = std::numeric_limits<double>::infinity();
    double repro = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<cplx> pts;
      const int n = 2 + trial;
      for (int k = 0; k < n; ++k) pts.push_back(rnd.point(3.0, -1.0, 1.0));
      min_eig = std::min(min_eig, min_eigenvalue(gram(e, pts)));
      KernelCombination fc = rnd.combination(e, 3, 3.0, 1.0);
      const cplx w = rnd.point(3.0, -1.0, 1.0);
      const cplx via_gram = inner_product_gram(fc, KernelCombination(e, {w}, {cplx{1.0, 0.0}}));
      repro = std::max(repro, rel(fc(w), via_gram));
    }
    out.push_back({"kernel.gram PSD (min eig)", min_eig >= -1e-10, min_eig, -1e-10});
    out.push_back(at_most("kernel.reproducing closure", repro, 1e-9));
  }

  // nodes
  {
    const NodeSet ns = solve_nodes(ef, 0.0, -200, 200);
    double res = *std::max_element(ns.residuals.begin(), ns.residuals.end());
    double gap = 0.0;
    bool increasing = true;
    for (std::size_t i = 1; i < ns.size(); ++i) {
      increasing = increasing && ns.nodes[i] > ns.nodes[i - 1];
      gap = std::max(gap, std::abs(ef.phase(ns.nodes[i]).phi - ef.phase(ns.nodes[i - 1]).phi -
                                   std::numbers::pi));
    }
    out.push_back(at_most("nodes.residual", res, kNodeResidualTolerance));
    out.push_back({"nodes.strictly increasing", increasing, increasing ? 0.0 : 1.0, 0.0});
    out.push_back(at_most("nodes.phase gap = pi", gap, 1e-9));
    const NodeSet half = solve_nodes(ef, std::numbers::pi / 2, -200, 200);
    double zero = 0.0;
    for (double x : half.nodes) {
      const cplx z{x, 0.0};
      const cplx h = ef.eval(z) + ef.eval_star(z);
      zero = std::max(zero, std::abs(h) / std::abs(ef.eval(z)));
    }
    out.push_back(at_most("nodes.zero set of EF + E*F*", zero, 1e-8));
  }

  // space
  {
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
      KernelCombination a = rnd.combination(e, 2, 3.0, 1.0);
      KernelCombination b = rnd.combination(e, 2, 3.0, 1.0);
      const QuadratureResult q = inner_product(a, b, quad);
      const double err = std::abs(q.value - inner_product_gram(a, b));
      worst = std::max(worst, err / std::max(1e-6, 3.0 * q.estimate()));
    }
    out.push_back(at_most("space.quadrature vs gram (ratio to budget)", worst, 1.0));
    KernelCombination a = rnd.combination(e, 2, 2.0, 0.5);
    KernelCombination b = rnd.combination(f, 2, 2.0, 0.5);
    const QuadratureResult q = cross_inner_ef(a, b, quad);
    out.push_back(at_most("space.embedding orthogonality (ratio to 10x budget)",
                          std::abs(q.value) / (10.0 * q.estimate()), 1.0));
  }

  // frames + multiplex
  {
    const FrameSystem sys = make_frame_system(e, f, 0.0, -800, 800);
    KernelCombination fc(e, {cplx{0.0, 0.0}, cplx{0.7, 0.0}}, {cplx{1.0, 0.0}, cplx{-0.5, 0.3}});
    KernelCombination gc(f, {cplx{-0.4, 0.0}}, {cplx{0.8, -0.2}});
    const std::vector<cplx> sf = sample(fc, sys.nodes.nodes);
    const std::vector<cplx> sg = sample(gc, sys.nodes.nodes);
    double prev = 0.0;
    bool monotone = true;
    for (long n : {50L, 200L, 800L}) {
      const FrameSystem sub = restrict_window(sys, -n, n);
      const double s = parseval_sum_e(sub, sample(fc, sub.nodes.nodes));
      monotone = monotone && s >= prev;
      prev = s;
    }
    const double deficit = 1.0 - prev / norm_squared(fc);
    out.push_back({"frames.parseval partial sums nondecreasing", monotone, monotone ? 0.0 : 1.0, 0.0});
    out.push_back(at_most("frames.parseval deficit at N=800", deficit, 0.05));

    double err_small = 0.0;
    double err_large = 0.0;
    const FrameSystem small = restrict_window(sys, -200, 200);
    const std::vector<cplx> sf_small = sample(fc, small.nodes.nodes);
    for (double x = -3.0; x <= 3.0; x += 0.5) {
      const cplx z{x, 0.0};
      err_small += std::abs(reconstruct_in_e(small, sf_small, z) - fc(z));
      err_large += std::abs(reconstruct_in_e(sys, sf, z) - fc(z));
    }
    out.push_back(at_most("frames.reconstruction err(4N)/err(N)", err_large / err_small, 0.75));

    const FrameSystem nsys = make_frame_system(e, f, 0.0, -25, 25);
    const Eigen::MatrixXcd g = naimark_gram(nsys);
    const double dev = (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
    out.push_back(at_most("frames.naimark gram = identity", dev, 1e-9));

    const MultiplexedStream m = encode(sys, sf, sg);
    double id = 0.0;
    for (double x = -2.0; x <= 2.0; x += 0.5) {
      const cplx z{x, 0.0};
      id = std::max(id, std::abs(decode_f(m, z) - reconstruct_in_e(sys, sf, z) -
                                 orthogonality_residual_f(sys, sg, z)));
      id = std::max(id, std::abs(decode_g(m, z) - reconstruct_in_f(sys, sg, z) -
                                 orthogonality_residual_e(sys, sf, z)));
    }
    out.push_back(at_most("multiplex.round trip identity", id, 1e-12));
  }
  return out;
}

void print_check_table(std::ostream& os, const std::string& title,
                       const std::vector<CheckResult>& rows) {
  os << "== " << title << " ==\n";
  char buf[256];
  for (const CheckResult& r : rows) {
    std::snprintf(buf, sizeof(buf), "%-4s %-52s measured=%-12.4e tol=%.1e\n",
                  r.pass ? "PASS" : "FAIL", r.name.c_str(), r.measured, r.tolerance);
    os << buf;
  }
}

}  // namespace debranges
