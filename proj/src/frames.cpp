#include "debranges/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "debranges/errors.hpp"

namespace debranges {

namespace {

void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw InputError(std::string(what) + ": " + std::to_string(got) + " samples for " +
                     std::to_string(want) + " nodes");
  }
}

Eigen::VectorXcd as_vector(std::span<const cplx> v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// sum_n s_n c_n K(l_n, z) with c_n supplied per node.
template <typename Coefficient>
cplx kernel_series(const HermiteBiehler& e, std::span<const KernelAnchor> anchors,
                   std::span<const cplx> samples, cplx z, Coefficient&& coef) {
  const cplx ez = e.eval(z);
  const cplx estar_z = e.eval_star(z);
  cplx s{0.0, 0.0};
  for (std::size_t n = 0; n < anchors.size(); ++n) {
    if (samples[n] == cplx{0.0, 0.0}) continue;
    s += samples[n] * coef(n) * kernel(e, anchors[n], z, ez, estar_z);
  }
  return s;
}

}  // namespace

FrameSystem make_frame_system(const HermiteBiehler& e, const HermiteBiehler& f, double alpha,
                              long index_lo, long index_hi) {
  return make_frame_system(e, f, solve_nodes(product(e, f), alpha, index_lo, index_hi));
}

FrameSystem make_frame_system(const HermiteBiehler& e, const HermiteBiehler& f, NodeSet nodes) {
  if (!(nodes.generator == product(e, f))) {
    throw InputError("frame system: nodes were not solved on the product E F");
  }
  FrameSystem sys{e, f, std::move(nodes), {}, {}, {}, {}, {}, {}};
  const std::size_t n = sys.nodes.size();
  sys.weights_f.reserve(n);
  sys.weights_estar.reserve(n);
  sys.weights_e.reserve(n);
  sys.diag_ef.reserve(n);
  sys.anchors_e.reserve(n);
  sys.anchors_f.reserve(n);
  for (double x : sys.nodes.nodes) {
    const cplx z{x, 0.0};
    const cplx fx = f.eval(z);
    const cplx ex = e.eval(z);
    sys.weights_f.push_back(fx);
    sys.weights_e.push_back(ex);
    sys.weights_estar.push_back(e.eval_star(z));
    const double slope = e.phase(x).phi_prime + f.phase(x).phi_prime;
    sys.diag_ef.push_back(slope * std::norm(ex) * std::norm(fx) / std::numbers::pi);
    sys.anchors_e.push_back(make_anchor(e, z));
    sys.anchors_f.push_back(make_anchor(f, z));
  }
  return sys;
}

FrameSystem restrict_window(const FrameSystem& sys, long index_lo, long index_hi) {
  const long lo = std::max(index_lo, sys.nodes.index_lo);
  const long hi = std::min(index_hi, sys.nodes.index_hi);
  FrameSystem out{sys.e, sys.f, sys.nodes, {}, {}, {}, {}, {}, {}};
  out.nodes.nodes.clear();
  out.nodes.residuals.clear();
  out.nodes.index_lo = lo;
  out.nodes.index_hi = std::max(hi, lo - 1);
  for (long n = lo; n <= hi; ++n) {
    const auto i = static_cast<std::size_t>(n - sys.nodes.index_lo);
    out.nodes.nodes.push_back(sys.nodes.nodes[i]);
    out.nodes.residuals.push_back(sys.nodes.residuals[i]);
    out.weights_f.push_back(sys.weights_f[i]);
    out.weights_estar.push_back(sys.weights_estar[i]);
    out.weights_e.push_back(sys.weights_e[i]);
    out.diag_ef.push_back(sys.diag_ef[i]);
    out.anchors_e.push_back(sys.anchors_e[i]);
    out.anchors_f.push_back(sys.anchors_f[i]);
  }
  return out;
}

cplx reconstruct_onb(const HermiteBiehler& e, const NodeSet& nodes, std::span<const cplx> samples,
                     cplx z) {
  require_length(samples.size(), nodes.size(), "reconstruct_onb");
  const cplx ez = e.eval(z);
  const cplx estar_z = e.eval_star(z);
  cplx s{0.0, 0.0};
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    if (samples[n] == cplx{0.0, 0.0}) continue;
    const double x = nodes.nodes[n];
    const KernelAnchor a = make_anchor(e, cplx{x, 0.0});
    s += samples[n] * kernel(e, a, z, ez, estar_z) / kernel_diag(e, x);
  }
  return s;
}

double norm_from_samples(const HermiteBiehler& e, const NodeSet& nodes,
                         std::span<const cplx> samples) {
  require_length(samples.size(), nodes.size(), "norm_from_samples");
  double s = 0.0;
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const double x = nodes.nodes[n];
    s += std::norm(samples[n]) / e.modulus_squared(x) * std::numbers::pi / e.phase(x).phi_prime;
  }
  return s;
}

cplx reconstruct_in_e(const FrameSystem& sys, std::span<const cplx> samples_f, cplx z) {
  require_length(samples_f.size(), sys.size(), "reconstruct_in_e");
  return kernel_series(sys.e, sys.anchors_e, samples_f, z, [&](std::size_t n) {
    return cplx{std::norm(sys.weights_f[n]) / sys.diag_ef[n], 0.0};
  });
}

cplx reconstruct_in_f(const FrameSystem& sys, std::span<const cplx> samples_g, cplx z) {
  require_length(samples_g.size(), sys.size(), "reconstruct_in_f");
  return kernel_series(sys.f, sys.anchors_f, samples_g, z, [&](std::size_t n) {
    return cplx{std::norm(sys.weights_e[n]) / sys.diag_ef[n], 0.0};
  });
}

cplx orthogonality_residual_e(const FrameSystem& sys, std::span<const cplx> samples_f, cplx z) {
  require_length(samples_f.size(), sys.size(), "orthogonality_residual_e");
  return kernel_series(sys.f, sys.anchors_f, samples_f, z, [&](std::size_t n) {
    return sys.weights_f[n] * sys.weights_e[n] / sys.diag_ef[n];
  });
}

cplx orthogonality_residual_f(const FrameSystem& sys, std::span<const cplx> samples_g, cplx z) {
  require_length(samples_g.size(), sys.size(), "orthogonality_residual_f");
  return kernel_series(sys.e, sys.anchors_e, samples_g, z, [&](std::size_t n) {
    return sys.weights_estar[n] * std::conj(sys.weights_f[n]) / sys.diag_ef[n];
  });
}

double parseval_sum_e(const FrameSystem& sys, std::span<const cplx> samples_f) {
  require_length(samples_f.size(), sys.size(), "parseval_sum_e");
  double s = 0.0;
  for (std::size_t n = 0; n < sys.size(); ++n) {
    s += std::norm(samples_f[n]) * std::norm(sys.weights_f[n]) / sys.diag_ef[n];
  }
  return s;
}

double parseval_sum_f(const FrameSystem& sys, std::span<const cplx> samples_g) {
  require_length(samples_g.size(), sys.size(), "parseval_sum_f");
  double s = 0.0;
  for (std::size_t n = 0; n < sys.size(); ++n) {
    s += std::norm(samples_g[n]) * std::norm(sys.weights_e[n]) / sys.diag_ef[n];
  }
  return s;
}

double min_eigenvalue(const Eigen::MatrixXcd& hermitian) {
  if (hermitian.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const Eigen::MatrixXcd& hermitian) {
  if (hermitian.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

FrameBounds frame_bounds(const HermiteBiehler& e0, std::span<const double> nodes, bool normalize,
                         std::span<const cplx> probe_centers) {
  if (probe_centers.empty()) throw InputError("frame_bounds: no probe centers");
  const Eigen::MatrixXcd g = gram(e0, probe_centers);
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (!(lo > 1e-12 * hi)) {
      throw IllConditionedError("frame_bounds: probe Gram matrix is numerically singular",
                                lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity());
    }
  }

  const auto j = static_cast<Eigen::Index>(probe_centers.size());
  std::vector<KernelAnchor> anchors;
  anchors.reserve(probe_centers.size());
  for (const cplx& mu : probe_centers) anchors.push_back(make_anchor(e0, mu));

  // S = sum_n w_n conj(a_n) a_n^T with a_n(j) = K(mu_j, l_n), so that S is the
  // matrix of c -> sum_n w_n |f(l_n)|^2 in the c^* S c convention.
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(j, j);
  Eigen::VectorXcd a(j);
  for (double x : nodes) {
    const cplx z{x, 0.0};
    const cplx ez = e0.eval(z);
    const cplx estar_z = e0.eval_star(z);
    for (Eigen::Index k = 0; k < j; ++k) {
      a(k) = kernel(e0, anchors[static_cast<std::size_t>(k)], z, ez, estar_z);
    }
    const double w = normalize ? 1.0 / kernel_diag(e0, x) : 1.0;
    s.noalias() += w * (a.conjugate() * a.transpose());
  }
  s = 0.5 * (s + s.adjoint()).eval();

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> ges(s, g, Eigen::EigenvaluesOnly);
  if (ges.info() != Eigen::Success) {
    throw NumericalError("frame_bounds: generalized eigensolver failed");
  }
  return {ges.eigenvalues().minCoeff(), ges.eigenvalues().maxCoeff()};
}

std::vector<cplx> dual_coefficients(const HermiteBiehler& e0, std::span<const double> nodes,
                                    const KernelCombination& target, const DualOptions& opt) {
  std::vector<cplx> out(nodes.size(), cplx{0.0, 0.0});
  const bool zero_target =
      std::all_of(target.coefficients().begin(), target.coefficients().end(),
                  [](const cplx& c) { return c == cplx{0.0, 0.0}; });
  if (zero_target) return out;
  if (!(target.space_generator() == e0)) {
    throw InputError("dual_coefficients: target lives in a different space");
  }

  const FrameBounds fb = frame_bounds(e0, nodes, false, target.centers());
  const double condition =
      fb.lower > 0.0 ? fb.upper / fb.lower : std::numeric_limits<double>::infinity();
  if (!(condition <= opt.max_condition)) {
    throw IllConditionedError("dual_coefficients: frame on the target subspace has condition " +
                                  std::to_string(condition),
                              condition);
  }

  std::vector<cplx> points;
  points.reserve(nodes.size());
  for (double x : nodes) points.emplace_back(x, 0.0);
  Eigen::MatrixXcd m = gram(e0, points);
  const double rho = opt.ridge * m.trace().real();
  m.diagonal().array() += rho;

  const std::vector<cplx> b = sample(target, nodes);
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(m);
  if (ldlt.info() != Eigen::Success) throw NumericalError("dual_coefficients: factorization failed");
  const Eigen::VectorXcd c = ldlt.solve(as_vector(b));
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = c(static_cast<Eigen::Index>(n));
  return out;
}

cplx synthesize(const HermiteBiehler& e0, std::span<const double> nodes,
                std::span<const cplx> coefficients, cplx z) {
  require_length(coefficients.size(), nodes.size(), "synthesize");
  const cplx ez = e0.eval(z);
  const cplx estar_z = e0.eval_star(z);
  cplx s{0.0, 0.0};
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    if (coefficients[n] == cplx{0.0, 0.0}) continue;
    s += coefficients[n] * kernel(e0, make_anchor(e0, cplx{nodes[n], 0.0}), z, ez, estar_z);
  }
  return s;
}

Eigen::MatrixXcd naimark_gram(const FrameSystem& sys) {
  const auto n = static_cast<Eigen::Index>(sys.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto ur = static_cast<std::size_t>(r);
    const cplx zr{sys.nodes.nodes[ur], 0.0};
    const cplx e_r = sys.weights_e[ur];
    const cplx estar_r = sys.weights_estar[ur];
    const cplx f_r = sys.weights_f[ur];
    const cplx fstar_r = std::conj(f_r);
    for (Eigen::Index c = r; c < n; ++c) {
      const auto uc = static_cast<std::size_t>(c);
      // <u_c, u_r> = [conj(F_c) F_r K_E(l_c, l_r) + E_c conj(E_r) K_F(l_c, l_r)] / sqrt(d_c d_r)
      const cplx ke = kernel(sys.e, sys.anchors_e[uc], zr, e_r, estar_r);
      const cplx kf = kernel(sys.f, sys.anchors_f[uc], zr, f_r, fstar_r);
      const cplx num = std::conj(sys.weights_f[uc]) * f_r * ke +
                       sys.weights_e[uc] * std::conj(e_r) * kf;
      g(r, c) = num / std::sqrt(sys.diag_ef[uc] * sys.diag_ef[ur]);
      if (c != r) g(c, r) = std::conj(g(r, c));
    }
    g(r, r) = cplx{g(r, r).real(), 0.0};
  }
  return g;
}

std::vector<double> completeness_diagnostic(const HermiteBiehler& e, const HermiteBiehler& f,
                                            double alpha, std::span<const long> half_windows) {
  std::vector<double> out;
  out.reserve(half_windows.size());
  for (long n : half_windows) {
    out.push_back(min_eigenvalue(naimark_gram(make_frame_system(e, f, alpha, -n, n))));
  }
  return out;
}

std::vector<SufficiencyTerm> sufficiency_terms(const FrameSystem& sys) {
  std::vector<SufficiencyTerm> out;
  out.reserve(sys.size());
  for (std::size_t n = 0; n < sys.size(); ++n) {
    const double x = sys.nodes.nodes[n];
    const double pe = sys.e.phase(x).phi_prime;
    const double pf = sys.f.phase(x).phi_prime;
    const double e2 = std::norm(sys.weights_e[n]);
    out.push_back({std::numbers::pi / (e2 * (pe + pf)), 1.0 / kernel_diag(sys.e, x), pf / pe});
  }
  return out;
}

}  // namespace debranges
