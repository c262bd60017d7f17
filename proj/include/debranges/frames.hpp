#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "debranges/hermite_biehler.hpp"
#include "debranges/kernel.hpp"
#include "debranges/nodes.hpp"

namespace debranges {

/// Kernel frames of H(E) and H(F) at the phase nodes of EF, with the per-node
/// weights every reconstruction formula needs.
struct FrameSystem {
  HermiteBiehler e;
  HermiteBiehler f;
  NodeSet nodes;                     // solved on product(e, f)
  std::vector<cplx> weights_f;       // F(lambda_n)
  std::vector<cplx> weights_estar;   // E*(lambda_n)
  std::vector<cplx> weights_e;       // E(lambda_n)
  std::vector<double> diag_ef;       // K_EF(lambda_n, lambda_n)
  std::vector<KernelAnchor> anchors_e;
  std::vector<KernelAnchor> anchors_f;

  std::size_t size() const noexcept { return nodes.size(); }
};

FrameSystem make_frame_system(const HermiteBiehler& e, const HermiteBiehler& f, double alpha,
                              long index_lo, long index_hi);
/// `nodes.generator` must equal product(e, f).
FrameSystem make_frame_system(const HermiteBiehler& e, const HermiteBiehler& f, NodeSet nodes);

/// Sub-window [index_lo, index_hi] of an existing system (clamped to its range).
FrameSystem restrict_window(const FrameSystem& sys, long index_lo, long index_hi);

// Orthonormal-basis sampling on the phase nodes of E itself.
cplx reconstruct_onb(const HermiteBiehler& e, const NodeSet& nodes, std::span<const cplx> samples,
                     cplx z);
double norm_from_samples(const HermiteBiehler& e, const NodeSet& nodes,
                         std::span<const cplx> samples);

// Parseval-frame reconstructions in H(E) and H(F).
cplx reconstruct_in_e(const FrameSystem& sys, std::span<const cplx> samples_f, cplx z);
cplx reconstruct_in_f(const FrameSystem& sys, std::span<const cplx> samples_g, cplx z);

/// sum_n f(l_n) F(l_n) E(l_n) K_F(l_n, z) / K_EF(l_n, l_n), zero in the limit.
cplx orthogonality_residual_e(const FrameSystem& sys, std::span<const cplx> samples_f, cplx z);
/// sum_n g(l_n) E*(l_n) conj(F(l_n)) K_E(l_n, z) / K_EF(l_n, l_n), zero in the limit.
cplx orthogonality_residual_f(const FrameSystem& sys, std::span<const cplx> samples_g, cplx z);

/// sum_n |f(l_n)|^2 |F(l_n)|^2 / K_EF(l_n, l_n), which tends to ||f||_E^2.
double parseval_sum_e(const FrameSystem& sys, std::span<const cplx> samples_f);
/// sum_n |g(l_n)|^2 |E(l_n)|^2 / K_EF(l_n, l_n), which tends to ||g||_F^2.
double parseval_sum_f(const FrameSystem& sys, std::span<const cplx> samples_g);

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Extremal generalized eigenvalues of (S, G) on span{K_E0(mu_j, .)}, where S is the
/// sampling form sum_n w_n |f(l_n)|^2 and G the Gram matrix of the probes. With
/// `normalize`, w_n = 1 / K_E0(l_n, l_n); otherwise w_n = 1.
FrameBounds frame_bounds(const HermiteBiehler& e0, std::span<const double> nodes, bool normalize,
                         std::span<const cplx> probe_centers);

struct DualOptions {
  double ridge = 1e-12;          // relative to trace of the node Gram
  double max_condition = 1e12;   // on the target's probe subspace
};

/// Coefficients c with sum_n c_n K_E0(l_n, .) ~ target, from the ridge-regularized
/// normal equations (M + rho I) c = (target(l_n))_n. Throws IllConditionedError when
/// the frame restricted to span{K_E0(mu_j, .)} has bound ratio above max_condition.
std::vector<cplx> dual_coefficients(const HermiteBiehler& e0, std::span<const double> nodes,
                                    const KernelCombination& target, const DualOptions& opt = {});

/// sum_n c_n K_E0(l_n, z)
cplx synthesize(const HermiteBiehler& e0, std::span<const double> nodes,
                std::span<const cplx> coefficients, cplx z);

/// Gram matrix of the dilated vectors
///   u_n = [conj(F(l_n)) F K_E(l_n, .)  (+)  E(l_n) E* K_F(l_n, .)] / sqrt(K_EF(l_n, l_n)),
/// G(n, m) = <u_m, u_n>, assembled from the two component Grams.
Eigen::MatrixXcd naimark_gram(const FrameSystem& sys);

/// Smallest eigenvalue of naimark_gram on the centered windows [-N, N].
std::vector<double> completeness_diagnostic(const HermiteBiehler& e, const HermiteBiehler& f,
                                            double alpha, std::span<const long> half_windows);

/// Per-node weights in the sufficiency argument: the Parseval weight
/// |F|^2 / K_EF = pi / (|E|^2 (phi_E' + phi_F')) sits between 1/(2 K_E) and 1/K_E
/// whenever phi_F' <= phi_E'.
struct SufficiencyTerm {
  double parseval_weight;
  double normalized_weight;  // 1 / K_E(l_n, l_n)
  double phase_ratio;        // phi_F' / phi_E'
};
std::vector<SufficiencyTerm> sufficiency_terms(const FrameSystem& sys);

double min_eigenvalue(const Eigen::MatrixXcd& hermitian);
double max_eigenvalue(const Eigen::MatrixXcd& hermitian);

}  // namespace debranges
