#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "debranges/hermite_biehler.hpp"

namespace debranges {

/// Below this distance |conj(w) - z| the kernel switches from the difference
/// quotient to its analytic limit.
inline constexpr double kDiagonalEpsilon = 1e-6;

/// Reproducing kernel of H(E):
///
///   K_E(w, z) = [conj(E(w)) E(z) - E(conj w) E*(z)] / (2 pi i (conj w - z))
///
/// so that f(w) = <f, K_E(w, .)>.
cplx kernel(const HermiteBiehler& e, cplx w, cplx z);

/// The analytic limit branch used by kernel() when |conj(w) - z| <= kDiagonalEpsilon,
/// evaluable anywhere (accurate only near z = conj(w)).
cplx kernel_limit(const HermiteBiehler& e, cplx w, cplx z);

/// Values at w reused across many evaluations of K_E(w, .).
struct KernelAnchor {
  cplx w;
  cplx ew_conj;  // conj(E(w))
  cplx e_wbar;   // E(conj w)
};

KernelAnchor make_anchor(const HermiteBiehler& e, cplx w);

/// K_E(a.w, z) given ez = E(z) and estar_z = E*(z); falls back to kernel() near the diagonal.
cplx kernel(const HermiteBiehler& e, const KernelAnchor& a, cplx z, cplx ez, cplx estar_z);

/// K_E(x, x) = phi'(x) |E(x)|^2 / pi.
double kernel_diag(const HermiteBiehler& e, double x);

/// G(j, k) = K_E(points[k], points[j]), so that ||sum c_j K_E(points[j], .)||^2 = c^* G c.
/// Throws InputError naming the first duplicated pair.
Eigen::MatrixXcd gram(const HermiteBiehler& e, std::span<const cplx> points);

/// f(z) = sum_j c_j K_E(mu_j, z), always an element of H(E).
class KernelCombination {
 public:
  explicit KernelCombination(HermiteBiehler space_generator, std::vector<cplx> centers = {},
                             std::vector<cplx> coefficients = {});

  const HermiteBiehler& space_generator() const noexcept { return e_; }
  std::span<const cplx> centers() const noexcept { return centers_; }
  std::span<const cplx> coefficients() const noexcept { return coefficients_; }
  std::size_t size() const noexcept { return centers_.size(); }
  bool empty() const noexcept { return centers_.empty(); }

  cplx operator()(cplx z) const;

 private:
  HermiteBiehler e_;
  std::vector<cplx> centers_;
  std::vector<cplx> coefficients_;
  std::vector<KernelAnchor> anchors_;
};

cplx eval_combination(const KernelCombination& f, cplx z);

/// <f, g>_E through the reproducing property: sum_{j,k} c_j conj(d_k) K(mu_j, nu_k).
cplx inner_product_gram(const KernelCombination& f, const KernelCombination& g);

/// ||f||^2 = c^* G c. Throws NumericalError if the imaginary residual exceeds 1e-10
/// relative to the real part.
double norm_squared(const KernelCombination& f);

/// Samples f(points[n]).
std::vector<cplx> sample(const KernelCombination& f, std::span<const double> points);

}  // namespace debranges
