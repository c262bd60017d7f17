#pragma once

#include <functional>

#include "debranges/hermite_biehler.hpp"
#include "debranges/kernel.hpp"

namespace debranges {

/// Truncated adaptive integration over [-half_width, half_width].
struct QuadratureSpec {
  double half_width = 64.0;
  double rel_tol = 1e-8;
  int max_depth = 18;
};

/// Integral value with its error budget. `quadrature_error` covers [-T, T];
/// `tail_bound` covers |t| > T and is estimated from the t^-2 decay of the
/// integrand. `converged` refers to the interior part meeting rel_tol.
struct QuadratureResult {
  cplx value{0.0, 0.0};
  double quadrature_error = 0.0;
  double tail_bound = 0.0;
  bool converged = true;
  long evaluations = 0;

  double estimate() const noexcept { return quadrature_error + tail_bound; }
};

using RealLineFunction = std::function<cplx(double)>;

/// Adaptive Gauss-Kronrod (7/15) integration of h over [-T, T] plus a tail bound.
QuadratureResult integrate_real_line(const RealLineFunction& h, const QuadratureSpec& q = {});

/// int u(t) conj(v(t)) / |W(t)|^2 dt
QuadratureResult weighted_inner_product(const RealLineFunction& u, const RealLineFunction& v,
                                        const HermiteBiehler& weight, const QuadratureSpec& q = {});

/// <f, g>_E by quadrature. Both combinations must share the same generator.
QuadratureResult inner_product(const KernelCombination& f, const KernelCombination& g,
                               const QuadratureSpec& q = {});

/// Embedding H(E) -> H(EF), f -> f F.
RealLineFunction embed_left(const KernelCombination& f, const HermiteBiehler& right);
/// Embedding H(F) -> H(EF), g -> g E*.
RealLineFunction embed_right(const KernelCombination& g, const HermiteBiehler& left);

/// <f F, g E*>_{EF} for f in H(E), g in H(F).
QuadratureResult cross_inner_ef(const KernelCombination& f, const KernelCombination& g,
                                const QuadratureSpec& q = {});

}  // namespace debranges
