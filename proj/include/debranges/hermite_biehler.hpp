#pragma once

#include <complex>
#include <span>
#include <vector>

namespace debranges {

using cplx = std::complex<double>;

/// Phase function sample: E(x) = |E(x)| exp(-i phi(x)), phi strictly increasing.
struct PhaseValue {
  double x = 0.0;
  double phi = 0.0;
  double phi_prime = 0.0;
};

/// Hermite-Biehler function of the form
///
///   E(z) = s * exp(-i a z) * prod_k (z - w_k)
///
/// with a >= 0, every root strictly in the lower half-plane, and s != 0.
/// Such an E satisfies |E(conj z)| < |E(z)| for Im z > 0. Values are
/// immutable once constructed; construction throws InputError when the
/// invariants fail.
class HermiteBiehler {
 public:
  HermiteBiehler(double exp_coefficient, std::vector<cplx> roots,
                 cplx leading_scale = cplx{1.0, 0.0});

  /// exp(-i a z)
  static HermiteBiehler exponential(double a);

  double exp_coefficient() const noexcept { return a_; }
  std::span<const cplx> roots() const noexcept { return roots_; }
  cplx leading_scale() const noexcept { return scale_; }

  cplx operator()(cplx z) const { return eval(z); }
  cplx eval(cplx z) const;
  /// E*(z) = conj(E(conj z)).
  cplx eval_star(cplx z) const;
  cplx eval_derivative(cplx z) const;
  /// (E*)'(z) = conj(E'(conj z)).
  cplx eval_star_derivative(cplx z) const;

  PhaseValue phase(double x) const;
  /// |E(x)|^2 from the closed form.
  double modulus_squared(double x) const { return std::norm(eval(cplx{x, 0.0})); }

  /// Infimum and supremum of the phase over the real line (infinite when a > 0).
  double phase_inf() const;
  double phase_sup() const;

  friend bool operator==(const HermiteBiehler&, const HermiteBiehler&) = default;

 private:
  double a_;
  std::vector<cplx> roots_;
  cplx scale_;
};

/// Exponents add, roots concatenate, leading scales multiply.
HermiteBiehler product(const HermiteBiehler& e, const HermiteBiehler& f);

/// |E(z)| > |E*(z)| at every given upper half-plane point.
bool satisfies_hb_inequality(const HermiteBiehler& e, std::span<const cplx> upper_points);

}  // namespace debranges
