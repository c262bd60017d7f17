#include "debranges/hermite_biehler.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "debranges/errors.hpp"

namespace debranges {

namespace {

constexpr cplx kI{0.0, 1.0};

}  // namespace

HermiteBiehler::HermiteBiehler(double exp_coefficient, std::vector<cplx> roots,
                               cplx leading_scale)
    : a_(exp_coefficient), roots_(std::move(roots)), scale_(leading_scale) {
  if (!std::isfinite(a_) || a_ < 0.0) {
    throw InputError("exp_coefficient must be a finite real >= 0, got " + std::to_string(a_));
  }
  if (scale_ == cplx{0.0, 0.0} || !std::isfinite(scale_.real()) ||
      !std::isfinite(scale_.imag())) {
    throw InputError("leading_scale must be finite and nonzero");
  }
  for (std::size_t k = 0; k < roots_.size(); ++k) {
    const cplx w = roots_[k];
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || !(w.imag() < 0.0)) {
      throw InputError("root " + std::to_string(k) +
                       " must lie strictly in the lower half-plane (Im < 0)");
    }
  }
  if (a_ == 0.0 && roots_.empty()) {
    throw InputError("constant function is not admissible: need exp_coefficient > 0 or a root");
  }
}

HermiteBiehler HermiteBiehler::exponential(double a) { return HermiteBiehler(a, {}); }

cplx HermiteBiehler::eval(cplx z) const {
  cplx p = scale_ * std::exp(-kI * a_ * z);
  for (const cplx& w : roots_) p *= (z - w);
  return p;
}

cplx HermiteBiehler::eval_star(cplx z) const { return std::conj(eval(std::conj(z))); }

cplx HermiteBiehler::eval_derivative(cplx z) const {
  // Carry (P, P') through the product so the result stays exact at a root.
  cplx p{1.0, 0.0};
  cplx dp{0.0, 0.0};
  for (const cplx& w : roots_) {
    dp = p + (z - w) * dp;
    p *= (z - w);
  }
  return scale_ * std::exp(-kI * a_ * z) * (dp - kI * a_ * p);
}

cplx HermiteBiehler::eval_star_derivative(cplx z) const {
  return std::conj(eval_derivative(std::conj(z)));
}

PhaseValue HermiteBiehler::phase(double x) const {
  PhaseValue out;
  out.x = x;
  out.phi = a_ * x - std::arg(scale_);
  out.phi_prime = a_;
  for (const cplx& w : roots_) {
    const double b = -w.imag();
    const double d = x - w.real();
    out.phi -= std::atan2(b, d);
    out.phi_prime += b / (d * d + b * b);
  }
  return out;
}

double HermiteBiehler::phase_inf() const {
  if (a_ > 0.0) return -std::numeric_limits<double>::infinity();
  return -std::arg(scale_) - std::numbers::pi * static_cast<double>(roots_.size());
}

double HermiteBiehler::phase_sup() const {
  if (a_ > 0.0) return std::numeric_limits<double>::infinity();
  return -std::arg(scale_);
}

HermiteBiehler product(const HermiteBiehler& e, const HermiteBiehler& f) {
  std::vector<cplx> roots(e.roots().begin(), e.roots().end());
  roots.insert(roots.end(), f.roots().begin(), f.roots().end());
  return HermiteBiehler(e.exp_coefficient() + f.exp_coefficient(), std::move(roots),
                        e.leading_scale() * f.leading_scale());
}

bool satisfies_hb_inequality(const HermiteBiehler& e, std::span<const cplx> upper_points) {
  for (const cplx& z : upper_points) {
    if (!(z.imag() > 0.0)) continue;
    if (!(std::abs(e.eval_star(z)) < std::abs(e.eval(z)))) return false;
  }
  return true;
}

}  // namespace debranges
