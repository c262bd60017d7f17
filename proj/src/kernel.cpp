#include "debranges/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "debranges/errors.hpp"

namespace debranges {

namespace {

constexpr cplx kTwoPiI{0.0, 2.0 * std::numbers::pi};

}  // namespace

cplx kernel_limit(const HermiteBiehler& e, cplx w, cplx z) {
  // The numerator N vanishes at z = conj(w), so K = -N(z) / (2 pi i (z - conj w)).
  // N' taken at the midpoint of [conj w, z] makes the limit exact to second order.
  const cplx wbar = std::conj(w);
  const cplx mid = 0.5 * (wbar + z);
  const cplx dn = std::conj(e.eval(w)) * e.eval_derivative(mid) -
                  e.eval(wbar) * e.eval_star_derivative(mid);
  return dn / (-kTwoPiI);
}

cplx kernel(const HermiteBiehler& e, cplx w, cplx z) {
  const cplx wbar = std::conj(w);
  const cplx gap = wbar - z;
  if (std::abs(gap) > kDiagonalEpsilon) {
    return (std::conj(e.eval(w)) * e.eval(z) - e.eval(wbar) * e.eval_star(z)) / (kTwoPiI * gap);
  }
  return kernel_limit(e, w, z);
}

KernelAnchor make_anchor(const HermiteBiehler& e, cplx w) {
  return {w, std::conj(e.eval(w)), e.eval(std::conj(w))};
}

cplx kernel(const HermiteBiehler& e, const KernelAnchor& a, cplx z, cplx ez, cplx estar_z) {
  const cplx gap = std::conj(a.w) - z;
  if (std::abs(gap) > kDiagonalEpsilon) {
    return (a.ew_conj * ez - a.e_wbar * estar_z) / (kTwoPiI * gap);
  }
  return kernel(e, a.w, z);
}

double kernel_diag(const HermiteBiehler& e, double x) {
  return e.phase(x).phi_prime * e.modulus_squared(x) / std::numbers::pi;
}

Eigen::MatrixXcd gram(const HermiteBiehler& e, std::span<const cplx> points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (std::size_t k = j + 1; k < points.size(); ++k) {
      if (points[j] == points[k]) {
        throw InputError("gram: points " + std::to_string(j) + " and " + std::to_string(k) +
                         " coincide");
      }
    }
  }
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    g(j, j) = kernel(e, points[j], points[j]);
    for (Eigen::Index k = j + 1; k < n; ++k) {
      g(j, k) = kernel(e, points[k], points[j]);
      g(k, j) = std::conj(g(j, k));
    }
  }
  return g;
}

KernelCombination::KernelCombination(HermiteBiehler space_generator, std::vector<cplx> centers,
                                     std::vector<cplx> coefficients)
    : e_(std::move(space_generator)),
      centers_(std::move(centers)),
      coefficients_(std::move(coefficients)) {
  if (centers_.size() != coefficients_.size()) {
    throw InputError("kernel combination: " + std::to_string(centers_.size()) + " centers but " +
                     std::to_string(coefficients_.size()) + " coefficients");
  }
  anchors_.reserve(centers_.size());
  for (const cplx& mu : centers_) anchors_.push_back(make_anchor(e_, mu));
}

cplx KernelCombination::operator()(cplx z) const {
  if (centers_.empty()) return {0.0, 0.0};
  const cplx ez = e_.eval(z);
  const cplx estar_z = e_.eval_star(z);
  cplx s{0.0, 0.0};
  for (std::size_t j = 0; j < centers_.size(); ++j) {
    s += coefficients_[j] * kernel(e_, anchors_[j], z, ez, estar_z);
  }
  return s;
}

cplx eval_combination(const KernelCombination& f, cplx z) { return f(z); }

cplx inner_product_gram(const KernelCombination& f, const KernelCombination& g) {
  cplx s{0.0, 0.0};
  const auto& e = f.space_generator();
  for (std::size_t j = 0; j < f.size(); ++j) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      s += f.coefficients()[j] * std::conj(g.coefficients()[k]) *
           kernel(e, f.centers()[j], g.centers()[k]);
    }
  }
  return s;
}

double norm_squared(const KernelCombination& f) {
  if (f.empty()) return 0.0;
  const Eigen::MatrixXcd g = gram(f.space_generator(), f.centers());
  const Eigen::VectorXcd c =
      Eigen::Map<const Eigen::VectorXcd>(f.coefficients().data(), static_cast<Eigen::Index>(f.size()));
  const cplx q = c.dot(g * c);  // Eigen's dot conjugates the left operand
  if (std::abs(q.imag()) > 1e-10 * std::max(1.0, std::abs(q.real()))) {
    throw NumericalError("norm_squared: imaginary residual " + std::to_string(q.imag()) +
                         " exceeds tolerance");
  }
  return std::max(q.real(), 0.0);
}

std::vector<cplx> sample(const KernelCombination& f, std::span<const double> points) {
  std::vector<cplx> out;
  out.reserve(points.size());
  for (double x : points) out.push_back(f(cplx{x, 0.0}));
  return out;
}

}  // namespace debranges
