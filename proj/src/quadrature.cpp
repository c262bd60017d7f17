#include "debranges/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "debranges/errors.hpp"

namespace debranges {

namespace {

// Kronrod 15-point abscissae and weights; odd-index abscissae are the Gauss 7 nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kAbsFloor = 1e-12;
// Hard cap on live panels; beyond it refinement stops and the result is unconverged.
constexpr std::size_t kMaxPanels = 1 << 16;

struct Panel {
  double a;
  double b;
  int depth;
  cplx value;
  double error;
};

double quadpack_error(double diff, double resasc) {
  double err = std::abs(diff);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  return err;
}

Panel gk15(const RealLineFunction& h, double a, double b, int depth, long& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<cplx, 15> fv{};
  fv[7] = h(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[static_cast<std::size_t>(j)];
    fv[static_cast<std::size_t>(j)] = h(center - dx);
    fv[static_cast<std::size_t>(14 - j)] = h(center + dx);
  }
  evals += 15;

  cplx kronrod = fv[7] * kWgk[7];
  cplx gauss = fv[7] * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    const cplx pair = fv[uj] + fv[14 - uj];
    kronrod += kWgk[uj] * pair;
    if (j % 2 == 1) gauss += kWg[uj / 2] * pair;
  }
  const cplx mean = 0.5 * kronrod;
  double asc_re = kWgk[7] * std::abs(fv[7].real() - mean.real());
  double asc_im = kWgk[7] * std::abs(fv[7].imag() - mean.imag());
  for (int j = 0; j < 7; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    asc_re += kWgk[uj] * (std::abs(fv[uj].real() - mean.real()) +
                          std::abs(fv[14 - uj].real() - mean.real()));
    asc_im += kWgk[uj] * (std::abs(fv[uj].imag() - mean.imag()) +
                          std::abs(fv[14 - uj].imag() - mean.imag()));
  }
  const cplx diff = (kronrod - gauss) * half;
  const double err = std::hypot(quadpack_error(diff.real(), asc_re * half),
                                quadpack_error(diff.imag(), asc_im * half));
  return {a, b, depth, kronrod * half, err};
}

struct LargerError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

// Bound on int_{|t| > T} |h| from the t^-2 decay: per side, (sup of |h(t)| t^2) / T with the
// sup sampled on [T, 2T]. The margin covers the envelope still drifting past 2T.
double tail_bound(const RealLineFunction& h, double t, long& evals) {
  constexpr int kSamples = 997;
  constexpr double kMargin = 1.25;
  double right = 0.0;
  double left = 0.0;
  for (int k = 0; k < kSamples; ++k) {
    const double s = t * (1.0 + (k + 0.5) / kSamples);
    right = std::max(right, std::abs(h(s)) * s * s);
    left = std::max(left, std::abs(h(-s)) * s * s);
  }
  evals += 2 * kSamples;
  return kMargin * (right + left) / t;
}

}  // namespace

QuadratureResult integrate_real_line(const RealLineFunction& h, const QuadratureSpec& q) {
  if (!(q.half_width > 0.0)) throw InputError("quadrature half_width must be positive");
  if (q.max_depth < 0) throw InputError("quadrature max_depth must be nonnegative");

  QuadratureResult out;
  const auto initial = static_cast<int>(std::ceil(2.0 * q.half_width));
  const double width = 2.0 * q.half_width / initial;

  std::priority_queue<Panel, std::vector<Panel>, LargerError> open;
  std::vector<Panel> done;
  cplx total{0.0, 0.0};
  double total_err = 0.0;
  for (int k = 0; k < initial; ++k) {
    const double a = -q.half_width + k * width;
    const double b = (k + 1 == initial) ? q.half_width : a + width;
    Panel p = gk15(h, a, b, 0, out.evaluations);
    total += p.value;
    total_err += p.error;
    open.push(p);
  }

  auto target = [&] { return q.rel_tol * std::abs(total) + kAbsFloor; };
  while (!open.empty() && total_err > target()) {
    Panel p = open.top();
    open.pop();
    if (p.depth >= q.max_depth || open.size() + done.size() >= kMaxPanels) {
      done.push_back(p);
      continue;
    }
    const double mid = 0.5 * (p.a + p.b);
    Panel left = gk15(h, p.a, mid, p.depth + 1, out.evaluations);
    Panel right = gk15(h, mid, p.b, p.depth + 1, out.evaluations);
    total += left.value + right.value - p.value;
    total_err += left.error + right.error - p.error;
    open.push(left);
    open.push(right);
  }
  while (!open.empty()) {
    done.push_back(open.top());
    open.pop();
  }

  // Reduce in positional order so the result does not depend on refinement history.
  std::sort(done.begin(), done.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  out.value = {0.0, 0.0};
  out.quadrature_error = 0.0;
  for (const Panel& p : done) {
    out.value += p.value;
    out.quadrature_error += p.error;
  }
  out.converged = out.quadrature_error <= q.rel_tol * std::abs(out.value) + kAbsFloor;
  out.tail_bound = tail_bound(h, q.half_width, out.evaluations);
  return out;
}

QuadratureResult weighted_inner_product(const RealLineFunction& u, const RealLineFunction& v,
                                        const HermiteBiehler& weight, const QuadratureSpec& q) {
  return integrate_real_line(
      [&](double t) { return u(t) * std::conj(v(t)) / weight.modulus_squared(t); }, q);
}

QuadratureResult inner_product(const KernelCombination& f, const KernelCombination& g,
                               const QuadratureSpec& q) {
  if (!(f.space_generator() == g.space_generator())) {
    throw InputError("inner_product: combinations belong to different spaces");
  }
  if (f.empty() || g.empty()) return {};
  return weighted_inner_product([&](double t) { return f(cplx{t, 0.0}); },
                                [&](double t) { return g(cplx{t, 0.0}); }, f.space_generator(), q);
}

RealLineFunction embed_left(const KernelCombination& f, const HermiteBiehler& right) {
  return [f, right](double t) {
    const cplx z{t, 0.0};
    return f(z) * right.eval(z);
  };
}

RealLineFunction embed_right(const KernelCombination& g, const HermiteBiehler& left) {
  return [g, left](double t) {
    const cplx z{t, 0.0};
    return g(z) * left.eval_star(z);
  };
}

QuadratureResult cross_inner_ef(const KernelCombination& f, const KernelCombination& g,
                                const QuadratureSpec& q) {
  if (f.empty() || g.empty()) return {};
  const HermiteBiehler& e = f.space_generator();
  const HermiteBiehler& fgen = g.space_generator();
  return weighted_inner_product(embed_left(f, fgen), embed_right(g, e), product(e, fgen), q);
}

}  // namespace debranges
