#include "debranges/nodes.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "debranges/errors.hpp"

namespace debranges {

namespace {

double solve_one(const HermiteBiehler& g, double target, double tolerance, double hint) {
  auto residual = [&](double x) { return g.phase(x).phi - target; };

  // Bracket [lo, hi] with residual(lo) <= 0 <= residual(hi), growing from the hint.
  double lo = hint;
  double hi = hint;
  double r0 = residual(hint);
  if (std::abs(r0) <= tolerance) return hint;
  double step = 1.0;
  int doublings = 0;
  if (r0 < 0.0) {
    while (residual(hi) < 0.0) {
      lo = hi;
      hi = hint + step;
      step *= 2.0;
      if (++doublings > kNodeMaxIterations) {
        throw IterationLimitError("bracket expansion did not reach the target phase", lo, hi);
      }
    }
  } else {
    while (residual(lo) > 0.0) {
      hi = lo;
      lo = hint - step;
      step *= 2.0;
      if (++doublings > kNodeMaxIterations) {
        throw IterationLimitError("bracket expansion did not reach the target phase", lo, hi);
      }
    }
  }

  double x = 0.5 * (lo + hi);
  for (int it = 0; it < kNodeMaxIterations; ++it) {
    const PhaseValue p = g.phase(x);
    const double r = p.phi - target;
    if (std::abs(r) <= tolerance) {
      // One more Newton step usually lands at rounding level; keep it only if it helps.
      const double polished = x - r / p.phi_prime;
      return std::abs(g.phase(polished).phi - target) < std::abs(r) ? polished : x;
    }
    if (r < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    double next = x - r / p.phi_prime;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) return x;  // no representable progress left
    x = next;
  }
  throw IterationLimitError("phase equation did not converge", lo, hi);
}

}  // namespace

NodeSet solve_nodes(const HermiteBiehler& g, double alpha, long index_lo, long index_hi,
                    double tolerance) {
  if (!(alpha >= 0.0 && alpha < std::numbers::pi)) {
    throw InputError("alpha must lie in [0, pi)");
  }
  if (index_lo > index_hi) throw InputError("index window requires index_lo <= index_hi");

  NodeSet out{g, alpha, index_lo, index_hi, {}, {}};
  const double inf = g.phase_inf();
  const double sup = g.phase_sup();
  const auto count = static_cast<std::size_t>(index_hi - index_lo + 1);
  out.nodes.reserve(count);
  out.residuals.reserve(count);

  double hint = 0.0;
  for (long n = index_lo; n <= index_hi; ++n) {
    const double target = static_cast<double>(n) * std::numbers::pi + alpha;
    if (!(target > inf && target < sup)) {
      std::ostringstream msg;
      msg << "target phase " << target << " (n = " << n << ") outside attainable range (" << inf
          << ", " << sup << ")";
      throw PhaseRangeError(msg.str(), inf, sup);
    }
    const double x = solve_one(g, target, tolerance, hint);
    const double res = std::abs(g.phase(x).phi - target);
    if (!(res <= tolerance)) {
      throw IterationLimitError("phase equation stalled at residual " + std::to_string(res) +
                                    " for n = " + std::to_string(n),
                                x, x);
    }
    out.nodes.push_back(x);
    out.residuals.push_back(res);
    hint = x;
  }
  return out;
}

NodeSet nodes_at(const HermiteBiehler& g, double alpha, long index_lo, std::vector<double> nodes) {
  NodeSet out{g, alpha, index_lo, index_lo + static_cast<long>(nodes.size()) - 1, std::move(nodes), {}};
  out.residuals.reserve(out.nodes.size());
  for (std::size_t i = 0; i < out.nodes.size(); ++i) {
    const double target = static_cast<double>(out.index(i)) * std::numbers::pi + out.alpha;
    out.residuals.push_back(std::abs(g.phase(out.nodes[i]).phi - target));
  }
  return out;
}

NodeSet with_nodes(const NodeSet& base, std::vector<double> nodes) {
  return nodes_at(base.generator, base.alpha, base.index_lo, std::move(nodes));
}

}  // namespace debranges
