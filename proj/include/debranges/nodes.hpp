#pragma once

#include <vector>

#include "debranges/hermite_biehler.hpp"

namespace debranges {

inline constexpr double kNodeResidualTolerance = 1e-10;
inline constexpr int kNodeMaxIterations = 200;

/// Real solutions of phi_G(lambda_n) = n pi + alpha for n in [index_lo, index_hi].
struct NodeSet {
  HermiteBiehler generator;
  double alpha = 0.0;
  long index_lo = 0;
  long index_hi = -1;
  std::vector<double> nodes;
  std::vector<double> residuals;

  std::size_t size() const noexcept { return nodes.size(); }
  long index(std::size_t i) const noexcept { return index_lo + static_cast<long>(i); }
};

/// Bracket by doubling from 0, then safeguarded Newton. Throws PhaseRangeError when a
/// target is outside (phase_inf, phase_sup) and IterationLimitError when the iteration
/// budget runs out.
NodeSet solve_nodes(const HermiteBiehler& g, double alpha, long index_lo, long index_hi,
                    double tolerance = kNodeResidualTolerance);

/// Wraps externally supplied node positions (index n = index_lo + i) and records
/// their residuals against n pi + alpha. The result is not a solved set.
NodeSet nodes_at(const HermiteBiehler& g, double alpha, long index_lo, std::vector<double> nodes);

/// Replaces the node positions (e.g. with jittered copies) and recomputes the
/// residuals against the original targets. The result is not a solved set.
NodeSet with_nodes(const NodeSet& base, std::vector<double> nodes);

}  // namespace debranges
