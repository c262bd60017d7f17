#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "debranges/frames.hpp"

namespace debranges {

/// m_n = f(l_n) F(l_n) + g(l_n) E*(l_n) over the window of a frame system.
/// The stream refers to its system, which must outlive it.
struct MultiplexedStream {
  const FrameSystem* sys = nullptr;
  std::vector<cplx> values;

  long index_lo() const noexcept { return sys->nodes.index_lo; }
  long index_hi() const noexcept { return sys->nodes.index_hi; }
};

MultiplexedStream encode(const FrameSystem& sys, std::span<const cplx> samples_f,
                         std::span<const cplx> samples_g);

/// sum_n m_n conj(F(l_n)) K_E(l_n, z) / K_EF(l_n, l_n)
cplx decode_f(const MultiplexedStream& stream, cplx z);
/// sum_n m_n E(l_n) K_F(l_n, z) / K_EF(l_n, l_n)
cplx decode_g(const MultiplexedStream& stream, cplx z);

/// Adds iid complex Gaussian noise (standard deviation `noise_sigma` per real
/// component) and zeroes each entry with probability `drop_probability`.
/// Deterministic for a given seed.
MultiplexedStream simulate_channel(const MultiplexedStream& stream, double noise_sigma,
                                   double drop_probability, std::uint64_t seed);

/// Zeroes the entries with the given window indices n.
MultiplexedStream drop_entries(const MultiplexedStream& stream, std::span<const long> indices);

}  // namespace debranges
