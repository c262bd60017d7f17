#include "debranges/multiplex.hpp"

#include <random>
#include <string>

#include "debranges/errors.hpp"

namespace debranges {

namespace {

cplx decode(const MultiplexedStream& stream, cplx z, bool want_f) {
  const FrameSystem& sys = *stream.sys;
  const HermiteBiehler& gen = want_f ? sys.e : sys.f;
  const auto& anchors = want_f ? sys.anchors_e : sys.anchors_f;
  const cplx ez = gen.eval(z);
  const cplx estar_z = gen.eval_star(z);
  cplx s{0.0, 0.0};
  for (std::size_t n = 0; n < stream.values.size(); ++n) {
    if (stream.values[n] == cplx{0.0, 0.0}) continue;
    const cplx w = want_f ? std::conj(sys.weights_f[n]) : sys.weights_e[n];
    s += stream.values[n] * (w / sys.diag_ef[n]) * kernel(gen, anchors[n], z, ez, estar_z);
  }
  return s;
}

}  // namespace

MultiplexedStream encode(const FrameSystem& sys, std::span<const cplx> samples_f,
                         std::span<const cplx> samples_g) {
  if (samples_f.size() != sys.size() || samples_g.size() != sys.size()) {
    throw InputError("encode: expected " + std::to_string(sys.size()) + " samples of f and g, got " +
                     std::to_string(samples_f.size()) + " and " + std::to_string(samples_g.size()));
  }
  MultiplexedStream out{&sys, {}};
  out.values.reserve(sys.size());
  for (std::size_t n = 0; n < sys.size(); ++n) {
    out.values.push_back(samples_f[n] * sys.weights_f[n] + samples_g[n] * sys.weights_estar[n]);
  }
  return out;
}

cplx decode_f(const MultiplexedStream& stream, cplx z) { return decode(stream, z, true); }

cplx decode_g(const MultiplexedStream& stream, cplx z) { return decode(stream, z, false); }

MultiplexedStream simulate_channel(const MultiplexedStream& stream, double noise_sigma,
                                   double drop_probability, std::uint64_t seed) {
  if (!(noise_sigma >= 0.0)) throw InputError("simulate_channel: noise_sigma must be >= 0");
  if (!(drop_probability >= 0.0 && drop_probability < 1.0)) {
    throw InputError("simulate_channel: drop_probability must lie in [0, 1)");
  }
  MultiplexedStream out = stream;
  if (noise_sigma == 0.0 && drop_probability == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (cplx& m : out.values) {
    // Draw all three variates per entry so the noise does not depend on drop outcomes.
    const double re = noise(rng);
    const double im = noise(rng);
    const bool dropped = coin(rng) < drop_probability;
    m = dropped ? cplx{0.0, 0.0} : m + noise_sigma * cplx{re, im};
  }
  return out;
}

MultiplexedStream drop_entries(const MultiplexedStream& stream, std::span<const long> indices) {
  MultiplexedStream out = stream;
  for (long n : indices) {
    if (n < stream.index_lo() || n > stream.index_hi()) {
      throw InputError("drop_entries: index " + std::to_string(n) + " outside the window");
    }
    out.values[static_cast<std::size_t>(n - stream.index_lo())] = cplx{0.0, 0.0};
  }
  return out;
}

}  // namespace debranges
