#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "debranges/frames.hpp"
#include "debranges/hermite_biehler.hpp"
#include "debranges/kernel.hpp"
#include "debranges/multiplex.hpp"
#include "debranges/nodes.hpp"

namespace debranges::io {

using json = nlohmann::json;

// {"exp_coefficient": a, "roots": [[re, im], ...], "leading_scale": [re, im]}
HermiteBiehler hb_from_json(const json& j);
json hb_to_json(const HermiteBiehler& e);
HermiteBiehler read_hb_file(const std::string& path);

// {"centers": [[re, im], ...], "coefficients": [[re, im], ...]}
KernelCombination combination_from_json(const json& j, const HermiteBiehler& e);
json combination_to_json(const KernelCombination& f);
KernelCombination read_combination_file(const std::string& path, const HermiteBiehler& e);

/// One row of a sample stream: n, lambda, value.
struct SampleRow {
  long n = 0;
  double lambda = 0.0;
  cplx value{0.0, 0.0};
};

/// CSV "n,lambda,residual"
void write_nodes_csv(std::ostream& os, const NodeSet& nodes);
/// CSV "n,lambda,re,im"
void write_samples_csv(std::ostream& os, std::span<const SampleRow> rows);
std::vector<SampleRow> read_samples_csv(std::istream& is, const std::string& source);
/// CSV "n,lambda,m_re,m_im"
void write_stream_csv(std::ostream& os, const MultiplexedStream& stream);

struct FrameReport {
  double a_est = 0.0;
  double b_est = 0.0;
  long index_lo = 0;
  long index_hi = 0;
  bool normalize = false;
  double min_gram_eig = 0.0;
};
json frame_report_json(const FrameReport& r);

struct MultiplexTrial {
  double sigma = 0.0;
  double drop = 0.0;
  long index_lo = 0;
  long index_hi = 0;
  double err_f = 0.0;
  double err_g = 0.0;
};
json multiplex_trial_json(const MultiplexTrial& t);

/// Shortest text that parses back to the same double.
std::string format_double(double v);

}  // namespace debranges::io
