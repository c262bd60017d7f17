#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "debranges/errors.hpp"
#include "debranges/io.hpp"

namespace debranges::io {

namespace {

cplx complex_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InputError(field + ": expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::vector<cplx> complex_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected an array of [re, im] pairs");
  std::vector<cplx> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(complex_from_json(j[k], field + "[" + std::to_string(k) + "]"));
  }
  return out;
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace

HermiteBiehler hb_from_json(const json& j) {
  if (!j.is_object()) throw InputError("HB spec: expected a JSON object");
  double a = 0.0;
  if (j.contains("exp_coefficient")) {
    if (!j["exp_coefficient"].is_number()) throw InputError("exp_coefficient: expected a number");
    a = j["exp_coefficient"].get<double>();
  }
  std::vector<cplx> roots;
  if (j.contains("roots")) roots = complex_list(j["roots"], "roots");
  for (std::size_t k = 0; k < roots.size(); ++k) {
    if (!(roots[k].imag() < 0.0)) {
      throw InputError("roots[" + std::to_string(k) + "]: imaginary part must be < 0");
    }
  }
  cplx scale{1.0, 0.0};
  if (j.contains("leading_scale")) scale = complex_from_json(j["leading_scale"], "leading_scale");
  return HermiteBiehler(a, std::move(roots), scale);
}

json hb_to_json(const HermiteBiehler& e) {
  json roots = json::array();
  for (const cplx& w : e.roots()) roots.push_back(complex_to_json(w));
  return {{"exp_coefficient", e.exp_coefficient()},
          {"roots", roots},
          {"leading_scale", complex_to_json(e.leading_scale())}};
}

HermiteBiehler read_hb_file(const std::string& path) {
  try {
    return hb_from_json(parse_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

KernelCombination combination_from_json(const json& j, const HermiteBiehler& e) {
  if (!j.is_object() || !j.contains("centers") || !j.contains("coefficients")) {
    throw InputError("combination: expected {\"centers\": [...], \"coefficients\": [...]}");
  }
  return KernelCombination(e, complex_list(j["centers"], "centers"),
                           complex_list(j["coefficients"], "coefficients"));
}

json combination_to_json(const KernelCombination& f) {
  json centers = json::array();
  json coefs = json::array();
  for (const cplx& c : f.centers()) centers.push_back(complex_to_json(c));
  for (const cplx& c : f.coefficients()) coefs.push_back(complex_to_json(c));
  return {{"centers", centers}, {"coefficients", coefs}};
}

KernelCombination read_combination_file(const std::string& path, const HermiteBiehler& e) {
  try {
    return combination_from_json(parse_file(path), e);
  } catch (const InputError& err) {
    throw InputError(path + ": " + err.what());
  }
}

std::string format_double(double v) {
  char buf[32];
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_nodes_csv(std::ostream& os, const NodeSet& nodes) {
  os << "n,lambda,residual\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    os << nodes.index(i) << ',' << format_double(nodes.nodes[i]) << ','
       << format_double(nodes.residuals[i]) << '\n';
  }
}

void write_samples_csv(std::ostream& os, std::span<const SampleRow> rows) {
  os << "n,lambda,re,im\n";
  for (const SampleRow& r : rows) {
    os << r.n << ',' << format_double(r.lambda) << ',' << format_double(r.value.real()) << ','
       << format_double(r.value.imag()) << '\n';
  }
}

std::vector<SampleRow> read_samples_csv(std::istream& is, const std::string& source) {
  std::vector<SampleRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("n,", 0) == 0) continue;  // header
    std::istringstream ls(line);
    std::string cell[4];
    for (int k = 0; k < 4; ++k) {
      if (!std::getline(ls, cell[k], ',')) {
        throw InputError(source + ":" + std::to_string(lineno) + ": expected 4 columns n,lambda,re,im");
      }
    }
    SampleRow r;
    try {
      std::size_t used = 0;
      r.n = std::stol(cell[0], &used);
      r.lambda = std::stod(cell[1]);
      r.value = {std::stod(cell[2]), std::stod(cell[3])};
    } catch (const std::exception&) {
      throw InputError(source + ":" + std::to_string(lineno) + ": malformed number");
    }
    if (!rows.empty() && r.n != rows.back().n + 1) {
      throw InputError(source + ":" + std::to_string(lineno) + ": indices must be consecutive");
    }
    rows.push_back(r);
  }
  return rows;
}

void write_stream_csv(std::ostream& os, const MultiplexedStream& stream) {
  os << "n,lambda,m_re,m_im\n";
  const NodeSet& nodes = stream.sys->nodes;
  for (std::size_t i = 0; i < stream.values.size(); ++i) {
    os << nodes.index(i) << ',' << format_double(nodes.nodes[i]) << ','
       << format_double(stream.values[i].real()) << ',' << format_double(stream.values[i].imag())
       << '\n';
  }
}

json frame_report_json(const FrameReport& r) {
  return {{"A_est", r.a_est},
          {"B_est", r.b_est},
          {"window", json::array({r.index_lo, r.index_hi})},
          {"normalize", r.normalize},
          {"min_gram_eig", r.min_gram_eig}};
}

json multiplex_trial_json(const MultiplexTrial& t) {
  return {{"sigma", t.sigma},
          {"drop", t.drop},
          {"window", json::array({t.index_lo, t.index_hi})},
          {"err_f", t.err_f},
          {"err_g", t.err_g}};
}

}  // namespace debranges::io
