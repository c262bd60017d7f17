#include "debranges/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "debranges/errors.hpp"
#include "debranges/frames.hpp"
#include "debranges/io.hpp"
#include "debranges/kernel.hpp"
#include "debranges/multiplex.hpp"
#include "debranges/nodes.hpp"
#include "debranges/presets.hpp"
#include "debranges/quadrature.hpp"
#include "debranges/verify.hpp"

namespace debranges::cli {

namespace {

const std::vector<double> kDefaultProbes = {0.0, 0.3, 0.7, 1.4, -0.9, 2.1};

struct Spaces {
  HermiteBiehler e;
  std::optional<HermiteBiehler> f;

  HermiteBiehler node_generator() const { return f ? product(e, *f) : e; }
};

Spaces resolve_spaces(const RunConfig& cfg) {
  std::optional<Preset> preset;
  if (!cfg.preset.empty()) preset = preset_by_name(cfg.preset);
  if (cfg.hb_path.empty() && !preset) throw InputError("--hb or --preset is required");
  Spaces s{cfg.hb_path.empty() ? preset->e : io::read_hb_file(cfg.hb_path), std::nullopt};
  if (!cfg.hb2_path.empty()) {
    s.f = io::read_hb_file(cfg.hb2_path);
  } else if (preset) {
    s.f = preset->f;
  }
  return s;
}

KernelCombination random_combination(const HermiteBiehler& e, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-2.0, 2.0);
  std::uniform_real_distribution<double> im(-0.5, 0.5);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<cplx> centers;
  std::vector<cplx> coefs;
  for (int k = 0; k < 3; ++k) {
    centers.emplace_back(re(rng), im(rng));
    coefs.emplace_back(coef(rng), coef(rng));
  }
  return KernelCombination(e, std::move(centers), std::move(coefs));
}

int run_nodes(const RunConfig& cfg, std::ostream& out) {
  const Spaces s = resolve_spaces(cfg);
  io::write_nodes_csv(out, solve_nodes(s.node_generator(), cfg.alpha, cfg.n_lo, cfg.n_hi,
                                       cfg.tol("residual")));
  return 0;
}

int run_kernel(const RunConfig& cfg, std::ostream& out) {
  const Spaces s = resolve_spaces(cfg);
  out << "x,re,im,diag\n";
  for (double x : cfg.grid.points()) {
    const cplx k = kernel(s.e, cfg.center, cplx{x, 0.0});
    out << io::format_double(x) << ',' << io::format_double(k.real()) << ','
        << io::format_double(k.imag()) << ',' << io::format_double(kernel_diag(s.e, x)) << '\n';
  }
  return 0;
}

int run_reconstruct(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Spaces s = resolve_spaces(cfg);
  const HermiteBiehler g = s.node_generator();
  std::optional<KernelCombination> ref;
  if (!cfg.ref_path.empty()) ref = io::read_combination_file(cfg.ref_path, s.e);

  NodeSet nodes{g, cfg.alpha, 0, -1, {}, {}};
  std::vector<cplx> samples;
  if (!cfg.samples_path.empty()) {
    std::ifstream in(cfg.samples_path);
    if (!in) throw InputError("cannot open " + cfg.samples_path);
    const auto rows = io::read_samples_csv(in, cfg.samples_path);
    if (rows.empty()) throw InputError(cfg.samples_path + ": no samples");
    std::vector<double> lambdas;
    for (const auto& r : rows) {
      lambdas.push_back(r.lambda);
      samples.push_back(r.value);
    }
    nodes = nodes_at(g, cfg.alpha, rows.front().n, std::move(lambdas));
  } else if (ref) {
    nodes = solve_nodes(g, cfg.alpha, cfg.n_lo, cfg.n_hi, cfg.tol("residual"));
    samples = sample(*ref, nodes.nodes);
  } else {
    throw InputError("reconstruct needs --samples or --ref");
  }

  std::optional<FrameSystem> sys;
  if (s.f) sys = make_frame_system(s.e, *s.f, nodes);

  out << (ref ? "x,re,im,ref_re,ref_im,err\n" : "x,re,im\n");
  double max_err = 0.0;
  for (double x : cfg.grid.points()) {
    const cplx z{x, 0.0};
    const cplx v = sys ? reconstruct_in_e(*sys, samples, z) : reconstruct_onb(s.e, nodes, samples, z);
    out << io::format_double(x) << ',' << io::format_double(v.real()) << ','
        << io::format_double(v.imag());
    if (ref) {
      const cplx r = (*ref)(z);
      const double e = std::abs(v - r);
      max_err = std::max(max_err, e);
      out << ',' << io::format_double(r.real()) << ',' << io::format_double(r.imag()) << ','
          << io::format_double(e);
    }
    out << '\n';
  }
  if (ref) err << "max_err=" << io::format_double(max_err) << '\n';
  return 0;
}

int run_bounds(const RunConfig& cfg, std::ostream& out) {
  const Spaces s = resolve_spaces(cfg);
  const NodeSet nodes = solve_nodes(s.node_generator(), cfg.alpha, cfg.n_lo, cfg.n_hi,
                                    cfg.tol("residual"));
  std::vector<cplx> probes;
  for (double p : cfg.probes.empty() ? kDefaultProbes : cfg.probes) probes.emplace_back(p, 0.0);
  const FrameBounds fb = frame_bounds(s.e, nodes.nodes, cfg.normalize, probes);

  double min_eig = 0.0;
  if (s.f) {
    min_eig = min_eigenvalue(naimark_gram(make_frame_system(s.e, *s.f, nodes)));
  } else {
    std::vector<cplx> pts;
    for (double x : nodes.nodes) pts.emplace_back(x, 0.0);
    Eigen::MatrixXcd g = gram(s.e, pts);
    const Eigen::VectorXd d = g.diagonal().real().cwiseSqrt().cwiseInverse();
    g = d.asDiagonal() * g * d.asDiagonal();
    min_eig = min_eigenvalue(g);
  }
  out << io::frame_report_json({fb.lower, fb.upper, cfg.n_lo, cfg.n_hi, cfg.normalize, min_eig})
             .dump(2)
      << '\n';
  return 0;
}

int run_multiplex(const RunConfig& cfg, std::ostream& out) {
  const Spaces s = resolve_spaces(cfg);
  if (!s.f) throw InputError("multiplex needs --hb2 or --preset");
  const FrameSystem sys = make_frame_system(s.e, *s.f, cfg.alpha, cfg.n_lo, cfg.n_hi);
  const KernelCombination fc = cfg.ref_path.empty() ? random_combination(s.e, cfg.seed)
                                                    : io::read_combination_file(cfg.ref_path, s.e);
  const KernelCombination gc = cfg.ref_g_path.empty()
                                   ? random_combination(*s.f, cfg.seed + 0x9e3779b97f4a7c15ULL)
                                   : io::read_combination_file(cfg.ref_g_path, *s.f);
  const MultiplexedStream stream =
      encode(sys, sample(fc, sys.nodes.nodes), sample(gc, sys.nodes.nodes));

  io::json report = io::json::array();
  const auto grid = cfg.grid.points();
  for (int t = 0; t < cfg.trials; ++t) {
    const MultiplexedStream received =
        simulate_channel(stream, cfg.sigma, cfg.drop, cfg.seed + static_cast<std::uint64_t>(t));
    if (t == 0 && !cfg.stream_out_path.empty()) {
      std::ofstream so(cfg.stream_out_path);
      if (!so) throw InputError("cannot write " + cfg.stream_out_path);
      io::write_stream_csv(so, received);
    }
    double ef = 0.0;
    double eg = 0.0;
    for (double x : grid) {
      const cplx z{x, 0.0};
      ef = std::max(ef, std::abs(decode_f(received, z) - fc(z)));
      eg = std::max(eg, std::abs(decode_g(received, z) - gc(z)));
    }
    report.push_back(io::multiplex_trial_json({cfg.sigma, cfg.drop, cfg.n_lo, cfg.n_hi, ef, eg}));
  }
  out << report.dump(2) << '\n';
  return 0;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  std::vector<Preset> presets;
  if (cfg.preset.empty()) {
    presets = all_presets();
  } else {
    presets.push_back(preset_by_name(cfg.preset));
  }
  bool all = true;
  for (const Preset& p : presets) {
    QuadratureSpec q;
    q.rel_tol = cfg.tol("quad-rel");
    q.half_width = cfg.tol("quad-halfwidth");
    const auto rows = verify_preset(p, cfg.seed, q);
    print_check_table(out, "preset " + p.name, rows);
    for (const auto& r : rows) all = all && r.pass;
  }
  out << (all ? "ALL PASS\n" : "FAILURES PRESENT\n");
  return all ? 0 : 2;
}

}  // namespace

std::vector<double> Grid::points() const {
  std::vector<double> out;
  const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (long k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

Grid parse_grid(const std::string& text) {
  Grid g;
  char c1 = 0;
  char c2 = 0;
  std::istringstream is(text);
  if (!(is >> g.start >> c1 >> g.stop >> c2 >> g.step) || c1 != ':' || c2 != ':' ||
      !is.eof()) {
    throw InputError("--grid: expected a:b:step, got '" + text + "'");
  }
  if (!(g.step > 0.0) || !(g.stop >= g.start)) {
    throw InputError("--grid: need step > 0 and b >= a");
  }
  return g;
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tols = {
      {"residual", kNodeResidualTolerance},
      {"quad-rel", QuadratureSpec{}.rel_tol},
      {"quad-halfwidth", QuadratureSpec{}.half_width},
  };
  return tols;
}

double RunConfig::tol(const std::string& name) const {
  if (auto it = tolerances.find(name); it != tolerances.end()) return it->second;
  return default_tolerances().at(name);
}

void normalize_alpha(RunConfig& cfg) {
  const double shift = std::floor(cfg.alpha / std::numbers::pi);
  if (shift == 0.0) return;
  cfg.alpha -= shift * std::numbers::pi;
  if (cfg.alpha >= std::numbers::pi) cfg.alpha = 0.0;  // rounding at the upper edge
  cfg.n_lo += static_cast<long>(shift);
  cfg.n_hi += static_cast<long>(shift);
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  RunConfig cfg;
  CLI::App app{"Sampling, frames and multiplexing in de Branges spaces"};
  app.require_subcommand(1);

  std::string grid_text;
  std::string center_text;
  std::map<std::string, double> tol_values;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--hb", cfg.hb_path, "JSON file describing E");
    sub->add_option("--hb2", cfg.hb2_path, "JSON file describing F");
    sub->add_option("--preset", cfg.preset, "pw or nonpw")->check(CLI::IsMember({"pw", "nonpw"}));
    sub->add_option("--alpha", cfg.alpha, "phase offset (normalized into [0, pi))");
    sub->add_option("--n-lo", cfg.n_lo, "first node index");
    sub->add_option("--n-hi", cfg.n_hi, "last node index");
    sub->add_option("--grid", grid_text, "evaluation grid a:b:step");
    sub->add_option("--out", cfg.out_path, "output file (default stdout)");
    sub->add_option("--seed", cfg.seed, "random seed");
    for (const auto& [name, value] : default_tolerances()) {
      sub->add_option("--tol-" + name, tol_values[name], "tolerance '" + name + "'")
          ->default_val(value);
    }
  };

  auto* nodes = app.add_subcommand("nodes", "solve phase nodes, CSV n,lambda,residual");
  auto* kern = app.add_subcommand("kernel", "kernel values K_E(center, x) on a grid");
  auto* recon = app.add_subcommand("reconstruct", "reconstruct from samples on a grid");
  auto* bounds = app.add_subcommand("bounds", "frame-bound estimates as JSON");
  auto* mux = app.add_subcommand("multiplex", "encode, channel, decode; JSON report");
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  for (auto* sub : {nodes, kern, recon, bounds, mux, verify}) add_common(sub);

  kern->add_option("--center", center_text, "kernel center re,im");
  recon->add_option("--samples", cfg.samples_path, "CSV n,lambda,re,im");
  recon->add_option("--ref", cfg.ref_path, "reference kernel combination JSON");
  bounds->add_flag("--normalize", cfg.normalize, "divide samples by K(l, l)");
  bounds->add_option("--probes", cfg.probes, "real probe centers")->delimiter(',');
  mux->add_option("--sigma", cfg.sigma, "channel noise per component");
  mux->add_option("--drop", cfg.drop, "drop probability");
  mux->add_option("--trials", cfg.trials, "channel realizations")->check(CLI::PositiveNumber);
  mux->add_option("--ref", cfg.ref_path, "kernel combination for f");
  mux->add_option("--ref-g", cfg.ref_g_path, "kernel combination for g");
  mux->add_option("--stream-out", cfg.stream_out_path, "CSV of the received stream (trial 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw InputError(e.what());
  }

  if (*nodes) cfg.command = Command::nodes;
  if (*kern) cfg.command = Command::kernel;
  if (*recon) cfg.command = Command::reconstruct;
  if (*bounds) cfg.command = Command::bounds;
  if (*mux) cfg.command = Command::multiplex;
  if (*verify) cfg.command = Command::verify;

  if (!grid_text.empty()) cfg.grid = parse_grid(grid_text);
  if (!center_text.empty()) {
    std::istringstream is(center_text);
    double re = 0.0;
    double im = 0.0;
    char comma = 0;
    if (!(is >> re) || (!is.eof() && !(is >> comma >> im && comma == ','))) {
      throw InputError("--center: expected re or re,im");
    }
    cfg.center = {re, im};
  }
  if (cfg.n_lo > cfg.n_hi) throw InputError("--n-lo must not exceed --n-hi");
  if (!std::isfinite(cfg.alpha)) throw InputError("--alpha must be finite");
  cfg.tolerances = tol_values;
  normalize_alpha(cfg);
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out_path.empty()) {
      file.open(cfg.out_path);
      if (!file) throw InputError("cannot write " + cfg.out_path);
      sink = &file;
    }
    switch (cfg.command) {
      case Command::nodes: return run_nodes(cfg, *sink);
      case Command::kernel: return run_kernel(cfg, *sink);
      case Command::reconstruct: return run_reconstruct(cfg, *sink, err);
      case Command::bounds: return run_bounds(cfg, *sink);
      case Command::multiplex: return run_multiplex(cfg, *sink);
      case Command::verify: return run_verify(cfg, *sink);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const PhaseRangeError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const IterationLimitError& e) {
    err << "numerical failure: " << e.what() << " (last bracket [" << e.bracket_lo() << ", "
        << e.bracket_hi() << "])\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_args(argc, argv, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  if (!cfg) return 0;
  return run(*cfg, out, err);
}

}  // namespace debranges::cli
