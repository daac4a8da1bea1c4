// quasih: command-line front end for the two-level quasi-Hermitian toolkit.
//
// Subcommands:
//   metric   one metric: entries, eigenvalues, intertwining residual
//   family   generator rays of the metric family and the fitted coefficients
//   evolve   metric norm and Dirac norm of a state versus time
//   signal   Bob's marginal shift under Alice's action, per grid point and mode
//   ep-scan  metric diagnostics along an alpha sweep into the exceptional point
//
// Exit codes: 0 success, 2 invalid parameters or flags, 3 exceptional-point
// domain request, 4 I/O failure. Output is deterministic byte-for-byte for a
// fixed configuration.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quasih/errors.hpp"
#include "quasih/experiment.hpp"
#include "quasih/matrix.hpp"
#include "quasih/model.hpp"
#include "quasih/space.hpp"
#include "serialize.hpp"

namespace {

using quasih::Complex;
using quasih::ComplexMatrix;
using quasih::MetricParams;
using quasih::ModelParams;
using quasih::StateVector;

struct InvalidConfig : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Cli {
  double s = 1.0;
  double alpha = 0.0;
  double alpha_deg = 0.0;
  double a = 1.0;
  double u = 0.0;
  bool cpt = false;
  std::vector<double> t;
  std::string alpha_grid;
  std::string u_grid;
  std::string mode = "both";
  std::string action = "evolve";
  std::string state;
  std::string output = "-";
  std::string format = "json";
  std::string config;

  CLI::Option* alpha_opt = nullptr;
  CLI::Option* alpha_deg_opt = nullptr;
  CLI::Option* t_opt = nullptr;
  CLI::Option* cpt_opt = nullptr;
};

constexpr double kDegree = 3.14159265358979323846 / 180.0;

/// "start:stop:count" with inclusive endpoints, ascending.
std::vector<double> parse_range(const std::string& spec) {
  const auto first = spec.find(':');
  const auto second = spec.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos ||
      spec.find(':', second + 1) != std::string::npos) {
    throw InvalidConfig("range must have the form start:stop:count: " + spec);
  }
  double start = 0.0, stop = 0.0;
  long count = 0;
  try {
    std::size_t pos = 0;
    std::string part = spec.substr(0, first);
    start = std::stod(part, &pos);
    if (pos != part.size()) throw InvalidConfig("bad range start: " + part);
    part = spec.substr(first + 1, second - first - 1);
    stop = std::stod(part, &pos);
    if (pos != part.size()) throw InvalidConfig("bad range stop: " + part);
    part = spec.substr(second + 1);
    count = std::stol(part, &pos);
    if (pos != part.size()) throw InvalidConfig("bad range count: " + part);
  } catch (const InvalidConfig&) {
    throw;
  } catch (const std::exception&) {
    throw InvalidConfig("range must be numeric start:stop:count: " + spec);
  }
  if (!std::isfinite(start) || !std::isfinite(stop)) {
    throw InvalidConfig("range endpoints must be finite");
  }
  if (count < 1) throw InvalidConfig("range count must be at least 1");
  if (count == 1) {
    if (start != stop) throw InvalidConfig("a single-point range needs start == stop");
    return {start};
  }
  if (stop <= start) throw InvalidConfig("range must be ascending: start < stop");
  std::vector<double> values(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) {
    values[static_cast<std::size_t>(k)] =
        start + (stop - start) * static_cast<double>(k) / static_cast<double>(count - 1);
  }
  values.back() = stop;
  return values;
}

/// "re,im;re,im;..." with one pair per component.
StateVector parse_state(const std::string& spec, Eigen::Index dim) {
  std::vector<Complex> comps;
  std::size_t begin = 0;
  while (begin <= spec.size()) {
    std::size_t end = spec.find(';', begin);
    if (end == std::string::npos) end = spec.size();
    const std::string part = spec.substr(begin, end - begin);
    const auto comma = part.find(',');
    if (comma == std::string::npos || part.find(',', comma + 1) != std::string::npos) {
      throw InvalidConfig("state component must be re,im: " + part);
    }
    try {
      std::size_t pos = 0;
      const std::string re_s = part.substr(0, comma);
      const std::string im_s = part.substr(comma + 1);
      const double re = std::stod(re_s, &pos);
      if (pos != re_s.size()) throw InvalidConfig("bad state number: " + re_s);
      const double im = std::stod(im_s, &pos);
      if (pos != im_s.size()) throw InvalidConfig("bad state number: " + im_s);
      comps.emplace_back(re, im);
    } catch (const InvalidConfig&) {
      throw;
    } catch (const std::exception&) {
      throw InvalidConfig("state component must be numeric re,im: " + part);
    }
    begin = end + 1;
  }
  if (static_cast<Eigen::Index>(comps.size()) != dim) {
    throw InvalidConfig("state needs " + std::to_string(dim) + " components, got " +
                        std::to_string(comps.size()));
  }
  StateVector psi(dim);
  for (Eigen::Index k = 0; k < dim; ++k) psi(k) = comps[static_cast<std::size_t>(k)];
  if (!(psi.norm() > 0.0)) throw InvalidConfig("state must be nonzero");
  return psi;
}

double resolve_alpha(const Cli& cli) {
  const bool have_rad = cli.alpha_opt && cli.alpha_opt->count() > 0;
  const bool have_deg = cli.alpha_deg_opt && cli.alpha_deg_opt->count() > 0;
  if (!have_rad && !have_deg) throw InvalidConfig("--alpha (or --alpha-deg) is required");
  return have_deg ? cli.alpha_deg * kDegree : cli.alpha;
}

/// The effective (a, u), honoring the CPT fixing when requested.
MetricParams resolve_metric(const Cli& cli, double alpha) {
  if (!cli.cpt) return MetricParams{cli.a, cli.u};
  const double ca = std::cos(alpha);
  if (ca <= quasih::kDefaultTolerances.degeneracy) {
    throw quasih::ExceptionalPoint("the CPT fixing needs cos(alpha) > 0");
  }
  return MetricParams{1.0 / std::sqrt(ca), 0.0};
}

std::vector<double> sorted_times(const Cli& cli) {
  if (cli.t.empty()) throw InvalidConfig("--t must list at least one time");
  std::vector<double> ts = cli.t;
  for (double t : ts) {
    if (!std::isfinite(t)) throw InvalidConfig("--t values must be finite");
  }
  std::sort(ts.begin(), ts.end());
  return ts;
}

void write_output(const std::string& path, const std::string& payload) {
  if (path == "-" || path.empty()) {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file: " + path);
  file.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  file.flush();
  if (!file) throw IoError("write failed: " + path);
}

std::pair<double, double> metric_eigenvalues(const ComplexMatrix& theta) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(theta);
  return {solver.eigenvalues()(0), solver.eigenvalues()(1)};
}

void params_common(emit::JsonWriter& w, double s, double alpha, const MetricParams& m, bool cpt) {
  w.key_value("s", s);
  w.key_value("alpha", alpha);
  w.key_value("a", m.a);
  w.key_value("u", m.u);
  w.key_value("cpt", cpt);
}

// ---------------------------------------------------------------------------
// metric

int run_metric(const Cli& cli) {
  const double alpha = resolve_alpha(cli);
  const ModelParams p{cli.s, alpha};
  const MetricParams m = resolve_metric(cli, alpha);
  const ComplexMatrix theta = quasih::build_metric(p, m);
  const ComplexMatrix h = quasih::build_hamiltonian(p);
  const auto [lo, hi] = metric_eigenvalues(theta);
  const double residual = quasih::quasi_hermiticity_residual(h, theta);

  std::string payload;
  if (cli.format == "json") {
    emit::JsonWriter w;
    w.begin_object();
    w.key_value("command", std::string("metric"));
    w.key("params");
    w.begin_object();
    params_common(w, cli.s, alpha, m, cli.cpt);
    w.end_object();
    w.key("theta");
    w.value(theta);
    w.key("eigenvalues");
    w.begin_array();
    w.value(lo);
    w.value(hi);
    w.end_array();
    w.key_value("residual", residual);
    w.key_value("condition_number", hi / lo);
    w.end_object();
    payload = std::move(w).take() + "\n";
  } else {
    std::vector<std::string> header = {"s", "alpha", "a", "u", "cpt"};
    emit::matrix_header(header, "theta", 2, 2);
    header.insert(header.end(), {"eig_min", "eig_max", "residual", "condition_number"});
    emit::CsvWriter w(header);
    auto& row = w.new_row();
    row = {emit::fmt_double(cli.s), emit::fmt_double(alpha), emit::fmt_double(m.a),
           emit::fmt_double(m.u), cli.cpt ? "true" : "false"};
    emit::push_matrix(row, theta);
    row.push_back(emit::fmt_double(lo));
    row.push_back(emit::fmt_double(hi));
    row.push_back(emit::fmt_double(residual));
    row.push_back(emit::fmt_double(hi / lo));
    payload = w.take();
  }
  write_output(cli.output, payload);
  return 0;
}

// ---------------------------------------------------------------------------
// family

int run_family(const Cli& cli) {
  const double alpha = resolve_alpha(cli);
  const ModelParams p{cli.s, alpha};
  const MetricParams m = resolve_metric(cli, alpha);
  const ComplexMatrix h = quasih::build_hamiltonian(p);
  const quasih::MetricFamily family = quasih::solve_metric_family(h);
  const auto es = quasih::eigensystem(h);
  const ComplexMatrix target = quasih::build_metric(p, m);
  const Eigen::VectorXd coeffs = quasih::fit_ray_coefficients(family, target);
  const double recon_err =
      (quasih::combine_rays(family, coeffs) - target).cwiseAbs().maxCoeff();

  std::string payload;
  if (cli.format == "json") {
    emit::JsonWriter w;
    w.begin_object();
    w.key_value("command", std::string("family"));
    w.key("params");
    w.begin_object();
    params_common(w, cli.s, alpha, m, cli.cpt);
    w.end_object();
    w.key("eigenvalues");
    w.begin_array();
    w.value(es.values(0).real());
    w.value(es.values(1).real());
    w.end_array();
    w.key("rays");
    w.begin_array();
    for (const ComplexMatrix& ray : family.generator_rays) w.value(ray);
    w.end_array();
    w.key("coefficients");
    w.begin_array();
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) w.value(coeffs(k));
    w.end_array();
    w.key_value("reconstruction_error", recon_err);
    w.end_object();
    payload = std::move(w).take() + "\n";
  } else {
    std::vector<std::string> header = {"s", "alpha", "a", "u", "cpt", "eig_min", "eig_max"};
    emit::matrix_header(header, "ray0", 2, 2);
    emit::matrix_header(header, "ray1", 2, 2);
    header.insert(header.end(), {"coeff_0", "coeff_1", "reconstruction_error"});
    emit::CsvWriter w(header);
    auto& row = w.new_row();
    row = {emit::fmt_double(cli.s), emit::fmt_double(alpha), emit::fmt_double(m.a),
           emit::fmt_double(m.u), cli.cpt ? "true" : "false",
           emit::fmt_double(es.values(0).real()), emit::fmt_double(es.values(1).real())};
    emit::push_matrix(row, family.generator_rays[0]);
    emit::push_matrix(row, family.generator_rays[1]);
    row.push_back(emit::fmt_double(coeffs(0)));
    row.push_back(emit::fmt_double(coeffs(1)));
    row.push_back(emit::fmt_double(recon_err));
    payload = w.take();
  }
  write_output(cli.output, payload);
  return 0;
}

// ---------------------------------------------------------------------------
// evolve

int run_evolve(const Cli& cli) {
  const double alpha = resolve_alpha(cli);
  const ModelParams p{cli.s, alpha};
  const MetricParams m = resolve_metric(cli, alpha);
  const quasih::PhysicalSpace space(quasih::build_metric(p, m));
  const ComplexMatrix h = quasih::build_hamiltonian(p);
  const StateVector psi0 = parse_state(cli.state.empty() ? "1,0;0,0" : cli.state, 2);
  const std::vector<double> ts = sorted_times(cli);

  struct Row {
    double t, s_norm, f_norm;
  };
  std::vector<Row> rows;
  rows.reserve(ts.size());
  for (double t : ts) {
    const StateVector psi = quasih::evolve(space, h, psi0, t);
    rows.push_back({t, std::sqrt(quasih::inner_product_s(space, psi, psi).real()), psi.norm()});
  }

  std::string payload;
  if (cli.format == "json") {
    emit::JsonWriter w;
    w.begin_object();
    w.key_value("command", std::string("evolve"));
    w.key("params");
    w.begin_object();
    params_common(w, cli.s, alpha, m, cli.cpt);
    w.key("state");
    w.begin_array();
    for (Eigen::Index k = 0; k < psi0.size(); ++k) w.value(psi0(k));
    w.end_array();
    w.end_object();
    w.key("rows");
    w.begin_array();
    for (const Row& r : rows) {
      w.begin_object();
      w.key_value("t", r.t);
      w.key_value("s_norm", r.s_norm);
      w.key_value("f_norm", r.f_norm);
      w.end_object();
    }
    w.end_array();
    w.end_object();
    payload = std::move(w).take() + "\n";
  } else {
    emit::CsvWriter w({"s", "alpha", "a", "u", "cpt", "t", "s_norm", "f_norm"});
    for (const Row& r : rows) {
      auto& row = w.new_row();
      row = {emit::fmt_double(cli.s), emit::fmt_double(alpha), emit::fmt_double(m.a),
             emit::fmt_double(m.u), cli.cpt ? "true" : "false", emit::fmt_double(r.t),
             emit::fmt_double(r.s_norm), emit::fmt_double(r.f_norm)};
    }
    payload = w.take();
  }
  write_output(cli.output, payload);
  return 0;
}

// ---------------------------------------------------------------------------
// signal

int run_signal(const Cli& cli) {
  std::vector<double> alphas;
  if (!cli.alpha_grid.empty()) {
    alphas = parse_range(cli.alpha_grid);
  } else {
    alphas = {resolve_alpha(cli)};
  }
  std::vector<double> us;
  if (!cli.u_grid.empty()) {
    us = parse_range(cli.u_grid);
  } else {
    us = {cli.cpt ? 0.0 : cli.u};
  }

  const bool measure = cli.action == "measure";
  if (measure && cli.t_opt && cli.t_opt->count() > 0) {
    throw InvalidConfig("--t has no effect on a measurement action; drop it");
  }
  const std::vector<double> ts = measure ? std::vector<double>{0.0} : sorted_times(cli);

  std::vector<quasih::ReductionMode> modes;
  if (cli.mode == "both") {
    modes = {quasih::ReductionMode::corrected, quasih::ReductionMode::naive};
  } else if (cli.mode == "corrected") {
    modes = {quasih::ReductionMode::corrected};
  } else {
    modes = {quasih::ReductionMode::naive};
  }

  const StateVector psi0 =
      cli.state.empty() ? quasih::bell_state() : parse_state(cli.state, 4);

  struct Row {
    double alpha, u, t;
    const char* mode;
    double magnitude;
  };
  std::vector<Row> rows;
  rows.reserve(alphas.size() * us.size() * ts.size() * modes.size());

  for (double alpha : alphas) {
    for (double u : us) {
      const ModelParams p{cli.s, alpha};
      MetricParams m{cli.a, u};
      if (cli.cpt) m = resolve_metric(cli, alpha);
      const quasih::CompositeSystem sys = quasih::build_composite(p, m);
      const ComplexMatrix h_alice = quasih::build_hamiltonian(p);
      for (double t : ts) {
        const quasih::AliceAction action =
            measure ? quasih::AliceAction::project(
                          quasih::eigenprojectors(sys.alice_space, h_alice))
                    : quasih::AliceAction::evolve(t);
        for (quasih::ReductionMode mode : modes) {
          const double magnitude = quasih::signaling_magnitude(sys, psi0, action, mode);
          rows.push_back({alpha, m.u, t,
                          mode == quasih::ReductionMode::corrected ? "corrected" : "naive",
                          magnitude});
        }
      }
    }
  }

  std::string payload;
  if (cli.format == "json") {
    emit::JsonWriter w;
    w.begin_object();
    w.key_value("command", std::string("signal"));
    w.key("params");
    w.begin_object();
    w.key_value("s", cli.s);
    w.key_value("a", cli.a);
    w.key_value("cpt", cli.cpt);
    w.key_value("action", cli.action);
    w.key_value("mode", cli.mode);
    w.key("alpha_grid");
    w.begin_array();
    for (double v : alphas) w.value(v);
    w.end_array();
    w.key("u_grid");
    w.begin_array();
    for (double v : us) w.value(v);
    w.end_array();
    w.key("t_grid");
    w.begin_array();
    for (double v : ts) w.value(v);
    w.end_array();
    w.key("state");
    w.begin_array();
    for (Eigen::Index k = 0; k < psi0.size(); ++k) w.value(psi0(k));
    w.end_array();
    w.end_object();
    w.key("rows");
    w.begin_array();
    for (const Row& r : rows) {
      w.begin_object();
      w.key_value("alpha", r.alpha);
      w.key_value("u", r.u);
      w.key_value("t", r.t);
      w.key_value("mode", std::string(r.mode));
      w.key_value("magnitude", r.magnitude);
      w.end_object();
    }
    w.end_array();
    w.end_object();
    payload = std::move(w).take() + "\n";
  } else {
    emit::CsvWriter w({"s", "a", "cpt", "action", "alpha", "u", "t", "mode", "magnitude"});
    for (const Row& r : rows) {
      auto& row = w.new_row();
      row = {emit::fmt_double(cli.s), emit::fmt_double(cli.a), cli.cpt ? "true" : "false",
             cli.action, emit::fmt_double(r.alpha), emit::fmt_double(r.u),
             emit::fmt_double(r.t), r.mode, emit::fmt_double(r.magnitude)};
    }
    payload = w.take();
  }
  write_output(cli.output, payload);
  return 0;
}

// ---------------------------------------------------------------------------
// ep-scan

int run_ep_scan(const Cli& cli) {
  const std::vector<double> alphas = parse_range(cli.alpha_grid);
  const MetricParams m{cli.a, cli.u};

  struct Row {
    double alpha;
    quasih::EpDiagnostics diag;
  };
  std::vector<Row> rows;
  rows.reserve(alphas.size());
  for (double alpha : alphas) {
    rows.push_back({alpha, quasih::ep_diagnostics({cli.s, alpha}, m)});
  }

  std::string payload;
  if (cli.format == "json") {
    emit::JsonWriter w;
    w.begin_object();
    w.key_value("command", std::string("ep-scan"));
    w.key("params");
    w.begin_object();
    w.key_value("s", cli.s);
    w.key_value("a", cli.a);
    w.key_value("u", cli.u);
    w.key("alpha_grid");
    w.begin_array();
    for (double v : alphas) w.value(v);
    w.end_array();
    w.end_object();
    w.key("rows");
    w.begin_array();
    for (const Row& r : rows) {
      w.begin_object();
      w.key_value("alpha", r.alpha);
      w.key_value("min_metric_eigenvalue", r.diag.min_metric_eigenvalue);
      w.key_value("metric_condition_number", r.diag.metric_condition_number);
      w.key_value("eigenvector_overlap", r.diag.eigenvector_overlap);
      w.end_object();
    }
    w.end_array();
    w.end_object();
    payload = std::move(w).take() + "\n";
  } else {
    emit::CsvWriter w({"s", "a", "u", "alpha", "min_metric_eigenvalue",
                       "metric_condition_number", "eigenvector_overlap"});
    for (const Row& r : rows) {
      auto& row = w.new_row();
      row = {emit::fmt_double(cli.s),
             emit::fmt_double(cli.a),
             emit::fmt_double(cli.u),
             emit::fmt_double(r.alpha),
             emit::fmt_double(r.diag.min_metric_eigenvalue),
             emit::fmt_double(r.diag.metric_condition_number),
             emit::fmt_double(r.diag.eigenvector_overlap)};
    }
    payload = w.take();
  }
  write_output(cli.output, payload);
  return 0;
}

// ---------------------------------------------------------------------------

void add_output_flags(CLI::App* sub, Cli& cli) {
  sub->add_option("--output", cli.output, "Output path, or - for stdout")->capture_default_str();
  sub->add_option("--format", cli.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sub->add_option("--config", cli.config, "Config file with key=value lines mirroring the flags");
}

/// Splice the key=value lines of a --config file into the argument list.
///
/// CLI11 reads config files only on the root application, never on a
/// subcommand, so the option above is expanded by hand before parsing. Each
/// line becomes --key=value placed after the explicit arguments; a key that
/// already appears on the command line is skipped, so explicit flags win.
/// The expanded tokens still go through the normal CLI11 validation.
void expand_config(std::vector<std::string>& args) {
  std::string path;
  bool found = false;
  for (std::size_t k = 0; k < args.size() && !found; ++k) {
    if (args[k] == "--config") {
      if (k + 1 >= args.size()) return;  // let CLI11 report the missing value
      path = args[k + 1];
      found = true;
    } else if (args[k].rfind("--config=", 0) == 0) {
      path = args[k].substr(std::string("--config=").size());
      found = true;
    }
  }
  if (!found) return;

  std::ifstream file(path);
  if (!file) throw IoError("cannot read config file: " + path);

  const auto given = [&args](const std::string& key) {
    const std::string plain = "--" + key;
    const std::string inlined = plain + "=";
    for (const std::string& arg : args) {
      if (arg == plain || arg.rfind(inlined, 0) == 0) return true;
    }
    return false;
  };
  const auto trim = [](const std::string& text) {
    const auto start = text.find_first_not_of(" \t\r");
    if (start == std::string::npos) return std::string();
    const auto stop = text.find_last_not_of(" \t\r");
    return text.substr(start, stop - start + 1);
  };

  std::string line;
  while (std::getline(file, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    const std::string key = trim(eq == std::string::npos ? line : line.substr(0, eq));
    if (key.empty() || key == "config") continue;
    if (given(key)) continue;
    if (eq == std::string::npos) {
      args.push_back("--" + key);
    } else {
      args.push_back("--" + key + "=" + trim(line.substr(eq + 1)));
    }
  }
}

void add_model_flags(CLI::App* sub, Cli& cli, bool with_metric) {
  sub->add_option("--s", cli.s, "Coupling scale s (nonzero)")->capture_default_str();
  cli.alpha_opt = sub->add_option("--alpha", cli.alpha, "Non-Hermiticity angle in radians");
  cli.alpha_deg_opt =
      sub->add_option("--alpha-deg", cli.alpha_deg, "Non-Hermiticity angle in degrees")
          ->excludes(cli.alpha_opt);
  cli.alpha_opt->excludes(cli.alpha_deg_opt);
  if (with_metric) {
    sub->add_option("--a", cli.a, "Metric scale a (nonzero)")->capture_default_str();
    sub->add_option("--u", cli.u, "Metric asymmetry u, |u| < |cos alpha|")->capture_default_str();
    cli.cpt_opt = sub->add_flag(
        "--cpt", cli.cpt, "Use the CPT fixing u = 0, a^2 = 1/cos(alpha) (overrides --a/--u)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-level quasi-Hermitian model toolkit"};
  app.require_subcommand(1);

  Cli metric_cli, family_cli, evolve_cli, signal_cli, ep_cli;

  CLI::App* metric = app.add_subcommand("metric", "Build one metric and report its health");
  add_model_flags(metric, metric_cli, true);
  add_output_flags(metric, metric_cli);

  CLI::App* family = app.add_subcommand("family", "Generator rays of the metric family");
  add_model_flags(family, family_cli, true);
  add_output_flags(family, family_cli);

  CLI::App* evolve = app.add_subcommand("evolve", "Norms of an evolving state versus time");
  add_model_flags(evolve, evolve_cli, true);
  evolve_cli.t_opt = evolve->add_option("--t", evolve_cli.t, "Times, comma separated")
                         ->delimiter(',');
  evolve->add_option("--state", evolve_cli.state, "Initial state re,im;re,im (default 1,0;0,0)");
  add_output_flags(evolve, evolve_cli);

  CLI::App* signal = app.add_subcommand("signal", "Shift of Bob's marginal under Alice's action");
  add_model_flags(signal, signal_cli, true);
  signal->add_option("--alpha-grid", signal_cli.alpha_grid, "Alpha sweep start:stop:count");
  CLI::Option* u_grid_opt =
      signal->add_option("--u-grid", signal_cli.u_grid, "u sweep start:stop:count");
  signal_cli.cpt_opt->excludes(u_grid_opt);
  signal_cli.t_opt = signal->add_option("--t", signal_cli.t, "Times, comma separated")
                         ->delimiter(',');
  signal->add_option("--mode", signal_cli.mode, "Reduction mode")
      ->check(CLI::IsMember({"corrected", "naive", "both"}))
      ->capture_default_str();
  signal->add_option("--action", signal_cli.action, "Alice's local action")
      ->check(CLI::IsMember({"evolve", "measure"}))
      ->capture_default_str();
  signal->add_option("--state", signal_cli.state,
                     "Initial 4-component state re,im;... (default Bell pair)");
  add_output_flags(signal, signal_cli);

  CLI::App* ep = app.add_subcommand("ep-scan", "Metric diagnostics along an alpha sweep");
  ep->add_option("--s", ep_cli.s, "Coupling scale s (nonzero)")->capture_default_str();
  ep->add_option("--a", ep_cli.a, "Metric scale a")->capture_default_str();
  ep->add_option("--u", ep_cli.u, "Metric asymmetry u")->capture_default_str();
  ep->add_option("--alpha-grid", ep_cli.alpha_grid, "Alpha sweep start:stop:count")->required();
  add_output_flags(ep, ep_cli);

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    expand_config(args);
    std::reverse(args.begin(), args.end());  // App::parse(vector) wants reversed tokens
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }

  try {
    if (app.got_subcommand(metric)) return run_metric(metric_cli);
    if (app.got_subcommand(family)) return run_family(family_cli);
    if (app.got_subcommand(evolve)) return run_evolve(evolve_cli);
    if (app.got_subcommand(signal)) return run_signal(signal_cli);
    if (app.got_subcommand(ep)) return run_ep_scan(ep_cli);
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const quasih::ExceptionalPoint& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const quasih::DegenerateSpectrum& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const quasih::ComplexSpectrum& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
