#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "fifonet/scenario.hpp"
#include "fifonet/simulation.hpp"
#include "fifonet/verification.hpp"
#include "report.hpp"

namespace fifonet::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string file;
  std::optional<double> t_final;
  std::optional<double> dt;
  std::string out;
};

struct Options {
  Common common;
  std::string emit_json;
  std::string emit_phase;
  std::string x0;
  std::string y0;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::optional<double> residual_tol;
  std::optional<double> gap_tol;
  std::size_t cross_check = 0;
};

std::vector<double> parse_list(const std::string& text, std::size_t n, const char* flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw UsageError(std::string(flag) + ": empty entry");
    const char* b = item.data() + first;
    const char* e = item.data() + last + 1;
    double v = 0.0;
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e) {
      throw UsageError(std::string(flag) + ": not a number '" + std::string(b, e) + "'");
    }
    values.push_back(v);
  }
  if (values.size() != n) {
    throw UsageError(std::string(flag) + ": expected " + std::to_string(n) + " values, got " +
                     std::to_string(values.size()));
  }
  return values;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw IoError("cannot write " + path);
}

// Sends `write` to the file at `path`, or to `fallback` when path is empty.
template <class Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  write(f);
  if (!f) throw IoError("cannot write " + path);
}

Scenario load(const std::string& path, std::ostream& err) {
  auto scenario = load_scenario(path);
  print_violations(err, scenario.warnings);
  return scenario;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto scenario = load(o.common.file, err);
  if (!o.emit_json.empty()) write_file(o.emit_json, scenario_to_json(scenario));
  const auto& net = scenario.system.network();
  out << o.common.file << ": valid (" << net.size() << " links, " << net.junction_count()
      << " junctions, model " << model_name(scenario.system.model()) << ")\n";
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto scenario = load(o.common.file, err);
  const auto& net = scenario.system.network();
  const auto x0 = o.x0.empty() ? std::vector<double>(net.size(), 0.0)
                               : parse_list(o.x0, net.size(), "--x0");
  const auto traj = simulate(scenario.system, x0, o.common.t_final.value_or(scenario.defaults.t_final),
                             o.common.dt.value_or(scenario.defaults.dt));
  with_output(o.common.out, out,
              [&](std::ostream& s) { write_csv(s, state_columns(net, false), traj); });
  return kOk;
}

int cmd_embed(const Options& o, std::ostream& out, std::ostream& err) {
  const auto scenario = load(o.common.file, err);
  const auto& net = scenario.system.network();
  EmbeddingState s0;
  s0.x = o.x0.empty() ? std::vector<double>(net.size(), 0.0) : parse_list(o.x0, net.size(), "--x0");
  const auto jam = scenario.system.jam_densities();
  s0.y = o.y0.empty() ? std::vector<double>(jam.begin(), jam.end()) : parse_list(o.y0, net.size(), "--y0");
  const auto traj =
      simulate_embedding(scenario.system, s0, o.common.t_final.value_or(scenario.defaults.t_final),
                         o.common.dt.value_or(scenario.defaults.dt));
  with_output(o.common.out, out,
              [&](std::ostream& s) { write_csv(s, state_columns(net, true), traj); });
  if (!o.emit_phase.empty()) {
    with_output(o.emit_phase, out, [&](std::ostream& s) {
      write_csv(s, phase_columns(net), interleave_phase(traj));
    });
  }
  return kOk;
}

AuditOptions audit_options(const Options& o, const Scenario& scenario) {
  AuditOptions a;
  a.samples = o.samples.value_or(scenario.defaults.samples);
  a.seed = o.seed.value_or(scenario.defaults.seed);
  a.tolerance = o.tolerance.value_or(scenario.defaults.fd_tolerance);
  return a;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  const auto scenario = load(o.common.file, err);
  const auto options = audit_options(o, scenario);
  auto report = check_assumptions(scenario.system, options);
  report.append(check_decomposition(scenario.system, options));
  print_audit_table(out, report);
  if (!o.common.out.empty()) write_file(o.common.out, audit_report_yaml(scenario, report));
  return report.all_pass() ? kOk : kFailed;
}

int cmd_survey(const Options& o, std::ostream& out, std::ostream& err) {
  const auto scenario = load(o.common.file, err);
  const auto survey = jacobian_sign_survey(scenario.system, audit_options(o, scenario));
  print_survey(out, scenario.system.network(), survey);
  if (!o.common.out.empty()) write_file(o.common.out, survey_yaml(scenario, survey));
  return kOk;
}

int cmd_certify(const Options& o, std::ostream& out, std::ostream& err) {
  const auto scenario = load(o.common.file, err);
  CertifyOptions c;
  c.t_horizon = o.common.t_final.value_or(scenario.defaults.t_final);
  c.dt = o.common.dt.value_or(scenario.defaults.dt);
  c.residual_tol = o.residual_tol.value_or(scenario.defaults.residual_tol);
  c.gap_tol = o.gap_tol.value_or(scenario.defaults.gap_tol);
  const auto cert = certify_convergence(scenario.system, c);

  std::optional<EquilibriumCrossCheck> cross;
  if (o.cross_check > 0 && cert.status == CertificateStatus::Certified) {
    cross = cross_check_equilibrium(scenario.system, cert.equilibrium, o.cross_check,
                                    o.seed.value_or(scenario.defaults.seed), c.t_horizon, c.dt,
                                    1e-5);
  }
  const auto* cc = cross ? &*cross : nullptr;
  print_certificate(out, scenario.system.network(), cert, cc);
  if (!o.common.out.empty()) write_file(o.common.out, certificate_yaml(scenario, cert, cc));
  if (cert.status != CertificateStatus::Certified) return kInconclusive;
  return cross && !cross->pass ? kFailed : kOk;
}

void add_common(CLI::App* cmd, Common& c, bool with_time, const char* out_help) {
  cmd->add_option("FILE", c.file, "scenario file")->required();
  if (with_time) {
    cmd->add_option("--t-final", c.t_final, "final time (default from scenario)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--dt", c.dt, "integration step (default from scenario)")
        ->check(CLI::PositiveNumber);
  }
  if (out_help) cmd->add_option("--out", c.out, out_help);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulate and verify traffic networks with partial FIFO junctions", "fifonet"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "Parse and validate a scenario");
  add_common(validate, o.common, false, nullptr);
  validate->add_option("--emit-json", o.emit_json, "write the JSON rendering of the scenario");

  auto* sim = app.add_subcommand("simulate", "Integrate the network dynamics");
  add_common(sim, o.common, true, "CSV output (default stdout)");
  sim->add_option("--x0", o.x0, "initial densities, comma separated in link id order (default 0)");

  auto* embed = app.add_subcommand("embed", "Integrate the embedding system");
  add_common(embed, o.common, true, "CSV output (default stdout)");
  embed->add_option("--x0", o.x0, "initial lower state (default 0)");
  embed->add_option("--y0", o.y0, "initial upper state (default jam densities)");
  embed->add_option("--emit-phase", o.emit_phase, "also write interleaved (x_l, y_l) columns");

  auto* check = app.add_subcommand("check", "Audit the flow-function conditions numerically");
  add_common(check, o.common, false, "report file");
  check->add_option("--samples", o.samples, "number of sampled states");
  check->add_option("--seed", o.seed, "sampling seed");
  check->add_option("--tolerance", o.tolerance, "sign tolerance of finite differences");

  auto* survey = app.add_subcommand("survey", "Classify Jacobian signs of the vector field");
  add_common(survey, o.common, false, "report file");
  survey->add_option("--samples", o.samples, "number of sampled states");
  survey->add_option("--seed", o.seed, "sampling seed");
  survey->add_option("--tolerance", o.tolerance, "sign tolerance of finite differences");

  auto* certify = app.add_subcommand("certify", "Certify a globally attractive equilibrium");
  add_common(certify, o.common, true, "report file");
  certify->add_option("--residual-tol", o.residual_tol, "bound on the equilibrium residual");
  certify->add_option("--gap-tol", o.gap_tol, "bound on the final embedding gap");
  certify->add_option("--cross-check", o.cross_check,
                      "also simulate from this many random states and compare");
  certify->add_option("--seed", o.seed, "seed of the cross-check starts");

  std::vector<const char*> argv{"fifonet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "fifonet: " << e.what() << '\n';
    if (!app.get_subcommands().empty()) {
      err << app.get_subcommands().front()->help();
    }
    return kUsageError;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out, err);
    if (sim->parsed()) return cmd_simulate(o, out, err);
    if (embed->parsed()) return cmd_embed(o, out, err);
    if (check->parsed()) return cmd_check(o, out, err);
    if (survey->parsed()) return cmd_survey(o, out, err);
    if (certify->parsed()) return cmd_certify(o, out, err);
  } catch (const ValidationError& e) {
    err << "fifonet: " << o.common.file << ": invalid scenario\n";
    print_violations(err, e.violations());
    return kFailed;
  } catch (const ParseError& e) {
    err << "fifonet: " << e.what() << '\n';
    return kUsageError;
  } catch (const UsageError& e) {
    err << "fifonet: " << e.what() << '\n';
    return kUsageError;
  } catch (const NonFiniteState& e) {
    err << "fifonet: " << e.what() << '\n';
    return kFailed;
  } catch (const std::exception& e) {
    err << "fifonet: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace fifonet::cli
