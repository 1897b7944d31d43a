#include "report.hpp"

#include <yaml-cpp/yaml.h>

#include <array>
#include <charconv>
#include <iomanip>
#include <ostream>

namespace fifonet::cli {
namespace {

std::string link_label(const Network& net, std::size_t l) { return to_string(net.link_id(l)); }

void emit_vector(YAML::Emitter& y, std::span<const double> v) {
  y << YAML::Flow << YAML::BeginSeq;
  for (double value : v) y << value;
  y << YAML::EndSeq;
}

void emit_by_link(YAML::Emitter& y, const Network& net, std::span<const double> v) {
  y << YAML::Flow << YAML::BeginMap;
  for (std::size_t l = 0; l < net.size() && l < v.size(); ++l) {
    y << YAML::Key << net.link_id(l).value << YAML::Value << v[l];
  }
  y << YAML::EndMap;
}

std::string finish(YAML::Emitter& y) { return std::string(y.c_str()) + "\n"; }

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

void write_csv(std::ostream& out, const std::vector<std::string>& columns,
               const Trajectory& trajectory) {
  out << 't';
  for (const auto& c : columns) out << ',' << c;
  out << '\n';
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    out << format_double(trajectory.times[i]);
    for (double v : trajectory.states[i]) out << ',' << format_double(v);
    out << '\n';
  }
}

std::vector<std::string> state_columns(const Network& net, bool with_y) {
  std::vector<std::string> cols;
  for (std::size_t l = 0; l < net.size(); ++l) cols.push_back("x_" + link_label(net, l));
  if (with_y) {
    for (std::size_t l = 0; l < net.size(); ++l) cols.push_back("y_" + link_label(net, l));
  }
  return cols;
}

std::vector<std::string> phase_columns(const Network& net) {
  std::vector<std::string> cols;
  for (std::size_t l = 0; l < net.size(); ++l) {
    cols.push_back("x_" + link_label(net, l));
    cols.push_back("y_" + link_label(net, l));
  }
  return cols;
}

Trajectory interleave_phase(const Trajectory& stacked) {
  Trajectory out = stacked;
  for (auto& s : out.states) {
    const std::size_t n = s.size() / 2;
    std::vector<double> mixed(s.size());
    for (std::size_t l = 0; l < n; ++l) {
      mixed[2 * l] = s[l];
      mixed[2 * l + 1] = s[n + l];
    }
    s = std::move(mixed);
  }
  return out;
}

std::string audit_report_yaml(const Scenario& scenario, const AuditReport& report) {
  const auto& net = scenario.system.network();
  YAML::Emitter y;
  y.SetDoublePrecision(17);
  y << YAML::BeginMap;
  y << YAML::Key << "scenario" << YAML::Value << scenario.name;
  y << YAML::Key << "model" << YAML::Value << model_name(scenario.system.model());
  y << YAML::Key << "samples" << YAML::Value << report.samples;
  y << YAML::Key << "seed" << YAML::Value << report.seed;
  y << YAML::Key << "tolerance" << YAML::Value << report.tolerance;
  y << YAML::Key << "pass" << YAML::Value << report.all_pass();
  y << YAML::Key << "conditions" << YAML::Value << YAML::BeginSeq;
  for (const auto& r : report.results) {
    y << YAML::BeginMap;
    y << YAML::Key << "name" << YAML::Value << condition_name(r.condition);
    y << YAML::Key << "description" << YAML::Value << condition_description(r.condition);
    y << YAML::Key << "pass" << YAML::Value << r.pass;
    y << YAML::Key << "worst_violation" << YAML::Value << r.worst_violation;
    y << YAML::Key << "probes" << YAML::Value << r.probes;
    y << YAML::Key << "masked" << YAML::Value << r.masked;
    if (r.witness) {
      const auto& w = *r.witness;
      y << YAML::Key << "witness" << YAML::Value << YAML::BeginMap;
      y << YAML::Key << "quantity" << YAML::Value << w.quantity;
      y << YAML::Key << "with_respect_to" << YAML::Value
        << (w.wrt_y ? "y_" : "x_") + to_string(w.with_respect_to);
      y << YAML::Key << "derivative" << YAML::Value << w.value;
      y << YAML::Key << "x" << YAML::Value;
      emit_by_link(y, net, w.x);
      if (!w.y.empty()) {
        y << YAML::Key << "y" << YAML::Value;
        emit_by_link(y, net, w.y);
      }
      y << YAML::EndMap;
    }
    y << YAML::EndMap;
  }
  y << YAML::EndSeq << YAML::EndMap;
  return finish(y);
}

std::string certificate_yaml(const Scenario& scenario, const ConvergenceCertificate& cert,
                             const EquilibriumCrossCheck* cross_check) {
  const auto& net = scenario.system.network();
  YAML::Emitter y;
  y.SetDoublePrecision(17);
  y << YAML::BeginMap;
  y << YAML::Key << "scenario" << YAML::Value << scenario.name;
  y << YAML::Key << "model" << YAML::Value << model_name(scenario.system.model());
  y << YAML::Key << "status" << YAML::Value
    << (cert.status == CertificateStatus::Certified ? "Certified" : "Inconclusive");
  y << YAML::Key << "horizon" << YAML::Value << cert.horizon;
  y << YAML::Key << "dt" << YAML::Value << cert.dt;
  y << YAML::Key << "equilibrium" << YAML::Value;
  emit_by_link(y, net, cert.equilibrium);
  y << YAML::Key << "x_final" << YAML::Value;
  emit_by_link(y, net, cert.x_final);
  y << YAML::Key << "y_final" << YAML::Value;
  emit_by_link(y, net, cert.y_final);
  y << YAML::Key << "residual" << YAML::Value << cert.residual;
  y << YAML::Key << "embedding_residual" << YAML::Value << cert.embedding_residual;
  y << YAML::Key << "gap" << YAML::Value << cert.gap;
  y << YAML::Key << "checks" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "initial_signs" << YAML::Value << cert.initial_signs_ok;
  y << YAML::Key << "monotone" << YAML::Value << cert.monotonicity_verified;
  y << YAML::Key << "settled" << YAML::Value << cert.settled;
  y << YAML::Key << "horizon_too_short" << YAML::Value << cert.horizon_too_short;
  y << YAML::EndMap;
  y << YAML::Key << "diagnostics" << YAML::Value << YAML::BeginSeq;
  for (const auto& d : cert.diagnostics) y << d;
  y << YAML::EndSeq;
  y << YAML::Key << "tail" << YAML::Value << YAML::BeginSeq;
  for (std::size_t i = 0; i < cert.tail_times.size(); ++i) {
    y << YAML::Flow << YAML::BeginMap;
    y << YAML::Key << "t" << YAML::Value << cert.tail_times[i];
    y << YAML::Key << "state" << YAML::Value;
    emit_vector(y, cert.tail_states[i]);
    y << YAML::EndMap;
  }
  y << YAML::EndSeq;
  if (cross_check) {
    y << YAML::Key << "cross_check" << YAML::Value << YAML::BeginMap;
    y << YAML::Key << "pass" << YAML::Value << cross_check->pass;
    y << YAML::Key << "worst_distance" << YAML::Value << cross_check->worst_distance;
    y << YAML::Key << "runs" << YAML::Value << YAML::BeginSeq;
    for (std::size_t i = 0; i < cross_check->initial_states.size(); ++i) {
      y << YAML::BeginMap;
      y << YAML::Key << "x0" << YAML::Value;
      emit_by_link(y, net, cross_check->initial_states[i]);
      y << YAML::Key << "distance" << YAML::Value << cross_check->distances[i];
      y << YAML::EndMap;
    }
    y << YAML::EndSeq << YAML::EndMap;
  }
  y << YAML::EndMap;
  return finish(y);
}

std::string survey_yaml(const Scenario& scenario, const SignSurvey& survey) {
  const auto& net = scenario.system.network();
  YAML::Emitter y;
  y.SetDoublePrecision(17);
  y << YAML::BeginMap;
  y << YAML::Key << "scenario" << YAML::Value << scenario.name;
  y << YAML::Key << "model" << YAML::Value << model_name(scenario.system.model());
  y << YAML::Key << "samples" << YAML::Value << survey.samples;
  y << YAML::Key << "tolerance" << YAML::Value << survey.tolerance;
  y << YAML::Key << "mixed" << YAML::Value << survey.mixed_count();
  y << YAML::Key << "entries" << YAML::Value << YAML::BeginSeq;
  for (const auto& e : survey.entries) {
    y << YAML::Flow << YAML::BeginMap;
    y << YAML::Key << "row" << YAML::Value << net.link_id(e.row).value;
    y << YAML::Key << "col" << YAML::Value << net.link_id(e.col).value;
    y << YAML::Key << "sign" << YAML::Value << sign_class_name(e.sign);
    y << YAML::Key << "positive" << YAML::Value << e.positive;
    y << YAML::Key << "negative" << YAML::Value << e.negative;
    y << YAML::Key << "masked" << YAML::Value << e.masked;
    y << YAML::Key << "min" << YAML::Value << e.min_value;
    y << YAML::Key << "max" << YAML::Value << e.max_value;
    y << YAML::EndMap;
  }
  y << YAML::EndSeq << YAML::EndMap;
  return finish(y);
}

void print_audit_table(std::ostream& out, const AuditReport& report) {
  out << std::left << std::setw(13) << "condition" << std::setw(6) << "pass" << std::setw(10)
      << "probes" << std::setw(10) << "masked"
      << "worst violation\n";
  for (const auto& r : report.results) {
    out << std::left << std::setw(13) << condition_name(r.condition) << std::setw(6)
        << (r.pass ? "yes" : "NO") << std::setw(10) << r.probes << std::setw(10) << r.masked
        << std::setprecision(3) << std::scientific << r.worst_violation << std::defaultfloat
        << '\n';
  }
  out << (report.all_pass() ? "all conditions hold" : "some conditions fail") << " ("
      << report.samples << " samples, seed " << report.seed << ")\n";
}

void print_certificate(std::ostream& out, const Network& net, const ConvergenceCertificate& cert,
                       const EquilibriumCrossCheck* cross_check) {
  out << "status: "
      << (cert.status == CertificateStatus::Certified ? "Certified" : "Inconclusive") << '\n';
  out << "equilibrium:";
  for (std::size_t l = 0; l < cert.equilibrium.size(); ++l) {
    out << ' ' << link_label(net, l) << '=' << std::setprecision(10) << cert.equilibrium[l];
  }
  out << std::defaultfloat << std::setprecision(6) << '\n';
  out << "residual " << cert.residual << ", gap " << cert.gap << ", horizon " << cert.horizon
      << '\n';
  for (const auto& d : cert.diagnostics) out << "  " << d << '\n';
  if (cross_check) {
    out << "cross-check: " << (cross_check->pass ? "pass" : "FAIL") << " over "
        << cross_check->initial_states.size() << " starts, worst distance "
        << cross_check->worst_distance << '\n';
  }
}

void print_survey(std::ostream& out, const Network& net, const SignSurvey& survey) {
  out << std::left << std::setw(8) << "row" << std::setw(8) << "col" << std::setw(14) << "sign"
      << "range\n";
  for (const auto& e : survey.entries) {
    if (e.sign == SignClass::Zero) continue;
    out << std::left << std::setw(8) << link_label(net, e.row) << std::setw(8)
        << link_label(net, e.col) << std::setw(14) << sign_class_name(e.sign) << '['
        << std::setprecision(4) << e.min_value << ", " << e.max_value << "]\n";
  }
  out << std::defaultfloat << std::setprecision(6);
  out << survey.mixed_count() << " mixed-sign entries over " << survey.samples << " samples\n";
}

void print_violations(std::ostream& out, std::span<const Violation> violations) {
  for (const auto& v : violations) {
    out << (v.severity == Violation::Severity::Error ? "error" : "warning") << ": "
        << kind_name(v.kind) << ": " << v.message << '\n';
  }
}

}  // namespace fifonet::cli
