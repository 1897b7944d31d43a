#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fifonet/numerics.hpp"
#include "fifonet/scenario.hpp"
#include "fifonet/verification.hpp"

namespace fifonet::cli {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// One row per sample: t, then one column per state entry.
void write_csv(std::ostream& out, const std::vector<std::string>& columns,
               const Trajectory& trajectory);

/// Column names x_<id> (and y_<id>) in link order.
std::vector<std::string> state_columns(const Network& net, bool with_y);
/// Interleaved x_<id>, y_<id> columns for phase-plane plots.
std::vector<std::string> phase_columns(const Network& net);
/// Reorders stacked [x, y] samples into interleaved (x_l, y_l) pairs.
Trajectory interleave_phase(const Trajectory& stacked);

std::string audit_report_yaml(const Scenario& scenario, const AuditReport& report);
std::string certificate_yaml(const Scenario& scenario, const ConvergenceCertificate& cert,
                             const EquilibriumCrossCheck* cross_check);
std::string survey_yaml(const Scenario& scenario, const SignSurvey& survey);

void print_audit_table(std::ostream& out, const AuditReport& report);
void print_certificate(std::ostream& out, const Network& net, const ConvergenceCertificate& cert,
                       const EquilibriumCrossCheck* cross_check);
void print_survey(std::ostream& out, const Network& net, const SignSurvey& survey);
void print_violations(std::ostream& out, std::span<const Violation> violations);

}  // namespace fifonet::cli
