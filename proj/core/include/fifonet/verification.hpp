#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fifonet/junction_models.hpp"

namespace fifonet {

/// Structural conditions audited numerically. A1..A9 are the sign and
/// locality conditions on the flow functions; the Decomposition* entries are
/// the three defining properties of a decomposition function.
enum class Condition {
  A1,  // d inflow_l / d x_m >= 0, m != l
  A2,  // d outflow_l / d x_m <= 0, m != l
  A3,  // d nonfifo_{k->l} / d x_m == 0 for m not at the junction
  A4,  // d fifo_{k->l} / d x_m == 0 for m not at the junction
  A5,  // d (sum_j fifo_{j->l}) / d x_m >= 0, m upstream of l
  A6,  // d (sum_j nonfifo_{j->l}) / d x_m >= 0, m upstream of l
  A7,  // d (sum_j f_{l->j}) / d x_m <= 0, m != l at the head junction of l
  A8,  // d nonfifo_{k->l} / d x_m >= 0, m adjacent to l
  A9,  // d fifo_{k->l} / d x_m <= 0, m adjacent to l
  DecompositionIdentity,
  DecompositionXSign,
  DecompositionYSign,
};

inline constexpr Condition kFlowConditions[] = {Condition::A1, Condition::A2, Condition::A3,
                                                Condition::A4, Condition::A5, Condition::A6,
                                                Condition::A7, Condition::A8, Condition::A9};

std::string condition_name(Condition c);
std::string condition_description(Condition c);

/// Where a condition failed: the sampled state(s), the quantity whose
/// derivative was checked and the link it was differentiated against.
struct Witness {
  std::vector<double> x;
  std::vector<double> y;  // empty unless the probe is an (x, y) pair
  std::string quantity;
  LinkId with_respect_to;
  bool wrt_y = false;
  double value = 0.0;
};

struct ConditionResult {
  Condition condition;
  bool pass = true;
  /// Largest amount by which a probe violated the sign/equality requirement
  /// (0 when none did), over unmasked probes.
  double worst_violation = 0.0;
  std::size_t probes = 0;
  /// Probes excluded because a branch switch was detected nearby.
  std::size_t masked = 0;
  std::optional<Witness> witness;
};

struct AuditOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  double tolerance = 1e-6;
  /// Tolerance of the exact identity g(x, x) = F(x).
  double identity_tolerance = 1e-12;
};

struct AuditReport {
  std::vector<ConditionResult> results;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;

  bool all_pass() const;
  const ConditionResult* find(Condition c) const;
  /// Appends the results of another audit over the same sampling setup.
  void append(const AuditReport& other);
};

/// Samples states uniformly in the box (deterministic from the seed) and
/// checks A1..A9 by central finite differences. Probes near a branch switch
/// are excluded from pass/fail and counted.
AuditReport check_assumptions(const FlowModel& model, const AuditOptions& options);

/// Checks at sampled (x, y) pairs that g(x, x) = F(x), that g_i is
/// nondecreasing in x_j for i != j and nonincreasing in every y_j.
AuditReport check_decomposition(const FlowModel& model, const AuditOptions& options);

enum class SignClass { Zero, NonNegative, NonPositive, Mixed };
std::string sign_class_name(SignClass c);

struct SignEntry {
  std::size_t row = 0;  // d F_row / d x_col
  std::size_t col = 0;
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t masked = 0;
  double min_value = 0.0;
  double max_value = 0.0;
  SignClass sign = SignClass::Zero;
};

struct SignSurvey {
  std::vector<SignEntry> entries;  // every off-diagonal entry, row-major
  std::size_t samples = 0;
  double tolerance = 0.0;

  std::size_t mixed_count() const;
};

/// Classifies every off-diagonal Jacobian entry of the vector field over
/// sampled states: > tolerance counts positive, < -tolerance negative.
SignSurvey jacobian_sign_survey(const FlowModel& model, const AuditOptions& options);

struct CertifyOptions {
  double t_horizon = 200.0;
  double dt = 1e-2;
  double residual_tol = 1e-8;
  double gap_tol = 1e-6;
  /// Slack in the order comparison between consecutive states.
  double order_tolerance = 1e-9;
  /// Samples of the trajectory end kept in the certificate.
  std::size_t tail_samples = 50;
};

enum class CertificateStatus { Certified, Inconclusive };

struct ConvergenceCertificate {
  CertificateStatus status = CertificateStatus::Inconclusive;
  /// Midpoint of x(T) and y(T).
  std::vector<double> equilibrium;
  std::vector<double> x_final;
  std::vector<double> y_final;
  /// max norm of the vector field at the equilibrium estimate.
  double residual = 0.0;
  /// max norm of (g(x, y), g(y, x)) at the horizon.
  double embedding_residual = 0.0;
  /// max norm of x(T) - y(T).
  double gap = 0.0;
  bool initial_signs_ok = false;
  bool monotonicity_verified = false;
  bool settled = false;
  bool horizon_too_short = false;
  double horizon = 0.0;
  double dt = 0.0;
  std::vector<std::string> diagnostics;
  std::vector<double> tail_times;
  std::vector<std::vector<double>> tail_states;  // [x, y] concatenated
};

/// Integrates the embedding system from (0, jam densities) and certifies a
/// globally attractive equilibrium when the trajectory starts with the right
/// derivative signs, stays increasing in the southeast order, settles and
/// closes the gap between x and y. Never claims non-convergence.
ConvergenceCertificate certify_convergence(const FlowModel& model, const CertifyOptions& options);

struct EquilibriumCrossCheck {
  std::vector<std::vector<double>> initial_states;
  std::vector<double> distances;  // max norm to the equilibrium at the horizon
  double worst_distance = 0.0;
  bool pass = false;
};

/// Simulates the plain dynamics from `starts` random states in the box and
/// reports how far each ends from `equilibrium`.
EquilibriumCrossCheck cross_check_equilibrium(const FlowModel& model,
                                              std::span<const double> equilibrium,
                                              std::size_t starts, std::uint64_t seed,
                                              double t_horizon, double dt, double tolerance);

}  // namespace fifonet
