#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fifonet/branch_trace.hpp"

namespace fifonet {

/// d(x) = scale * (1 - exp(-rate * x)).
struct ExponentialDemand {
  double scale = 0.0;
  double rate = 0.0;
};

/// s(x) = intercept - x. Only valid when intercept equals the jam density,
/// so that the supply vanishes exactly at jam.
struct AffineSupply {
  double intercept = 0.0;
};

/// Linear interpolation through (density, flow) breakpoints. Breakpoints must
/// span [0, jam density] with strictly increasing densities.
struct PiecewiseLinear {
  std::vector<std::pair<double, double>> points;

  double evaluate(double x, BranchTrace* trace = nullptr) const;
};

using DemandCurve = std::variant<ExponentialDemand, PiecewiseLinear>;
using SupplyCurve = std::variant<AffineSupply, PiecewiseLinear>;

/// Family names used in scenario files.
std::string family_name(const DemandCurve& curve);
std::string family_name(const SupplyCurve& curve);

struct LinkParams {
  double jam_density = 0.0;
  DemandCurve demand;
  SupplyCurve supply;
  /// Turn ratio: share of upstream demand bound for this link. Required
  /// exactly when the link has upstream links.
  std::optional<double> beta;
  /// Off-ramp fraction of the outflow to downstream links.
  double gamma = 0.0;
  /// Constant exogenous inflow demand; only used for source links.
  double delta = 0.0;
};

double clamp_density(const LinkParams& p, double x) noexcept;

/// Demand of the link at density x; x is clamped to [0, jam density].
double demand(const LinkParams& p, double x, BranchTrace* trace = nullptr);

/// Supply of the link at density x; x is clamped to [0, jam density].
double supply(const LinkParams& p, double x, BranchTrace* trace = nullptr);

/// Grid used for numerical strictness checks: jam_density / kMonotoneGridSteps.
inline constexpr int kMonotoneGridSteps = 1000;
inline constexpr double kMonotoneTolerance = 1e-12;

/// Checks the curve and parameter invariants for one link. Returns one
/// human-readable message per problem; empty when the link is well formed.
/// `has_upstream` selects whether beta is required or must be absent.
std::vector<std::string> check_link_params(const LinkParams& p, bool has_upstream);

}  // namespace fifonet
