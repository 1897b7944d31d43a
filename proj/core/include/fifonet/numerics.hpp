#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fifonet/branch_trace.hpp"

namespace fifonet {

/// Writes the time derivative at `state` into `rate` (same length).
using VectorField = std::function<void(std::span<const double> state, std::span<double> rate)>;

/// Axis-aligned box the integrator projects every step onto.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  double step = 0.0;
  std::string method;
  /// Largest projection applied by the box clamp, relative to the box width
  /// of that coordinate. Zero when no box was given or nothing was clamped.
  double max_relative_clamp = 0.0;

  const std::vector<double>& final_state() const { return states.back(); }
};

class NonFiniteState : public std::runtime_error {
 public:
  NonFiniteState(double t, const std::string& what) : std::runtime_error(what), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Classical fixed-step fourth-order Runge-Kutta from t = 0 to t_final. A
/// sample is stored at t = 0 and after every step; the last step is shortened
/// to land on t_final. With a box, each accepted state is clamped into it.
/// Throws NonFiniteState when the field or the state stops being finite.
Trajectory integrate(const VectorField& field, std::span<const double> x0, double t_final,
                     double dt, const std::optional<Box>& box = std::nullopt);

/// Default integration step.
inline constexpr double kDefaultTimeStep = 1e-2;

/// Finite-difference probe sizes, per coordinate.
struct FdSpec {
  std::vector<double> step;
  std::vector<double> exclusion_radius;

  /// step = 1e-6 * scale, exclusion_radius = 1e-4 * scale.
  static FdSpec for_scales(std::span<const double> scale);
};

/// A function that also reports which smooth piece it was evaluated on.
using TracedFunction =
    std::function<std::vector<double>(std::span<const double> x, BranchTrace* trace)>;

struct FdJacobian {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;        // row-major
  std::vector<std::uint8_t> masked;  // per column: 1 when a branch switch lies within the exclusion radius

  double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
  bool is_masked(std::size_t /*i*/, std::size_t j) const { return masked[j] != 0; }
};

/// Central-difference Jacobian of f at x. Column j is masked when the branch
/// trace of f differs anywhere among x, x +- step_j e_j and
/// x +- exclusion_radius_j e_j: the derivative there is not meaningful.
FdJacobian jacobian_fd(const TracedFunction& f, std::span<const double> x, const FdSpec& spec);

}  // namespace fifonet
