#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fifonet/junction_models.hpp"
#include "fifonet/verification.hpp"

namespace fifonet::fixtures {

LinkParams exp_link(double scale, double rate, double jam, std::optional<double> beta = std::nullopt,
                    double gamma = 0.0, double delta = 0.0);

/// Links 1: (none -> v), 2: (v -> none), 3: (v -> none).
Network fig1_network();

/// The diverge example: a = (4, 3, 2), rate 0.5, jam = (6, 4, 2),
/// beta = (0.8, 0.2), delta_1 = 4.
std::vector<LinkParams> div3_params();
TrafficNetwork div3(JunctionModel model);
/// Partial FIFO lanes with eta_2 = 0.1, eta_3 = 0.9.
JunctionModel div3_lanes();

/// Sources 1, 6 merge at u into 2, which diverges at w into sinks 3, 4, 5.
Network net6_network();
std::vector<LinkParams> net6_params();
TrafficNetwork net6(JunctionModel model);
JunctionModel net6_lanes();

std::filesystem::path scenario_path(const std::string& name);
/// Every scenario shipped in the repository.
std::vector<std::filesystem::path> shipped_scenarios();

std::vector<double> uniform_state(std::mt19937_64& rng, std::span<const double> upper);

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Wraps a model and adds a term linear in one density to one flow, so that
/// exactly the targeted condition is violated. Used as a negative control of
/// the audit.
class InjectedViolation final : public FlowModel {
 public:
  InjectedViolation(const TrafficNetwork& inner, Condition target, double strength = 0.5);

  const Network& network() const override { return inner_.network(); }
  std::span<const double> jam_densities() const override { return inner_.jam_densities(); }
  void evaluate(std::span<const double> x, FlowBreakdown& out,
                BranchTrace* trace = nullptr) const override;

 private:
  const TrafficNetwork& inner_;
  Condition target_;
  double strength_;
};

}  // namespace fifonet::fixtures
