#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fifonet/branch_trace.hpp"
#include "fifonet/link_dynamics.hpp"
#include "fifonet/topology.hpp"

namespace fifonet {

/// Flow to each outgoing link is throttled only by that link's own supply.
struct NonFifo {};

/// A single throttle per junction: the most congested outgoing link blocks
/// every outgoing link.
struct FullFifo {};

/// Fraction eta[l] of the traffic bound for l follows the full-FIFO rule and
/// the rest the non-FIFO rule. Indexed by dense link index.
struct ConvexCombo {
  std::vector<double> eta;
};

/// Shared and exclusive lanes at a diverge: eta[l] is the share of the
/// traffic bound for l travelling in shared lanes (FIFO-restricted); the
/// remainder uses lanes exclusive to l and only sees l's remaining supply.
/// Links with no adjacent links always behave as eta = 1.
struct PartialFifoLanes {
  std::vector<double> eta;
};

/// A set of outgoing links of one junction whose supplies jointly throttle
/// the FIFO share of the flow to each member.
struct FifoRestriction {
  std::vector<std::size_t> links;
  /// Influence of this restriction on each member; aligned with `links`.
  /// Non-members have zero influence by construction.
  std::vector<double> eta;
};

/// Several overlapping FIFO restrictions per diverge. Indexed by dense
/// junction index; junctions without restrictions send their whole flow
/// through the exclusive (non-FIFO) share.
struct MultiSetFifo {
  std::vector<std::vector<FifoRestriction>> restrictions;
};

using JunctionModel = std::variant<NonFifo, FullFifo, ConvexCombo, PartialFifoLanes, MultiSetFifo>;

/// Scenario-file name of the model ("non_fifo", "full_fifo", ...).
std::string model_name(const JunctionModel& model);

/// A diverge with more than one outgoing link must have exactly one incoming
/// link for the lane-based models.
class DivergeRuleViolation : public std::runtime_error {
 public:
  DivergeRuleViolation(std::size_t junction, const std::string& what)
      : std::runtime_error(what), junction_(junction) {}
  std::size_t junction() const noexcept { return junction_; }

 private:
  std::size_t junction_;
};

class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// All flows of the network at one state. Link-to-link entries are aligned
/// with Network::pairs(); flows between non-incident links are identically
/// zero and not stored.
struct FlowBreakdown {
  std::vector<double> fifo;
  std::vector<double> nonfifo;
  std::vector<double> inflow_exo;
  std::vector<double> outflow_exo;
  /// Densities after clamping to the box, and the curve values there.
  std::vector<double> density;
  std::vector<double> demand;
  std::vector<double> supply;

  double pair_total(std::size_t pair) const { return fifo[pair] + nonfifo[pair]; }
  void resize(std::size_t links, std::size_t pairs);
};

/// Anything that produces a flow breakdown over a network with a box state
/// space. The verification routines work against this interface.
class FlowModel {
 public:
  virtual ~FlowModel() = default;

  virtual const Network& network() const = 0;
  virtual std::span<const double> jam_densities() const = 0;

  /// Evaluates every flow at x (clamped to the box). When `trace` is given,
  /// the branch taken by every piecewise operation is appended to it.
  virtual void evaluate(std::span<const double> x, FlowBreakdown& out,
                        BranchTrace* trace = nullptr) const = 0;

  FlowBreakdown flows(std::span<const double> x, BranchTrace* trace = nullptr) const;
};

/// Network dynamics with supply/demand links and one of the junction models.
class TrafficNetwork final : public FlowModel {
 public:
  /// Throws DivergeRuleViolation when a lane-based model meets a diverge with
  /// several incoming links, ModelError for any other invalid input.
  TrafficNetwork(Network network, std::vector<LinkParams> params, JunctionModel model);

  const Network& network() const override { return net_; }
  std::span<const double> jam_densities() const override { return jam_; }
  void evaluate(std::span<const double> x, FlowBreakdown& out,
                BranchTrace* trace = nullptr) const override;

  const std::vector<LinkParams>& params() const noexcept { return params_; }
  const JunctionModel& model() const noexcept { return model_; }

  /// min{1, s_l / (beta_l * sum of upstream demands)}; 1 when that sum is 0.
  double alpha_nonfifo(std::span<const double> x, std::size_t link) const;
  /// min{1, min over outgoing k of s_k / (beta_k * sum of incoming demands)};
  /// 1 when the demand sum is 0.
  double alpha_fifo(std::span<const double> x, std::size_t junction) const;
  /// min{1, min over j in phi of s_j / (beta_j * d_k)} for the unique
  /// incoming link k; 1 when d_k is 0.
  double alpha_phi(std::span<const double> x, std::size_t junction,
                   std::span<const std::size_t> phi) const;

  /// min{delta_l, s_l(x_l)} for source links, else 0.
  double exogenous_inflow(std::span<const double> x, std::size_t link) const;
  /// gamma_l * total_downstream_outflow when the link has downstream links,
  /// else its demand d_l(x_l).
  double exogenous_outflow(std::span<const double> x, std::size_t link,
                           double total_downstream_outflow) const;

 private:
  void evaluate_junction(std::size_t v, FlowBreakdown& out, BranchTrace* trace) const;

  Network net_;
  std::vector<LinkParams> params_;
  JunctionModel model_;
  std::vector<double> jam_;
};

/// Rate of change of every density: inflow from upstream links minus outflow
/// to downstream links plus exogenous inflow minus exogenous outflow.
std::vector<double> vector_field(const FlowModel& model, std::span<const double> x,
                                 BranchTrace* trace = nullptr);

/// Same, from an already evaluated breakdown.
void vector_field_from(const Network& net, const FlowBreakdown& flows, std::span<double> out);

/// Copy of x clamped componentwise into [0, upper].
std::vector<double> clamp_to_box(std::span<const double> x, std::span<const double> upper);

}  // namespace fifonet
