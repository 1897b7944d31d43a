#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fifonet/junction_models.hpp"
#include "fifonet/link_dynamics.hpp"
#include "fifonet/topology.hpp"

namespace fifonet {

struct Violation {
  enum class Kind {
    DivergeRule,       // lane-based model at a diverge without a unique incoming link
    TurnRatioSum,      // sum of downstream turn ratios exceeds 1
    OfframpBound,      // (gamma + 1) * sum of downstream turn ratios exceeds 1
    LinkParameter,     // curve or scalar parameter of a link is invalid
    ModelParameter,    // eta / FIFO restriction parameter is invalid
    Topology,          // duplicate link id, self-loop, unknown reference
  };
  enum class Severity { Error, Warning };

  Kind kind;
  Severity severity;
  std::string message;
  std::optional<std::size_t> junction;
  std::optional<std::size_t> link;
};

std::string kind_name(Violation::Kind kind);

/// Structural and parameter checks of a network/model pair. Never throws;
/// problems are returned as data. Turn-ratio conditions only guarantee the
/// outflow bound and are reported as warnings.
std::vector<Violation> validate_structure(const Network& net, std::span<const LinkParams> params,
                                          const JunctionModel& model);

bool has_errors(std::span<const Violation> violations);

}  // namespace fifonet
