#pragma once

#include <span>

#include "fifonet/embedding.hpp"
#include "fifonet/junction_models.hpp"
#include "fifonet/numerics.hpp"

namespace fifonet {

/// Integrates the network dynamics from x0 inside the box [0, jam densities].
Trajectory simulate(const FlowModel& model, std::span<const double> x0, double t_final, double dt);

/// Integrates the embedding system from (x0, y0). States in the returned
/// trajectory are the concatenation [x, y].
Trajectory simulate_embedding(const FlowModel& model, const EmbeddingState& s0, double t_final,
                              double dt);

/// Splits a concatenated [x, y] sample back into an embedding state.
EmbeddingState split_state(std::span<const double> stacked);

}  // namespace fifonet
