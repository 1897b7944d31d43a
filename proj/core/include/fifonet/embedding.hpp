#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fifonet/branch_trace.hpp"
#include "fifonet/junction_models.hpp"

namespace fifonet {

/// State (x, y) of the doubled system x' = g(x, y), y' = g(y, x).
struct EmbeddingState {
  std::vector<double> x;
  std::vector<double> y;

  /// The state with x and y exchanged.
  EmbeddingState swapped() const { return {y, x}; }
};

/// Southeast orthant order: (x, y) <= (v, w) iff x <= v and w <= y
/// componentwise. `tolerance` loosens every comparison by that amount.
bool order_leq(const EmbeddingState& a, const EmbeddingState& b, double tolerance = 0.0);

/// Surrogate state for link l: y on the links adjacent to l, x elsewhere.
std::vector<double> surrogate_state(const Network& net, std::span<const double> x,
                                    std::span<const double> y, std::size_t link);

/// Decomposition function of the network dynamics:
///   g_l(x, y) = sum_k [ fifo_{k->l}(z^l(x, y)) + nonfifo_{k->l}(x) ]
///             - sum_j f_{l->j}(x) + inflow_l(x) - outflow_l(x),
/// with z^l the surrogate state. g(x, x) equals the vector field at x.
/// Both arguments are clamped to the box.
std::vector<double> decomposition(const FlowModel& model, std::span<const double> x,
                                  std::span<const double> y, BranchTrace* trace = nullptr);

/// Right-hand side of the embedding system: (g(x, y), g(y, x)).
EmbeddingState embedding_field(const FlowModel& model, const EmbeddingState& s);

}  // namespace fifonet
