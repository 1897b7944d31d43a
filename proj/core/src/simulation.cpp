#include "fifonet/simulation.hpp"

#include <algorithm>
#include <stdexcept>

namespace fifonet {

Trajectory simulate(const FlowModel& model, std::span<const double> x0, double t_final,
                    double dt) {
  const std::size_t n = model.network().size();
  if (x0.size() != n) throw std::invalid_argument("simulate: x0 has wrong dimension");
  const auto upper = model.jam_densities();
  Box box{std::vector<double>(n, 0.0), std::vector<double>(upper.begin(), upper.end())};
  FlowBreakdown scratch;
  VectorField field = [&](std::span<const double> x, std::span<double> rate) {
    model.evaluate(x, scratch);
    vector_field_from(model.network(), scratch, rate);
  };
  return integrate(field, x0, t_final, dt, box);
}

Trajectory simulate_embedding(const FlowModel& model, const EmbeddingState& s0, double t_final,
                              double dt) {
  const std::size_t n = model.network().size();
  if (s0.x.size() != n || s0.y.size() != n) {
    throw std::invalid_argument("simulate_embedding: initial state has wrong dimension");
  }
  const auto upper = model.jam_densities();
  Box box{std::vector<double>(2 * n, 0.0), {}};
  box.upper.insert(box.upper.end(), upper.begin(), upper.end());
  box.upper.insert(box.upper.end(), upper.begin(), upper.end());

  VectorField field = [&](std::span<const double> s, std::span<double> rate) {
    const auto x = s.first(n);
    const auto y = s.subspan(n);
    const auto gx = decomposition(model, x, y);
    const auto gy = decomposition(model, y, x);
    std::copy(gx.begin(), gx.end(), rate.begin());
    std::copy(gy.begin(), gy.end(), rate.begin() + static_cast<std::ptrdiff_t>(n));
  };
  std::vector<double> stacked = s0.x;
  stacked.insert(stacked.end(), s0.y.begin(), s0.y.end());
  return integrate(field, stacked, t_final, dt, box);
}

EmbeddingState split_state(std::span<const double> stacked) {
  if (stacked.size() % 2 != 0) throw std::invalid_argument("split_state: odd dimension");
  const std::size_t n = stacked.size() / 2;
  return {std::vector<double>(stacked.begin(), stacked.begin() + static_cast<std::ptrdiff_t>(n)),
          std::vector<double>(stacked.begin() + static_cast<std::ptrdiff_t>(n), stacked.end())};
}

}  // namespace fifonet
