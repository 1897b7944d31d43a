#include "fifonet/embedding.hpp"

#include <map>
#include <stdexcept>

namespace fifonet {

bool order_leq(const EmbeddingState& a, const EmbeddingState& b, double tolerance) {
  if (a.x.size() != b.x.size() || a.y.size() != b.y.size()) {
    throw std::invalid_argument("order_leq: dimension mismatch");
  }
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    if (a.x[i] > b.x[i] + tolerance) return false;
  }
  for (std::size_t i = 0; i < a.y.size(); ++i) {
    if (b.y[i] > a.y[i] + tolerance) return false;
  }
  return true;
}

std::vector<double> surrogate_state(const Network& net, std::span<const double> x,
                                    std::span<const double> y, std::size_t link) {
  if (x.size() != net.size() || y.size() != net.size()) {
    throw std::invalid_argument("surrogate_state: dimension mismatch");
  }
  std::vector<double> z(x.begin(), x.end());
  for (std::size_t k : net.adjacent(link)) z[k] = y[k];
  return z;
}

std::vector<double> decomposition(const FlowModel& model, std::span<const double> x,
                                  std::span<const double> y, BranchTrace* trace) {
  const Network& net = model.network();
  const auto upper = model.jam_densities();
  const auto xc = clamp_to_box(x, upper);
  const auto yc = clamp_to_box(y, upper);

  FlowBreakdown at_x;
  model.evaluate(xc, at_x, trace);

  // One breakdown per distinct adjacency set; links without adjacent links
  // use the breakdown at x.
  std::map<std::vector<std::size_t>, FlowBreakdown> at_surrogate;
  std::vector<double> g(net.size());
  for (std::size_t l = 0; l < net.size(); ++l) {
    const FlowBreakdown* fifo_source = &at_x;
    const auto adj = net.adjacent(l);
    if (!adj.empty()) {
      std::vector<std::size_t> key(adj.begin(), adj.end());
      auto it = at_surrogate.find(key);
      if (it == at_surrogate.end()) {
        it = at_surrogate.emplace(std::move(key), FlowBreakdown{}).first;
        model.evaluate(surrogate_state(net, xc, yc, l), it->second, trace);
      }
      fifo_source = &it->second;
    }

    double in = 0.0;
    for (std::size_t p : net.pairs_into(l)) in += fifo_source->fifo[p] + at_x.nonfifo[p];
    double leave = 0.0;
    for (std::size_t p : net.pairs_from(l)) leave += at_x.pair_total(p);
    g[l] = in - leave + at_x.inflow_exo[l] - at_x.outflow_exo[l];
  }
  return g;
}

EmbeddingState embedding_field(const FlowModel& model, const EmbeddingState& s) {
  return {decomposition(model, s.x, s.y), decomposition(model, s.y, s.x)};
}

}  // namespace fifonet
