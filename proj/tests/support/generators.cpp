#include "generators.hpp"

#include <algorithm>
#include <numeric>

namespace fifonet::fixtures {
namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

LinkParams random_link(std::mt19937_64& rng) {
  LinkParams p;
  p.jam_density = uniform(rng, 2.0, 8.0);
  if (uniform_int(rng, 0, 3) == 0) {
    // Concave piecewise-linear demand and supply through random breakpoints.
    const double x1 = p.jam_density * uniform(rng, 0.2, 0.5);
    const double peak = uniform(rng, 1.0, 4.0);
    PiecewiseLinear d{{{0.0, 0.0}, {x1, peak * 0.7}, {p.jam_density, peak}}};
    const double x2 = p.jam_density * uniform(rng, 0.4, 0.8);
    const double cap = uniform(rng, 1.5, 5.0);
    PiecewiseLinear s{{{0.0, cap}, {x2, cap * 0.8}, {p.jam_density, 0.0}}};
    p.demand = d;
    p.supply = s;
  } else {
    p.demand = ExponentialDemand{uniform(rng, 1.0, 5.0), uniform(rng, 0.2, 1.0)};
    p.supply = AffineSupply{p.jam_density};
  }
  return p;
}

}  // namespace

std::string kind_label(ModelKind kind) {
  switch (kind) {
    case ModelKind::NonFifo: return "non_fifo";
    case ModelKind::FullFifo: return "full_fifo";
    case ModelKind::ConvexCombo: return "convex_combo";
    case ModelKind::PartialFifoLanes: return "partial_fifo_lanes";
    case ModelKind::MultiSetFifo: return "multi_set_fifo";
  }
  return "?";
}

RandomNetwork random_network(std::mt19937_64& rng) {
  std::vector<Edge> edges;
  std::int64_t next_id = 1;
  // Links still without a head; each junction consumes some of them.
  std::vector<std::size_t> open;
  auto new_link = [&](std::optional<JunctionId> tail) {
    edges.push_back({LinkId{next_id++}, std::move(tail), std::nullopt});
    return edges.size() - 1;
  };

  const int junctions = uniform_int(rng, 1, 3);
  for (int j = 0; j < junctions; ++j) {
    const JunctionId v{"j" + std::to_string(j)};
    const bool diverge = uniform_int(rng, 0, 1) == 0;
    const int ins = diverge ? 1 : uniform_int(rng, 2, 3);
    const int outs = diverge ? uniform_int(rng, 2, 3) : 1;
    for (int i = 0; i < ins; ++i) {
      if (!open.empty() && uniform_int(rng, 0, 2) != 0) {
        const auto pick = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(open.size()) - 1));
        edges[open[pick]].head = v;
        open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));
      } else {
        edges[new_link(std::nullopt)].head = v;
      }
    }
    for (int o = 0; o < outs; ++o) open.push_back(new_link(v));
  }

  // Link ids are shuffled so that dense order differs from creation order.
  std::vector<std::int64_t> ids(edges.size());
  std::iota(ids.begin(), ids.end(), 1);
  std::shuffle(ids.begin(), ids.end(), rng);
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].id = LinkId{ids[i] * 10};

  RandomNetwork out{Network::build(edges), {}};
  const auto& net = out.network;
  out.params.resize(net.size());
  for (auto& p : out.params) p = random_link(rng);

  for (std::size_t v = 0; v < net.junction_count(); ++v) {
    const auto outs = net.out_links(v);
    std::vector<double> w(outs.size());
    for (auto& x : w) x = uniform(rng, 0.2, 1.0);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    const double mass = uniform(rng, 0.6, 1.0);
    for (std::size_t i = 0; i < outs.size(); ++i) out.params[outs[i]].beta = mass * w[i] / total;
    // With sum(beta) = mass the off-ramp bound allows gamma up to 1/mass - 1.
    for (std::size_t l : net.in_links(v)) {
      out.params[l].gamma = uniform(rng, 0.0, 1.0) * (1.0 / mass - 1.0);
    }
  }
  for (std::size_t l = 0; l < net.size(); ++l) {
    if (net.is_source(l)) out.params[l].delta = uniform(rng, 0.2, 4.0);
  }
  return out;
}

JunctionModel random_model(const Network& net, ModelKind kind, std::mt19937_64& rng) {
  std::vector<double> eta(net.size());
  for (auto& e : eta) e = uniform(rng, 0.0, 1.0);
  switch (kind) {
    case ModelKind::NonFifo: return NonFifo{};
    case ModelKind::FullFifo: return FullFifo{};
    case ModelKind::ConvexCombo: return ConvexCombo{eta};
    case ModelKind::PartialFifoLanes: return PartialFifoLanes{eta};
    case ModelKind::MultiSetFifo: break;
  }
  MultiSetFifo m;
  m.restrictions.resize(net.junction_count());
  for (std::size_t v = 0; v < net.junction_count(); ++v) {
    const auto outs = net.out_links(v);
    if (outs.size() == 1) {
      if (uniform_int(rng, 0, 1) == 0) m.restrictions[v].push_back({{outs[0]}, {uniform(rng, 0.0, 1.0)}});
      continue;
    }
    const int sets = uniform_int(rng, 0, 3);
    for (int s = 0; s < sets; ++s) {
      FifoRestriction phi;
      for (std::size_t l : outs) {
        if (uniform_int(rng, 0, 1) == 0) phi.links.push_back(l);
      }
      if (phi.links.empty()) phi.links.push_back(outs[0]);
      phi.eta.resize(phi.links.size());
      for (auto& e : phi.eta) e = uniform(rng, 0.0, 1.0);
      m.restrictions[v].push_back(std::move(phi));
    }
    // Scale shares down so that every link's total stays within 1.
    std::vector<double> total(net.size(), 0.0);
    for (const auto& phi : m.restrictions[v]) {
      for (std::size_t i = 0; i < phi.links.size(); ++i) total[phi.links[i]] += phi.eta[i];
    }
    for (auto& phi : m.restrictions[v]) {
      for (std::size_t i = 0; i < phi.links.size(); ++i) {
        if (total[phi.links[i]] > 1.0) phi.eta[i] /= total[phi.links[i]];
      }
    }
  }
  return m;
}

JunctionModel uniform_model(const Network& net, ModelKind kind, double eta) {
  const std::vector<double> all(net.size(), eta);
  switch (kind) {
    case ModelKind::NonFifo: return NonFifo{};
    case ModelKind::FullFifo: return FullFifo{};
    case ModelKind::ConvexCombo: return ConvexCombo{all};
    case ModelKind::PartialFifoLanes: return PartialFifoLanes{all};
    case ModelKind::MultiSetFifo: break;
  }
  MultiSetFifo m;
  m.restrictions.resize(net.junction_count());
  for (std::size_t v = 0; v < net.junction_count(); ++v) {
    const auto outs = net.out_links(v);
    if (outs.empty()) continue;
    FifoRestriction phi;
    phi.links.assign(outs.begin(), outs.end());
    // A link without adjacent links behaves as fully FIFO in the lane model.
    for (std::size_t l : outs) phi.eta.push_back(net.adjacent(l).empty() ? 1.0 : eta);
    m.restrictions[v].push_back(std::move(phi));
  }
  return m;
}

TrafficNetwork random_system(std::mt19937_64& rng, ModelKind kind) {
  auto rn = random_network(rng);
  auto model = random_model(rn.network, kind, rng);
  return TrafficNetwork(std::move(rn.network), std::move(rn.params), std::move(model));
}

std::vector<Edge> random_edges(std::mt19937_64& rng) {
  const int junctions = uniform_int(rng, 0, 4);
  const int links = uniform_int(rng, 1, 9);
  std::vector<Edge> edges;
  for (int i = 0; i < links; ++i) {
    auto end = [&]() -> std::optional<JunctionId> {
      const int k = uniform_int(rng, -1, junctions - 1);
      if (k < 0) return std::nullopt;
      return JunctionId{"n" + std::to_string(k)};
    };
    Edge e{LinkId{uniform_int(rng, -50, 50) * 1000 + i}, end(), end()};
    if (e.tail && e.head && *e.tail == *e.head) e.head.reset();
    edges.push_back(std::move(e));
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  return edges;
}

}  // namespace fifonet::fixtures
