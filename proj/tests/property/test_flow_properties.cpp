#include <gtest/gtest.h>

#include <cmath>

#include "fifonet/junction_models.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace fifonet;
using fixtures::ModelKind;

namespace {

constexpr int kNetworks = 40;
constexpr int kStatesPerNetwork = 250;
constexpr double kTol = 1e-12;

// Visits random (system, state) pairs for every model kind.
template <class Fn>
void for_random_states(std::uint64_t seed, Fn&& fn) {
  std::mt19937_64 rng(seed);
  for (int n = 0; n < kNetworks; ++n) {
    for (ModelKind kind : fixtures::kAllModelKinds) {
      const auto sys = fixtures::random_system(rng, kind);
      for (int s = 0; s < kStatesPerNetwork / 5; ++s) {
        fn(sys, fixtures::uniform_state(rng, sys.jam_densities()), kind);
      }
    }
  }
}

}  // namespace

TEST(FlowProperty, FlowsAreBoundedByDemandAndSupply) {
  for_random_states(201, [](const TrafficNetwork& sys, const std::vector<double>& x, ModelKind kind) {
    const auto& net = sys.network();
    const auto f = sys.flows(x);
    for (std::size_t p = 0; p < net.pairs().size(); ++p) {
      const auto& pr = net.pairs()[p];
      ASSERT_GE(f.fifo[p], 0.0);
      ASSERT_GE(f.nonfifo[p], 0.0);
      ASSERT_LE(f.pair_total(p), *sys.params()[pr.to].beta * f.demand[pr.from] + kTol)
          << fixtures::kind_label(kind);
    }
    for (std::size_t l = 0; l < net.size(); ++l) {
      double in = 0.0;
      for (std::size_t p : net.pairs_into(l)) in += f.pair_total(p);
      ASSERT_LE(in, f.supply[l] + kTol) << fixtures::kind_label(kind);
      double out = f.outflow_exo[l];
      for (std::size_t p : net.pairs_from(l)) out += f.pair_total(p);
      ASSERT_LE(out, f.demand[l] + kTol) << fixtures::kind_label(kind);
    }
  });
}

TEST(FlowProperty, BoxFacesPointInward) {
  std::mt19937_64 rng(202);
  for (int n = 0; n < kNetworks; ++n) {
    for (ModelKind kind : fixtures::kAllModelKinds) {
      const auto sys = fixtures::random_system(rng, kind);
      const auto jam = sys.jam_densities();
      for (int s = 0; s < 20; ++s) {
        auto x = fixtures::uniform_state(rng, jam);
        const auto l = static_cast<std::size_t>(rng() % x.size());
        x[l] = 0.0;
        ASSERT_GE(vector_field(sys, x)[l], -kTol);
        x[l] = jam[l];
        ASSERT_LE(vector_field(sys, x)[l], kTol);
      }
    }
  }
}

TEST(FlowProperty, ConvexComboCollapses) {
  std::mt19937_64 rng(203);
  for (int n = 0; n < kNetworks; ++n) {
    auto rn = fixtures::random_network(rng);
    const auto& net = rn.network;
    const TrafficNetwork zero(net, rn.params, fixtures::uniform_model(net, ModelKind::ConvexCombo, 0.0));
    const TrafficNetwork one(net, rn.params, fixtures::uniform_model(net, ModelKind::ConvexCombo, 1.0));
    const TrafficNetwork nf(net, rn.params, NonFifo{});
    const TrafficNetwork ff(net, rn.params, FullFifo{});
    for (int s = 0; s < kStatesPerNetwork; ++s) {
      const auto x = fixtures::uniform_state(rng, nf.jam_densities());
      const auto a = zero.flows(x), b = nf.flows(x), c = one.flows(x), d = ff.flows(x);
      for (std::size_t p = 0; p < net.pairs().size(); ++p) {
        ASSERT_NEAR(a.pair_total(p), b.pair_total(p), kTol);
        ASSERT_NEAR(c.pair_total(p), d.pair_total(p), kTol);
      }
    }
  }
}

TEST(FlowProperty, LanesWithFullShareEqualFullFifo) {
  std::mt19937_64 rng(204);
  for (int n = 0; n < kNetworks; ++n) {
    auto rn = fixtures::random_network(rng);
    const auto& net = rn.network;
    const TrafficNetwork lanes(net, rn.params,
                               fixtures::uniform_model(net, ModelKind::PartialFifoLanes, 1.0));
    const TrafficNetwork ff(net, rn.params, FullFifo{});
    for (int s = 0; s < kStatesPerNetwork; ++s) {
      const auto x = fixtures::uniform_state(rng, ff.jam_densities());
      const auto a = lanes.flows(x), b = ff.flows(x);
      for (std::size_t p = 0; p < net.pairs().size(); ++p) {
        ASSERT_NEAR(a.pair_total(p), b.pair_total(p), kTol);
      }
    }
  }
}

TEST(FlowProperty, SingleRestrictionSetEqualsLanes) {
  std::mt19937_64 rng(205);
  for (int n = 0; n < kNetworks; ++n) {
    auto rn = fixtures::random_network(rng);
    const auto& net = rn.network;
    std::vector<double> eta(net.size());
    for (auto& e : eta) e = std::uniform_real_distribution<double>(0, 1)(rng);
    const TrafficNetwork lanes(net, rn.params, PartialFifoLanes{eta});
    const auto& normalized = std::get<PartialFifoLanes>(lanes.model()).eta;
    MultiSetFifo m;
    m.restrictions.resize(net.junction_count());
    for (std::size_t v = 0; v < net.junction_count(); ++v) {
      FifoRestriction phi;
      for (std::size_t l : net.out_links(v)) {
        phi.links.push_back(l);
        phi.eta.push_back(normalized[l]);
      }
      if (!phi.links.empty()) m.restrictions[v].push_back(std::move(phi));
    }
    const TrafficNetwork sets(net, rn.params, m);
    for (int s = 0; s < kStatesPerNetwork; ++s) {
      const auto x = fixtures::uniform_state(rng, lanes.jam_densities());
      const auto a = lanes.flows(x), b = sets.flows(x);
      for (std::size_t p = 0; p < net.pairs().size(); ++p) {
        ASSERT_NEAR(a.fifo[p], b.fifo[p], kTol);
        ASSERT_NEAR(a.nonfifo[p], b.nonfifo[p], kTol);
      }
    }
  }
}

TEST(FlowProperty, LaneModelsAreSupplyTight) {
  // Either the exclusive share flows in full or the link's supply is used up.
  for_random_states(206, [](const TrafficNetwork& sys, const std::vector<double>& x, ModelKind kind) {
    if (kind != ModelKind::PartialFifoLanes && kind != ModelKind::MultiSetFifo) return;
    const auto& net = sys.network();
    const auto f = sys.flows(x);
    for (std::size_t v = 0; v < net.junction_count(); ++v) {
      if (net.out_links(v).size() < 2) continue;
      for (std::size_t p : net.pairs_at(v)) {
        const auto& pr = net.pairs()[p];
        double exclusive = 1.0;
        if (const auto* lanes = std::get_if<PartialFifoLanes>(&sys.model())) {
          exclusive -= lanes->eta[pr.to];
        } else {
          for (const auto& phi : std::get<MultiSetFifo>(sys.model()).restrictions[v]) {
            for (std::size_t i = 0; i < phi.links.size(); ++i) {
              if (phi.links[i] == pr.to) exclusive -= phi.eta[i];
            }
          }
        }
        const double full = exclusive * *sys.params()[pr.to].beta * f.demand[pr.from];
        const bool open = std::abs(f.nonfifo[p] - full) <= kTol;
        const bool tight = std::abs(f.pair_total(p) - f.supply[pr.to]) <= kTol;
        ASSERT_TRUE(open || tight) << fixtures::kind_label(kind);
      }
    }
  });
}

TEST(FlowProperty, NonFifoIgnoresAdjacentDensities) {
  std::mt19937_64 rng(207);
  for (int n = 0; n < kNetworks; ++n) {
    const auto sys = fixtures::random_system(rng, ModelKind::NonFifo);
    const auto& net = sys.network();
    for (int s = 0; s < 50; ++s) {
      auto x = fixtures::uniform_state(rng, sys.jam_densities());
      const auto before = sys.flows(x);
      for (std::size_t l = 0; l < net.size(); ++l) {
        for (std::size_t m : net.adjacent(l)) {
          auto y = x;
          y[m] = std::uniform_real_distribution<double>(0, sys.jam_densities()[m])(rng);
          const auto after = sys.flows(y);
          for (std::size_t p : net.pairs_into(l)) ASSERT_EQ(after.pair_total(p), before.pair_total(p));
        }
      }
    }
  }
}

TEST(FlowProperty, CurvesAreMonotoneAndFinite) {
  std::mt19937_64 rng(208);
  for (int n = 0; n < kNetworks; ++n) {
    const auto rn = fixtures::random_network(rng);
    for (const auto& p : rn.params) {
      ASSERT_TRUE(check_link_params(p, p.beta.has_value()).empty());
      EXPECT_EQ(demand(p, 0.0), 0.0);
      EXPECT_EQ(supply(p, p.jam_density), 0.0);
      double prev_d = -1.0, prev_s = 1e300;
      for (int i = 0; i <= 1000; ++i) {
        const double x = p.jam_density * i / 1000.0;
        const double d = demand(p, x), s = supply(p, x);
        ASSERT_TRUE(std::isfinite(d) && std::isfinite(s));
        ASSERT_GE(d, 0.0);
        ASSERT_GE(s, 0.0);
        ASSERT_GT(d, prev_d);
        ASSERT_LT(s, prev_s);
        prev_d = d;
        prev_s = s;
      }
    }
  }
}
