#include "fixtures.hpp"

#include <algorithm>
#include <stdexcept>

namespace fifonet::fixtures {

LinkParams exp_link(double scale, double rate, double jam, std::optional<double> beta, double gamma,
                    double delta) {
  LinkParams p;
  p.jam_density = jam;
  p.demand = ExponentialDemand{scale, rate};
  p.supply = AffineSupply{jam};
  p.beta = beta;
  p.gamma = gamma;
  p.delta = delta;
  return p;
}

Network fig1_network() {
  const JunctionId v{"v"};
  return Network::build({{LinkId{1}, std::nullopt, v},
                         {LinkId{2}, v, std::nullopt},
                         {LinkId{3}, v, std::nullopt}});
}

std::vector<LinkParams> div3_params() {
  return {exp_link(4, 0.5, 6, std::nullopt, 0, 4), exp_link(3, 0.5, 4, 0.8),
          exp_link(2, 0.5, 2, 0.2)};
}

TrafficNetwork div3(JunctionModel model) {
  return TrafficNetwork(fig1_network(), div3_params(), std::move(model));
}

JunctionModel div3_lanes() { return PartialFifoLanes{{1.0, 0.1, 0.9}}; }

Network net6_network() {
  const JunctionId u{"u"}, w{"w"};
  return Network::build({{LinkId{1}, std::nullopt, u},
                         {LinkId{6}, std::nullopt, u},
                         {LinkId{2}, u, w},
                         {LinkId{3}, w, std::nullopt},
                         {LinkId{4}, w, std::nullopt},
                         {LinkId{5}, w, std::nullopt}});
}

std::vector<LinkParams> net6_params() {
  // Dense order is by link id: 1, 2, 3, 4, 5, 6.
  return {exp_link(3, 0.5, 6, std::nullopt, 0, 2), exp_link(5, 0.4, 8, 1.0, 0.1),
          exp_link(2, 0.5, 4, 0.4),                exp_link(2, 0.5, 4, 0.3),
          exp_link(1.5, 0.6, 3, 0.2),              exp_link(3, 0.5, 6, std::nullopt, 0, 1.5)};
}

TrafficNetwork net6(JunctionModel model) {
  return TrafficNetwork(net6_network(), net6_params(), std::move(model));
}

JunctionModel net6_lanes() { return PartialFifoLanes{{1.0, 1.0, 0.3, 0.5, 0.8, 1.0}}; }

std::filesystem::path scenario_path(const std::string& name) {
  return std::filesystem::path(FIFONET_SCENARIO_DIR) / name;
}

std::vector<std::filesystem::path> shipped_scenarios() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(FIFONET_SCENARIO_DIR)) {
    if (e.path().extension() == ".scenario") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> uniform_state(std::mt19937_64& rng, std::span<const double> upper) {
  std::vector<double> x(upper.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::uniform_real_distribution<double>(0.0, upper[i])(rng);
  }
  return x;
}

namespace {

std::size_t pair_index(const Network& net, std::int64_t from, std::int64_t to) {
  const auto f = net.require_index(LinkId{from});
  const auto t = net.require_index(LinkId{to});
  for (std::size_t p = 0; p < net.pairs().size(); ++p) {
    if (net.pairs()[p].from == f && net.pairs()[p].to == t) return p;
  }
  throw std::logic_error("no such link pair");
}

}  // namespace

InjectedViolation::InjectedViolation(const TrafficNetwork& inner, Condition target, double strength)
    : inner_(inner), target_(target), strength_(strength) {
  if (inner.network().size() != 6) throw std::invalid_argument("expects the 6-link network");
}

void InjectedViolation::evaluate(std::span<const double> x, FlowBreakdown& out,
                                 BranchTrace* trace) const {
  inner_.evaluate(x, out, trace);
  const auto& net = inner_.network();
  auto rho = [&](std::int64_t id) { return out.density[net.require_index(LinkId{id})]; };
  auto link = [&](std::int64_t id) { return net.require_index(LinkId{id}); };
  const double c = strength_;
  switch (target_) {
    case Condition::A1: out.inflow_exo[link(1)] -= c * rho(2); break;
    case Condition::A2: out.outflow_exo[link(2)] += c * rho(3); break;
    case Condition::A3: out.nonfifo[pair_index(net, 1, 2)] += c * rho(4); break;
    case Condition::A4: out.fifo[pair_index(net, 1, 2)] += c * rho(4); break;
    case Condition::A5: out.fifo[pair_index(net, 2, 3)] -= c * rho(2); break;
    case Condition::A6: out.nonfifo[pair_index(net, 2, 3)] -= c * rho(2); break;
    case Condition::A7: out.nonfifo[pair_index(net, 1, 2)] += c * rho(6); break;
    case Condition::A8: out.nonfifo[pair_index(net, 2, 3)] -= c * rho(4); break;
    case Condition::A9: out.fifo[pair_index(net, 2, 3)] += c * rho(4); break;
    default: break;
  }
}

}  // namespace fifonet::fixtures
