#include "fifonet/junction_models.hpp"

#include <algorithm>
#include <cmath>

#include "fifonet/structure.hpp"

namespace fifonet {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Branch code recorded when a throttle's demand denominator vanishes.
constexpr std::uint32_t kZeroDemandBranch = 0xffffu;

// Clamp codes recorded per coordinate.
constexpr std::uint32_t kInside = 0;
constexpr std::uint32_t kClampedLow = 1;
constexpr std::uint32_t kClampedHigh = 2;

double beta_of(const LinkParams& p) { return p.beta.value_or(0.0); }

// min{1, min_k s_k / (beta_k * denom)} over the given links, with argmin
// recorded. Returns 1 when denom is 0.
double throttle(std::span<const std::size_t> links, const FlowBreakdown& f,
                const std::vector<LinkParams>& params, double denom, BranchTrace* trace) {
  if (denom <= 0.0) {
    record(trace, kZeroDemandBranch);
    return 1.0;
  }
  double best = 1.0;
  std::uint32_t arg = 0;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const std::size_t k = links[i];
    const double ratio = f.supply[k] / (beta_of(params[k]) * denom);
    if (ratio < best) {
      best = ratio;
      arg = static_cast<std::uint32_t>(i + 1);
    }
  }
  record(trace, arg);
  return best;
}

// min{a, b} with the active argument recorded.
double traced_min(double a, double b, BranchTrace* trace) {
  record(trace, b < a ? 1u : 0u);
  return std::min(a, b);
}

}  // namespace

std::string model_name(const JunctionModel& model) {
  return std::visit(overloaded{[](const NonFifo&) { return "non_fifo"; },
                               [](const FullFifo&) { return "full_fifo"; },
                               [](const ConvexCombo&) { return "convex_combo"; },
                               [](const PartialFifoLanes&) { return "partial_fifo_lanes"; },
                               [](const MultiSetFifo&) { return "multi_set_fifo"; }},
                    model);
}

void FlowBreakdown::resize(std::size_t links, std::size_t pairs) {
  fifo.assign(pairs, 0.0);
  nonfifo.assign(pairs, 0.0);
  inflow_exo.assign(links, 0.0);
  outflow_exo.assign(links, 0.0);
  density.assign(links, 0.0);
  demand.assign(links, 0.0);
  supply.assign(links, 0.0);
}

FlowBreakdown FlowModel::flows(std::span<const double> x, BranchTrace* trace) const {
  FlowBreakdown out;
  evaluate(x, out, trace);
  return out;
}

TrafficNetwork::TrafficNetwork(Network network, std::vector<LinkParams> params, JunctionModel model)
    : net_(std::move(network)), params_(std::move(params)), model_(std::move(model)) {
  const auto violations = validate_structure(net_, params_, model_);
  std::string errors;
  for (const auto& v : violations) {
    if (v.severity != Violation::Severity::Error) continue;
    if (v.kind == Violation::Kind::DivergeRule) throw DivergeRuleViolation(*v.junction, v.message);
    if (!errors.empty()) errors += "; ";
    errors += v.message;
  }
  if (!errors.empty()) throw ModelError(errors);

  if (auto* lanes = std::get_if<PartialFifoLanes>(&model_)) {
    for (std::size_t l = 0; l < net_.size(); ++l) {
      if (net_.adjacent(l).empty()) lanes->eta[l] = 1.0;
    }
  }
  for (const auto& p : params_) jam_.push_back(p.jam_density);
}

void TrafficNetwork::evaluate(std::span<const double> x, FlowBreakdown& out,
                              BranchTrace* trace) const {
  const std::size_t n = net_.size();
  if (x.size() != n) throw std::invalid_argument("state dimension does not match network");
  out.resize(n, net_.pairs().size());

  for (std::size_t l = 0; l < n; ++l) {
    const double xl = x[l];
    if (xl < 0.0) {
      record(trace, kClampedLow);
    } else if (xl > jam_[l]) {
      record(trace, kClampedHigh);
    } else {
      record(trace, kInside);
    }
    out.density[l] = std::clamp(xl, 0.0, jam_[l]);
    out.demand[l] = demand(params_[l], out.density[l], trace);
    out.supply[l] = supply(params_[l], out.density[l], trace);
  }

  for (std::size_t v = 0; v < net_.junction_count(); ++v) evaluate_junction(v, out, trace);

  for (std::size_t l : net_.sources()) {
    out.inflow_exo[l] = traced_min(params_[l].delta, out.supply[l], trace);
  }
  for (std::size_t l = 0; l < n; ++l) {
    if (net_.is_sink(l)) {
      out.outflow_exo[l] = out.demand[l];
    } else {
      double total = 0.0;
      for (std::size_t p : net_.pairs_from(l)) total += out.pair_total(p);
      out.outflow_exo[l] = params_[l].gamma * total;
    }
  }
}

void TrafficNetwork::evaluate_junction(std::size_t v, FlowBreakdown& f, BranchTrace* trace) const {
  const auto ins = net_.in_links(v);
  const auto outs = net_.out_links(v);
  if (ins.empty() || outs.empty()) return;

  double total_demand = 0.0;
  for (std::size_t k : ins) total_demand += f.demand[k];

  auto alpha_nf = [&](std::size_t l) {
    return throttle(std::span<const std::size_t>(&l, 1), f, params_, total_demand, trace);
  };
  auto for_pairs = [&](auto&& body) {
    for (std::size_t p : net_.pairs_at(v)) {
      const auto& pair = net_.pairs()[p];
      body(p, pair.from, pair.to);
    }
  };
  // Single outgoing link (or a merge) under the lane-based models: full FIFO.
  auto full_fifo = [&] {
    const double a = throttle(outs, f, params_, total_demand, trace);
    for_pairs([&](std::size_t p, std::size_t k, std::size_t l) {
      f.fifo[p] = a * beta_of(params_[l]) * f.demand[k];
    });
  };

  std::visit(
      overloaded{
          [&](const NonFifo&) {
            for (std::size_t l : outs) {
              const double a = alpha_nf(l);
              for (std::size_t p : net_.pairs_into(l)) {
                f.nonfifo[p] = a * beta_of(params_[l]) * f.demand[net_.pairs()[p].from];
              }
            }
          },
          [&](const FullFifo&) { full_fifo(); },
          [&](const ConvexCombo& m) {
            const double af = throttle(outs, f, params_, total_demand, trace);
            for (std::size_t l : outs) {
              const double anf = alpha_nf(l);
              const double bl = beta_of(params_[l]);
              for (std::size_t p : net_.pairs_into(l)) {
                const double dk = f.demand[net_.pairs()[p].from];
                f.fifo[p] = m.eta[l] * af * bl * dk;
                f.nonfifo[p] = (1.0 - m.eta[l]) * anf * bl * dk;
              }
            }
          },
          [&](const PartialFifoLanes& m) {
            if (outs.size() == 1) return full_fifo();
            const double af = throttle(outs, f, params_, total_demand, trace);
            for_pairs([&](std::size_t p, std::size_t k, std::size_t l) {
              const double bd = beta_of(params_[l]) * f.demand[k];
              f.fifo[p] = m.eta[l] * af * bd;
              f.nonfifo[p] =
                  std::max(0.0, traced_min((1.0 - m.eta[l]) * bd, f.supply[l] - f.fifo[p], trace));
            });
          },
          [&](const MultiSetFifo& m) {
            if (outs.size() == 1) return full_fifo();
            const auto& sets = m.restrictions[v];
            const std::size_t k = ins.front();
            std::vector<double> alpha(sets.size());
            for (std::size_t i = 0; i < sets.size(); ++i) {
              alpha[i] = throttle(sets[i].links, f, params_, f.demand[k], trace);
            }
            for_pairs([&](std::size_t p, std::size_t, std::size_t l) {
              const double bd = beta_of(params_[l]) * f.demand[k];
              double fifo = 0.0;
              double exclusive = 1.0;
              for (std::size_t i = 0; i < sets.size(); ++i) {
                const auto& members = sets[i].links;
                auto it = std::find(members.begin(), members.end(), l);
                if (it == members.end()) continue;
                const double eta = sets[i].eta[static_cast<std::size_t>(it - members.begin())];
                fifo += eta * alpha[i] * bd;
                exclusive -= eta;
              }
              f.fifo[p] = fifo;
              f.nonfifo[p] = std::max(0.0, traced_min(exclusive * bd, f.supply[l] - fifo, trace));
            });
          },
      },
      model_);
}

double TrafficNetwork::alpha_nonfifo(std::span<const double> x, std::size_t link) const {
  const auto f = flows(x);
  double total = 0.0;
  for (std::size_t j : net_.upstream(link)) total += f.demand[j];
  return throttle(std::span<const std::size_t>(&link, 1), f, params_, total, nullptr);
}

double TrafficNetwork::alpha_fifo(std::span<const double> x, std::size_t junction) const {
  const auto f = flows(x);
  double total = 0.0;
  for (std::size_t j : net_.in_links(junction)) total += f.demand[j];
  return throttle(net_.out_links(junction), f, params_, total, nullptr);
}

double TrafficNetwork::alpha_phi(std::span<const double> x, std::size_t junction,
                                 std::span<const std::size_t> phi) const {
  const auto ins = net_.in_links(junction);
  if (ins.size() != 1) {
    throw DivergeRuleViolation(junction, "junction " + net_.junction_id(junction).name +
                                             " does not have exactly one incoming link");
  }
  const auto f = flows(x);
  return throttle(phi, f, params_, f.demand[ins.front()], nullptr);
}

double TrafficNetwork::exogenous_inflow(std::span<const double> x, std::size_t link) const {
  if (!net_.is_source(link)) return 0.0;
  return std::min(params_[link].delta, supply(params_[link], x[link]));
}

double TrafficNetwork::exogenous_outflow(std::span<const double> x, std::size_t link,
                                         double total_downstream_outflow) const {
  if (net_.is_sink(link)) return demand(params_[link], x[link]);
  return params_[link].gamma * total_downstream_outflow;
}

void vector_field_from(const Network& net, const FlowBreakdown& flows, std::span<double> out) {
  for (std::size_t l = 0; l < net.size(); ++l) {
    double in = 0.0;
    for (std::size_t p : net.pairs_into(l)) in += flows.pair_total(p);
    double leave = 0.0;
    for (std::size_t p : net.pairs_from(l)) leave += flows.pair_total(p);
    out[l] = in - leave + flows.inflow_exo[l] - flows.outflow_exo[l];
  }
}

std::vector<double> vector_field(const FlowModel& model, std::span<const double> x,
                                 BranchTrace* trace) {
  const auto f = model.flows(x, trace);
  std::vector<double> out(model.network().size());
  vector_field_from(model.network(), f, out);
  return out;
}

std::vector<double> clamp_to_box(std::span<const double> x, std::span<const double> upper) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::clamp(x[i], 0.0, upper[i]);
  return out;
}

}  // namespace fifonet
