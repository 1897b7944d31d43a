#include "fifonet/structure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fifonet {
namespace {

std::string link_name(const Network& net, std::size_t l) { return to_string(net.link_id(l)); }

void check_eta_vector(const Network& net, const std::vector<double>& eta,
                      std::vector<Violation>& out) {
  if (eta.size() != net.size()) {
    out.push_back({Violation::Kind::ModelParameter, Violation::Severity::Error,
                   "eta has " + std::to_string(eta.size()) + " entries for " +
                       std::to_string(net.size()) + " links",
                   std::nullopt, std::nullopt});
    return;
  }
  for (std::size_t l = 0; l < eta.size(); ++l) {
    if (!(eta[l] >= 0.0 && eta[l] <= 1.0)) {
      std::ostringstream os;
      os << "eta of link " << link_name(net, l) << " is " << eta[l] << ", outside [0, 1]";
      out.push_back({Violation::Kind::ModelParameter, Violation::Severity::Error, os.str(),
                     std::nullopt, l});
    }
  }
}

void check_restrictions(const Network& net, const MultiSetFifo& m, std::vector<Violation>& out) {
  if (m.restrictions.size() != net.junction_count()) {
    out.push_back({Violation::Kind::ModelParameter, Violation::Severity::Error,
                   "FIFO restrictions given for " + std::to_string(m.restrictions.size()) +
                       " junctions, network has " + std::to_string(net.junction_count()),
                   std::nullopt, std::nullopt});
    return;
  }
  for (std::size_t v = 0; v < net.junction_count(); ++v) {
    const auto outs = net.out_links(v);
    const std::string jname = net.junction_id(v).name;
    std::vector<double> eta_sum(net.size(), 0.0);
    for (const auto& phi : m.restrictions[v]) {
      auto error = [&](const std::string& msg, std::optional<std::size_t> link = std::nullopt) {
        out.push_back({Violation::Kind::ModelParameter, Violation::Severity::Error,
                       "junction " + jname + ": " + msg, v, link});
      };
      if (phi.links.empty()) {
        error("empty FIFO restriction set");
        continue;
      }
      if (phi.eta.size() != phi.links.size()) {
        error("FIFO restriction eta list does not match its link list");
        continue;
      }
      for (std::size_t i = 0; i < phi.links.size(); ++i) {
        const std::size_t l = phi.links[i];
        if (std::find(outs.begin(), outs.end(), l) == outs.end()) {
          error("FIFO restriction member " + (l < net.size() ? link_name(net, l) : "?") +
                    " is not an outgoing link",
                l < net.size() ? std::optional<std::size_t>(l) : std::nullopt);
          continue;
        }
        if (std::count(phi.links.begin(), phi.links.end(), l) > 1) {
          error("link " + link_name(net, l) + " repeated in one FIFO restriction", l);
        }
        if (!(phi.eta[i] >= 0.0 && phi.eta[i] <= 1.0)) {
          std::ostringstream os;
          os << "eta of link " << link_name(net, l) << " in a FIFO restriction is " << phi.eta[i]
             << ", outside [0, 1]";
          error(os.str(), l);
        }
        eta_sum[l] += phi.eta[i];
      }
    }
    if (outs.size() == 1 && !m.restrictions[v].empty()) {
      const auto& only = m.restrictions[v];
      if (only.size() != 1 || only[0].links.size() != 1 || only[0].links[0] != outs[0]) {
        out.push_back({Violation::Kind::ModelParameter, Violation::Severity::Error,
                       "junction " + jname +
                           " has a single outgoing link; its only FIFO restriction set is that link",
                       v, std::nullopt});
      }
    }
    for (std::size_t l : outs) {
      if (eta_sum[l] > 1.0) {
        std::ostringstream os;
        os << "junction " << jname << ": FIFO restriction shares of link " << link_name(net, l)
           << " sum to " << eta_sum[l] << " > 1";
        out.push_back(
            {Violation::Kind::ModelParameter, Violation::Severity::Error, os.str(), v, l});
      }
    }
  }
}

}  // namespace

std::string kind_name(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::DivergeRule: return "DivergeRuleViolation";
    case Violation::Kind::TurnRatioSum: return "TurnRatioSum";
    case Violation::Kind::OfframpBound: return "OfframpBound";
    case Violation::Kind::LinkParameter: return "LinkParameter";
    case Violation::Kind::ModelParameter: return "ModelParameter";
    case Violation::Kind::Topology: return "Topology";
  }
  return "Unknown";
}

std::vector<Violation> validate_structure(const Network& net, std::span<const LinkParams> params,
                                          const JunctionModel& model) {
  std::vector<Violation> out;
  if (params.size() != net.size()) {
    out.push_back({Violation::Kind::LinkParameter, Violation::Severity::Error,
                   "parameters given for " + std::to_string(params.size()) + " links, network has " +
                       std::to_string(net.size()),
                   std::nullopt, std::nullopt});
    return out;
  }

  for (std::size_t l = 0; l < net.size(); ++l) {
    for (auto& msg : check_link_params(params[l], !net.is_source(l))) {
      out.push_back({Violation::Kind::LinkParameter, Violation::Severity::Error,
                     "link " + link_name(net, l) + ": " + msg, std::nullopt, l});
    }
  }

  const bool lane_based =
      std::holds_alternative<PartialFifoLanes>(model) || std::holds_alternative<MultiSetFifo>(model);
  if (lane_based) {
    for (std::size_t v = 0; v < net.junction_count(); ++v) {
      if (net.out_links(v).size() > 1 && net.in_links(v).size() != 1) {
        out.push_back({Violation::Kind::DivergeRule, Violation::Severity::Error,
                       "junction " + net.junction_id(v).name + " has " +
                           std::to_string(net.out_links(v).size()) + " outgoing and " +
                           std::to_string(net.in_links(v).size()) +
                           " incoming links; a diverge needs exactly one incoming link",
                       v, std::nullopt});
      }
    }
  }

  if (const auto* c = std::get_if<ConvexCombo>(&model)) check_eta_vector(net, c->eta, out);
  if (const auto* p = std::get_if<PartialFifoLanes>(&model)) check_eta_vector(net, p->eta, out);
  if (const auto* m = std::get_if<MultiSetFifo>(&model)) check_restrictions(net, *m, out);

  for (std::size_t l = 0; l < net.size(); ++l) {
    const auto down = net.downstream(l);
    if (down.empty()) continue;
    double beta_sum = 0.0;
    for (std::size_t k : down) beta_sum += params[k].beta.value_or(0.0);
    if (beta_sum > 1.0) {
      std::ostringstream os;
      os << "link " << link_name(net, l) << ": downstream turn ratios sum to " << beta_sum
         << " > 1";
      out.push_back(
          {Violation::Kind::TurnRatioSum, Violation::Severity::Warning, os.str(), net.head(l), l});
    }
    const double bound = (params[l].gamma + 1.0) * beta_sum;
    if (bound > 1.0) {
      std::ostringstream os;
      os << "link " << link_name(net, l) << ": (gamma + 1) * sum of downstream turn ratios is "
         << bound << " > 1; outflow may exceed demand";
      out.push_back(
          {Violation::Kind::OfframpBound, Violation::Severity::Warning, os.str(), net.head(l), l});
    }
  }
  return out;
}

bool has_errors(std::span<const Violation> violations) {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.severity == Violation::Severity::Error; });
}

}  // namespace fifonet
