#include "fifonet/topology.hpp"

#include <algorithm>
#include <map>

namespace fifonet {

std::string to_string(LinkId id) { return std::to_string(id.value); }

Network Network::build(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i > 0 && edges[i].id == edges[i - 1].id) {
      throw TopologyError(TopologyError::Kind::DuplicateLinkId, edges[i].id,
                          "duplicate link id " + to_string(edges[i].id));
    }
    if (edges[i].tail && edges[i].head && *edges[i].tail == *edges[i].head) {
      throw TopologyError(TopologyError::Kind::SelfLoop, edges[i].id,
                          "link " + to_string(edges[i].id) + " is a self-loop at junction " +
                              edges[i].tail->name);
    }
  }

  Network net;
  net.edges_ = std::move(edges);
  const std::size_t n = net.edges_.size();

  std::map<JunctionId, std::size_t> junctions;
  for (const auto& e : net.edges_) {
    if (e.tail) junctions.emplace(*e.tail, 0);
    if (e.head) junctions.emplace(*e.head, 0);
  }
  for (auto& [id, index] : junctions) {
    index = net.junction_ids_.size();
    net.junction_ids_.push_back(id);
  }

  const std::size_t nv = net.junction_ids_.size();
  net.in_.resize(nv);
  net.out_.resize(nv);
  net.pairs_at_.resize(nv);
  net.tails_.resize(n);
  net.heads_.resize(n);
  for (std::size_t l = 0; l < n; ++l) {
    const auto& e = net.edges_[l];
    net.ids_.push_back(e.id);
    if (e.tail) {
      net.tails_[l] = junctions.at(*e.tail);
      net.out_[*net.tails_[l]].push_back(l);
    }
    if (e.head) {
      net.heads_[l] = junctions.at(*e.head);
      net.in_[*net.heads_[l]].push_back(l);
    }
  }

  net.up_.resize(n);
  net.down_.resize(n);
  net.adj_.resize(n);
  for (std::size_t l = 0; l < n; ++l) {
    if (net.tails_[l]) {
      const std::size_t v = *net.tails_[l];
      net.up_[l] = net.in_[v];
      for (std::size_t k : net.out_[v]) {
        if (k != l) net.adj_[l].push_back(k);
      }
    }
    if (net.heads_[l]) net.down_[l] = net.out_[*net.heads_[l]];
    if (net.up_[l].empty()) net.sources_.push_back(l);
  }

  net.pairs_into_.resize(n);
  net.pairs_from_.resize(n);
  for (std::size_t v = 0; v < nv; ++v) {
    for (std::size_t k : net.in_[v]) {
      for (std::size_t l : net.out_[v]) {
        const std::size_t p = net.pairs_.size();
        net.pairs_.push_back({k, l, v});
        net.pairs_at_[v].push_back(p);
        net.pairs_from_[k].push_back(p);
        net.pairs_into_[l].push_back(p);
      }
    }
  }
  return net;
}

std::optional<std::size_t> Network::index_of(LinkId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

std::size_t Network::require_index(LinkId id) const {
  if (auto index = index_of(id)) return *index;
  throw std::out_of_range("unknown link id " + to_string(id));
}

std::optional<std::size_t> Network::junction_index(const JunctionId& id) const {
  auto it = std::lower_bound(junction_ids_.begin(), junction_ids_.end(), id);
  if (it == junction_ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - junction_ids_.begin());
}

std::vector<std::size_t> Network::head_neighbourhood(std::size_t link) const {
  std::vector<std::size_t> out;
  if (!heads_.at(link)) return out;
  const std::size_t v = *heads_[link];
  out.insert(out.end(), in_[v].begin(), in_[v].end());
  out.insert(out.end(), out_[v].begin(), out_[v].end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fifonet
