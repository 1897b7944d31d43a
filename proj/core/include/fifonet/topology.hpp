#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fifonet {

/// Identifier of a link. Links are ordered by value everywhere a sum or an
/// output column runs over the link set.
struct LinkId {
  std::int64_t value = 0;

  friend auto operator<=>(const LinkId&, const LinkId&) = default;
};

std::string to_string(LinkId id);

/// Identifier of a junction (node).
struct JunctionId {
  std::string name;

  friend auto operator<=>(const JunctionId&, const JunctionId&) = default;
};

/// A directed link. An absent tail means vehicles enter from outside the
/// network; an absent head means they leave it.
struct Edge {
  LinkId id;
  std::optional<JunctionId> tail;
  std::optional<JunctionId> head;
};

class TopologyError : public std::runtime_error {
 public:
  enum class Kind { DuplicateLinkId, SelfLoop };

  TopologyError(Kind kind, LinkId link, const std::string& what)
      : std::runtime_error(what), kind_(kind), link_(link) {}

  Kind kind() const noexcept { return kind_; }
  LinkId link() const noexcept { return link_; }

 private:
  Kind kind_;
  LinkId link_;
};

/// An ordered pair of links (from, to) meeting at a junction, i.e.
/// head(from) == tail(to). Flows are only ever nonzero on such pairs.
struct IncidentPair {
  std::size_t from;
  std::size_t to;
  std::size_t junction;
};

/// Immutable directed network with eagerly computed incidence sets.
///
/// Links are addressed internally by dense index 0..size()-1 in increasing
/// LinkId order; junctions by dense index in increasing JunctionId order.
/// Every index set returned is sorted ascending.
class Network {
 public:
  static Network build(std::vector<Edge> edges);

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t junction_count() const noexcept { return junction_ids_.size(); }

  LinkId link_id(std::size_t link) const { return ids_.at(link); }
  std::span<const LinkId> link_ids() const noexcept { return ids_; }
  std::optional<std::size_t> index_of(LinkId id) const;
  std::size_t require_index(LinkId id) const;

  const JunctionId& junction_id(std::size_t v) const { return junction_ids_.at(v); }
  std::optional<std::size_t> junction_index(const JunctionId& id) const;

  /// Junction the link leaves from (its tail); empty for a boundary entry.
  std::optional<std::size_t> tail(std::size_t link) const { return tails_.at(link); }
  /// Junction the link flows into (its head); empty for a boundary exit.
  std::optional<std::size_t> head(std::size_t link) const { return heads_.at(link); }

  std::span<const std::size_t> in_links(std::size_t v) const { return in_.at(v); }
  std::span<const std::size_t> out_links(std::size_t v) const { return out_.at(v); }

  std::span<const std::size_t> upstream(std::size_t link) const { return up_.at(link); }
  std::span<const std::size_t> downstream(std::size_t link) const { return down_.at(link); }
  std::span<const std::size_t> adjacent(std::size_t link) const { return adj_.at(link); }

  /// Links with no upstream links; the only links that admit exogenous inflow.
  std::span<const std::size_t> sources() const noexcept { return sources_; }
  bool is_source(std::size_t link) const { return up_.at(link).empty(); }
  bool is_sink(std::size_t link) const { return down_.at(link).empty(); }

  /// Links incident to the head junction of `link` (in and out), which is the
  /// set a flow leaving `link` may depend on. Empty for boundary exits.
  std::vector<std::size_t> head_neighbourhood(std::size_t link) const;

  std::span<const IncidentPair> pairs() const noexcept { return pairs_; }
  /// Indices into pairs() of the pairs ending at / starting from `link`.
  std::span<const std::size_t> pairs_into(std::size_t link) const { return pairs_into_.at(link); }
  std::span<const std::size_t> pairs_from(std::size_t link) const { return pairs_from_.at(link); }
  /// Indices into pairs() of the pairs through junction v.
  std::span<const std::size_t> pairs_at(std::size_t v) const { return pairs_at_.at(v); }

  /// Edge list in LinkId order; build(edges()) reproduces this network.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

 private:
  Network() = default;

  std::vector<Edge> edges_;
  std::vector<LinkId> ids_;
  std::vector<JunctionId> junction_ids_;
  std::vector<std::optional<std::size_t>> tails_;
  std::vector<std::optional<std::size_t>> heads_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> up_;
  std::vector<std::vector<std::size_t>> down_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> sources_;
  std::vector<IncidentPair> pairs_;
  std::vector<std::vector<std::size_t>> pairs_into_;
  std::vector<std::vector<std::size_t>> pairs_from_;
  std::vector<std::vector<std::size_t>> pairs_at_;
};

}  // namespace fifonet
