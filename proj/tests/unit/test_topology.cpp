#include <gtest/gtest.h>

#include <algorithm>

#include "fifonet/topology.hpp"
#include "fixtures.hpp"

using namespace fifonet;

namespace {

std::vector<std::int64_t> ids(const Network& net, std::span<const std::size_t> links) {
  std::vector<std::int64_t> out;
  for (std::size_t l : links) out.push_back(net.link_id(l).value);
  return out;
}

std::size_t idx(const Network& net, std::int64_t id) { return net.require_index(LinkId{id}); }

}  // namespace

TEST(Topology, DivergeOfThreeLinks) {
  const auto net = fixtures::fig1_network();
  ASSERT_EQ(net.size(), 3u);
  ASSERT_EQ(net.junction_count(), 1u);
  EXPECT_EQ(ids(net, net.upstream(idx(net, 2))), (std::vector<std::int64_t>{1}));
  EXPECT_EQ(ids(net, net.adjacent(idx(net, 2))), (std::vector<std::int64_t>{3}));
  EXPECT_EQ(ids(net, net.adjacent(idx(net, 3))), (std::vector<std::int64_t>{2}));
  EXPECT_EQ(ids(net, net.sources()), (std::vector<std::int64_t>{1}));
  EXPECT_EQ(ids(net, net.downstream(idx(net, 1))), (std::vector<std::int64_t>{2, 3}));
  EXPECT_TRUE(net.is_sink(idx(net, 2)));
  EXPECT_TRUE(net.adjacent(idx(net, 1)).empty());
}

TEST(Topology, IsolatedLinkHasNoIncidence) {
  const auto net = Network::build({{LinkId{7}, std::nullopt, std::nullopt}});
  EXPECT_TRUE(net.upstream(0).empty());
  EXPECT_TRUE(net.downstream(0).empty());
  EXPECT_TRUE(net.adjacent(0).empty());
  EXPECT_EQ(ids(net, net.sources()), (std::vector<std::int64_t>{7}));
  EXPECT_EQ(net.junction_count(), 0u);
}

TEST(Topology, ChainHasNoAdjacency) {
  const JunctionId j1{"j1"}, j2{"j2"}, j3{"j3"};
  const auto net = Network::build({{LinkId{1}, std::nullopt, j1},
                                   {LinkId{2}, j1, j2},
                                   {LinkId{3}, j2, j3},
                                   {LinkId{4}, j3, std::nullopt}});
  for (std::size_t l = 0; l < net.size(); ++l) EXPECT_TRUE(net.adjacent(l).empty());
  EXPECT_EQ(ids(net, net.downstream(idx(net, 1))), (std::vector<std::int64_t>{2}));
  EXPECT_EQ(ids(net, net.upstream(idx(net, 4))), (std::vector<std::int64_t>{3}));
}

TEST(Topology, DenseOrderFollowsLinkIds) {
  const JunctionId v{"v"};
  const auto net = Network::build({{LinkId{30}, v, std::nullopt},
                                   {LinkId{-4}, std::nullopt, v},
                                   {LinkId{12}, v, std::nullopt}});
  EXPECT_EQ(net.link_id(0).value, -4);
  EXPECT_EQ(net.link_id(1).value, 12);
  EXPECT_EQ(net.link_id(2).value, 30);
  EXPECT_EQ(net.index_of(LinkId{12}), 1u);
  EXPECT_FALSE(net.index_of(LinkId{5}).has_value());
}

TEST(Topology, RejectsDuplicateIds) {
  const JunctionId v{"v"};
  try {
    Network::build({{LinkId{1}, std::nullopt, v}, {LinkId{1}, v, std::nullopt}});
    FAIL() << "expected TopologyError";
  } catch (const TopologyError& e) {
    EXPECT_EQ(e.kind(), TopologyError::Kind::DuplicateLinkId);
    EXPECT_EQ(e.link().value, 1);
  }
}

TEST(Topology, RejectsSelfLoops) {
  const JunctionId v{"v"};
  try {
    Network::build({{LinkId{2}, v, v}});
    FAIL() << "expected TopologyError";
  } catch (const TopologyError& e) {
    EXPECT_EQ(e.kind(), TopologyError::Kind::SelfLoop);
  }
}

TEST(Topology, HeadNeighbourhoodOfMergeIncludesPeers) {
  const auto net = fixtures::net6_network();
  // Link 1 enters u together with 6; u feeds 2.
  EXPECT_EQ(ids(net, net.head_neighbourhood(idx(net, 1))), (std::vector<std::int64_t>{1, 2, 6}));
  EXPECT_TRUE(net.head_neighbourhood(idx(net, 3)).empty());
}

TEST(Topology, PairsCoverIncidentLinksOnly) {
  const auto net = fixtures::net6_network();
  // 1->2, 6->2, 2->3, 2->4, 2->5.
  EXPECT_EQ(net.pairs().size(), 5u);
  for (const auto& p : net.pairs()) {
    const auto down = net.downstream(p.from);
    EXPECT_NE(std::find(down.begin(), down.end(), p.to), down.end());
    EXPECT_EQ(net.head(p.from), p.junction);
    EXPECT_EQ(net.tail(p.to), p.junction);
  }
  EXPECT_EQ(net.pairs_into(idx(net, 2)).size(), 2u);
  EXPECT_EQ(net.pairs_from(idx(net, 2)).size(), 3u);
}
