#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "test_support.hpp"

namespace wgshift {
namespace {

TEST(Analyze, FixedPoint) {
  const auto a = analyze(FunctionalGraph({0}));
  ASSERT_EQ(a.cycles.size(), 1u);
  EXPECT_EQ(a.cycles[0].nodes, std::vector<Node>{0});
  EXPECT_EQ(a.period[0], 1u);
  EXPECT_EQ(a.tail_len[0], 0u);
  EXPECT_EQ(a.component_count(), 1u);
}

TEST(Analyze, ThreeCycle) {
  const auto a = analyze(FunctionalGraph({1, 2, 0}));
  ASSERT_EQ(a.cycles.size(), 1u);
  EXPECT_EQ(a.cycles[0].nodes, (std::vector<Node>{0, 1, 2}));
  for (Node x = 0; x < 3; ++x) {
    EXPECT_TRUE(a.on_cycle[x]);
    EXPECT_EQ(a.period[x], 3u);
    EXPECT_EQ(a.cycle_pos[x], x);
  }
}

TEST(Analyze, Chain) {
  const auto a = analyze(FunctionalGraph({1, 1}));
  ASSERT_EQ(a.cycles.size(), 1u);
  EXPECT_EQ(a.cycles[0].nodes, std::vector<Node>{1});
  EXPECT_EQ(a.period[1], 1u);
  EXPECT_FALSE(a.on_cycle[0]);
  EXPECT_EQ(a.tail_len[0], 1u);
  EXPECT_EQ(a.component_id[0], a.component_id[1]);
}

TEST(Analyze, RotatedCycleAndComponentOrder) {
  // Components {0,3} (cycle 3->3) and {1,2,4} (cycle 4->2->4).
  const auto a = analyze(FunctionalGraph({3, 4, 4, 3, 2}));
  ASSERT_EQ(a.cycles.size(), 2u);
  EXPECT_EQ(a.component_id, (std::vector<std::size_t>{0, 1, 1, 0, 1}));
  EXPECT_EQ(a.cycles[0].nodes, std::vector<Node>{3});
  EXPECT_EQ(a.cycles[1].nodes, (std::vector<Node>{2, 4}));
  EXPECT_EQ(a.tail_len, (std::vector<std::size_t>{1, 1, 0, 0, 0}));
}

TEST(FunctionalGraphTest, RejectsBadTables) {
  EXPECT_THROW(FunctionalGraph({}), Error);
  EXPECT_THROW(FunctionalGraph({0, 2}), Error);
}

TEST(DownClosure, Examples) {
  const FunctionalGraph chain({1, 1});
  const FunctionalGraph cyc({1, 2, 0});
  EXPECT_TRUE(down_closure(chain, NodeSet(2)).empty());
  EXPECT_EQ(down_closure(chain, NodeSet(2, {1})), NodeSet::all(2));
  EXPECT_EQ(down_closure(chain, NodeSet(2, {0})), NodeSet(2, {0}));
  EXPECT_EQ(down_closure(cyc, NodeSet(3, {2})), NodeSet::all(3));
}

TEST(Image, Examples) {
  EXPECT_TRUE(image(FunctionalGraph({1, 1}), NodeSet(2)).empty());
  EXPECT_EQ(image(FunctionalGraph({1, 2, 0}), NodeSet::all(3)), NodeSet::all(3));
  EXPECT_EQ(image(FunctionalGraph({1, 1}), NodeSet::all(2)), NodeSet(2, {1}));
}

using Meet = std::optional<std::pair<std::size_t, std::size_t>>;

TEST(OrbitMeet, Examples) {
  EXPECT_EQ(orbit_meet(FunctionalGraph({0}), 0, 0), Meet({1, 1}));
  EXPECT_EQ(orbit_meet(FunctionalGraph({1, 1}), 0, 1), Meet({1, 1}));
  // phi(0) = 1 = phi^3(1) is the lexicographically least meet.
  EXPECT_EQ(orbit_meet(FunctionalGraph({1, 2, 0}), 0, 1),
            Meet({1, 3}));
  EXPECT_EQ(orbit_meet(FunctionalGraph({0, 1}), 0, 1), Meet());
}

// Brute-force references over random graphs with n <= 10.

class RandomGraphs : public ::testing::Test {
 protected:
  template <class F>
  void for_each_graph(F&& check) {
    Rng rng(31337);
    for (int i = 0; i < 400; ++i)
      check(random_graph(rng, static_cast<std::size_t>(rng.between(1, 10))));
  }
};

bool brute_related(const FunctionalGraph& g, Node a, Node b) {
  const std::size_t h = 2 * g.size();
  for (std::size_t p = 1; p <= h; ++p)
    for (std::size_t q = 1; q <= h; ++q)
      if (g.iterate(a, p) == g.iterate(b, q)) return true;
  return false;
}

TEST_F(RandomGraphs, ComponentsMatchOrbitRelation) {
  for_each_graph([](const FunctionalGraph& g) {
    const auto a = analyze(g);
    for (Node x = 0; x < g.size(); ++x)
      for (Node y = 0; y < g.size(); ++y)
        EXPECT_EQ(a.component_id[x] == a.component_id[y], brute_related(g, x, y));
  });
}

TEST_F(RandomGraphs, CycleStructure) {
  for_each_graph([](const FunctionalGraph& g) {
    const auto a = analyze(g);
    const std::size_t n = g.size();
    std::size_t cyclic = 0;
    for (Node x = 0; x < n; ++x) cyclic += a.on_cycle[x] ? 1 : 0;
    std::size_t total = 0;
    for (std::size_t id = 0; id < a.cycles.size(); ++id) {
      const auto& nodes = a.cycles[id].nodes;
      total += nodes.size();
      ASSERT_FALSE(nodes.empty());
      EXPECT_EQ(*std::min_element(nodes.begin(), nodes.end()), nodes.front());
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        EXPECT_EQ(g(nodes[i]), nodes[(i + 1) % nodes.size()]);
        EXPECT_EQ(a.cycle_pos[nodes[i]], i);
        EXPECT_EQ(a.component_id[nodes[i]], id);
      }
    }
    EXPECT_EQ(total, cyclic);

    // Component ids follow the smallest member.
    std::vector<Node> smallest(a.cycles.size(), n);
    for (Node x = 0; x < n; ++x)
      smallest[a.component_id[x]] = std::min(smallest[a.component_id[x]], x);
    EXPECT_TRUE(std::is_sorted(smallest.begin(), smallest.end()));

    for (Node x = 0; x < n; ++x) {
      bool returns = false;
      for (std::size_t k = 1; k <= n; ++k) returns = returns || g.iterate(x, k) == x;
      EXPECT_EQ(a.classify(x) == PointClass::periodic, returns);
      EXPECT_NE(a.classify(x), PointClass::wandering);
      EXPECT_EQ(a.cycle_id[x], a.cycle_id[g(x)]);
      // tail_len is the least s with phi^s(x) on a cycle.
      const std::size_t s = a.tail_len[x];
      EXPECT_TRUE(a.on_cycle[g.iterate(x, s)]);
      if (s > 0) {
        EXPECT_FALSE(a.on_cycle[g.iterate(x, s - 1)]);
      }
      if (a.on_cycle[x]) {
        const std::size_t per = a.period[x];
        EXPECT_EQ(g.iterate(x, per), x);
        for (std::size_t k = 1; k <= 2 * n; ++k)
          if (g.iterate(x, k) == x) {
            EXPECT_EQ(k % per, 0u);
          }
      } else {
        EXPECT_EQ(a.period[x], 0u);
      }
    }
  });
}

TEST_F(RandomGraphs, DownClosureMatchesBruteForce) {
  Rng rng(5);
  for_each_graph([&](const FunctionalGraph& g) {
    const std::size_t n = g.size();
    NodeSet z(n);
    for (Node x = 0; x < n; ++x)
      if (rng.chance(0.25)) z.insert(x);
    NodeSet expected(n);
    for (Node x = 0; x < n; ++x)
      for (std::size_t k = 0; k <= n; ++k)
        if (z.contains(g.iterate(x, k))) expected.insert(x);
    EXPECT_EQ(down_closure(g, z), expected);
  });
}

TEST_F(RandomGraphs, OrbitMeetIsLeastWitness) {
  for_each_graph([](const FunctionalGraph& g) {
    const std::size_t h = 2 * g.size();
    for (Node a = 0; a < g.size(); ++a) {
      for (Node b = 0; b < g.size(); ++b) {
        Meet expected;
        for (std::size_t p = 1; p <= h && !expected; ++p)
          for (std::size_t q = 1; q <= h && !expected; ++q)
            if (g.iterate(a, p) == g.iterate(b, q)) expected = std::pair{p, q};
        EXPECT_EQ(orbit_meet(g, a, b), expected);
      }
    }
  });
}

TEST_F(RandomGraphs, ImageMatchesDefinition) {
  Rng rng(8);
  for_each_graph([&](const FunctionalGraph& g) {
    NodeSet s(g.size());
    for (Node x = 0; x < g.size(); ++x)
      if (rng.chance(0.5)) s.insert(x);
    std::set<Node> expected;
    for (Node x : s.members()) expected.insert(g(x));
    const auto got = image(g, s).members();
    EXPECT_EQ(std::vector<Node>(expected.begin(), expected.end()), got);
  });
}

}  // namespace
}  // namespace wgshift
