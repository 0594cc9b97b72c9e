#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "treelabel/error.hpp"
#include "treelabel/tree.hpp"

using namespace treelabel;

namespace {

TreeStats brute_stats(const RootedTree &t) {
  const auto d = oracle::distances(t);
  const auto adj = oracle::adjacency(t);
  TreeStats s{t.size(), 0, 0, 0};
  for (int u = 0; u < t.size(); ++u) {
    s.delta = std::max<int>(s.delta, adj[u].size());
    for (int v : adj[u])
      s.delta2 = std::max<int>(s.delta2, adj[u].size() + adj[v].size());
    for (int v = 0; v < t.size(); ++v)
      s.diam = std::max(s.diam, d[u][v]);
  }
  return s;
}

bool edges_match(const RootedTree &a, const RootedTree &b, const std::vector<int> &map_b_to_a) {
  std::set<std::pair<int, int>> ea, eb;
  for (int v = 1; v < a.size(); ++v)
    ea.insert(std::minmax(v, a.parent(v)));
  for (int v = 1; v < b.size(); ++v)
    eb.insert(std::minmax(map_b_to_a[v], map_b_to_a[b.parent(v)]));
  return ea == eb;
}

} // namespace

TEST(Family, CompleteMaryTwoTwo) {
  const RootedTree t = build_family({Family::CompleteMary, 2, 2});
  EXPECT_EQ(t.size(), 7);
  EXPECT_EQ(t.degree(0), 2);
  EXPECT_EQ(tree_stats(t).delta, 3);
}

TEST(Family, RegularTwoTwo) {
  const RootedTree t = build_family({Family::RegularSubtree, 2, 2});
  EXPECT_EQ(t.size(), 10);
  EXPECT_EQ(t.degree(0), 3);
  EXPECT_EQ(tree_stats(t).delta, 3);
}

TEST(Family, CompleteMaryThreeTwo) {
  const TreeStats s = tree_stats(build_family({Family::CompleteMary, 3, 2}));
  EXPECT_EQ(s.n, 13);
  EXPECT_EQ(s.delta, 4);
  EXPECT_EQ(s.delta2, 7);
}

TEST(Family, SizeFormulaMatchesBuild) {
  for (Family f : {Family::CompleteMary, Family::RegularSubtree})
    for (int m = 2; m <= 5; ++m)
      for (int k = 2; k <= 5; ++k) {
        const FamilySpec spec{f, m, k};
        const RootedTree t = build_family(spec);
        EXPECT_EQ(family_size(spec), t.size()) << describe(spec);
        EXPECT_EQ(t.height(), k);
        EXPECT_EQ(tree_stats(t).delta, m + 1);
      }
}

TEST(Family, RejectsSmallParameters) {
  EXPECT_THROW(build_family({Family::CompleteMary, 1, 3}), std::invalid_argument);
  EXPECT_THROW(build_family({Family::RegularSubtree, 2, 1}), std::invalid_argument);
}

TEST(Parse, PathFromOneEnd) {
  const RootedTree t = parse_tree("4\n0 1 2\n");
  EXPECT_EQ(t, make_path(4));
  EXPECT_EQ(t.degree(0), 1);
}

TEST(Parse, CompleteMary) {
  EXPECT_EQ(parse_tree("7\n0 0 1 1 2 2"), build_family({Family::CompleteMary, 2, 2}));
}

TEST(Parse, ParentNotLessThanChild) {
  try {
    parse_tree("3\n0 2");
    FAIL() << "expected a parse error";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(Parse, MalformedInputs) {
  EXPECT_THROW(parse_tree(""), ParseError);
  EXPECT_THROW(parse_tree("x\n"), ParseError);
  EXPECT_THROW(parse_tree("0\n"), ParseError);
  EXPECT_THROW(parse_tree("3\n0"), ParseError);
  EXPECT_THROW(parse_tree("3\n0 0 0"), ParseError);
  EXPECT_THROW(parse_tree("3\n0 -1"), ParseError);
  EXPECT_EQ(parse_tree("1\n").size(), 1);
}

TEST(Parse, RoundTripsRandomTrees) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const RootedTree t = oracle::random_small_tree(rng, 1 + i % 30);
    EXPECT_EQ(parse_tree(serialize_tree(t)), t);
  }
}

TEST(Stats, CompleteMaryTwoTwo) {
  const TreeStats s = tree_stats(build_family({Family::CompleteMary, 2, 2}));
  EXPECT_EQ(s.delta, 3);
  EXPECT_EQ(s.delta2, 5);
  EXPECT_EQ(s.diam, 4);
}

TEST(Stats, PathOnFour) {
  const TreeStats s = tree_stats(make_path(4));
  EXPECT_EQ(s.delta, 2);
  EXPECT_EQ(s.delta2, 4);
  EXPECT_EQ(s.diam, 3);
}

TEST(Stats, RegularThreeTwo) {
  const TreeStats s = tree_stats(build_family({Family::RegularSubtree, 3, 2}));
  EXPECT_EQ(s.delta, 4);
  EXPECT_EQ(s.delta2, 8);
  EXPECT_EQ(s.diam, 4);
}

TEST(Stats, MatchesBruteForceOnAllSmallTrees) {
  for (int n = 1; n <= 7; ++n)
    oracle::for_each_tree(n, [](const RootedTree &t) {
      const TreeStats a = tree_stats(t), b = brute_stats(t);
      EXPECT_EQ(a.n, b.n);
      EXPECT_EQ(a.delta, b.delta);
      EXPECT_EQ(a.delta2, b.delta2);
      EXPECT_EQ(a.diam, b.diam);
    });
}

TEST(Dist3, PathFromEnd) {
  const auto nb = dist3_neighborhood(make_path(4), 0);
  ASSERT_EQ(nb.size(), 3u);
  EXPECT_EQ(nb[0], (Neighbour{1, 1}));
  EXPECT_EQ(nb[1], (Neighbour{2, 2}));
  EXPECT_EQ(nb[2], (Neighbour{3, 3}));
}

TEST(Dist3, StarCentre) {
  for (const auto &[v, d] : dist3_neighborhood(make_star(5), 0))
    EXPECT_EQ(d, 1) << v;
  EXPECT_EQ(dist3_neighborhood(make_star(5), 0).size(), 5u);
}

TEST(Dist3, CompleteMaryRoot) {
  int count[4] = {0, 0, 0, 0};
  for (const auto &[v, d] : dist3_neighborhood(build_family({Family::CompleteMary, 2, 2}), 0))
    ++count[d];
  EXPECT_EQ(count[1], 2);
  EXPECT_EQ(count[2], 4);
  EXPECT_EQ(count[3], 0);
}

TEST(Dist3, MatchesFloydAndIsSymmetric) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const RootedTree t = oracle::random_small_tree(rng, 2 + i % 15);
    const auto d = oracle::distances(t);
    for (int u = 0; u < t.size(); ++u) {
      std::set<std::pair<int, int>> got;
      for (const auto &[v, dist] : dist3_neighborhood(t, u))
        got.insert({v, dist});
      std::set<std::pair<int, int>> want;
      for (int v = 0; v < t.size(); ++v)
        if (v != u && d[u][v] <= 3)
          want.insert({v, d[u][v]});
      EXPECT_EQ(got, want);
      for (const auto &[v, dist] : dist3_neighborhood(t, u)) {
        bool back = false;
        for (const auto &[w, d2] : dist3_neighborhood(t, v))
          back = back || (w == u && d2 == dist);
        EXPECT_TRUE(back);
      }
    }
  }
}

TEST(Dense, CompleteMaryTwoFour) {
  const RootedTree t = build_family({Family::CompleteMary, 2, 4});
  EXPECT_TRUE(has_dense_depth2_subtree(t, DenseVariant::Complete));
  EXPECT_TRUE(has_dense_depth2_subtree(t, DenseVariant::Regular));
}

TEST(Dense, CompleteMaryTwoTwo) {
  const RootedTree t = build_family({Family::CompleteMary, 2, 2});
  EXPECT_TRUE(has_dense_depth2_subtree(t, DenseVariant::Complete));
  EXPECT_FALSE(has_dense_depth2_subtree(t, DenseVariant::Regular));
}

TEST(Dense, RegularTwoTwo) {
  EXPECT_TRUE(has_dense_depth2_subtree(build_family({Family::RegularSubtree, 2, 2}),
                                       DenseVariant::Regular));
}

TEST(Dense, RequiresMaxDegreeThree) {
  EXPECT_THROW(has_dense_depth2_subtree(make_path(5), DenseVariant::Complete),
               std::invalid_argument);
}

TEST(Dense, MatchesEmbeddingSearch) {
  auto check = [](const RootedTree &t) {
    const int delta = tree_stats(t).delta;
    if (delta < 3)
      return;
    const RootedTree complete = build_family({Family::CompleteMary, delta - 1, 2});
    const RootedTree regular = build_family({Family::RegularSubtree, delta - 1, 2});
    EXPECT_EQ(has_dense_depth2_subtree(t, DenseVariant::Complete), oracle::embeds(complete, t))
        << serialize_tree(t);
    EXPECT_EQ(has_dense_depth2_subtree(t, DenseVariant::Regular), oracle::embeds(regular, t))
        << serialize_tree(t);
  };
  for (int n = 4; n <= 9; ++n)
    oracle::for_each_tree(n, check);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i)
    check(random_tree(10 + i % 3, 3 + i % 2, rng));
}

TEST(Reroot, PreservesEdgesAndOrder) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const RootedTree t = oracle::random_small_tree(rng, 1 + i % 20);
    const int r = static_cast<int>(rng() % t.size());
    const Rerooted rr = reroot(t, r);
    EXPECT_EQ(rr.original[0], r);
    EXPECT_TRUE(edges_match(t, rr.tree, rr.original));
    for (int v = 1; v < rr.tree.size(); ++v)
      EXPECT_LE(rr.tree.level(v - 1), rr.tree.level(v));
  }
  EXPECT_THROW(reroot(make_path(3), 3), std::out_of_range);
}

TEST(DetectFamily, RecognisesGeneratorLayout) {
  auto d = detect_depth2_family(build_family({Family::RegularSubtree, 3, 2}));
  ASSERT_TRUE(d);
  EXPECT_EQ(d->family, Family::RegularSubtree);
  EXPECT_EQ(d->m, 3);
  d = detect_depth2_family(build_family({Family::CompleteMary, 2, 2}));
  ASSERT_TRUE(d);
  EXPECT_EQ(d->family, Family::CompleteMary);
  EXPECT_FALSE(detect_depth2_family(build_family({Family::CompleteMary, 2, 3})));
  EXPECT_FALSE(detect_depth2_family(make_path(7)));
}

TEST(RandomTree, DeterministicAndDegreeBounded) {
  std::mt19937_64 a(42), b(42);
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + i % 25, deg = 2 + i % 4;
    const RootedTree x = random_tree(n, deg, a), y = random_tree(n, deg, b);
    EXPECT_EQ(x, y);
    EXPECT_EQ(x.size(), n);
    EXPECT_LE(tree_stats(x).delta, deg);
  }
}
