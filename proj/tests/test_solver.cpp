#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "treelabel/solver.hpp"

using namespace treelabel;

namespace {

void expect_witness(const RootedTree &t, const OracleResult &r, const SeparationParams &sp) {
  ASSERT_TRUE(r.value);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->ell, *r.value);
  EXPECT_TRUE(is_valid(t, *r.witness, sp));
}

} // namespace

TEST(ExactLambda, Examples) {
  const RootedTree t = build_family({Family::CompleteMary, 2, 2});
  const OracleResult r = exact_lambda(t, 2, 1, 1);
  EXPECT_EQ(*r.value, 5);
  EXPECT_TRUE(r.minimality_searched);
  expect_witness(t, r, {2, 1, 1});
  EXPECT_EQ(*exact_lambda(make_path(4), 2, 1, 1).value, 3);
  EXPECT_EQ(*exact_lambda(make_star(3), 2, 1, 1).value, 4);
}

TEST(ExactSigma, Examples) {
  const RootedTree t = build_family({Family::CompleteMary, 2, 2});
  EXPECT_EQ(*exact_sigma(t, 2, 1, 1).value, 6);
  EXPECT_EQ(*exact_sigma(build_family({Family::RegularSubtree, 2, 2}), 1, 1, 1).value, 6);
  const OracleResult r = exact_sigma(t, 4, 2, 2);
  EXPECT_EQ(*r.value, 12);
  expect_witness(t, r, {4, 2, 2});
  EXPECT_EQ(r.witness->mode, Mode::Cyclic);
}

TEST(Feasibility, Examples) {
  EXPECT_EQ(feasibility(make_path(4), {2, 1, 1}, Mode::Linear, 2).status, Feasibility::Infeasible);
  const FeasibilityResult ok = feasibility(make_path(4), {2, 1, 1}, Mode::Linear, 3);
  ASSERT_EQ(ok.status, Feasibility::Feasible);
  EXPECT_TRUE(is_valid(make_path(4), *ok.witness, {2, 1, 1}));
  EXPECT_EQ(feasibility(build_family({Family::CompleteMary, 2, 2}), {2, 1, 1}, Mode::Cyclic, 5)
                .status,
            Feasibility::Infeasible);
  EXPECT_THROW(feasibility(make_path(4), {2, 1, 1}, Mode::Cyclic, 0), std::invalid_argument);
}

TEST(ExactValue, SingleVertexAndZeroSeparation) {
  EXPECT_EQ(*exact_lambda(RootedTree(), 3, 1, 1).value, 0);
  EXPECT_EQ(*exact_sigma(RootedTree(), 3, 1, 1).value, 1);
  EXPECT_EQ(*exact_lambda(make_path(5), 0, 0, 0).value, 0);
}

TEST(ExactValue, MatchesBruteForceOnSmallTrees) {
  std::mt19937_64 rng(53);
  const SeparationParams params[] = {{1, 1, 1}, {2, 1, 1}, {3, 1, 1}, {2, 2, 1},
                                     {3, 2, 1}, {1, 2, 1}, {2, 1, 0}, {4, 2, 2}};
  for (int i = 0; i < 120; ++i) {
    const RootedTree t = oracle::random_small_tree(rng, 2 + i % 6);
    const SeparationParams sp = params[i % std::size(params)];
    for (Mode mode : {Mode::Linear, Mode::Cyclic}) {
      const bool cyclic = mode == Mode::Cyclic;
      const OracleResult r = detail::exact_value(t, sp, mode, {});
      ASSERT_TRUE(r.value) << serialize_tree(t);
      EXPECT_EQ(*r.value, oracle::brute_min_span(t, sp.h1, sp.h2, sp.h3, cyclic))
          << serialize_tree(t) << " " << sp.h1 << sp.h2 << sp.h3 << " " << to_string(mode);
      expect_witness(t, r, sp);
      EXPECT_TRUE(r.minimality_searched);
    }
  }
}

TEST(ExactValue, LowerBoundIsSound) {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 150; ++i) {
    const RootedTree t = oracle::random_small_tree(rng, 2 + i % 6);
    const SeparationParams sp{1 + i % 4, 1 + i % 2, i % 3 == 0 ? 0 : 1};
    for (Mode mode : {Mode::Linear, Mode::Cyclic})
      EXPECT_LE(detail::generic_lower_bound(t, sp, mode),
                oracle::brute_min_span(t, sp.h1, sp.h2, sp.h3, mode == Mode::Cyclic))
          << serialize_tree(t);
  }
}

TEST(ExactValue, UnsoundStartIsDetected) {
  SolverConfig cfg;
  cfg.start_lower = 4;
  EXPECT_THROW(exact_lambda(make_path(4), 1, 1, 1, cfg), std::logic_error);
}

TEST(ExactValue, BudgetExhaustion) {
  SolverConfig cfg;
  cfg.node_budget = 1;
  const OracleResult r = exact_lambda(build_family({Family::CompleteMary, 3, 3}), 3, 1, 1, cfg);
  EXPECT_TRUE(r.budget_hit);
  EXPECT_FALSE(r.value);
  EXPECT_FALSE(r.witness);
  EXPECT_GE(r.lower, detail::generic_lower_bound(build_family({Family::CompleteMary, 3, 3}),
                                                 {3, 1, 1}, Mode::Linear));
  EXPECT_THROW(exact_lambda(make_path(3), 1, 1, 1, SolverConfig{0}), std::invalid_argument);
}

TEST(ExactValue, Deterministic) {
  const RootedTree t = build_family({Family::RegularSubtree, 2, 3});
  const OracleResult a = exact_sigma(t, 2, 1, 1), b = exact_sigma(t, 2, 1, 1);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.nodes_explored, b.nodes_explored);
  EXPECT_EQ(a.witness, b.witness);
}

TEST(ExactValue, FamilyValues) {
  // T_{3,3} with h = 4, p = 2 and T^_{2,3} with h = 3, p = 1.
  EXPECT_EQ(*exact_lambda(build_family({Family::CompleteMary, 3, 3}), 4, 2, 2).value, 14);
  EXPECT_EQ(*exact_lambda(build_family({Family::RegularSubtree, 2, 3}), 3, 1, 1).value, 7);
}
