#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "vtrm/fusion.hpp"

namespace vtrm {
namespace {

using testing::make_ids;
using testing::qg_matrix;

RetrievalResult result_of(std::vector<oracle::Ranking> rankings) {
  const std::size_t n = rankings.empty() ? 0 : rankings[0].size();
  return {make_ids("q", rankings.size()), make_ids("g", n), std::move(rankings)};
}

FusionInput input_of(const std::vector<std::vector<oracle::Ranking>>& lists,
                     const std::vector<oracle::Matrix>& mats) {
  FusionInput in;
  for (const auto& l : lists) in.results.push_back(result_of(l));
  for (const auto& m : mats) in.matrices.push_back(qg_matrix(m));
  return in;
}

TEST(FusionTest, MajorityVoteHandTrace) {
  const oracle::Matrix flat = {{0.5, 0.5, 0.5}};
  const auto fused = fuse(input_of({{{0, 1, 2}}, {{0, 2, 1}}, {{1, 0, 2}}}, {flat, flat, flat}));
  EXPECT_EQ(fused.rankings[0], (std::vector<std::size_t>{0, 1, 2}));
}

TEST(FusionTest, SingleModelPassesThrough) {
  const auto fused = fuse(input_of({{{2, 0, 3, 1}}}, {{{0.1, 0.2, 0.3, 0.4}}}));
  EXPECT_EQ(fused.rankings[0], (std::vector<std::size_t>{2, 0, 3, 1}));
}

TEST(FusionTest, TieGoesToNearestUnderNominatingModel) {
  const auto fused = fuse(input_of({{{0, 1}}, {{1, 0}}}, {{{0.2, 0.9}}, {{0.5, 0.3}}}));
  EXPECT_EQ(fused.rankings[0], (std::vector<std::size_t>{0, 1}));

  // Swap scales so candidate 1 is now closer under its nominator.
  const auto swapped = fuse(input_of({{{0, 1}}, {{1, 0}}}, {{{0.4, 0.9}}, {{0.5, 0.3}}}));
  EXPECT_EQ(swapped.rankings[0], (std::vector<std::size_t>{1, 0}));
}

TEST(FusionTest, ResidualTieGoesToLowestPosition) {
  const auto fused = fuse(input_of({{{2, 1, 0}}, {{1, 2, 0}}}, {{{0.3, 0.3, 0.3}}, {{0.3, 0.3, 0.3}}}));
  EXPECT_EQ(fused.rankings[0], (std::vector<std::size_t>{1, 2, 0}));
}

TEST(FusionTest, NormalizationRescalesRowsBeforeTieBreak) {
  // Raw: candidate 0 scores 5 under model 1, candidate 1 scores 9 under model
  // 2, so 0 wins. Min-max per row: 0 -> 5/10 = 0.5, 1 -> 9/90 = 0.1, so 1 wins.
  const auto in = input_of({{{0, 1, 2}}, {{1, 0, 2}}}, {{{5, 0, 10}}, {{0, 9, 90}}});
  EXPECT_EQ(fuse(in).rankings[0][0], 0u);
  EXPECT_EQ(fuse(in, {true}).rankings[0][0], 1u);
}

TEST(FusionTest, Errors) {
  try {
    fuse(FusionInput{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "bad-config");
  }

  auto in = input_of({{{0, 1}}, {{1, 0}}}, {{{0.2, 0.9}}, {{0.5, 0.3}}});
  in.results[1].gallery_ids = make_ids("h", 2);
  try {
    fuse(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "label-mismatch");
  }

  auto short_in = input_of({{{0, 1}}, {{1, 0}}}, {{{0.2, 0.9}}});
  EXPECT_THROW(fuse(short_in), Error);
}

TEST(FusionProperties, MatchesAlgorithmTwoOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 1 + trial % 4;
    const std::size_t m = 1 + trial % 3;
    const std::size_t n = 1 + (trial / 4) % 8;
    std::vector<std::vector<oracle::Ranking>> lists;
    std::vector<oracle::Matrix> mats;
    for (std::size_t l = 0; l < k; ++l) {
      lists.push_back(testing::random_rankings(rng, m, n));
      mats.push_back(testing::random_matrix(rng, m, n));
    }
    const auto fused = fuse(input_of(lists, mats));
    EXPECT_EQ(fused.rankings, oracle::algorithm2(lists, mats)) << "trial " << trial;
    fused.validate();
  }
}

TEST(FusionProperties, UnanimityAndMajority) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto list = testing::random_rankings(rng, 2, n);
    const auto mat = testing::random_matrix(rng, 2, n);
    const auto fused = fuse(input_of({list, list, list}, {mat, mat, mat}));
    EXPECT_EQ(fused.rankings, list);

    // Two of three models agree; the third's nominee never wins a position
    // where the pair nominates a common item.
    const auto other = testing::random_rankings(rng, 2, n);
    const auto majority = fuse(input_of({list, other, list}, {mat, mat, mat}));
    EXPECT_EQ(majority.rankings, list);
  }
}

}  // namespace
}  // namespace vtrm
