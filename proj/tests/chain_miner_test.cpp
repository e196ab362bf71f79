#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "vtrm/chain_miner.hpp"

namespace vtrm {
namespace {

using testing::gg_matrix;
using testing::qg_matrix;
using testing::random_matrix;

const oracle::Matrix kGallery = {{0, 0.4, 0.3}, {0.4, 0, 0.2}, {0.3, 0.2, 0}};

std::vector<std::size_t> first_ranking(const RetrievalResult& r) { return r.rankings.at(0); }

TEST(ChainMinerTest, LocalOneFollowsTheChain) {
  const auto r = mine_chains(qg_matrix({{0.5, 0.1, 0.9}}), gg_matrix(kGallery),
                             ChainConfig::local(1));
  EXPECT_EQ(first_ranking(r), (std::vector<std::size_t>{1, 2, 0}));
  EXPECT_EQ(first_ranking(direct_ranking(qg_matrix({{0.5, 0.1, 0.9}}))),
            (std::vector<std::size_t>{1, 0, 2}));
}

TEST(ChainMinerTest, SingleGalleryItem) {
  const auto r = mine_chains(qg_matrix({{0.7}}), gg_matrix({{0}}), ChainConfig::local(1));
  EXPECT_EQ(first_ranking(r), (std::vector<std::size_t>{0}));
}

TEST(ChainMinerTest, QueryReferenceChangesSecondPick) {
  const auto qg = qg_matrix({{0.15, 0.1, 0.9}});
  const auto gg = gg_matrix(kGallery);
  EXPECT_EQ(first_ranking(mine_chains(qg, gg, ChainConfig::local(1))),
            (std::vector<std::size_t>{1, 2, 0}));
  EXPECT_EQ(first_ranking(mine_chains(qg, gg, ChainConfig::local(1, true))),
            (std::vector<std::size_t>{1, 0, 2}));
}

TEST(ChainMinerTest, DirectRankingSortsWithPositionTieBreak) {
  EXPECT_EQ(first_ranking(direct_ranking(qg_matrix({{0.3, 0.3}}))),
            (std::vector<std::size_t>{0, 1}));
  const auto r = direct_ranking(qg_matrix({{0.2, 0.8}, {0.9, 0.1}}));
  EXPECT_EQ(r.rankings[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.rankings[1], (std::vector<std::size_t>{1, 0}));
}

TEST(ChainMinerTest, Errors) {
  const auto qg = qg_matrix({{0.5, 0.1, 0.9}});
  try {
    mine_chains(qg, gg_matrix(kGallery), ChainConfig::local(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "bad-config");
    EXPECT_STREQ(e.what(), "window must be >= 1");
  }
  try {
    mine_chains(qg, gg_matrix({{0, 1}, {1, 0}}), ChainConfig::local(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "shape");
  }
  // Same shape, different labels.
  const DistanceMatrix relabelled(testing::make_ids("h", 3), testing::make_ids("h", 3),
                                  std::vector<double>(9, 0.5));
  EXPECT_THROW(mine_chains(qg, relabelled, ChainConfig::local(1)), Error);

  const DistanceMatrix empty_qg(testing::make_ids("q", 1), {}, {});
  const DistanceMatrix empty_gg({}, {}, {});
  try {
    mine_chains(empty_qg, empty_gg, ChainConfig::local(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "empty-gallery");
  }
}

TEST(ChainMinerTest, AllEqualDistancesGiveIdentityOrder) {
  const std::size_t n = 6;
  const auto qg = qg_matrix(oracle::Matrix(2, std::vector<double>(n, 0.5)));
  const auto gg = gg_matrix(oracle::Matrix(n, std::vector<double>(n, 0.5)));
  for (const auto& cfg : {ChainConfig::local(1), ChainConfig::local(3, true),
                          ChainConfig::global(), ChainConfig::local(2, false, WindowAggregation::kMean)}) {
    const auto r = mine_chains(qg, gg, cfg);
    for (const auto& ranking : r.rankings) {
      EXPECT_EQ(ranking, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5})) << to_string(cfg);
    }
  }
}

std::vector<ChainConfig> all_configs(std::size_t n) {
  std::vector<ChainConfig> out;
  for (auto agg : {WindowAggregation::kMin, WindowAggregation::kMean}) {
    for (std::size_t w : {std::size_t{1}, std::size_t{2}, std::size_t{3}, n + 1}) {
      out.push_back(ChainConfig::local(w, false, agg));
      out.push_back(ChainConfig::local(w, true, agg));
    }
    out.push_back(ChainConfig::global(agg));
  }
  return out;
}

TEST(ChainMinerProperties, MatchesBruteForceWindowOracleForEveryVariant) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 1 + trial % 3;
    const std::size_t n = 1 + trial % 9;
    const auto qg_rows = random_matrix(rng, m, n);
    const auto gg_rows = random_matrix(rng, n, n, true);
    const auto qg = qg_matrix(qg_rows);
    const auto gg = gg_matrix(gg_rows);
    for (const auto& cfg : all_configs(n)) {
      const bool global = cfg.variant == ChainVariant::kGlobal;
      const auto expected = oracle::windowed_chain(
          qg_rows, gg_rows, global ? 0 : cfg.window, global || cfg.with_ref,
          cfg.aggregation == WindowAggregation::kMean);
      const auto got = mine_chains(qg, gg, cfg);
      EXPECT_EQ(got.rankings, expected) << to_string(cfg) << " trial " << trial;
      got.validate();
    }
  }
}

TEST(ChainMinerProperties, LocalOneIsAlgorithmOne) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = 1 + trial % 4;
    const std::size_t n = 1 + (trial / 4) % 8;
    const auto qg_rows = random_matrix(rng, m, n);
    const auto gg_rows = random_matrix(rng, n, n, true);
    EXPECT_EQ(mine_chains(qg_matrix(qg_rows), gg_matrix(gg_rows), ChainConfig::local(1)).rankings,
              oracle::algorithm1(qg_rows, gg_rows));
  }
}

TEST(ChainMinerProperties, FirstPickAgreesWithDirectRanking) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto qg = qg_matrix(random_matrix(rng, 3, n));
    const auto gg = gg_matrix(random_matrix(rng, n, n, true));
    const auto direct = direct_ranking(qg);
    for (const auto& cfg : all_configs(n)) {
      const auto chains = mine_chains(qg, gg, cfg);
      for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(chains.rankings[i][0], direct.rankings[i][0]);
      }
    }
  }
}

TEST(ChainMinerProperties, WideLocalWindowWithRefEqualsGlobal) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto qg = qg_matrix(random_matrix(rng, 2, n));
    const auto gg = gg_matrix(random_matrix(rng, n, n, true));
    EXPECT_EQ(mine_chains(qg, gg, ChainConfig::local(n + trial % 3, true)).rankings,
              mine_chains(qg, gg, ChainConfig::global()).rankings);
  }
}

TEST(ChainMinerProperties, MinAggregationIsInvariantUnderMonotoneTransforms) {
  std::mt19937_64 rng(4);
  auto transform = [](oracle::Matrix rows) {
    for (auto& r : rows) {
      for (double& v : r) v = std::exp(3.0 * v) - 1.0 + v * v;
    }
    return rows;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto qg_rows = random_matrix(rng, 2, n);
    const auto gg_rows = random_matrix(rng, n, n, true);
    const auto qg = qg_matrix(qg_rows);
    const auto gg = gg_matrix(gg_rows);
    const auto qg2 = qg_matrix(transform(qg_rows));
    const auto gg2 = gg_matrix(transform(gg_rows));
    for (const auto& cfg : all_configs(n)) {
      if (cfg.aggregation != WindowAggregation::kMin) continue;
      EXPECT_EQ(mine_chains(qg, gg, cfg).rankings, mine_chains(qg2, gg2, cfg).rankings);
    }
  }
}

TEST(ChainMinerProperties, ThreadCountDoesNotChangeOutput) {
  std::mt19937_64 rng(5);
  const auto qg = qg_matrix(random_matrix(rng, 17, 30));
  const auto gg = gg_matrix(random_matrix(rng, 30, 30, true));
  const auto serial = mine_chains(qg, gg, ChainConfig::local(2, true));
  EXPECT_EQ(mine_chains(qg, gg, ChainConfig::local(2, true), 4).rankings, serial.rankings);
  EXPECT_EQ(mine_chains(qg, gg, ChainConfig::local(2, true), 0).rankings, serial.rankings);
}

TEST(ChainConfigTest, ParsingAndNames) {
  EXPECT_EQ(parse_chain_variant("global"), ChainVariant::kGlobal);
  EXPECT_EQ(parse_aggregation("mean"), WindowAggregation::kMean);
  EXPECT_THROW(parse_chain_variant("sideways"), Error);
  EXPECT_EQ(to_string(ChainConfig::local(2, true)), "Local-2 w.ref(min)");
  EXPECT_EQ(to_string(ChainConfig::global()), "Global(min)");
}

}  // namespace
}  // namespace vtrm
