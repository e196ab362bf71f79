#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "test_support.hpp"
#include "vtrm/types.hpp"

namespace vtrm {
namespace {

using testing::make_ids;

TEST(ItemIdTest, RejectsEmptyAndWhitespace) {
  EXPECT_NO_THROW(ItemId("p0001_f003"));
  EXPECT_THROW(ItemId(""), Error);
  EXPECT_THROW(ItemId("a b"), Error);
  EXPECT_THROW(ItemId("tab\tid"), Error);
}

TEST(EmbeddingSetTest, ValidatesShapeIdsAndValues) {
  EXPECT_NO_THROW(EmbeddingSet(make_ids("x", 2), {1, 2, 3, 4}, 2));
  EXPECT_THROW(EmbeddingSet(make_ids("x", 2), {1, 2, 3}, 2), Error);
  EXPECT_THROW(EmbeddingSet({ItemId("a"), ItemId("a")}, {1, 2}, 1), Error);
  EXPECT_THROW(EmbeddingSet(make_ids("x", 1), {std::nan("")}, 1), Error);
  EXPECT_THROW(EmbeddingSet(make_ids("x", 1), {1.0}, 0), Error);
}

TEST(DistanceMatrixTest, RejectsNegativeNonFiniteAndBadShape) {
  const auto r = make_ids("q", 1);
  const auto c = make_ids("g", 2);
  EXPECT_NO_THROW(DistanceMatrix(r, c, {0.5, 0.0}));
  EXPECT_THROW(DistanceMatrix(r, c, {0.5}), Error);
  EXPECT_THROW(DistanceMatrix(r, c, {0.5, -0.1}), Error);
  EXPECT_THROW(DistanceMatrix(r, c, {0.5, std::numeric_limits<double>::infinity()}), Error);
}

TEST(DistanceMatrixTest, ForcesZeroDiagonalOnlyForSelfMatrices) {
  const auto g = make_ids("g", 2);
  const DistanceMatrix self(g, g, {0.3, 1.0, 1.0, 0.7});
  EXPECT_EQ(self(0, 0), 0.0);
  EXPECT_EQ(self(1, 1), 0.0);
  EXPECT_EQ(self(0, 1), 1.0);

  const DistanceMatrix cross(make_ids("q", 2), g, {0.3, 1.0, 1.0, 0.7});
  EXPECT_EQ(cross(0, 0), 0.3);
}

TEST(GroundTruthTest, RejectsRepeatedFrameWithinIdentity) {
  EXPECT_NO_THROW(GroundTruth({{"a", "p1"}, {"b", "p2"}}, {{"a", 1}, {"b", 1}}));
  EXPECT_THROW(GroundTruth({{"a", "p1"}, {"b", "p1"}}, {{"a", 1}, {"b", 1}}), Error);
  EXPECT_THROW(GroundTruth({{"a", "p1"}}, {{"zz", 1}}), Error);
}

TEST(RetrievalResultTest, PermutationCheck) {
  EXPECT_TRUE(is_permutation_of_range(std::vector<std::size_t>{2, 0, 1}, 3));
  EXPECT_FALSE(is_permutation_of_range(std::vector<std::size_t>{0, 0, 1}, 3));
  EXPECT_FALSE(is_permutation_of_range(std::vector<std::size_t>{0, 1}, 3));
  EXPECT_FALSE(is_permutation_of_range(std::vector<std::size_t>{0, 1, 3}, 3));

  RetrievalResult bad{make_ids("q", 1), make_ids("g", 2), {{1, 1}}};
  try {
    bad.validate();
    FAIL() << "expected not-permutation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "not-permutation");
  }
}

}  // namespace
}  // namespace vtrm
