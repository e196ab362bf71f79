#pragma once

#include <cstddef>

#include "vtrm/types.hpp"

namespace vtrm {

struct RerankParams {
  std::size_t k1 = 20;
  std::size_t k2 = 6;
  double lambda = 0.3;

  /// Throws Error("bad-config") unless 1 <= k2 <= k1 and lambda in [0, 1].
  void validate() const;
};

/// k-reciprocal re-ranking of a query-gallery matrix.
///
/// Queries and gallery are stitched into one item set P with the full
/// distance matrix [qq qg; qg^T gg]. For each item p:
///   N(p,k)  self-inclusive k nearest neighbours, extended to every item tied
///           with the k-th one;
///   R(p,k)  members x of N(p,k) with p in N(x,k);
///   R*(p)   R(p,k1) united with each R(x, k1/2), x in R(p,k1), that shares at
///           least two thirds of its members with R(p,k1);
///   V_p     exp(-d(p,x)) on R*(p), L1-normalised, then averaged over N(p,k2).
/// The output is (1-lambda) * Jaccard(V_q, V_g) + lambda * d(q,g), labelled
/// like qg.
///
/// Throws Error("shape") for inconsistent inputs and Error("bad-config") when
/// k1 >= |P|.
DistanceMatrix k_reciprocal_rerank(const DistanceMatrix& qg,
                                   const DistanceMatrix& qq,
                                   const DistanceMatrix& gg,
                                   const RerankParams& params = {},
                                   std::size_t threads = 1);

/// Same transform with P = gallery only; returns the re-ranked n x n gallery
/// matrix for use as the chain miner's gallery-gallery input.
DistanceMatrix k_reciprocal_rerank_gallery(const DistanceMatrix& gg,
                                           const RerankParams& params = {},
                                           std::size_t threads = 1);

}  // namespace vtrm
