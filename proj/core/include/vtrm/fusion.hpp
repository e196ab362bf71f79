#pragma once

#include <vector>

#include "vtrm/types.hpp"

namespace vtrm {

/// Rankings and query-gallery matrices of K models over one label set.
struct FusionInput {
  std::vector<RetrievalResult> results;
  std::vector<DistanceMatrix> matrices;

  /// Throws Error("bad-config") for K == 0 or a results/matrices count
  /// mismatch, Error("label-mismatch") when models disagree on labels or order.
  void validate() const;
};

struct FusionOptions {
  /// Rescale each model's query row to [0, 1] before tie-breaking so models
  /// with different distance scales compare fairly. Off by default.
  bool normalize_rows = false;
};

/// Positionwise vote fusion.
///
/// At each output position every model nominates its highest-ranked item not
/// yet emitted; the most-nominated item wins. A vote tie goes to the candidate
/// closest to the query, scored by its nominating model's matrix (the minimum
/// over models when several nominate it), then to the lowest gallery position.
RetrievalResult fuse(const FusionInput& input, const FusionOptions& options = {},
                     std::size_t threads = 1);

}  // namespace vtrm
