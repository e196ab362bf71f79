#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "vtrm/types.hpp"

namespace vtrm {

enum class ChainVariant { kLocal, kGlobal };
enum class WindowAggregation { kMin, kMean };

/// Selects how the next item of a chain is scored.
///
/// Local-N: score a candidate against the last N retrieved items (plus the
/// query when `with_ref`). Global: against the query and every retrieved item;
/// `window` and `with_ref` are ignored. Ties go to the lowest gallery position.
struct ChainConfig {
  ChainVariant variant = ChainVariant::kLocal;
  std::size_t window = 1;
  bool with_ref = false;
  WindowAggregation aggregation = WindowAggregation::kMin;

  /// Throws Error("bad-config") if window < 1 for a local variant.
  void validate() const;

  static ChainConfig local(std::size_t window, bool with_ref = false,
                           WindowAggregation agg = WindowAggregation::kMin) {
    return {ChainVariant::kLocal, window, with_ref, agg};
  }
  static ChainConfig global(WindowAggregation agg = WindowAggregation::kMin) {
    return {ChainVariant::kGlobal, 1, true, agg};
  }
};

ChainVariant parse_chain_variant(std::string_view name);
WindowAggregation parse_aggregation(std::string_view name);
std::string to_string(const ChainConfig& cfg);

/// Iterative nearest-neighbour chain retrieval.
///
/// The first item of each chain is the gallery item nearest to the query in
/// `qg`; every following item is the remaining candidate nearest to the current
/// window under `gg`. Retrieved items leave the candidate pool, so each ranking
/// is a full permutation of the gallery. Queries are processed independently
/// on up to `threads` workers (0 = all cores).
///
/// Throws Error("shape") when gg is not the n x n gallery matrix whose labels
/// match qg's columns, and Error("empty-gallery") when n == 0.
RetrievalResult mine_chains(const DistanceMatrix& qg, const DistanceMatrix& gg,
                            const ChainConfig& cfg, std::size_t threads = 1);

/// Plain per-query ascending sort of qg rows, ties to the lowest position.
RetrievalResult direct_ranking(const DistanceMatrix& qg);

}  // namespace vtrm
