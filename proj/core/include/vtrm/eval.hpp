#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vtrm/types.hpp"

namespace vtrm {

struct EvalReport {
  double map_score = 0.0;
  /// cmc[r]: fraction of queries with a relevant item within the top r+1.
  std::vector<double> cmc;
  std::vector<double> per_query_ap;
  /// Set when every same-identity gallery item carries a frame index.
  std::optional<double> order_consistency;
  /// Kendall tau between retrieved and true frame order; auxiliary.
  std::optional<double> kendall_tau;
};

/// Average precision of one ranking given a relevance mask indexed by gallery
/// position. Throws Error("no-relevant") if nothing is relevant.
double average_precision(std::span<const std::size_t> ranking,
                         const std::vector<char>& relevant);

/// Full-depth mAP and CMC; a gallery item is relevant when it shares the
/// query's identity. Throws Error("no-relevant") for a query without any.
EvalReport mean_average_precision(const RetrievalResult& result,
                                  const GroundTruth& truth);

/// Fraction of same-identity positions whose item is the one the true frame
/// order puts there, averaged over queries. Throws Error("missing-frame").
double order_consistency(const RetrievalResult& result, const GroundTruth& truth);

/// Mean Kendall tau between retrieved and true frame order of same-identity
/// items. Throws Error("missing-frame").
double kendall_tau(const RetrievalResult& result, const GroundTruth& truth);

/// mAP and CMC, plus order metrics whenever frames are available.
EvalReport evaluate(const RetrievalResult& result, const GroundTruth& truth);

/// Human-readable summary.
std::string format_report_text(const EvalReport& report);
/// One `key=value` per line: map, order_consistency, kendall_tau, cmc@R,
/// ap.<query_id>. Numbers use 6 decimals.
std::string format_report_kv(const EvalReport& report,
                             const std::vector<ItemId>& query_ids);

}  // namespace vtrm
