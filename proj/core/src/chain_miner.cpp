#include "vtrm/chain_miner.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "vtrm/parallel.hpp"

namespace vtrm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_inputs(const DistanceMatrix& qg, const DistanceMatrix& gg) {
  if (qg.cols() == 0) throw Error("empty-gallery", "gallery is empty");
  if (gg.rows() != qg.cols() || gg.cols() != qg.cols()) {
    throw Error("shape", "gallery matrix is " + std::to_string(gg.rows()) +
                             "x" + std::to_string(gg.cols()) +
                             ", expected " + std::to_string(qg.cols()) + "x" +
                             std::to_string(qg.cols()));
  }
  if (gg.row_ids() != qg.col_ids() || gg.col_ids() != qg.col_ids()) {
    throw Error("shape", "gallery matrix labels do not match qg columns");
  }
}

/// Index of the smallest score among remaining candidates; strict `<` while
/// scanning positions upwards gives lowest-position tie-breaking.
std::size_t argmin_remaining(std::span<const double> score,
                             const std::vector<char>& remaining) {
  std::size_t best = score.size();
  double best_score = kInf;
  for (std::size_t c = 0; c < score.size(); ++c) {
    if (!remaining[c]) continue;
    if (best == score.size() || score[c] < best_score) {
      best = c;
      best_score = score[c];
    }
  }
  return best;
}

std::vector<std::size_t> mine_one(const DistanceMatrix& qg,
                                  const DistanceMatrix& gg, std::size_t query,
                                  const ChainConfig& cfg) {
  const std::size_t n = qg.cols();
  const auto query_row = qg.row(query);
  const bool global = cfg.variant == ChainVariant::kGlobal;
  const bool use_ref = global || cfg.with_ref;
  const bool use_min = cfg.aggregation == WindowAggregation::kMin;

  std::vector<char> remaining(n, 1);
  std::vector<std::size_t> chain;
  chain.reserve(n);

  chain.push_back(argmin_remaining(query_row, remaining));
  remaining[chain.back()] = 0;

  // Global keeps running accumulators over the ever-growing window; Local
  // recomputes from the trailing window each step.
  std::vector<double> acc(n);
  double members = 0.0;
  if (global) {
    for (std::size_t c = 0; c < n; ++c) {
      acc[c] = use_min ? std::min(query_row[c], gg(chain[0], c))
                       : query_row[c] + gg(chain[0], c);
    }
    members = 2.0;
  }

  std::vector<double> score(n, kInf);
  while (chain.size() < n) {
    if (global) {
      for (std::size_t c = 0; c < n; ++c) {
        if (remaining[c]) score[c] = use_min ? acc[c] : acc[c] / members;
      }
    } else {
      const std::size_t width = std::min(cfg.window, chain.size());
      const auto first = chain.end() - static_cast<std::ptrdiff_t>(width);
      const double count = static_cast<double>(width + (use_ref ? 1 : 0));
      for (std::size_t c = 0; c < n; ++c) {
        if (!remaining[c]) continue;
        double s = use_ref ? query_row[c] : (use_min ? kInf : 0.0);
        for (auto it = first; it != chain.end(); ++it) {
          s = use_min ? std::min(s, gg(*it, c)) : s + gg(*it, c);
        }
        score[c] = use_min ? s : s / count;
      }
    }

    const std::size_t next = argmin_remaining(score, remaining);
    chain.push_back(next);
    remaining[next] = 0;

    if (global) {
      for (std::size_t c = 0; c < n; ++c) {
        acc[c] = use_min ? std::min(acc[c], gg(next, c)) : acc[c] + gg(next, c);
      }
      members += 1.0;
    }
  }
  return chain;
}

}  // namespace

void ChainConfig::validate() const {
  if (variant == ChainVariant::kLocal && window < 1) {
    throw Error("bad-config", "window must be >= 1");
  }
}

ChainVariant parse_chain_variant(std::string_view name) {
  if (name == "local") return ChainVariant::kLocal;
  if (name == "global") return ChainVariant::kGlobal;
  throw Error("bad-config", "unknown variant '" + std::string(name) + "'");
}

WindowAggregation parse_aggregation(std::string_view name) {
  if (name == "min") return WindowAggregation::kMin;
  if (name == "mean") return WindowAggregation::kMean;
  throw Error("bad-config", "unknown aggregation '" + std::string(name) + "'");
}

std::string to_string(const ChainConfig& cfg) {
  std::string agg = cfg.aggregation == WindowAggregation::kMin ? "min" : "mean";
  if (cfg.variant == ChainVariant::kGlobal) return "Global(" + agg + ")";
  std::string out = "Local-" + std::to_string(cfg.window);
  if (cfg.with_ref) out += " w.ref";
  return out + "(" + agg + ")";
}

RetrievalResult mine_chains(const DistanceMatrix& qg, const DistanceMatrix& gg,
                            const ChainConfig& cfg, std::size_t threads) {
  cfg.validate();
  check_inputs(qg, gg);

  RetrievalResult result{qg.row_ids(), qg.col_ids(), {}};
  result.rankings.resize(qg.rows());
  parallel_for(
      qg.rows(),
      [&](std::size_t i) { result.rankings[i] = mine_one(qg, gg, i, cfg); },
      threads);
  return result;
}

RetrievalResult direct_ranking(const DistanceMatrix& qg) {
  RetrievalResult result{qg.row_ids(), qg.col_ids(), {}};
  result.rankings.reserve(qg.rows());
  for (std::size_t i = 0; i < qg.rows(); ++i) {
    const auto row = qg.row(i);
    std::vector<std::size_t> order(qg.cols());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });
    result.rankings.push_back(std::move(order));
  }
  return result;
}

}  // namespace vtrm
