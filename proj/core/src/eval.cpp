#include "vtrm/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

namespace vtrm {
namespace {

std::vector<char> relevance(const RetrievalResult& result,
                            const GroundTruth& truth, std::size_t query) {
  const auto& identity = truth.identity(result.query_ids[query]);
  std::vector<char> out(result.gallery_ids.size());
  for (std::size_t g = 0; g < out.size(); ++g) {
    out[g] = truth.identity(result.gallery_ids[g]) == identity;
  }
  return out;
}

/// Frames of the same-identity items in retrieved order.
std::vector<long long> retrieved_frames(const RetrievalResult& result,
                                        const GroundTruth& truth,
                                        std::size_t query) {
  const auto relevant = relevance(result, truth, query);
  std::vector<long long> frames;
  for (std::size_t pos : result.rankings[query]) {
    if (!relevant[pos]) continue;
    const auto& id = result.gallery_ids[pos];
    auto frame = truth.frame(id);
    if (!frame) throw Error("missing-frame", "no frame index for '" + id.str() + "'");
    frames.push_back(*frame);
  }
  if (frames.empty()) {
    throw Error("no-relevant", "query '" + result.query_ids[query].str() +
                                   "' has no same-identity gallery item");
  }
  return frames;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

double average_precision(std::span<const std::size_t> ranking,
                         const std::vector<char>& relevant) {
  std::size_t hits = 0;
  double sum = 0.0;
  for (std::size_t k = 0; k < ranking.size(); ++k) {
    if (!relevant[ranking[k]]) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(k + 1);
  }
  if (hits == 0) throw Error("no-relevant", "no relevant item in ranking");
  return sum / static_cast<double>(hits);
}

EvalReport mean_average_precision(const RetrievalResult& result,
                                  const GroundTruth& truth) {
  result.validate();
  const std::size_t n = result.gallery_ids.size();
  EvalReport report;
  report.cmc.assign(n, 0.0);
  report.per_query_ap.reserve(result.query_ids.size());

  for (std::size_t i = 0; i < result.query_ids.size(); ++i) {
    const auto relevant = relevance(result, truth, i);
    if (std::find(relevant.begin(), relevant.end(), 1) == relevant.end()) {
      throw Error("no-relevant", "query '" + result.query_ids[i].str() +
                                     "' has no relevant gallery item");
    }
    report.per_query_ap.push_back(average_precision(result.rankings[i], relevant));

    const auto& ranking = result.rankings[i];
    const auto first = std::find_if(ranking.begin(), ranking.end(),
                                    [&](std::size_t g) { return relevant[g] != 0; });
    for (auto r = static_cast<std::size_t>(first - ranking.begin()); r < n; ++r) {
      report.cmc[r] += 1.0;
    }
  }

  const auto queries = static_cast<double>(result.query_ids.size());
  if (queries > 0) {
    for (double& c : report.cmc) c /= queries;
    report.map_score = std::accumulate(report.per_query_ap.begin(),
                                       report.per_query_ap.end(), 0.0) /
                       queries;
  }
  return report;
}

double order_consistency(const RetrievalResult& result, const GroundTruth& truth) {
  result.validate();
  if (result.query_ids.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < result.query_ids.size(); ++i) {
    const auto frames = retrieved_frames(result, truth, i);
    auto expected = frames;
    std::sort(expected.begin(), expected.end());
    std::size_t matches = 0;
    for (std::size_t p = 0; p < frames.size(); ++p) matches += frames[p] == expected[p];
    total += static_cast<double>(matches) / static_cast<double>(frames.size());
  }
  return total / static_cast<double>(result.query_ids.size());
}

double kendall_tau(const RetrievalResult& result, const GroundTruth& truth) {
  result.validate();
  if (result.query_ids.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < result.query_ids.size(); ++i) {
    const auto frames = retrieved_frames(result, truth, i);
    if (frames.size() < 2) {
      total += 1.0;
      continue;
    }
    long long balance = 0;
    for (std::size_t a = 0; a < frames.size(); ++a) {
      for (std::size_t b = a + 1; b < frames.size(); ++b) {
        balance += frames[a] < frames[b] ? 1 : -1;
      }
    }
    const double pairs = static_cast<double>(frames.size() * (frames.size() - 1) / 2);
    total += static_cast<double>(balance) / pairs;
  }
  return total / static_cast<double>(result.query_ids.size());
}

EvalReport evaluate(const RetrievalResult& result, const GroundTruth& truth) {
  auto report = mean_average_precision(result, truth);
  bool frames_complete = true;
  for (const auto& id : result.gallery_ids) {
    if (!truth.frame(id)) {
      frames_complete = false;
      break;
    }
  }
  if (frames_complete) {
    report.order_consistency = order_consistency(result, truth);
    report.kendall_tau = kendall_tau(result, truth);
  }
  return report;
}

std::string format_report_text(const EvalReport& report) {
  auto line = [](const std::string& label, const std::string& value) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-19s%s\n", (label + ":").c_str(), value.c_str());
    return std::string(buf);
  };
  std::string out = line("mAP", fixed6(report.map_score));
  for (std::size_t r : {1u, 5u, 10u, 20u}) {
    if (r <= report.cmc.size()) {
      out += line("CMC rank-" + std::to_string(r), fixed6(report.cmc[r - 1]));
    }
  }
  if (report.order_consistency) {
    out += line("order consistency", fixed6(*report.order_consistency));
  }
  if (report.kendall_tau) out += line("kendall tau", fixed6(*report.kendall_tau));
  out += line("queries", std::to_string(report.per_query_ap.size()));
  return out;
}

std::string format_report_kv(const EvalReport& report,
                             const std::vector<ItemId>& query_ids) {
  std::string out = "map=" + fixed6(report.map_score) + "\n";
  if (report.order_consistency) {
    out += "order_consistency=" + fixed6(*report.order_consistency) + "\n";
  }
  if (report.kendall_tau) out += "kendall_tau=" + fixed6(*report.kendall_tau) + "\n";
  for (std::size_t r = 0; r < report.cmc.size(); ++r) {
    out += "cmc@" + std::to_string(r + 1) + "=" + fixed6(report.cmc[r]) + "\n";
  }
  for (std::size_t i = 0; i < report.per_query_ap.size() && i < query_ids.size(); ++i) {
    out += "ap." + query_ids[i].str() + "=" + fixed6(report.per_query_ap[i]) + "\n";
  }
  return out;
}

}  // namespace vtrm
