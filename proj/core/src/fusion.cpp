#include "vtrm/fusion.hpp"

#include <algorithm>
#include <limits>

#include "vtrm/parallel.hpp"

namespace vtrm {
namespace {

std::vector<double> query_row(const DistanceMatrix& m, std::size_t query,
                              bool normalize) {
  const auto row = m.row(query);
  std::vector<double> out(row.begin(), row.end());
  if (!normalize || out.empty()) return out;
  const auto [lo, hi] = std::minmax_element(out.begin(), out.end());
  const double low = *lo;
  const double span = *hi - low;
  for (double& v : out) v = span > 0.0 ? (v - low) / span : 0.0;
  return out;
}

std::vector<std::size_t> fuse_one(const FusionInput& input, std::size_t query,
                                  const FusionOptions& options) {
  const std::size_t k = input.results.size();
  const std::size_t n = input.results.front().gallery_ids.size();

  std::vector<std::vector<double>> rows;
  rows.reserve(k);
  for (const auto& m : input.matrices) {
    rows.push_back(query_row(m, query, options.normalize_rows));
  }

  std::vector<char> emitted(n, 0);
  std::vector<std::size_t> cursor(k, 0);
  std::vector<std::size_t> votes(n, 0);
  std::vector<double> best_distance(n, 0.0);
  std::vector<std::size_t> nominated;
  nominated.reserve(k);

  std::vector<std::size_t> out;
  out.reserve(n);
  while (out.size() < n) {
    nominated.clear();
    for (std::size_t l = 0; l < k; ++l) {
      const auto& ranking = input.results[l].rankings[query];
      while (emitted[ranking[cursor[l]]]) ++cursor[l];
      const std::size_t c = ranking[cursor[l]];
      const double d = rows[l][c];
      if (votes[c] == 0) {
        nominated.push_back(c);
        best_distance[c] = d;
      } else {
        best_distance[c] = std::min(best_distance[c], d);
      }
      ++votes[c];
    }

    std::size_t winner = nominated.front();
    for (std::size_t c : nominated) {
      const bool more_votes = votes[c] > votes[winner];
      const bool same_votes = votes[c] == votes[winner];
      const bool closer = best_distance[c] < best_distance[winner];
      const bool same_distance = best_distance[c] == best_distance[winner];
      if (more_votes || (same_votes && closer) ||
          (same_votes && same_distance && c < winner)) {
        winner = c;
      }
    }

    out.push_back(winner);
    emitted[winner] = 1;
    for (std::size_t c : nominated) votes[c] = 0;
  }
  return out;
}

}  // namespace

void FusionInput::validate() const {
  if (results.empty()) throw Error("bad-config", "fusion needs at least one model");
  if (results.size() != matrices.size()) {
    throw Error("bad-config", "got " + std::to_string(results.size()) +
                                  " rankings but " +
                                  std::to_string(matrices.size()) + " matrices");
  }
  const auto& ref = results.front();
  ref.validate();
  for (std::size_t l = 0; l < results.size(); ++l) {
    const auto& r = results[l];
    const auto& m = matrices[l];
    if (l > 0) r.validate();
    if (r.query_ids != ref.query_ids || r.gallery_ids != ref.gallery_ids) {
      throw Error("label-mismatch",
                  "ranking of model " + std::to_string(l + 1) +
                      " has different query or gallery labels");
    }
    if (m.row_ids() != ref.query_ids || m.col_ids() != ref.gallery_ids) {
      throw Error("label-mismatch",
                  "matrix of model " + std::to_string(l + 1) +
                      " does not match the ranking labels");
    }
  }
}

RetrievalResult fuse(const FusionInput& input, const FusionOptions& options,
                     std::size_t threads) {
  input.validate();
  const auto& ref = input.results.front();
  RetrievalResult out{ref.query_ids, ref.gallery_ids, {}};
  out.rankings.resize(ref.query_ids.size());
  if (ref.gallery_ids.empty()) return out;
  parallel_for(
      out.rankings.size(),
      [&](std::size_t i) { out.rankings[i] = fuse_one(input, i, options); },
      threads);
  return out;
}

}  // namespace vtrm
