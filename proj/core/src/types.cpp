#include "vtrm/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <unordered_set>
#include <utility>

namespace vtrm {

ItemId::ItemId(std::string value) : value_(std::move(value)) {
  if (value_.empty()) throw Error("bad-id", "item id must be non-empty");
  for (unsigned char ch : value_) {
    if (std::isspace(ch)) {
      throw Error("bad-id", "item id contains whitespace: '" + value_ + "'");
    }
  }
}

void require_unique(std::span<const ItemId> ids, std::string_view what) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(ids.size());
  for (const auto& id : ids) {
    if (!seen.insert(id.str()).second) {
      throw Error("duplicate-id", "duplicate " + std::string(what) +
                                      " id '" + id.str() + "'");
    }
  }
}

EmbeddingSet::EmbeddingSet(std::vector<ItemId> ids, std::vector<double> values,
                           std::size_t dim)
    : ids_(std::move(ids)), values_(std::move(values)), dim_(dim) {
  if (dim_ == 0) throw Error("format", "embedding dimension must be positive");
  if (values_.size() != ids_.size() * dim_) {
    throw Error("format", "embedding value count does not match ids x dim");
  }
  require_unique(ids_, "embedding");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error("non-finite", "non-finite component in embedding '" +
                                    ids_[i / dim_].str() + "'");
    }
  }
}

DistanceMatrix::DistanceMatrix(std::vector<ItemId> row_ids,
                               std::vector<ItemId> col_ids,
                               std::vector<double> values)
    : row_ids_(std::move(row_ids)),
      col_ids_(std::move(col_ids)),
      values_(std::move(values)) {
  if (values_.size() != row_ids_.size() * col_ids_.size()) {
    throw Error("shape", "matrix has " + std::to_string(values_.size()) +
                             " values, expected " +
                             std::to_string(row_ids_.size()) + "x" +
                             std::to_string(col_ids_.size()));
  }
  require_unique(row_ids_, "row");
  require_unique(col_ids_, "column");
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error("non-finite", "non-finite distance");
    if (v < 0.0) throw Error("negative", "negative distance");
  }
  if (is_square_self()) {
    for (std::size_t i = 0; i < rows(); ++i) values_[i * cols() + i] = 0.0;
  }
}

double DistanceMatrix::max_value() const noexcept {
  if (values_.empty()) return 0.0;
  return *std::max_element(values_.begin(), values_.end());
}

GroundTruth::GroundTruth(std::unordered_map<std::string, std::string> identity_of,
                         std::unordered_map<std::string, long long> frame_of)
    : identity_of_(std::move(identity_of)), frame_of_(std::move(frame_of)) {
  std::set<std::pair<std::string, long long>> used;
  for (const auto& [id, frame] : frame_of_) {
    if (frame < 0) {
      throw Error("format", "negative frame index for '" + id + "'");
    }
    auto it = identity_of_.find(id);
    if (it == identity_of_.end()) {
      throw Error("missing-identity", "frame given for unknown id '" + id + "'");
    }
    if (!used.emplace(it->second, frame).second) {
      throw Error("duplicate-frame", "identity '" + it->second +
                                         "' repeats frame " +
                                         std::to_string(frame));
    }
  }
}

const std::string& GroundTruth::identity(const ItemId& id) const {
  auto it = identity_of_.find(id.str());
  if (it == identity_of_.end()) {
    throw Error("missing-identity", "no identity for '" + id.str() + "'");
  }
  return it->second;
}

std::optional<long long> GroundTruth::frame(const ItemId& id) const {
  auto it = frame_of_.find(id.str());
  if (it == frame_of_.end()) return std::nullopt;
  return it->second;
}

bool is_permutation_of_range(std::span<const std::size_t> ranking,
                             std::size_t n) {
  if (ranking.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t pos : ranking) {
    if (pos >= n || seen[pos]) return false;
    seen[pos] = true;
  }
  return true;
}

void RetrievalResult::validate() const {
  if (rankings.size() != query_ids.size()) {
    throw Error("shape", "ranking count does not match query count");
  }
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    if (!is_permutation_of_range(rankings[i], gallery_ids.size())) {
      throw Error("not-permutation", "ranking of '" + query_ids[i].str() +
                                         "' is not a gallery permutation");
    }
  }
}

}  // namespace vtrm
