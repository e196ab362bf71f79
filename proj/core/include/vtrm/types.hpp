#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vtrm {

/// Error raised by every module. `code()` is a short machine-readable tag
/// (e.g. "bad-config", "shape") that the CLI prints as `error: <code>: <msg>`.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Opaque item label: non-empty, no whitespace.
class ItemId {
 public:
  ItemId() = default;
  explicit ItemId(std::string value);

  const std::string& str() const noexcept { return value_; }

  friend bool operator==(const ItemId&, const ItemId&) = default;
  friend auto operator<=>(const ItemId&, const ItemId&) = default;

 private:
  std::string value_;
};

/// Throws Error("duplicate-id") if `ids` contains a repeated label.
void require_unique(std::span<const ItemId> ids, std::string_view what);

/// Ordered, labeled feature vectors of a common dimension.
class EmbeddingSet {
 public:
  EmbeddingSet() = default;
  EmbeddingSet(std::vector<ItemId> ids, std::vector<double> values,
               std::size_t dim);

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<ItemId>& ids() const noexcept { return ids_; }
  std::span<const double> vector(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<ItemId> ids_;
  std::vector<double> values_;  // row-major, size() x dim()
  std::size_t dim_ = 0;
};

/// Dense non-negative m x n matrix with row and column labels.
///
/// When the row and column label lists are identical the diagonal is forced
/// to zero on construction.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::vector<ItemId> row_ids, std::vector<ItemId> col_ids,
                 std::vector<double> values);

  std::size_t rows() const noexcept { return row_ids_.size(); }
  std::size_t cols() const noexcept { return col_ids_.size(); }
  const std::vector<ItemId>& row_ids() const noexcept { return row_ids_; }
  const std::vector<ItemId>& col_ids() const noexcept { return col_ids_; }
  const std::vector<double>& values() const noexcept { return values_; }

  double operator()(std::size_t r, std::size_t c) const {
    return values_[r * cols() + c];
  }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols(), cols()};
  }
  bool is_square_self() const noexcept { return row_ids_ == col_ids_; }
  double max_value() const noexcept;

 private:
  std::vector<ItemId> row_ids_;
  std::vector<ItemId> col_ids_;
  std::vector<double> values_;
};

/// Identity labels and optional true frame indices per item.
class GroundTruth {
 public:
  GroundTruth() = default;
  /// Throws Error("duplicate-frame") if two items of one identity share a
  /// frame index.
  GroundTruth(std::unordered_map<std::string, std::string> identity_of,
              std::unordered_map<std::string, long long> frame_of);

  bool has_identity(const ItemId& id) const {
    return identity_of_.contains(id.str());
  }
  /// Throws Error("missing-identity") when the id is unknown.
  const std::string& identity(const ItemId& id) const;
  std::optional<long long> frame(const ItemId& id) const;

  const std::unordered_map<std::string, std::string>& identity_map() const {
    return identity_of_;
  }
  const std::unordered_map<std::string, long long>& frame_map() const {
    return frame_of_;
  }

 private:
  std::unordered_map<std::string, std::string> identity_of_;
  std::unordered_map<std::string, long long> frame_of_;
};

/// Per-query ordered gallery positions. Every ranking is a permutation of
/// 0..n-1 where n == gallery_ids.size().
struct RetrievalResult {
  std::vector<ItemId> query_ids;
  std::vector<ItemId> gallery_ids;
  std::vector<std::vector<std::size_t>> rankings;

  /// Throws Error("not-permutation") if any ranking is not a permutation.
  void validate() const;
};

bool is_permutation_of_range(std::span<const std::size_t> ranking,
                             std::size_t n);

}  // namespace vtrm
