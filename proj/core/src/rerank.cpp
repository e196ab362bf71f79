#include "vtrm/rerank.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "vtrm/parallel.hpp"

namespace vtrm {
namespace {

/// Sparse vector as index-sorted (index, weight) pairs.
struct SparseVec {
  std::vector<std::size_t> index;
  std::vector<double> weight;
};

/// Dense symmetric distance matrix over the stitched item set.
class FullMatrix {
 public:
  explicit FullMatrix(std::size_t size) : size_(size), values_(size * size) {}

  std::size_t size() const { return size_; }
  double& at(std::size_t a, std::size_t b) { return values_[a * size_ + b]; }
  double operator()(std::size_t a, std::size_t b) const {
    return values_[a * size_ + b];
  }
  std::span<const double> row(std::size_t a) const {
    return {values_.data() + a * size_, size_};
  }

 private:
  std::size_t size_;
  std::vector<double> values_;
};

/// Neighbourhood radius of every item: the (k+1)-th smallest distance in its
/// row, self included.
std::vector<double> radii(const FullMatrix& d, std::size_t k) {
  std::vector<double> out(d.size());
  std::vector<double> scratch;
  for (std::size_t p = 0; p < d.size(); ++p) {
    const auto row = d.row(p);
    scratch.assign(row.begin(), row.end());
    std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(k),
                     scratch.end());
    out[p] = scratch[k];
  }
  return out;
}

std::vector<std::size_t> neighbours(const FullMatrix& d,
                                    const std::vector<double>& radius,
                                    std::size_t p) {
  std::vector<std::size_t> out;
  const auto row = d.row(p);
  for (std::size_t x = 0; x < row.size(); ++x) {
    if (row[x] <= radius[p]) out.push_back(x);
  }
  return out;
}

std::vector<std::size_t> reciprocal(const FullMatrix& d,
                                    const std::vector<double>& radius,
                                    std::size_t p) {
  std::vector<std::size_t> out;
  const auto row = d.row(p);
  for (std::size_t x = 0; x < row.size(); ++x) {
    if (row[x] <= radius[p] && d(x, p) <= radius[x]) out.push_back(x);
  }
  return out;
}

std::size_t intersection_size(const std::vector<std::size_t>& a,
                              const std::vector<std::size_t>& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

SparseVec encode(const FullMatrix& d, const std::vector<double>& radius_k1,
                 const std::vector<double>& radius_half, std::size_t p) {
  const auto base = reciprocal(d, radius_k1, p);
  std::vector<std::size_t> expanded = base;
  for (std::size_t x : base) {
    const auto candidate = reciprocal(d, radius_half, x);
    if (3 * intersection_size(base, candidate) >= 2 * candidate.size()) {
      std::vector<std::size_t> merged;
      std::set_union(expanded.begin(), expanded.end(), candidate.begin(),
                     candidate.end(), std::back_inserter(merged));
      expanded = std::move(merged);
    }
  }

  SparseVec v;
  v.index = std::move(expanded);
  v.weight.reserve(v.index.size());
  double total = 0.0;
  for (std::size_t x : v.index) {
    v.weight.push_back(std::exp(-d(p, x)));
    total += v.weight.back();
  }
  for (double& w : v.weight) w /= total;
  return v;
}

double jaccard(const SparseVec& a, const SparseVec& b) {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t ia = 0;
  std::size_t ib = 0;
  while (ia < a.index.size() || ib < b.index.size()) {
    if (ib == b.index.size() ||
        (ia < a.index.size() && a.index[ia] < b.index[ib])) {
      hi += a.weight[ia++];
    } else if (ia == a.index.size() || b.index[ib] < a.index[ia]) {
      hi += b.weight[ib++];
    } else {
      lo += std::min(a.weight[ia], b.weight[ib]);
      hi += std::max(a.weight[ia], b.weight[ib]);
      ++ia;
      ++ib;
    }
  }
  return hi > 0.0 ? 1.0 - lo / hi : 0.0;
}

/// Encodes every item of `d`, applies local query expansion, and returns the
/// expanded vectors.
std::vector<SparseVec> expanded_encodings(const FullMatrix& d,
                                          const RerankParams& params,
                                          std::size_t threads) {
  const std::size_t size = d.size();
  const auto radius_k1 = radii(d, params.k1);
  const auto radius_half = radii(d, params.k1 / 2);
  const auto radius_k2 = radii(d, params.k2);

  std::vector<SparseVec> v(size);
  parallel_for(
      size, [&](std::size_t p) { v[p] = encode(d, radius_k1, radius_half, p); },
      threads);

  std::vector<SparseVec> expanded(size);
  parallel_for(
      size,
      [&](std::size_t p) {
        const auto members = neighbours(d, radius_k2, p);
        std::vector<double> dense(size, 0.0);
        for (std::size_t x : members) {
          for (std::size_t t = 0; t < v[x].index.size(); ++t) {
            dense[v[x].index[t]] += v[x].weight[t];
          }
        }
        const double count = static_cast<double>(members.size());
        for (std::size_t x = 0; x < size; ++x) {
          if (dense[x] != 0.0) {
            expanded[p].index.push_back(x);
            expanded[p].weight.push_back(dense[x] / count);
          }
        }
      },
      threads);
  return expanded;
}

void check_size(const RerankParams& params, std::size_t size) {
  if (params.k1 >= size) {
    throw Error("bad-config", "k1=" + std::to_string(params.k1) +
                                  " must be smaller than the item count " +
                                  std::to_string(size));
  }
}

}  // namespace

void RerankParams::validate() const {
  if (k1 < 1 || k2 < 1) throw Error("bad-config", "k1 and k2 must be >= 1");
  if (k2 > k1) throw Error("bad-config", "k2 must be <= k1");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error("bad-config", "lambda must lie in [0, 1]");
  }
}

DistanceMatrix k_reciprocal_rerank(const DistanceMatrix& qg,
                                   const DistanceMatrix& qq,
                                   const DistanceMatrix& gg,
                                   const RerankParams& params,
                                   std::size_t threads) {
  params.validate();
  const std::size_t m = qg.rows();
  const std::size_t n = qg.cols();
  if (qq.rows() != m || qq.cols() != m || gg.rows() != n || gg.cols() != n) {
    throw Error("shape", "re-rank expects qg m x n, qq m x m, gg n x n");
  }
  if (qq.row_ids() != qg.row_ids() || qq.col_ids() != qg.row_ids() ||
      gg.row_ids() != qg.col_ids() || gg.col_ids() != qg.col_ids()) {
    throw Error("shape", "qq/gg labels do not match qg rows/columns");
  }
  check_size(params, m + n);

  FullMatrix d(m + n);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) d.at(a, b) = qq(a, b);
    for (std::size_t b = 0; b < n; ++b) {
      d.at(a, m + b) = qg(a, b);
      d.at(m + b, a) = qg(a, b);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) d.at(m + a, m + b) = gg(a, b);
  }

  const auto v = expanded_encodings(d, params, threads);

  std::vector<double> out(m * n);
  const double keep = params.lambda;
  parallel_for(
      m,
      [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) {
          out[i * n + j] =
              (1.0 - keep) * jaccard(v[i], v[m + j]) + keep * qg(i, j);
        }
      },
      threads);
  return {qg.row_ids(), qg.col_ids(), std::move(out)};
}

DistanceMatrix k_reciprocal_rerank_gallery(const DistanceMatrix& gg,
                                           const RerankParams& params,
                                           std::size_t threads) {
  params.validate();
  if (!gg.is_square_self()) {
    throw Error("shape", "gallery matrix must have identical row and column labels");
  }
  const std::size_t n = gg.rows();
  check_size(params, n);

  FullMatrix d(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) d.at(a, b) = gg(a, b);
  }
  const auto v = expanded_encodings(d, params, threads);

  std::vector<double> out(n * n);
  const double keep = params.lambda;
  parallel_for(
      n,
      [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) {
          out[i * n + j] = (1.0 - keep) * jaccard(v[i], v[j]) + keep * gg(i, j);
        }
      },
      threads);
  return {gg.row_ids(), gg.col_ids(), std::move(out)};
}

}  // namespace vtrm
