#include "vtrm/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vtrm {
namespace {

void check_dims(const EmbeddingSet& queries, const EmbeddingSet& gallery) {
  if (queries.dim() != gallery.dim()) {
    throw Error("dim-mismatch",
                "query dim " + std::to_string(queries.dim()) +
                    " != gallery dim " + std::to_string(gallery.dim()));
  }
}

}  // namespace

DistanceMatrix euclidean_distances(const EmbeddingSet& queries,
                                   const EmbeddingSet& gallery) {
  check_dims(queries, gallery);
  const std::size_t m = queries.size();
  const std::size_t n = gallery.size();
  std::vector<double> values(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    auto q = queries.vector(i);
    for (std::size_t j = 0; j < n; ++j) {
      auto g = gallery.vector(j);
      // Summing (q-g)^2 directly, not via norms, keeps d(x,x) exactly 0 and
      // d(a,b) == d(b,a) bit for bit.
      double acc = 0.0;
      for (std::size_t k = 0; k < q.size(); ++k) {
        const double diff = q[k] - g[k];
        acc += diff * diff;
      }
      values[i * n + j] = std::sqrt(acc);
    }
  }
  return {queries.ids(), gallery.ids(), std::move(values)};
}

DistanceMatrix cosine_distances(const EmbeddingSet& queries,
                                const EmbeddingSet& gallery) {
  check_dims(queries, gallery);
  auto norms = [](const EmbeddingSet& set) {
    std::vector<double> out(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
      auto v = set.vector(i);
      out[i] = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
      if (out[i] == 0.0) {
        throw Error("zero-norm", "zero-norm vector '" + set.ids()[i].str() + "'");
      }
    }
    return out;
  };
  const auto qn = norms(queries);
  const auto gn = norms(gallery);

  const std::size_t m = queries.size();
  const std::size_t n = gallery.size();
  std::vector<double> values(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    auto q = queries.vector(i);
    for (std::size_t j = 0; j < n; ++j) {
      auto g = gallery.vector(j);
      const double dot = std::inner_product(q.begin(), q.end(), g.begin(), 0.0);
      values[i * n + j] = std::clamp(1.0 - dot / (qn[i] * gn[j]), 0.0, 2.0);
    }
  }
  return {queries.ids(), gallery.ids(), std::move(values)};
}

}  // namespace vtrm
