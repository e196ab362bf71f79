#pragma once

#include "vtrm/types.hpp"

namespace vtrm {

/// Pairwise L2 distances, queries x gallery.
///
/// Throws Error("dim-mismatch") when the sets differ in dimension. Passing the
/// same set twice yields a symmetric matrix with an exact zero diagonal.
DistanceMatrix euclidean_distances(const EmbeddingSet& queries,
                                   const EmbeddingSet& gallery);

/// Pairwise 1 - cos(q, g), clamped to [0, 2].
/// Throws Error("zero-norm") for any zero vector.
DistanceMatrix cosine_distances(const EmbeddingSet& queries,
                                const EmbeddingSet& gallery);

}  // namespace vtrm
