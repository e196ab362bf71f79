#pragma once

#include <iosfwd>
#include <string>

#include "vtrm/types.hpp"

namespace vtrm::io {

// Text formats shared by every pipeline stage. Numbers are written with six
// decimals. Readers throw Error("format") on malformed input and Error("io")
// when a file cannot be opened.
//
//   embeddings  CSV, header `id,v0,...,v{d-1}`, one row per item
//   matrix      `m n` / row ids / column ids / m rows of n values
//   truth       CSV, header `id,identity,frame`; frame may be empty or absent
//   ranking     `query_id: gallery_id_1 ... gallery_id_n` per query

EmbeddingSet read_embeddings(std::istream& in);
void write_embeddings(std::ostream& out, const EmbeddingSet& set);

DistanceMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const DistanceMatrix& m);

GroundTruth read_truth(std::istream& in);
/// Writes items of `queries` then `gallery` in order.
void write_truth(std::ostream& out, const GroundTruth& truth,
                 const std::vector<ItemId>& queries,
                 const std::vector<ItemId>& gallery);

/// Gallery positions are resolved against `gallery_ids`.
RetrievalResult read_rankings(std::istream& in,
                              const std::vector<ItemId>& gallery_ids);
/// Gallery label order is taken from the first line.
RetrievalResult read_rankings(std::istream& in);
void write_rankings(std::ostream& out, const RetrievalResult& result);

// File-path conveniences.
EmbeddingSet load_embeddings(const std::string& path);
DistanceMatrix load_matrix(const std::string& path);
GroundTruth load_truth(const std::string& path);
RetrievalResult load_rankings(const std::string& path,
                              const std::vector<ItemId>& gallery_ids);
RetrievalResult load_rankings(const std::string& path);

/// Writes `content` to `path`, throwing Error("io") on failure.
void save_text(const std::string& path, const std::string& content);

}  // namespace vtrm::io
