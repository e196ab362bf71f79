#include "vtrm/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace vtrm::io {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

double parse_double(std::string_view text, std::size_t line_no) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error("format", "line " + std::to_string(line_no) + ": bad number '" +
                              std::string(text) + "'");
  }
  return value;
}

template <typename Int>
Int parse_int(std::string_view text, std::size_t line_no) {
  text = trim(text);
  Int value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error("format", "line " + std::to_string(line_no) + ": bad integer '" +
                              std::string(text) + "'");
  }
  return value;
}

void append_fixed6(std::string& out, double v) {
  char buf[64];
  const int len = std::snprintf(buf, sizeof buf, "%.6f", v);
  out.append(buf, static_cast<std::size_t>(len));
}

bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  if (!std::getline(in, line)) return false;
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open '" + path + "'");
  return in;
}

std::vector<ItemId> to_ids(const std::vector<std::string>& raw) {
  std::vector<ItemId> out;
  out.reserve(raw.size());
  for (const auto& s : raw) out.emplace_back(s);
  return out;
}

}  // namespace

EmbeddingSet read_embeddings(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw Error("format", "empty embedding file");
  const auto header = split(line, ',');
  if (header.size() < 2 || trim(header[0]) != "id") {
    throw Error("format", "embedding header must be id,v0,...");
  }
  const std::size_t dim = header.size() - 1;
  for (std::size_t k = 0; k < dim; ++k) {
    if (trim(header[k + 1]) != "v" + std::to_string(k)) {
      throw Error("format", "embedding header column " + std::to_string(k + 1) +
                                " must be v" + std::to_string(k));
    }
  }

  std::vector<ItemId> ids;
  std::vector<double> values;
  while (next_line(in, line, line_no)) {
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != dim + 1) {
      throw Error("format", "line " + std::to_string(line_no) + ": expected " +
                                std::to_string(dim + 1) + " fields");
    }
    ids.emplace_back(std::string(trim(cells[0])));
    for (std::size_t k = 0; k < dim; ++k) {
      values.push_back(parse_double(cells[k + 1], line_no));
    }
  }
  return {std::move(ids), std::move(values), dim};
}

void write_embeddings(std::ostream& out, const EmbeddingSet& set) {
  std::string text = "id";
  for (std::size_t k = 0; k < set.dim(); ++k) text += ",v" + std::to_string(k);
  text += '\n';
  for (std::size_t i = 0; i < set.size(); ++i) {
    text += set.ids()[i].str();
    for (double v : set.vector(i)) {
      text += ',';
      append_fixed6(text, v);
    }
    text += '\n';
  }
  out << text;
}

DistanceMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw Error("format", "empty matrix file");
  const auto dims = tokens(line);
  if (dims.size() != 2) throw Error("format", "line 1 must be 'm n'");
  const auto m = parse_int<std::size_t>(dims[0], 1);
  const auto n = parse_int<std::size_t>(dims[1], 1);

  if (!next_line(in, line, line_no)) throw Error("format", "missing row ids");
  auto row_ids = tokens(line);
  if (!next_line(in, line, line_no)) throw Error("format", "missing column ids");
  auto col_ids = tokens(line);
  if (row_ids.size() != m || col_ids.size() != n) {
    throw Error("format", "id count does not match declared shape");
  }

  std::vector<double> values;
  values.reserve(m * n);
  for (std::size_t r = 0; r < m; ++r) {
    if (!next_line(in, line, line_no)) {
      throw Error("format", "expected " + std::to_string(m) + " value rows");
    }
    const auto cells = tokens(line);
    if (cells.size() != n) {
      throw Error("format", "line " + std::to_string(line_no) + ": expected " +
                                std::to_string(n) + " values");
    }
    for (const auto& c : cells) values.push_back(parse_double(c, line_no));
  }
  return {to_ids(row_ids), to_ids(col_ids), std::move(values)};
}

void write_matrix(std::ostream& out, const DistanceMatrix& m) {
  std::string text = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  auto ids_line = [&text](const std::vector<ItemId>& ids) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) text += ' ';
      text += ids[i].str();
    }
    text += '\n';
  };
  ids_line(m.row_ids());
  ids_line(m.col_ids());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) text += ' ';
      append_fixed6(text, m(r, c));
    }
    text += '\n';
  }
  out << text;
}

GroundTruth read_truth(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw Error("format", "empty truth file");
  const auto header = split(line, ',');
  const bool has_frame = header.size() == 3;
  if (header.size() < 2 || header.size() > 3 || trim(header[0]) != "id" ||
      trim(header[1]) != "identity" || (has_frame && trim(header[2]) != "frame")) {
    throw Error("format", "truth header must be id,identity[,frame]");
  }

  std::unordered_map<std::string, std::string> identity_of;
  std::unordered_map<std::string, long long> frame_of;
  while (next_line(in, line, line_no)) {
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) {
      throw Error("format", "line " + std::to_string(line_no) + ": expected " +
                                std::to_string(header.size()) + " fields");
    }
    const ItemId id{std::string(trim(cells[0]))};
    const auto identity = trim(cells[1]);
    if (identity.empty()) {
      throw Error("format", "line " + std::to_string(line_no) + ": empty identity");
    }
    if (!identity_of.emplace(id.str(), std::string(identity)).second) {
      throw Error("duplicate-id", "truth lists '" + id.str() + "' twice");
    }
    if (has_frame && !trim(cells[2]).empty()) {
      frame_of.emplace(id.str(), parse_int<long long>(cells[2], line_no));
    }
  }
  return {std::move(identity_of), std::move(frame_of)};
}

void write_truth(std::ostream& out, const GroundTruth& truth,
                 const std::vector<ItemId>& queries,
                 const std::vector<ItemId>& gallery) {
  std::string text = "id,identity,frame\n";
  for (const auto* ids : {&queries, &gallery}) {
    for (const auto& id : *ids) {
      text += id.str() + ',' + truth.identity(id) + ',';
      if (auto frame = truth.frame(id)) text += std::to_string(*frame);
      text += '\n';
    }
  }
  out << text;
}

RetrievalResult read_rankings(std::istream& in,
                              const std::vector<ItemId>& gallery_ids) {
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t g = 0; g < gallery_ids.size(); ++g) {
    position.emplace(gallery_ids[g].str(), g);
  }

  RetrievalResult result{{}, gallery_ids, {}};
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line, line_no)) {
    if (trim(line).empty()) continue;
    auto parts = tokens(line);
    if (parts.empty() || parts.front().size() < 2 || parts.front().back() != ':') {
      throw Error("format", "line " + std::to_string(line_no) +
                                ": expected 'query_id: gallery ids...'");
    }
    parts.front().pop_back();
    result.query_ids.emplace_back(parts.front());

    std::vector<std::size_t> ranking;
    ranking.reserve(parts.size() - 1);
    for (std::size_t t = 1; t < parts.size(); ++t) {
      auto it = position.find(parts[t]);
      if (it == position.end()) {
        throw Error("format", "line " + std::to_string(line_no) +
                                  ": unknown gallery id '" + parts[t] + "'");
      }
      ranking.push_back(it->second);
    }
    result.rankings.push_back(std::move(ranking));
  }
  require_unique(result.query_ids, "query");
  result.validate();
  return result;
}

RetrievalResult read_rankings(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::istringstream first_pass(text);
  std::string line;
  std::vector<ItemId> gallery;
  while (std::getline(first_pass, line)) {
    auto parts = tokens(line);
    if (parts.empty()) continue;
    for (std::size_t t = 1; t < parts.size(); ++t) gallery.emplace_back(parts[t]);
    break;
  }
  require_unique(gallery, "gallery");
  std::istringstream second_pass(text);
  return read_rankings(second_pass, gallery);
}

void write_rankings(std::ostream& out, const RetrievalResult& result) {
  std::string text;
  for (std::size_t i = 0; i < result.query_ids.size(); ++i) {
    text += result.query_ids[i].str() + ":";
    for (std::size_t pos : result.rankings[i]) {
      text += ' ';
      text += result.gallery_ids[pos].str();
    }
    text += '\n';
  }
  out << text;
}

EmbeddingSet load_embeddings(const std::string& path) {
  auto in = open_in(path);
  return read_embeddings(in);
}

DistanceMatrix load_matrix(const std::string& path) {
  auto in = open_in(path);
  return read_matrix(in);
}

GroundTruth load_truth(const std::string& path) {
  auto in = open_in(path);
  return read_truth(in);
}

RetrievalResult load_rankings(const std::string& path,
                              const std::vector<ItemId>& gallery_ids) {
  auto in = open_in(path);
  return read_rankings(in, gallery_ids);
}

RetrievalResult load_rankings(const std::string& path) {
  auto in = open_in(path);
  return read_rankings(in);
}

void save_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io", "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error("io", "write failed for '" + path + "'");
}

}  // namespace vtrm::io
