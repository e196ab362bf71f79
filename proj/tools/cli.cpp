#include "cli.hpp"

#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "vtrm/vtrm.hpp"

namespace vtrm::cli {
namespace {

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
  } else {
    io::save_text(path, text);
  }
}

template <typename Writer, typename Value>
std::string render(Writer writer, const Value& value) {
  std::ostringstream buffer;
  writer(buffer, value);
  return buffer.str();
}

struct SynthArgs {
  SynthConfig cfg;
  std::string queries_out;
  std::string gallery_out;
  std::string truth_out;
};

struct DistArgs {
  std::string queries;
  std::string gallery;
  std::string metric = "euclidean";
  std::string out = "-";
};

struct RerankArgs {
  std::string qg;
  std::string qq;
  std::string gg;
  std::string out = "-";
  std::string gg_out;
  RerankParams params;
  std::size_t threads = 1;
};

struct MineArgs {
  std::string qg;
  std::string gg;
  std::string variant = "local";
  long long window = 1;
  bool with_ref = false;
  std::string aggregation = "min";
  std::string out = "-";
  std::size_t threads = 1;
};

struct FuseArgs {
  std::vector<std::string> rankings;
  std::vector<std::string> matrices;
  bool normalize = false;
  std::string out = "-";
  std::size_t threads = 1;
};

struct EvalArgs {
  std::string ranking;
  std::string truth;
  std::string format = "text";
  std::string out = "-";
};

void run_synth(const SynthArgs& a) {
  const auto data = generate(a.cfg);
  io::save_text(a.queries_out, render(io::write_embeddings, data.queries));
  io::save_text(a.gallery_out, render(io::write_embeddings, data.gallery));
  std::ostringstream truth;
  io::write_truth(truth, data.truth, data.queries.ids(), data.gallery.ids());
  io::save_text(a.truth_out, truth.str());
}

void run_dist(const DistArgs& a, std::ostream& out) {
  const auto queries = io::load_embeddings(a.queries);
  const auto gallery = io::load_embeddings(a.gallery);
  const auto matrix = a.metric == "cosine" ? cosine_distances(queries, gallery)
                                           : euclidean_distances(queries, gallery);
  emit(a.out, render(io::write_matrix, matrix), out);
}

void run_rerank(const RerankArgs& a, std::ostream& out) {
  a.params.validate();
  const auto qg = io::load_matrix(a.qg);
  const auto qq = io::load_matrix(a.qq);
  const auto gg = io::load_matrix(a.gg);
  const auto reranked = k_reciprocal_rerank(qg, qq, gg, a.params, a.threads);
  if (!a.gg_out.empty()) {
    const auto gallery = k_reciprocal_rerank_gallery(gg, a.params, a.threads);
    emit(a.gg_out, render(io::write_matrix, gallery), out);
  }
  emit(a.out, render(io::write_matrix, reranked), out);
}

void run_mine(const MineArgs& a, std::ostream& out) {
  if (a.window < 1) throw Error("bad-config", "window must be >= 1");
  const auto qg = io::load_matrix(a.qg);
  RetrievalResult result;
  if (a.variant == "direct") {
    result = direct_ranking(qg);
  } else {
    if (a.gg.empty()) throw Error("bad-config", "--gg is required for chain variants");
    ChainConfig cfg;
    cfg.variant = parse_chain_variant(a.variant);
    cfg.window = static_cast<std::size_t>(a.window);
    cfg.with_ref = a.with_ref;
    cfg.aggregation = parse_aggregation(a.aggregation);
    result = mine_chains(qg, io::load_matrix(a.gg), cfg, a.threads);
  }
  emit(a.out, render(io::write_rankings, result), out);
}

void run_fuse(const FuseArgs& a, std::ostream& out) {
  if (a.rankings.size() != a.matrices.size()) {
    throw Error("bad-config", "need one --qg matrix per --ranking file");
  }
  FusionInput input;
  for (std::size_t l = 0; l < a.rankings.size(); ++l) {
    input.matrices.push_back(io::load_matrix(a.matrices[l]));
    input.results.push_back(
        io::load_rankings(a.rankings[l], input.matrices.back().col_ids()));
  }
  const auto fused = fuse(input, {a.normalize}, a.threads);
  emit(a.out, render(io::write_rankings, fused), out);
}

void run_eval(const EvalArgs& a, std::ostream& out) {
  const auto result = io::load_rankings(a.ranking);
  const auto truth = io::load_truth(a.truth);
  const auto report = evaluate(result, truth);
  emit(a.out,
       a.format == "kv" ? format_report_kv(report, result.query_ids)
                        : format_report_text(report),
       out);
}

}  // namespace

int run_subcommand(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Chain retrieval, fusion, re-ranking and evaluation for re-id", "vtrm"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate drifting-identity embeddings");
  synth_cmd->add_option("--identities", synth.cfg.num_identities, "Number of identities")
      ->capture_default_str();
  synth_cmd->add_option("--frames", synth.cfg.frames_per_identity, "Frames per identity")
      ->capture_default_str();
  synth_cmd->add_option("--dim", synth.cfg.dim, "Embedding dimension")->capture_default_str();
  synth_cmd->add_option("--step-sigma", synth.cfg.step_sigma, "Random-walk step scale")
      ->capture_default_str();
  synth_cmd->add_option("--center-sigma", synth.cfg.center_sigma, "Identity centre spread")
      ->capture_default_str();
  synth_cmd->add_option("--noise-sigma", synth.cfg.noise_sigma, "Observation noise")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.cfg.seed, "RNG seed")->capture_default_str();
  synth_cmd->add_option("--queries-out", synth.queries_out, "Query embedding CSV")->required();
  synth_cmd->add_option("--gallery-out", synth.gallery_out, "Gallery embedding CSV")->required();
  synth_cmd->add_option("--truth-out", synth.truth_out, "Ground-truth CSV")->required();

  DistArgs dist;
  auto* dist_cmd = app.add_subcommand("dist", "Compute a distance matrix");
  dist_cmd->add_option("--queries", dist.queries, "Row embeddings CSV")->required();
  dist_cmd->add_option("--gallery", dist.gallery, "Column embeddings CSV")->required();
  dist_cmd->add_option("--metric", dist.metric, "euclidean or cosine")
      ->check(CLI::IsMember({"euclidean", "cosine"}))
      ->capture_default_str();
  dist_cmd->add_option("--out", dist.out, "Matrix file, - for stdout")->capture_default_str();

  RerankArgs rerank;
  auto* rerank_cmd = app.add_subcommand("rerank", "k-reciprocal re-ranking");
  rerank_cmd->add_option("--qg", rerank.qg, "Query-gallery matrix")->required();
  rerank_cmd->add_option("--qq", rerank.qq, "Query-query matrix")->required();
  rerank_cmd->add_option("--gg", rerank.gg, "Gallery-gallery matrix")->required();
  rerank_cmd->add_option("--k1", rerank.params.k1, "Reciprocal neighbourhood size")
      ->capture_default_str();
  rerank_cmd->add_option("--k2", rerank.params.k2, "Query expansion size")
      ->capture_default_str();
  rerank_cmd->add_option("--lambda", rerank.params.lambda, "Weight of the original distance")
      ->capture_default_str();
  rerank_cmd->add_option("--out", rerank.out, "Re-ranked qg matrix, - for stdout")
      ->capture_default_str();
  rerank_cmd->add_option("--gg-out", rerank.gg_out,
                         "Also write the re-ranked gallery-gallery matrix here");
  rerank_cmd->add_option("--threads", rerank.threads, "Worker threads, 0 = all cores")
      ->capture_default_str();

  MineArgs mine;
  auto* mine_cmd = app.add_subcommand("mine", "Chain retrieval (or direct ranking)");
  mine_cmd->add_option("--qg", mine.qg, "Query-gallery matrix")->required();
  mine_cmd->add_option("--gg", mine.gg, "Gallery-gallery matrix (chain variants)");
  mine_cmd->add_option("--variant", mine.variant, "local, global or direct")
      ->check(CLI::IsMember({"local", "global", "direct"}))
      ->capture_default_str();
  mine_cmd->add_option("--window", mine.window, "Local window size N")->capture_default_str();
  mine_cmd->add_flag("--with-ref", mine.with_ref, "Keep the query as a window member");
  mine_cmd->add_option("--aggregation", mine.aggregation, "min or mean")
      ->check(CLI::IsMember({"min", "mean"}))
      ->capture_default_str();
  mine_cmd->add_option("--out", mine.out, "Ranking file, - for stdout")->capture_default_str();
  mine_cmd->add_option("--threads", mine.threads, "Worker threads, 0 = all cores")
      ->capture_default_str();

  FuseArgs fuse_args;
  auto* fuse_cmd = app.add_subcommand("fuse", "Vote fusion of K ranking files");
  fuse_cmd->add_option("--ranking", fuse_args.rankings, "Ranking file (repeat per model)")
      ->required();
  fuse_cmd->add_option("--qg", fuse_args.matrices, "qg matrix (repeat, same order)")
      ->required();
  fuse_cmd->add_flag("--normalize", fuse_args.normalize,
                     "Min-max normalise query rows before tie-breaking");
  fuse_cmd->add_option("--out", fuse_args.out, "Ranking file, - for stdout")
      ->capture_default_str();
  fuse_cmd->add_option("--threads", fuse_args.threads, "Worker threads, 0 = all cores")
      ->capture_default_str();

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "mAP, CMC and frame-order consistency");
  eval_cmd->add_option("--ranking", eval.ranking, "Ranking file")->required();
  eval_cmd->add_option("--truth", eval.truth, "Ground-truth CSV")->required();
  eval_cmd->add_option("--format", eval.format, "text or kv")
      ->check(CLI::IsMember({"text", "kv"}))
      ->capture_default_str();
  eval_cmd->add_option("--out", eval.out, "Report file, - for stdout")->capture_default_str();

  std::vector<std::string> storage{"vtrm"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    // Help for the innermost subcommand that was named.
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    err << "error: bad-args: " << message << '\n';
    return 2;
  }

  try {
    if (synth_cmd->parsed()) run_synth(synth);
    if (dist_cmd->parsed()) run_dist(dist, out);
    if (rerank_cmd->parsed()) run_rerank(rerank, out);
    if (mine_cmd->parsed()) run_mine(mine, out);
    if (fuse_cmd->parsed()) run_fuse(fuse_args, out);
    if (eval_cmd->parsed()) run_eval(eval, out);
  } catch (const Error& e) {
    err << "error: " << e.code() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run_pipeline(const PipelineSpec& spec, std::ostream& out, std::ostream& err) {
  for (const auto& stage : spec.stages) {
    if (const int status = run_subcommand(stage, out, err); status != 0) return status;
  }
  return 0;
}

}  // namespace vtrm::cli
