/*
 * Copyright (c) 2026, The webtab Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "webtab/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "webtab/error.hpp"
#include "webtab/io.hpp"
#include "webtab/labeler_server.hpp"
#include "webtab/pipeline.hpp"
#include "webtab/synthetic.hpp"

namespace webtab {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Options every subcommand accepts. Values left unset keep the config file
// (or built-in) defaults.
struct CommonOptions {
  std::string config_path;
  std::vector<std::string> in;
  std::string out;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* dim_opt = nullptr;
  CLI::Option* contexts_opt = nullptr;
  CLI::Option* k_opt = nullptr;
  CLI::Option* reps_opt = nullptr;
  CLI::Option* knn_opt = nullptr;
  CLI::Option* folds_opt = nullptr;
  std::uint64_t seed = 0;
  std::size_t dim = 0;
  std::string contexts;
  std::string k;
  std::size_t reps = 0;
  std::size_t knn_k = 0;
  std::size_t folds = 0;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "JSON configuration file");
  o.seed_opt = cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--in", o.in, "input files, in the order the subcommand expects");
  cmd->add_option("--out", o.out, "output file");
  o.dim_opt = cmd->add_option("--dim", o.dim, "embedding dimension");
  o.contexts_opt = cmd->add_option("--contexts", o.contexts, "context sentence kinds, e.g. c,h,a,t");
  o.k_opt = cmd->add_option("--k", o.k, "number of clusters or \"auto\"");
  o.reps_opt = cmd->add_option("--reps", o.reps, "representatives per cluster");
  o.knn_opt = cmd->add_option("--knn-k", o.knn_k, "neighbours for k-NN classification");
  o.folds_opt = cmd->add_option("--folds", o.folds, "cross-validation folds");
}

std::optional<std::size_t> parse_k(const std::string& text) {
  if (text == "auto") return std::nullopt;
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || text[0] == '-') {
    throw UsageError("--k expects an integer or \"auto\", got \"" + text + "\"");
  }
  return static_cast<std::size_t>(v);
}

PipelineConfig resolve_config(const CommonOptions& o) {
  PipelineConfig cfg;
  if (!o.config_path.empty()) {
    json j;
    try {
      j = json::parse(io::read_file(o.config_path));
    } catch (const json::exception& e) {
      throw UsageError(o.config_path + ": " + e.what());
    } catch (const DataError& e) {
      throw UsageError(e.what());
    }
    cfg = pipeline_config_from_json(j);
  }
  if (o.seed_opt->count()) cfg.seed = o.seed;
  if (o.dim_opt->count()) cfg.dim = o.dim;
  if (o.contexts_opt->count()) cfg.contexts = o.contexts;
  if (o.k_opt->count()) cfg.k = parse_k(o.k);
  if (o.reps_opt->count()) cfg.reps_m = o.reps;
  if (o.knn_opt->count()) cfg.knn_k = o.knn_k;
  if (o.folds_opt->count()) cfg.folds = o.folds;
  cfg.contexts = contexts_string(cfg.context_config());
  cfg.validate();
  return cfg;
}

void require_inputs(const CommonOptions& o, std::size_t min, std::size_t max, const char* usage) {
  if (o.in.size() < min || o.in.size() > max) {
    throw UsageError(std::string("expected --in ") + usage);
  }
}

void require_out(const CommonOptions& o) {
  if (o.out.empty()) throw UsageError("--out is required");
}

void emit(std::ostream& err, const Diagnostic& d) {
  err << io::dump({{"level", "warning"}, {"stage", d.stage}, {"subject", d.subject},
                   {"message", d.message}})
      << '\n';
}

fs::path meta_path(const fs::path& p) { return fs::path(p.string() + ".meta.json"); }

// Writes the stage outputs together with a provenance sidecar per output.
// The sidecar chain lists every upstream stage (taken from the inputs' own
// sidecars) followed by this one, each with content digests only.
class StageWriter {
 public:
  StageWriter(std::string stage, const PipelineConfig& cfg, const std::vector<std::string>& inputs)
      : stage_(std::move(stage)), config_(to_json(cfg)) {
    std::set<std::string> seen;
    for (const std::string& in : inputs) {
      input_digests_.push_back(io::sha256_hex(io::read_file(in)));
      std::error_code ec;
      if (!fs::exists(meta_path(in), ec)) continue;
      json upstream;
      try {
        upstream = io::read_json(meta_path(in));
      } catch (const DataError&) {
        continue;
      }
      if (!upstream.contains("chain") || !upstream["chain"].is_array()) continue;
      for (const json& entry : upstream["chain"]) {
        if (seen.insert(io::dump(entry)).second) chain_.push_back(entry);
      }
    }
  }

  void add(const std::string& role, const fs::path& path, std::string content) {
    outputs_.push_back({role, path, std::move(content)});
  }

  void commit() {
    json digests = json::object();
    for (const Output& o : outputs_) digests[o.role] = io::sha256_hex(o.content);
    json entry = {{"stage", stage_}, {"config", config_}, {"inputs", input_digests_},
                  {"outputs", digests}};
    json chain = chain_;
    chain.push_back(entry);
    for (const Output& o : outputs_) {
      io::write_file(o.path, o.content);
      json meta = entry;
      meta["output"] = digests[o.role];
      meta["chain"] = chain;
      io::write_file(meta_path(o.path), io::dump(meta) + "\n");
    }
  }

 private:
  struct Output {
    std::string role;
    fs::path path;
    std::string content;
  };
  std::string stage_;
  json config_;
  std::vector<std::string> input_digests_;
  json chain_ = json::array();
  std::vector<Output> outputs_;
};

std::vector<TableVector> read_vectors(const std::string& path) {
  return io::read_records<TableVector>(path, io::table_vector_from_json);
}

std::vector<CellGrid> read_grids(const std::string& path) {
  return io::read_records<CellGrid>(path, io::grid_from_json);
}

std::vector<PageText> read_texts(const std::string& path) {
  return io::read_records<PageText>(path, io::page_text_from_json);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliHooks& hooks) {
  CLI::App app{"webtab: web table embedding, clustering and classification"};
  app.require_subcommand(1);

  std::map<std::string, CommonOptions> commons;

  auto* extract = app.add_subcommand("extract", "pages.jsonl -> tables.jsonl (+ page text)");
  add_common(extract, commons[extract->get_name()]);
  std::string text_out;
  extract->add_option("--text-out", text_out, "page text output (JSONL)");
  std::size_t min_rows = 0, min_cols = 0;
  auto* min_rows_opt = extract->add_option("--min-rows", min_rows);
  auto* min_cols_opt = extract->add_option("--min-cols", min_cols);

  auto* preprocess = app.add_subcommand("preprocess", "tables.jsonl -> grids.jsonl");
  add_common(preprocess, commons[preprocess->get_name()]);

  auto* corpus = app.add_subcommand("corpus", "grids.jsonl [pagetext.jsonl] -> sentences.txt");
  add_common(corpus, commons[corpus->get_name()]);

  auto* train = app.add_subcommand("train", "sentences.txt -> wordspace.json");
  add_common(train, commons[train->get_name()]);
  std::size_t threads = 1;
  train->add_option("--threads", threads, "training workers (result is identical)");

  auto* vectorize = app.add_subcommand("vectorize", "grids.jsonl wordspace.json -> vectors.jsonl");
  add_common(vectorize, commons[vectorize->get_name()]);

  auto* cluster = app.add_subcommand(
      "cluster", "vectors.jsonl [tables.jsonl [grids.jsonl]] -> model.json + clusters file");
  add_common(cluster, commons[cluster->get_name()]);
  std::string clusters_out;
  cluster->add_option("--clusters-out", clusters_out,
                      "clusters-for-labeling output (default: <out stem>.clusters.json)");

  auto* classify = app.add_subcommand(
      "classify", "model.json labels.json -> predictions.jsonl, or with --knn: "
                  "train_vectors.jsonl truth.jsonl test_vectors.jsonl -> predictions.jsonl");
  add_common(classify, commons[classify->get_name()]);
  bool knn = false;
  classify->add_flag("--knn", knn, "supervised k-NN mode");

  auto* evaluate = app.add_subcommand(
      "evaluate", "predictions.jsonl truth.jsonl -> metrics.json, or with --cv: "
                  "vectors.jsonl truth.jsonl -> cross-validated metrics");
  add_common(evaluate, commons[evaluate->get_name()]);
  bool cv = false;
  evaluate->add_flag("--cv", cv, "k-fold cross-validation of the k-NN classifier");

  auto* sweep = app.add_subcommand("sweep", "grids.jsonl truth.jsonl [pagetext.jsonl] -> sweep.csv");
  add_common(sweep, commons[sweep->get_name()]);
  std::string dims_list, contexts_list, ks_list;
  sweep->add_option("--dims", dims_list, "comma separated dimensions");
  sweep->add_option("--contexts-grid", contexts_list, "comma separated context sets, e.g. C,CH,CHA");
  sweep->add_option("--ks", ks_list, "comma separated k values or auto");

  auto* serve = app.add_subcommand("serve-labeler", "serve the cluster labeling UI");
  std::string serve_clusters, serve_labels_out, serve_ui_dir, serve_host = "127.0.0.1";
  int serve_port = 8080;
  serve->add_option("--clusters", serve_clusters, "clusters-for-labeling file")->required();
  serve->add_option("--port", serve_port, "port, 0 for any free port");
  serve->add_option("--labels-out", serve_labels_out, "where exported labels are saved")->required();
  serve->add_option("--ui-dir", serve_ui_dir, "directory with the built UI");
  serve->add_option("--host", serve_host, "bind address");

  auto* synth = app.add_subcommand("synth", "generate the synthetic benchmark corpus");
  add_common(synth, commons[synth->get_name()]);
  std::string truth_out;
  std::size_t per_type = 200;
  synth->add_option("--truth-out", truth_out, "ground truth output (JSONL)")->required();
  synth->add_option("--per-type", per_type, "tables per archetype");

  auto* autolabel = app.add_subcommand(
      "autolabel", "clusters.json truth.jsonl -> labels.json (majority truth of representatives)");
  add_common(autolabel, commons[autolabel->get_name()]);

  std::vector<const char*> argv;
  argv.push_back("webtab");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const std::string stage = app.get_subcommands().front()->get_name();
  const CommonOptions& common = commons[stage];
  try {
    if (extract->parsed()) {
      PipelineConfig cfg = resolve_config(common);
      if (min_rows_opt->count()) cfg.min_rows = min_rows;
      if (min_cols_opt->count()) cfg.min_cols = min_cols;
      cfg.validate();
      require_inputs(common, 1, 1, "pages.jsonl");
      require_out(common);
      const auto pages = io::read_records<RawPage>(common.in[0], io::page_from_json);
      const ExtractOutput result = extract_pages(pages, cfg);
      for (const Diagnostic& d : result.diagnostics) emit(err, d);
      StageWriter w("extract", cfg, common.in);
      w.add("tables", common.out, io::to_jsonl(result.tables));
      if (!text_out.empty()) w.add("pagetext", text_out, io::to_jsonl(result.texts));
      w.commit();
    } else if (preprocess->parsed()) {
      const PipelineConfig cfg = resolve_config(common);
      require_inputs(common, 1, 1, "tables.jsonl");
      require_out(common);
      const auto tables = io::read_records<ExtractedTable>(common.in[0], io::table_from_json);
      std::vector<Diagnostic> diags;
      const auto grids = preprocess_tables(tables, cfg, diags);
      for (const Diagnostic& d : diags) emit(err, d);
      StageWriter w("preprocess", cfg, common.in);
      w.add("grids", common.out, io::to_jsonl(grids));
      w.commit();
    } else if (corpus->parsed()) {
      const PipelineConfig cfg = resolve_config(common);
      require_inputs(common, 1, 2, "grids.jsonl [pagetext.jsonl]");
      require_out(common);
      const auto grids = read_grids(common.in[0]);
      std::vector<PageText> texts;
      if (common.in.size() > 1) texts = read_texts(common.in[1]);
      const ContextConfig cc = cfg.context_config();
      if (cc.use_surrounding && common.in.size() < 2) {
        throw UsageError("context T needs a page text input");
      }
      const auto sentences = build_corpus(grids, texts, cc);
      std::ostringstream buf;
      write_corpus(buf, sentences);
      StageWriter w("corpus", cfg, common.in);
      w.add("sentences", common.out, buf.str());
      w.commit();
    } else if (train->parsed()) {
      const PipelineConfig cfg = resolve_config(common);
      require_inputs(common, 1, 1, "sentences.txt");
      require_out(common);
      std::istringstream in(io::read_file(common.in[0]));
      const auto sentences = read_corpus(in);
      RIConfig ri = cfg.ri_config();
      if (threads == 0) throw UsageError("--threads must be >= 1");
      ri.threads = threads;
      const WordSpace space = train_word_space(sentences, ri);
      StageWriter w("train", cfg, common.in);
      w.add("wordspace", common.out, io::dump(to_json(space)) + "\n");
      w.commit();
    } else if (vectorize->parsed()) {
      const PipelineConfig cfg = resolve_config(common);
      require_inputs(common, 2, 2, "grids.jsonl wordspace.json");
      require_out(common);
      const auto grids = read_grids(common.in[0]);
      const WordSpace space = word_space_from_json(io::read_json(common.in[1]));
      StageWriter w("vectorize", cfg, common.in);
      w.add("vectors", common.out, io::to_jsonl(vectorize_grids(grids, space)));
      w.commit();
    } else if (cluster->parsed()) {
      const PipelineConfig cfg = resolve_config(common);
      require_inputs(common, 1, 3, "vectors.jsonl [tables.jsonl [grids.jsonl]]");
      require_out(common);
      const auto vectors = read_vectors(common.in[0]);
      const Clustering clustering = cluster_vectors(vectors, cfg);
      std::map<std::string, std::string> html_by_id;
      if (common.in.size() > 1) {
        for (auto& t : io::read_records<ExtractedTable>(common.in[1], io::table_from_json)) {
          html_by_id[t.table_id] = std::move(t.html_fragment);
        }
      }
      std::vector<CellGrid> grids;
      std::map<std::string, const CellGrid*> grid_by_id;
      if (common.in.size() > 2) {
        grids = read_grids(common.in[2]);
        for (const CellGrid& g : grids) grid_by_id[g.table_id] = &g;
      }
      fs::path clusters_path = clusters_out;
      if (clusters_path.empty()) {
        clusters_path = fs::path(common.out).replace_extension().string() + ".clusters.json";
      }
      json model = to_json(clustering.model);
      json sweep_json = json::array();
      for (const auto& [k, s] : clustering.sweep) sweep_json.push_back({{"k", k}, {"silhouette", s}});
      model["k_sweep"] = std::move(sweep_json);
      StageWriter w("cluster", cfg, common.in);
      w.add("model", common.out, io::dump(model) + "\n");
      w.add("clusters", clusters_path,
            io::dump(clusters_document(clustering, html_by_id, grid_by_id)) + "\n");
      w.commit();
    } else if (classify->parsed()) {
      const PipelineConfig cfg = resolve_config(common);
      require_out(common);
      Labeling predictions;
      if (knn) {
        require_inputs(common, 3, 3, "train_vectors.jsonl truth.jsonl test_vectors.jsonl");
        const auto train_all = read_vectors(common.in[0]);
        const GroundTruth truth = io::read_labeling(common.in[1], false);
        const auto test = read_vectors(common.in[2]);
        std::vector<TableVector> train_vectors;
        std::vector<TableType> train_labels;
        for (const TableVector& v : train_all) {
          auto it = truth.find(v.table_id);
          if (it == truth.end()) continue;
          train_vectors.push_back(v);
          train_labels.push_back(it->second);
        }
        if (train_vectors.empty()) throw DataError("no labeled training vectors");
        std::size_t k = cfg.knn_k;
        if (k > train_vectors.size()) {
          emit(err, {"classify", "", "knn_k clamped to " + std::to_string(train_vectors.size())});
          k = train_vectors.size();
        }
        const auto labels = knn_classify(train_vectors, train_labels, test, k);
        for (std::size_t i = 0; i < test.size(); ++i) predictions[test[i].table_id] = labels[i];
      } else {
        require_inputs(common, 2, 2, "model.json labels.json");
        const ClusterModel model = cluster_model_from_json(io::read_json(common.in[0]));
        const LabelMap labels = label_map_from_json(io::read_json(common.in[1]));
        predictions = apply_labels(model, labels);
      }
      StageWriter w("classify", cfg, common.in);
      w.add("predictions", common.out, io::labeling_jsonl(predictions));
      w.commit();
    } else if (evaluate->parsed()) {
      const PipelineConfig cfg = resolve_config(common);
      require_out(common);
      json result;
      if (cv) {
        require_inputs(common, 2, 2, "vectors.jsonl truth.jsonl");
        const auto vectors = read_vectors(common.in[0]);
        const GroundTruth truth = io::read_labeling(common.in[1], false);
        const CrossValidation r = cross_validate(vectors, truth, cfg.folds, cfg.knn_k, cfg.seed);
        for (const std::string& wmsg : r.warnings) emit(err, {"evaluate", "", wmsg});
        result = to_json(r.metrics);
        result["folds"] = r.folds;
        result["fold_of"] = r.fold_of;
      } else {
        require_inputs(common, 2, 2, "predictions.jsonl truth.jsonl");
        const Labeling predicted = io::read_labeling(common.in[0], true);
        const GroundTruth truth = io::read_labeling(common.in[1], false);
        result = to_json(score(predicted, truth));
      }
      out << "micro_f1 " << result["micro_f1"].get<double>() << '\n';
      StageWriter w("evaluate", cfg, common.in);
      w.add("metrics", common.out, io::dump(result) + "\n");
      w.commit();
    } else if (sweep->parsed()) {
      const PipelineConfig cfg = resolve_config(common);
      require_inputs(common, 2, 3, "grids.jsonl truth.jsonl [pagetext.jsonl]");
      require_out(common);
      const auto grids = read_grids(common.in[0]);
      const GroundTruth truth = io::read_labeling(common.in[1], false);
      std::vector<PageText> texts;
      if (common.in.size() > 2) texts = read_texts(common.in[2]);
      std::vector<std::size_t> dims;
      for (const std::string& d : split_list(dims_list)) {
        const auto v = parse_k(d);
        if (!v || *v == 0) throw UsageError("--dims expects positive integers");
        dims.push_back(*v);
      }
      if (dims.empty()) dims.push_back(cfg.dim);
      std::vector<std::string> contexts;
      for (const std::string& c : split_list(contexts_list)) {
        ContextConfig probe;
        set_contexts(probe, c);
        if (probe.use_surrounding && texts.empty()) throw UsageError("context T needs a page text input");
        contexts.push_back(c);
      }
      if (contexts.empty()) contexts.push_back(cfg.contexts);
      std::vector<std::size_t> ks;
      for (const std::string& k : split_list(ks_list)) ks.push_back(parse_k(k).value_or(0));
      if (ks.empty()) ks.push_back(cfg.k.value_or(0));
      const auto rows = parameter_sweep(grids, texts, truth, dims, contexts, ks, cfg);
      for (const SweepRow& r : rows) {
        if (!r.diagnostic.empty()) emit(err, {"sweep", r.setting, r.diagnostic});
      }
      StageWriter w("sweep", cfg, common.in);
      w.add("sweep", common.out, sweep_csv(rows));
      w.commit();
    } else if (synth->parsed()) {
      const PipelineConfig cfg = resolve_config(common);
      require_out(common);
      if (per_type == 0) throw UsageError("--per-type must be >= 1");
      SyntheticOptions so;
      so.tables_per_type = per_type;
      so.seed = cfg.seed;
      const SyntheticCorpus corpus = generate_synthetic_corpus(so);
      StageWriter w("synth", cfg, {});
      w.add("pages", common.out, io::to_jsonl(corpus.pages));
      w.add("truth", truth_out, io::labeling_jsonl(corpus.truth));
      w.commit();
    } else if (autolabel->parsed()) {
      const PipelineConfig cfg = resolve_config(common);
      require_inputs(common, 2, 2, "clusters.json truth.jsonl");
      require_out(common);
      const json doc = io::read_json(common.in[0]);
      validate_clusters_document(doc);
      const GroundTruth truth = io::read_labeling(common.in[1], false);
      Representatives reps;
      for (const json& c : doc["clusters"]) {
        const std::size_t id = c["id"].get<std::size_t>();
        if (reps.size() <= id) reps.resize(id + 1);
        for (const json& r : c["representatives"]) reps[id].push_back(r["table_id"].get<std::string>());
      }
      StageWriter w("autolabel", cfg, common.in);
      w.add("labels", common.out, io::dump(to_json(oracle_labels(reps, truth))) + "\n");
      w.commit();
    } else if (serve->parsed()) {
      LabelerServerOptions so;
      so.clusters = serve_clusters;
      so.labels_out = serve_labels_out;
      if (!serve_ui_dir.empty()) so.ui_dir = serve_ui_dir;
      so.host = serve_host;
      so.port = serve_port;
      LabelerServer server(so);
      const int port = server.bind();
      out << "listening on http://" << serve_host << ":" << port << "/" << std::endl;
      if (hooks.on_listen) hooks.on_listen(server, port);
      server.listen();
    }
  } catch (const UsageError& e) {
    err << io::dump({{"level", "error"}, {"stage", stage}, {"message", e.what()}}) << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << io::dump({{"level", "error"}, {"stage", stage}, {"message", e.what()}}) << '\n';
    return 2;
  }
  return 0;
}

}  // namespace webtab
