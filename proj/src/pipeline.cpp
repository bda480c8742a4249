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

#include "webtab/pipeline.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "webtab/error.hpp"
#include "webtab/io.hpp"

namespace webtab {

ContextConfig PipelineConfig::context_config() const {
  ContextConfig c;
  set_contexts(c, contexts);
  c.adjacency_window = adjacency_window;
  c.pair_sample_cap = pair_sample_cap;
  c.rng_seed = seed;
  c.regularize_digits = regularize_digits;
  return c;
}

RIConfig PipelineConfig::ri_config() const {
  RIConfig r;
  r.dim = dim;
  r.window = ri_window;
  r.seed = seed;
  r.min_count = min_count;
  r.max_sentence_fraction = max_sentence_fraction;
  return r;
}

PreprocessOptions PipelineConfig::preprocess_options() const {
  PreprocessOptions o;
  o.regularize_digits = regularize_digits;
  return o;
}

void PipelineConfig::validate() const {
  context_config().validate();
  ri_config().validate();
  if (min_rows == 0 || min_cols == 0) throw UsageError("min_rows/min_cols must be >= 1");
  if (k && *k == 0) throw UsageError("k must be >= 1");
  if (!k) {
    if (k_candidates.empty()) throw UsageError("k is auto but no candidates are configured");
    for (std::size_t c : k_candidates) {
      if (c < 2) throw UsageError("k candidates must be >= 2");
    }
  }
  if (reps_m == 0) throw UsageError("reps must be >= 1");
  if (knn_k == 0) throw UsageError("knn_k must be >= 1");
  if (folds < 2) throw UsageError("folds must be >= 2");
}

nlohmann::json to_json(const PipelineConfig& cfg) {
  return {{"seed", cfg.seed},
          {"dim", cfg.dim},
          {"ri_window", cfg.ri_window},
          {"adjacency_window", cfg.adjacency_window},
          {"contexts", cfg.contexts},
          {"regularize_digits", cfg.regularize_digits},
          {"min_rows", cfg.min_rows},
          {"min_cols", cfg.min_cols},
          {"k", cfg.k ? nlohmann::json(*cfg.k) : nlohmann::json("auto")},
          {"k_candidates", cfg.k_candidates},
          {"reps_m", cfg.reps_m},
          {"knn_k", cfg.knn_k},
          {"folds", cfg.folds},
          {"min_count", cfg.min_count},
          {"max_sentence_fraction", cfg.max_sentence_fraction},
          {"pair_sample_cap", cfg.pair_sample_cap}};
}

PipelineConfig pipeline_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  PipelineConfig cfg;
  static const std::set<std::string> known = {
      "seed", "dim", "ri_window", "adjacency_window", "contexts", "regularize_digits",
      "min_rows", "min_cols", "k", "k_candidates", "reps_m", "knn_k", "folds", "min_count",
      "max_sentence_fraction", "pair_sample_cap"};
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!known.count(it.key())) throw UsageError("unknown config key '" + it.key() + "'");
    }
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j[key].get<std::decay_t<decltype(field)>>();
    };
    get("seed", cfg.seed);
    get("dim", cfg.dim);
    get("ri_window", cfg.ri_window);
    get("adjacency_window", cfg.adjacency_window);
    get("contexts", cfg.contexts);
    get("regularize_digits", cfg.regularize_digits);
    get("min_rows", cfg.min_rows);
    get("min_cols", cfg.min_cols);
    get("k_candidates", cfg.k_candidates);
    get("reps_m", cfg.reps_m);
    get("knn_k", cfg.knn_k);
    get("folds", cfg.folds);
    get("min_count", cfg.min_count);
    get("max_sentence_fraction", cfg.max_sentence_fraction);
    get("pair_sample_cap", cfg.pair_sample_cap);
    if (j.contains("k")) {
      if (j["k"].is_string()) {
        if (j["k"].get<std::string>() != "auto") throw UsageError("k must be an integer or \"auto\"");
        cfg.k.reset();
      } else {
        cfg.k = j["k"].get<std::size_t>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExtractOutput extract_pages(std::span<const RawPage> pages, const PipelineConfig& cfg) {
  ExtractOutput out;
  std::set<std::string> seen;
  for (const RawPage& page : pages) {
    if (page.page_id.empty()) {
      out.diagnostics.push_back({"extract", "", "page with empty page_id skipped"});
      continue;
    }
    if (!seen.insert(page.page_id).second) {
      out.diagnostics.push_back({"extract", page.page_id, "duplicate page_id skipped"});
      continue;
    }
    ExtractResult r = extract_tables(page, cfg.min_rows, cfg.min_cols);
    std::move(r.tables.begin(), r.tables.end(), std::back_inserter(out.tables));
    std::move(r.diagnostics.begin(), r.diagnostics.end(), std::back_inserter(out.diagnostics));
    out.texts.push_back(extract_page_text(page));
  }
  return out;
}

std::vector<CellGrid> preprocess_tables(std::span<const ExtractedTable> tables,
                                        const PipelineConfig& cfg,
                                        std::vector<Diagnostic>& diagnostics) {
  const PreprocessOptions opts = cfg.preprocess_options();
  std::vector<CellGrid> grids;
  grids.reserve(tables.size());
  for (const ExtractedTable& t : tables) {
    try {
      grids.push_back(normalize_table(t, opts));
    } catch (const DataError& e) {
      diagnostics.push_back({"preprocess", t.table_id, e.what()});
    }
  }
  return grids;
}

std::vector<TableVector> vectorize_grids(std::span<const CellGrid> grids, const WordSpace& space) {
  std::vector<TableVector> out;
  out.reserve(grids.size());
  for (const CellGrid& g : grids) out.push_back(table_vector(g, space));
  return out;
}

Clustering cluster_vectors(std::span<const TableVector> vectors, const PipelineConfig& cfg) {
  Clustering result;
  if (cfg.k) {
    result.model = kmeans_fit(vectors, *cfg.k, cfg.seed);
    if (*cfg.k >= 2) {
      result.model.silhouette = silhouette_score(vectors, result.model.labels, cfg.seed);
    }
  } else {
    std::vector<std::size_t> candidates;
    for (std::size_t c : cfg.k_candidates) {
      if (c <= vectors.size()) candidates.push_back(c);
    }
    if (candidates.empty()) throw DataError("insufficient points");
    KSelection sel = select_k(vectors, candidates, cfg.seed);
    result.model = std::move(sel.model);
    result.sweep = std::move(sel.sweep);
  }
  result.reps = representatives(result.model, vectors, cfg.reps_m);
  return result;
}

LabelMap oracle_labels(const Representatives& reps, const GroundTruth& truth) {
  LabelMap labels;
  for (std::size_t c = 0; c < reps.size(); ++c) {
    std::vector<TableType> votes;
    for (const std::string& id : reps[c]) {
      auto it = truth.find(id);
      if (it != truth.end()) votes.push_back(it->second);
    }
    if (!votes.empty()) labels[c] = majority_label(votes);
  }
  return labels;
}

nlohmann::json clusters_document(const Clustering& clustering,
                                 const std::map<std::string, std::string>& html_by_id,
                                 const std::map<std::string, const CellGrid*>& grid_by_id) {
  std::vector<std::size_t> sizes(clustering.model.k, 0);
  for (std::size_t c : clustering.model.labels) ++sizes[c];
  nlohmann::json clusters = nlohmann::json::array();
  for (std::size_t c = 0; c < clustering.model.k; ++c) {
    nlohmann::json reps = nlohmann::json::array();
    for (const std::string& id : clustering.reps[c]) {
      auto h = html_by_id.find(id);
      auto g = grid_by_id.find(id);
      reps.push_back({{"table_id", id},
                      {"html", h == html_by_id.end() ? std::string() : h->second},
                      {"grid", g == grid_by_id.end() ? nlohmann::json::array()
                                                     : io::grid_tokens_json(*g->second)}});
    }
    clusters.push_back({{"id", c}, {"size", sizes[c]}, {"representatives", std::move(reps)}});
  }
  return {{"clusters", std::move(clusters)}};
}

std::vector<SweepRow> parameter_sweep(std::span<const CellGrid> grids,
                                      std::span<const PageText> page_texts,
                                      const GroundTruth& truth, std::span<const std::size_t> dims,
                                      std::span<const std::string> contexts,
                                      std::span<const std::size_t> ks, const PipelineConfig& base) {
  std::vector<SweepRow> rows;
  for (const std::string& ctx : contexts) {
    PipelineConfig ctx_cfg = base;
    ctx_cfg.contexts = ctx;
    const ContextConfig cc = ctx_cfg.context_config();
    const std::vector<Sentence> corpus = build_corpus(grids, page_texts, cc);
    for (std::size_t d : dims) {
      PipelineConfig dim_cfg = ctx_cfg;
      dim_cfg.dim = d;
      std::optional<std::vector<TableVector>> vectors;
      std::string failure;
      try {
        const WordSpace space = train_word_space(corpus, dim_cfg.ri_config());
        vectors = vectorize_grids(grids, space);
      } catch (const std::exception& e) {
        failure = e.what();
      }
      for (std::size_t k : ks) {
        SweepRow row;
        row.dim = d;
        row.contexts = contexts_string(cc);
        row.k = k == 0 ? "auto" : std::to_string(k);
        row.setting = "d=" + std::to_string(d) + ";ctx=" + row.contexts + ";k=" + row.k;
        if (!vectors) {
          row.diagnostic = failure;
          rows.push_back(std::move(row));
          continue;
        }
        try {
          PipelineConfig run_cfg = dim_cfg;
          if (k == 0) {
            run_cfg.k.reset();
          } else {
            run_cfg.k = k;
          }
          const Clustering clustering = cluster_vectors(*vectors, run_cfg);
          const Labeling predicted = apply_labels(clustering.model, oracle_labels(clustering.reps, truth));
          GroundTruth scored;
          for (const auto& v : *vectors) {
            auto it = truth.find(v.table_id);
            if (it != truth.end()) scored.insert(*it);
          }
          const Metrics m = score(predicted, scored);
          row.micro_f1 = m.micro_f1;
          for (const auto& [type, s] : m.per_class) {
            if (type != TableType::unknown) row.f1[type] = s.f1;
          }
          row.silhouette = clustering.model.silhouette;
        } catch (const std::exception& e) {
          row.diagnostic = e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  static const TableType kTypes[] = {TableType::relational, TableType::entity, TableType::matrix,
                                     TableType::list, TableType::non_data};
  std::ostringstream out;
  out.precision(17);
  out << "setting,dim,contexts,k,micro_f1";
  for (TableType t : kTypes) out << ",f1_" << to_string(t);
  out << ",silhouette,diagnostic\n";
  for (const SweepRow& r : rows) {
    out << r.setting << ',' << r.dim << ',' << r.contexts << ',' << r.k << ',' << r.micro_f1;
    for (TableType t : kTypes) {
      out << ',';
      auto it = r.f1.find(t);
      if (it != r.f1.end()) out << it->second;
    }
    out << ',';
    if (r.silhouette) out << *r.silhouette;
    std::string diag = r.diagnostic;
    std::replace(diag.begin(), diag.end(), '"', '\'');
    out << ",\"" << diag << "\"\n";
  }
  return out.str();
}

}  // namespace webtab
