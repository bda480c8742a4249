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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "webtab/cluster.hpp"
#include "webtab/context.hpp"
#include "webtab/diagnostic.hpp"
#include "webtab/evaluation.hpp"
#include "webtab/extract.hpp"
#include "webtab/preprocess.hpp"
#include "webtab/random_indexing.hpp"
#include "webtab/vectorize.hpp"

namespace webtab {

// Shared settings for every stage. Serialized into each output's sidecar.
struct PipelineConfig {
  std::uint64_t seed = 0;
  std::size_t dim = 200;
  std::size_t ri_window = 2;
  std::size_t adjacency_window = 1;
  std::string contexts = "C";
  bool regularize_digits = true;
  std::size_t min_rows = kDefaultMinRows;
  std::size_t min_cols = kDefaultMinCols;
  std::optional<std::size_t> k;  // nullopt: select by silhouette
  std::vector<std::size_t> k_candidates = kDefaultKCandidates;
  std::size_t reps_m = 5;
  std::size_t knn_k = 5;
  std::size_t folds = 10;
  std::size_t min_count = 3;
  double max_sentence_fraction = 0.3;
  std::size_t pair_sample_cap = 50;

  ContextConfig context_config() const;
  RIConfig ri_config() const;
  PreprocessOptions preprocess_options() const;
  // Throws UsageError on invalid values.
  void validate() const;
};

nlohmann::json to_json(const PipelineConfig& cfg);
// Missing keys keep their defaults; unknown keys are rejected.
PipelineConfig pipeline_config_from_json(const nlohmann::json& j);

// Duplicate page ids after the first are skipped with a diagnostic.
struct ExtractOutput {
  std::vector<ExtractedTable> tables;
  std::vector<PageText> texts;
  std::vector<Diagnostic> diagnostics;
};
ExtractOutput extract_pages(std::span<const RawPage> pages, const PipelineConfig& cfg);

// Tables that fail to normalize are dropped with a diagnostic.
std::vector<CellGrid> preprocess_tables(std::span<const ExtractedTable> tables,
                                        const PipelineConfig& cfg,
                                        std::vector<Diagnostic>& diagnostics);

std::vector<TableVector> vectorize_grids(std::span<const CellGrid> grids, const WordSpace& space);

struct Clustering {
  ClusterModel model;
  std::vector<std::pair<std::size_t, double>> sweep;  // empty for a fixed k
  Representatives reps;
};
// Fixed k when cfg.k is set, otherwise silhouette selection over
// cfg.k_candidates (clamped to the number of vectors).
Clustering cluster_vectors(std::span<const TableVector> vectors, const PipelineConfig& cfg);

// Labels each cluster with the majority truth label of its representatives.
// Representatives without a truth label do not vote; a cluster with no
// votes is left unlabeled.
LabelMap oracle_labels(const Representatives& reps, const GroundTruth& truth);

// The clusters-for-labeling document consumed by the labeling UI.
nlohmann::json clusters_document(const Clustering& clustering,
                                 const std::map<std::string, std::string>& html_by_id,
                                 const std::map<std::string, const CellGrid*>& grid_by_id);

struct SweepRow {
  std::string setting;
  std::size_t dim = 0;
  std::string contexts;
  std::string k;  // number or "auto"
  double micro_f1 = 0.0;
  std::map<TableType, double> f1;
  std::optional<double> silhouette;
  std::string diagnostic;
};

// Rebuilds corpus, word space, vectors and clusters for every
// (dim, contexts, k) combination and scores oracle-labeled clusters against
// truth. A k of 0 means silhouette selection. Failures (for instance an
// empty vocabulary) become rows with micro_f1 0 and a diagnostic.
std::vector<SweepRow> parameter_sweep(std::span<const CellGrid> grids,
                                      std::span<const PageText> page_texts,
                                      const GroundTruth& truth, std::span<const std::size_t> dims,
                                      std::span<const std::string> contexts,
                                      std::span<const std::size_t> ks, const PipelineConfig& base);

std::string sweep_csv(std::span<const SweepRow> rows);

}  // namespace webtab
