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

#include "webtab/table_type.hpp"
#include "webtab/vectorize.hpp"

namespace webtab {

struct ClusterModel {
  std::size_t k = 0;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> centroids;
  std::vector<std::string> table_ids;  // fit order
  std::vector<std::size_t> labels;     // cluster per table, parallel to table_ids
  double inertia = 0.0;
  std::vector<double> inertia_trace;  // after each assignment step
  std::optional<double> silhouette;

  std::map<std::string, std::size_t> assignments() const;
};

struct KMeansOptions {
  std::size_t max_iter = 100;
  double tol = 1e-4;
};

// Lloyd iterations from distance-proportional seeding. Stops when the
// relative inertia improvement drops below tol or after max_iter rounds; the
// returned labels are always nearest-centroid assignments for the returned
// centroids. Throws DataError("insufficient points") when fewer than k
// vectors are given, UsageError for k == 0.
ClusterModel kmeans_fit(std::span<const TableVector> vectors, std::size_t k, std::uint64_t seed,
                        KMeansOptions opts = {});

inline constexpr std::size_t kSilhouetteSampleLimit = 5000;

// Mean silhouette coefficient (Euclidean). Points in singleton clusters
// score 0. Inputs above sample_limit are subsampled with the seeded
// generator. Throws DataError("silhouette undefined") for fewer than two
// clusters.
double silhouette_score(std::span<const TableVector> vectors,
                        std::span<const std::size_t> assignments, std::uint64_t seed = 0,
                        std::size_t sample_limit = kSilhouetteSampleLimit);

inline const std::vector<std::size_t> kDefaultKCandidates = {4, 6, 8, 10, 12, 14};

struct KSelection {
  std::size_t k = 0;
  std::vector<std::pair<std::size_t, double>> sweep;  // (k, silhouette), ascending k
  ClusterModel model;                                 // fit for the chosen k
};

// Fits every candidate and keeps the best silhouette; ties go to the
// smaller k. Candidates must be >= 2.
KSelection select_k(std::span<const TableVector> vectors,
                    std::span<const std::size_t> candidates, std::uint64_t seed,
                    KMeansOptions opts = {});

// Per cluster, up to m member ids ordered by distance to the centroid, ties
// broken by table_id.
using Representatives = std::vector<std::vector<std::string>>;
Representatives representatives(const ClusterModel& model, std::span<const TableVector> vectors,
                                std::size_t m = 5);

using LabelMap = std::map<std::size_t, TableType>;

// Most frequent vote; a tie for the top count yields unknown.
TableType majority_label(std::span<const TableType> votes);

// Throws DataError("invalid cluster") for a label on a cluster index >= k.
std::map<std::string, TableType> apply_labels(const ClusterModel& model, const LabelMap& labels);

// Euclidean k-NN majority vote. Vote ties go to the label of the nearest
// neighbour among the tied labels. Neighbour ranking ties are broken by the
// vector contents, so the result does not depend on training-set order.
std::vector<TableType> knn_classify(std::span<const TableVector> train,
                                    std::span<const TableType> train_labels,
                                    std::span<const TableVector> queries, std::size_t k = 5);

nlohmann::json to_json(const ClusterModel& model);
ClusterModel cluster_model_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LabelMap& labels);
LabelMap label_map_from_json(const nlohmann::json& j);

}  // namespace webtab
