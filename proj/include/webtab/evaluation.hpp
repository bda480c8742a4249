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
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "webtab/table_type.hpp"
#include "webtab/vectorize.hpp"

namespace webtab {

using Labeling = std::map<std::string, TableType>;  // table_id -> type
using GroundTruth = Labeling;                       // never contains unknown

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;  // true instances
};

struct Metrics {
  std::vector<TableType> classes;  // truth and predicted labels, enum order
  std::map<TableType, ClassScores> per_class;
  double micro_f1 = 0.0;
  // rows: true label, columns: predicted label, both indexed like classes;
  // each row sums to 1, or to 0 when that class has no true instances.
  std::vector<std::vector<double>> confusion;
  std::size_t total = 0;
};

// Truth ids without a prediction count as predicted unknown. Throws
// DataError for an empty truth set or a truth label of unknown.
Metrics score(const Labeling& predictions, const GroundTruth& truth);

struct CrossValidation {
  Metrics metrics;
  std::size_t folds = 0;                  // folds actually used
  std::map<std::string, std::size_t> fold_of;
  Labeling predictions;
  std::vector<std::string> warnings;
};

// Stratified k-fold split (per-class seeded shuffle, dealt round-robin),
// k-NN per fold, predictions pooled and scored once. Only vectors with a
// truth label take part. Throws UsageError for folds < 2 and DataError when
// there are fewer labeled vectors than folds.
CrossValidation cross_validate(std::span<const TableVector> vectors, const GroundTruth& truth,
                               std::size_t folds = 10, std::size_t knn_k = 5,
                               std::uint64_t seed = 0);

nlohmann::json to_json(const Metrics& metrics);

}  // namespace webtab
