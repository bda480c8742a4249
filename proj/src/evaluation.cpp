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

#include "webtab/evaluation.hpp"

#include <algorithm>
#include <set>

#include "webtab/cluster.hpp"
#include "webtab/error.hpp"
#include "webtab/rng.hpp"

namespace webtab {

Metrics score(const Labeling& predictions, const GroundTruth& truth) {
  if (truth.empty()) throw DataError("empty groundtruth");
  std::set<TableType> present;
  std::vector<std::pair<TableType, TableType>> pairs;  // (true, predicted)
  pairs.reserve(truth.size());
  for (const auto& [id, actual] : truth) {
    if (actual == TableType::unknown) throw DataError("groundtruth label for " + id + " is unknown");
    auto it = predictions.find(id);
    const TableType predicted = it == predictions.end() ? TableType::unknown : it->second;
    pairs.emplace_back(actual, predicted);
    present.insert(actual);
    present.insert(predicted);
  }

  Metrics m;
  m.classes.assign(present.begin(), present.end());
  m.total = pairs.size();
  auto index_of = [&](TableType t) {
    return static_cast<std::size_t>(std::find(m.classes.begin(), m.classes.end(), t) - m.classes.begin());
  };
  const std::size_t c = m.classes.size();
  std::vector<std::vector<std::size_t>> counts(c, std::vector<std::size_t>(c, 0));
  for (const auto& [actual, predicted] : pairs) ++counts[index_of(actual)][index_of(predicted)];

  std::size_t tp_total = 0, fp_total = 0, fn_total = 0;
  m.confusion.assign(c, std::vector<double>(c, 0.0));
  for (std::size_t a = 0; a < c; ++a) {
    std::size_t tp = counts[a][a], fp = 0, fn = 0, support = 0;
    for (std::size_t b = 0; b < c; ++b) {
      support += counts[a][b];
      if (b != a) {
        fn += counts[a][b];
        fp += counts[b][a];
      }
    }
    ClassScores s;
    s.support = support;
    s.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    s.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    s.f1 = tp > 0 ? 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn) : 0.0;
    m.per_class[m.classes[a]] = s;
    tp_total += tp;
    fp_total += fp;
    fn_total += fn;
    if (support > 0) {
      for (std::size_t b = 0; b < c; ++b) {
        m.confusion[a][b] = static_cast<double>(counts[a][b]) / static_cast<double>(support);
      }
    }
  }
  const double denom = static_cast<double>(tp_total) + 0.5 * static_cast<double>(fp_total + fn_total);
  m.micro_f1 = denom > 0.0 ? static_cast<double>(tp_total) / denom : 0.0;
  return m;
}

CrossValidation cross_validate(std::span<const TableVector> vectors, const GroundTruth& truth,
                               std::size_t folds, std::size_t knn_k, std::uint64_t seed) {
  if (folds < 2) throw UsageError("cross-validation needs at least 2 folds");
  CrossValidation cv;

  std::map<TableType, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    auto it = truth.find(vectors[i].table_id);
    if (it == truth.end()) continue;
    if (it->second == TableType::unknown) throw DataError("groundtruth label is unknown");
    by_class[it->second].push_back(i);
  }
  std::size_t labeled = 0;
  std::size_t smallest = vectors.size();
  for (auto& [type, members] : by_class) {
    labeled += members.size();
    smallest = std::min(smallest, members.size());
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return vectors[a].table_id < vectors[b].table_id;
    });
  }
  if (labeled < folds) throw DataError("fewer labeled vectors than folds");
  if (labeled < truth.size()) {
    cv.warnings.push_back(std::to_string(truth.size() - labeled) + " groundtruth ids have no vector");
  }
  if (smallest < folds) {
    const std::size_t reduced = std::max<std::size_t>(2, smallest);
    cv.warnings.push_back("smallest class has " + std::to_string(smallest) + " members; folds reduced from " +
                          std::to_string(folds) + " to " + std::to_string(reduced));
    folds = reduced;
  }
  cv.folds = folds;

  Rng rng(seed);
  std::vector<std::size_t> fold(vectors.size(), folds);
  std::size_t dealer = 0;
  for (auto& [type, members] : by_class) {
    rng.shuffle(members.begin(), members.end());
    for (std::size_t idx : members) fold[idx] = dealer++ % folds;
  }

  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<TableVector> train, test;
    std::vector<TableType> train_labels;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (fold[i] == folds) continue;
      if (fold[i] == f) {
        test.push_back(vectors[i]);
      } else {
        train.push_back(vectors[i]);
        train_labels.push_back(truth.at(vectors[i].table_id));
      }
    }
    if (test.empty()) continue;
    std::size_t k = knn_k;
    if (k > train.size()) {
      cv.warnings.push_back("fold " + std::to_string(f) + ": knn k clamped to " + std::to_string(train.size()));
      k = train.size();
    }
    const auto predicted = knn_classify(train, train_labels, test, k);
    for (std::size_t t = 0; t < test.size(); ++t) {
      cv.predictions[test[t].table_id] = predicted[t];
      cv.fold_of[test[t].table_id] = f;
    }
  }

  GroundTruth used;
  for (const auto& [type, members] : by_class) {
    for (std::size_t idx : members) used[vectors[idx].table_id] = type;
  }
  cv.metrics = score(cv.predictions, used);
  return cv;
}

nlohmann::json to_json(const Metrics& metrics) {
  nlohmann::json per_class = nlohmann::json::object();
  std::vector<std::string> classes;
  for (TableType t : metrics.classes) {
    const ClassScores& s = metrics.per_class.at(t);
    classes.emplace_back(to_string(t));
    per_class[std::string(to_string(t))] = {
        {"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}, {"support", s.support}};
  }
  return {{"micro_f1", metrics.micro_f1},
          {"total", metrics.total},
          {"classes", classes},
          {"per_class", per_class},
          {"confusion", metrics.confusion}};
}

}  // namespace webtab
