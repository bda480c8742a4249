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

#include "webtab/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "webtab/error.hpp"
#include "webtab/kernels.hpp"
#include "webtab/rng.hpp"

namespace webtab {
namespace {

std::size_t nearest(std::span<const double> point, const std::vector<std::vector<double>>& centroids,
                    double* dist_out) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = simd::squared_distance(point, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  if (dist_out != nullptr) *dist_out = best_d;
  return best;
}

std::vector<std::vector<double>> seed_centroids(std::span<const TableVector> vectors, std::size_t k,
                                                Rng& rng) {
  const std::size_t n = vectors.size();
  std::vector<std::vector<double>> centroids;
  std::vector<bool> chosen(n, false);
  std::size_t first = rng.below(n);
  centroids.push_back(vectors[first].values);
  chosen[first] = true;
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) {
    d2[i] = simd::squared_distance(vectors[i].values, centroids[0]);
  }
  while (centroids.size() < k) {
    const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
    std::size_t pick = n;
    if (total > 0.0) {
      const double r = rng.unit() * total;
      double running = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        running += d2[i];
        if (d2[i] > 0.0 && r < running) {
          pick = i;
          break;
        }
      }
      if (pick == n) {
        for (std::size_t i = n; i-- > 0;) {
          if (d2[i] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      // Every point coincides with a chosen centroid.
      std::vector<std::size_t> free;
      for (std::size_t i = 0; i < n; ++i) {
        if (!chosen[i]) free.push_back(i);
      }
      pick = free[rng.below(free.size())];
    }
    chosen[pick] = true;
    centroids.push_back(vectors[pick].values);
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], simd::squared_distance(vectors[i].values, centroids.back()));
    }
  }
  return centroids;
}

}  // namespace

std::map<std::string, std::size_t> ClusterModel::assignments() const {
  std::map<std::string, std::size_t> out;
  for (std::size_t i = 0; i < table_ids.size(); ++i) out.emplace(table_ids[i], labels[i]);
  return out;
}

ClusterModel kmeans_fit(std::span<const TableVector> vectors, std::size_t k, std::uint64_t seed,
                        KMeansOptions opts) {
  if (k == 0) throw UsageError("k must be >= 1");
  if (vectors.size() < k) throw DataError("insufficient points");
  const std::size_t n = vectors.size();
  const std::size_t dim = vectors.front().values.size();
  for (const auto& v : vectors) {
    if (v.values.size() != dim) throw DataError("vectors differ in length");
  }

  Rng rng(seed);
  ClusterModel model;
  model.k = k;
  model.dim = dim;
  model.seed = seed;
  model.centroids = seed_centroids(vectors, k, rng);
  model.labels.assign(n, 0);
  for (const auto& v : vectors) model.table_ids.push_back(v.table_id);

  std::vector<double> dist(n);
  auto assign = [&]() {
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      model.labels[i] = nearest(vectors[i].values, model.centroids, &dist[i]);
      inertia += dist[i];
    }
    model.inertia_trace.push_back(inertia);
    return inertia;
  };

  double previous = assign();
  for (std::size_t iter = 0; iter < opts.max_iter; ++iter) {
    // Update step: sums in point order, then divide.
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      simd::add(sums[model.labels[i]], vectors[i].values);
      ++counts[model.labels[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      simd::divide(sums[c], static_cast<double>(counts[c]));
      model.centroids[c] = std::move(sums[c]);
    }
    // Empty clusters take over the point farthest from its centroid.
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[model.labels[i]] < 2) continue;
        if (far == n || dist[i] > dist[far]) far = i;
      }
      if (far == n) break;
      --counts[model.labels[far]];
      model.labels[far] = c;
      counts[c] = 1;
      dist[far] = 0.0;
      model.centroids[c] = vectors[far].values;
    }

    const double current = assign();
    const double improvement = previous - current;
    previous = current;
    if (current == 0.0 || improvement <= opts.tol * model.inertia_trace[model.inertia_trace.size() - 2]) {
      break;
    }
  }
  model.inertia = previous;
  return model;
}

double silhouette_score(std::span<const TableVector> vectors,
                        std::span<const std::size_t> assignments, std::uint64_t seed,
                        std::size_t sample_limit) {
  if (vectors.size() != assignments.size()) throw DataError("assignment count mismatch");
  std::vector<std::size_t> sample(vectors.size());
  std::iota(sample.begin(), sample.end(), 0);
  if (sample.size() > sample_limit) {
    Rng rng(seed);
    for (std::size_t i = 0; i < sample_limit; ++i) {
      std::swap(sample[i], sample[i + rng.below(sample.size() - i)]);
    }
    sample.resize(sample_limit);
    std::sort(sample.begin(), sample.end());
  }

  std::map<std::size_t, std::size_t> cluster_slot;
  for (std::size_t idx : sample) cluster_slot.emplace(assignments[idx], 0);
  if (cluster_slot.size() < 2) throw DataError("silhouette undefined");
  std::size_t slot = 0;
  for (auto& [cluster, s] : cluster_slot) s = slot++;
  const std::size_t n = sample.size();
  const std::size_t kc = cluster_slot.size();

  std::vector<std::size_t> member_slot(n);
  std::vector<std::size_t> size(kc, 0);
  for (std::size_t a = 0; a < n; ++a) {
    member_slot[a] = cluster_slot[assignments[sample[a]]];
    ++size[member_slot[a]];
  }
  // dist_sum[a * kc + c]: total distance from sampled point a to cluster c.
  std::vector<double> dist_sum(n * kc, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double d = std::sqrt(
          simd::squared_distance(vectors[sample[a]].values, vectors[sample[b]].values));
      dist_sum[a * kc + member_slot[b]] += d;
      dist_sum[b * kc + member_slot[a]] += d;
    }
  }
  double total = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t own = member_slot[a];
    if (size[own] < 2) continue;
    const double intra = dist_sum[a * kc + own] / static_cast<double>(size[own] - 1);
    double inter = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < kc; ++c) {
      if (c == own) continue;
      inter = std::min(inter, dist_sum[a * kc + c] / static_cast<double>(size[c]));
    }
    const double denom = std::max(intra, inter);
    if (denom > 0.0) total += (inter - intra) / denom;
  }
  return total / static_cast<double>(n);
}

KSelection select_k(std::span<const TableVector> vectors, std::span<const std::size_t> candidates,
                    std::uint64_t seed, KMeansOptions opts) {
  if (candidates.empty()) throw UsageError("no k candidates");
  std::vector<std::size_t> ks(candidates.begin(), candidates.end());
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.front() < 2) throw UsageError("k candidates must be >= 2");

  KSelection best;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t k : ks) {
    ClusterModel model = kmeans_fit(vectors, k, seed, opts);
    const double score = silhouette_score(vectors, model.labels, seed);
    model.silhouette = score;
    best.sweep.emplace_back(k, score);
    if (score > best_score) {
      best_score = score;
      best.k = k;
      best.model = std::move(model);
    }
  }
  return best;
}

Representatives representatives(const ClusterModel& model, std::span<const TableVector> vectors,
                                std::size_t m) {
  if (vectors.size() != model.labels.size()) throw DataError("model was fit on different vectors");
  std::vector<std::vector<std::pair<double, const std::string*>>> members(model.k);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const std::size_t c = model.labels[i];
    members[c].emplace_back(simd::squared_distance(vectors[i].values, model.centroids[c]),
                            &vectors[i].table_id);
  }
  Representatives reps(model.k);
  for (std::size_t c = 0; c < model.k; ++c) {
    auto& list = members[c];
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return *a.second < *b.second;
    });
    for (std::size_t r = 0; r < std::min(m, list.size()); ++r) reps[c].push_back(*list[r].second);
  }
  return reps;
}

TableType majority_label(std::span<const TableType> votes) {
  std::map<TableType, std::size_t> tally;
  for (TableType t : votes) ++tally[t];
  TableType best = TableType::unknown;
  std::size_t best_count = 0;
  bool tie = false;
  for (const auto& [type, count] : tally) {
    if (count > best_count) {
      best = type;
      best_count = count;
      tie = false;
    } else if (count == best_count) {
      tie = true;
    }
  }
  return tie ? TableType::unknown : best;
}

std::map<std::string, TableType> apply_labels(const ClusterModel& model, const LabelMap& labels) {
  for (const auto& [cluster, type] : labels) {
    if (cluster >= model.k) throw DataError("invalid cluster " + std::to_string(cluster));
  }
  std::map<std::string, TableType> out;
  for (std::size_t i = 0; i < model.table_ids.size(); ++i) {
    auto it = labels.find(model.labels[i]);
    out[model.table_ids[i]] = it == labels.end() ? TableType::unknown : it->second;
  }
  return out;
}

std::vector<TableType> knn_classify(std::span<const TableVector> train,
                                    std::span<const TableType> train_labels,
                                    std::span<const TableVector> queries, std::size_t k) {
  if (train.empty()) throw DataError("empty training set");
  if (train.size() != train_labels.size()) throw DataError("training labels mismatch");
  if (k == 0 || k > train.size()) throw UsageError("knn k must be in [1, training size]");

  std::vector<std::size_t> order(train.size());
  std::vector<double> dist(train.size());
  std::vector<TableType> out;
  out.reserve(queries.size());
  for (const TableVector& q : queries) {
    for (std::size_t i = 0; i < train.size(); ++i) {
      dist[i] = simd::squared_distance(q.values, train[i].values);
    }
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) {
                        if (dist[a] != dist[b]) return dist[a] < dist[b];
                        if (train[a].values != train[b].values) return train[a].values < train[b].values;
                        return train_labels[a] < train_labels[b];
                      });
    std::map<TableType, std::size_t> tally;
    for (std::size_t r = 0; r < k; ++r) ++tally[train_labels[order[r]]];
    std::size_t top = 0;
    for (const auto& [type, count] : tally) top = std::max(top, count);
    for (std::size_t r = 0; r < k; ++r) {
      const TableType t = train_labels[order[r]];
      if (tally[t] == top) {
        out.push_back(t);
        break;
      }
    }
  }
  return out;
}

nlohmann::json to_json(const ClusterModel& model) {
  nlohmann::json assignments = nlohmann::json::object();
  for (std::size_t i = 0; i < model.table_ids.size(); ++i) assignments[model.table_ids[i]] = model.labels[i];
  nlohmann::json j = {{"k", model.k},
                      {"dim", model.dim},
                      {"seed", model.seed},
                      {"inertia", model.inertia},
                      {"centroids", model.centroids},
                      {"assignments", std::move(assignments)}};
  j["silhouette"] = model.silhouette ? nlohmann::json(*model.silhouette) : nlohmann::json(nullptr);
  return j;
}

ClusterModel cluster_model_from_json(const nlohmann::json& j) {
  try {
    ClusterModel model;
    model.k = j.at("k").get<std::size_t>();
    model.dim = j.at("dim").get<std::size_t>();
    model.seed = j.at("seed").get<std::uint64_t>();
    model.centroids = j.at("centroids").get<std::vector<std::vector<double>>>();
    if (j.contains("inertia")) model.inertia = j["inertia"].get<double>();
    if (j.contains("silhouette") && !j["silhouette"].is_null()) model.silhouette = j["silhouette"].get<double>();
    for (auto it = j.at("assignments").begin(); it != j.at("assignments").end(); ++it) {
      const auto c = it.value().get<std::size_t>();
      if (c >= model.k) throw DataError("model assigns " + it.key() + " to cluster " + std::to_string(c));
      model.table_ids.push_back(it.key());
      model.labels.push_back(c);
    }
    if (model.centroids.size() != model.k) throw DataError("model: centroid count != k");
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model: ") + e.what());
  }
}

nlohmann::json to_json(const LabelMap& labels) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [cluster, type] : labels) j[std::to_string(cluster)] = to_string(type);
  return j;
}

LabelMap label_map_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("labels: expected a JSON object");
  LabelMap labels;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key.empty() || key.size() > 9 ||
        !std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw DataError("labels: cluster key '" + key + "' is not a non-negative integer");
    }
    if (!it.value().is_string()) throw DataError("labels: value for cluster " + key + " is not a string");
    auto type = parse_table_type(it.value().get<std::string>());
    if (!type) throw DataError("labels: unknown table type '" + it.value().get<std::string>() + "'");
    labels[static_cast<std::size_t>(std::stoul(key))] = *type;
  }
  return labels;
}

}  // namespace webtab
