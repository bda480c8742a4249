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

// Straightforward reference implementations used to check the optimized
// code paths. They favour obviousness over speed and share no code with the
// library beyond the base-vector assignment.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "webtab/random_indexing.hpp"
#include "webtab/rng.hpp"

namespace oracle {

using Sentence = std::vector<std::string>;

// Token -> dense integer context vector, filters applied naively.
inline std::map<std::string, std::vector<std::int64_t>> random_indexing(
    const std::vector<Sentence>& corpus, const webtab::RIConfig& cfg) {
  std::map<std::string, std::int64_t> count;
  std::map<std::string, std::int64_t> in_sentences;
  for (const auto& s : corpus) {
    std::set<std::string> seen;
    for (const auto& t : s) {
      ++count[t];
      if (seen.insert(t).second) ++in_sentences[t];
    }
  }
  std::set<std::string> vocab;
  for (const auto& [t, c] : count) {
    if (c < static_cast<std::int64_t>(cfg.min_count)) continue;
    const double frac = static_cast<double>(in_sentences[t]) / static_cast<double>(corpus.size());
    if (frac > cfg.max_sentence_fraction && !cfg.prune_exempt.count(t)) continue;
    vocab.insert(t);
  }
  std::map<std::string, std::vector<std::int64_t>> out;
  for (const auto& t : vocab) out[t].assign(cfg.dim, 0);
  for (const auto& s : corpus) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (!vocab.count(s[k])) continue;
      for (std::size_t q = 0; q < s.size(); ++q) {
        const std::size_t dist = q > k ? q - k : k - q;
        if (q == k || dist > cfg.window || !vocab.count(s[q])) continue;
        const auto b = webtab::base_vector(s[q], cfg);
        auto& v = out[s[k]];
        v[b.plus[0]] += 1;
        v[b.plus[1]] += 1;
        v[b.minus[0]] -= 1;
        v[b.minus[1]] -= 1;
      }
    }
  }
  return out;
}

inline double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}

inline double mean(const std::vector<double>& xs) {
  long double s = 0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : static_cast<double>(s / xs.size());
}

// grid[i][j] is a d-vector. Returns the six components in table-vector order.
inline std::vector<std::vector<double>> deviation_profile(
    const std::vector<std::vector<std::vector<double>>>& grid) {
  const std::size_t n = grid.size(), m = grid[0].size(), d = grid[0][0].size();
  std::vector<std::vector<double>> out(6, std::vector<double>(d, 0.0));
  for (std::size_t e = 0; e < d; ++e) {
    std::vector<double> all;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) all.push_back(grid[i][j][e]);
    const double all_mean = mean(all), all_median = median(all);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> row;
      for (std::size_t j = 0; j < m; ++j) row.push_back(grid[i][j][e]);
      const double rm = mean(row), rmed = median(row);
      for (double x : row) {
        out[0][e] += (x - rm) * (x - rm);
        out[1][e] += (x - rmed) * (x - rmed);
      }
    }
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<double> col;
      for (std::size_t i = 0; i < n; ++i) col.push_back(grid[i][j][e]);
      const double cm = mean(col), cmed = median(col);
      for (double x : col) {
        out[2][e] += (x - cm) * (x - cm);
        out[3][e] += (x - cmed) * (x - cmed);
      }
    }
    for (double x : all) {
      out[4][e] += (x - all_mean) * (x - all_mean);
      out[5][e] += (x - all_median) * (x - all_median);
    }
    for (auto& comp : out) comp[e] /= static_cast<double>(n * m);
  }
  return out;
}

inline double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Textbook mean silhouette; singleton clusters contribute 0.
inline double silhouette(const std::vector<std::vector<double>>& x,
                         const std::vector<std::size_t>& label) {
  const std::size_t n = x.size();
  const std::size_t k = *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::size_t> size(k, 0);
  for (auto l : label) ++size[l];
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (size[label[i]] < 2) continue;
    std::vector<double> sum(k, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sum[label[j]] += distance(x[i], x[j]);
    }
    const double a = sum[label[i]] / static_cast<double>(size[label[i]] - 1);
    double b = INFINITY;
    for (std::size_t c = 0; c < k; ++c) {
      if (c != label[i] && size[c] > 0) b = std::min(b, sum[c] / static_cast<double>(size[c]));
    }
    const double denom = std::max(a, b);
    total += denom > 0 ? (b - a) / denom : 0.0;
  }
  return total / static_cast<double>(n);
}

// Random corpus over tokens "w0".."w{vocab-1}".
inline std::vector<Sentence> random_corpus(webtab::Rng& rng, std::size_t max_sentences,
                                           std::size_t vocab, std::size_t max_len) {
  std::vector<Sentence> corpus(1 + rng.below(max_sentences));
  for (auto& s : corpus) {
    s.resize(1 + rng.below(max_len));
    for (auto& t : s) t = "w" + std::to_string(rng.below(vocab));
  }
  return corpus;
}

}  // namespace oracle
