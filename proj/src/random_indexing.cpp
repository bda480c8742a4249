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

#include "webtab/random_indexing.hpp"

#include <algorithm>
#include <thread>
#include <unordered_set>

#include "webtab/error.hpp"
#include "webtab/kernels.hpp"
#include "webtab/rng.hpp"

namespace webtab {

void RIConfig::validate() const {
  if (dim < kNonzeroPositions) throw UsageError("dim must be >= 4");
  if (window == 0) throw UsageError("random-indexing window must be >= 1");
  if (!(max_sentence_fraction > 0.0 && max_sentence_fraction <= 1.0)) {
    throw UsageError("max_sentence_fraction must be in (0, 1]");
  }
}

BaseVector base_vector(std::string_view token, const RIConfig& cfg) {
  std::uint64_t state = mix_seed(fnv1a64(token), cfg.seed);
  std::array<std::uint32_t, RIConfig::kNonzeroPositions> picked{};
  std::size_t n = 0;
  while (n < picked.size()) {
    const auto pos = static_cast<std::uint32_t>(splitmix64(state) % cfg.dim);
    if (std::find(picked.begin(), picked.begin() + n, pos) == picked.begin() + n) {
      picked[n++] = pos;
    }
  }
  return {{picked[0], picked[1]}, {picked[2], picked[3]}};
}

Vocabulary build_vocab(std::span<const Sentence> corpus, const RIConfig& cfg) {
  std::unordered_map<std::string, std::int64_t> occurrences;
  std::unordered_map<std::string, std::int64_t> sentence_freq;
  std::unordered_set<std::string_view> seen;
  for (const Sentence& s : corpus) {
    seen.clear();
    for (const std::string& tok : s) {
      ++occurrences[tok];
      if (seen.insert(tok).second) ++sentence_freq[tok];
    }
  }
  Vocabulary vocab;
  vocab.sentences = corpus.size();
  const double limit = cfg.max_sentence_fraction * static_cast<double>(corpus.size());
  for (const auto& [tok, count] : occurrences) {
    if (count < static_cast<std::int64_t>(cfg.min_count)) continue;
    if (static_cast<double>(sentence_freq[tok]) > limit && !cfg.prune_exempt.count(tok)) {
      continue;
    }
    vocab.counts.emplace(tok, count);
  }
  if (vocab.counts.empty()) throw DataError("empty vocabulary");
  return vocab;
}

WordSpace::WordSpace(RIConfig cfg, std::vector<std::string> tokens,
                     std::vector<std::int64_t> counts, std::vector<std::int32_t> data)
    : cfg_(std::move(cfg)),
      tokens_(std::move(tokens)),
      counts_(std::move(counts)),
      data_(std::move(data)) {
  if (counts_.size() != tokens_.size() || data_.size() != tokens_.size() * cfg_.dim) {
    throw DataError("word space: inconsistent sizes");
  }
  if (!std::is_sorted(tokens_.begin(), tokens_.end())) {
    throw DataError("word space: tokens must be sorted");
  }
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) index_.emplace(tokens_[i], i);
}

std::optional<std::size_t> WordSpace::index_of(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

WordSpace train_word_space(std::span<const Sentence> corpus, const RIConfig& cfg) {
  cfg.validate();
  const Vocabulary vocab = build_vocab(corpus, cfg);

  std::vector<std::string> tokens;
  std::vector<std::int64_t> counts;
  tokens.reserve(vocab.counts.size());
  for (const auto& [tok, c] : vocab.counts) {
    tokens.push_back(tok);
    counts.push_back(c);
  }
  std::unordered_map<std::string_view, std::int32_t> ids;
  std::vector<BaseVector> bases;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    ids.emplace(tokens[i], static_cast<std::int32_t>(i));
    bases.push_back(base_vector(tokens[i], cfg));
  }

  const std::size_t d = cfg.dim;
  const std::size_t w = cfg.window;
  auto accumulate = [&](std::size_t begin, std::size_t end, std::vector<std::int32_t>& acc) {
    std::vector<std::int32_t> sentence_ids;
    for (std::size_t s = begin; s < end; ++s) {
      const Sentence& sentence = corpus[s];
      sentence_ids.resize(sentence.size());
      for (std::size_t k = 0; k < sentence.size(); ++k) {
        auto it = ids.find(sentence[k]);
        sentence_ids[k] = it == ids.end() ? -1 : it->second;
      }
      for (std::size_t k = 0; k < sentence.size(); ++k) {
        if (sentence_ids[k] < 0) continue;
        std::int32_t* target = acc.data() + static_cast<std::size_t>(sentence_ids[k]) * d;
        const std::size_t lo = k >= w ? k - w : 0;
        const std::size_t hi = std::min(sentence.size() - 1, k + w);
        for (std::size_t q = lo; q <= hi; ++q) {
          if (q == k || sentence_ids[q] < 0) continue;
          const BaseVector& b = bases[static_cast<std::size_t>(sentence_ids[q])];
          ++target[b.plus[0]];
          ++target[b.plus[1]];
          --target[b.minus[0]];
          --target[b.minus[1]];
        }
      }
    }
  };

  std::vector<std::int32_t> data(tokens.size() * d, 0);
  const std::size_t workers = std::clamp<std::size_t>(cfg.threads, 1, std::max<std::size_t>(1, corpus.size()));
  if (workers == 1) {
    accumulate(0, corpus.size(), data);
  } else {
    std::vector<std::vector<std::int32_t>> partials(workers, std::vector<std::int32_t>(data.size(), 0));
    std::vector<std::thread> pool;
    const std::size_t chunk = (corpus.size() + workers - 1) / workers;
    for (std::size_t t = 0; t < workers; ++t) {
      const std::size_t begin = std::min(corpus.size(), t * chunk);
      const std::size_t end = std::min(corpus.size(), begin + chunk);
      pool.emplace_back([&, begin, end, t] { accumulate(begin, end, partials[t]); });
    }
    for (auto& th : pool) th.join();
    for (const auto& part : partials) simd::add(data, part);
  }
  return WordSpace(cfg, std::move(tokens), std::move(counts), std::move(data));
}

std::optional<std::span<const std::int32_t>> word_vector(const WordSpace& space,
                                                         std::string_view token) {
  auto idx = space.index_of(token);
  if (!idx) return std::nullopt;
  return space.row(*idx);
}

nlohmann::json to_json(const WordSpace& space) {
  const RIConfig& cfg = space.config();
  nlohmann::json vectors = nlohmann::json::object();
  nlohmann::json counts = nlohmann::json::object();
  for (std::size_t i = 0; i < space.size(); ++i) {
    auto row = space.row(i);
    vectors[space.tokens()[i]] = std::vector<std::int32_t>(row.begin(), row.end());
    counts[space.tokens()[i]] = space.count(i);
  }
  return {{"dim", cfg.dim},
          {"window", cfg.window},
          {"seed", cfg.seed},
          {"min_count", cfg.min_count},
          {"max_sentence_fraction", cfg.max_sentence_fraction},
          {"prune_exempt", cfg.prune_exempt},
          {"vectors", std::move(vectors)},
          {"counts", std::move(counts)}};
}

WordSpace word_space_from_json(const nlohmann::json& j) {
  try {
    RIConfig cfg;
    cfg.dim = j.at("dim").get<std::size_t>();
    cfg.window = j.at("window").get<std::size_t>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.min_count = j.at("min_count").get<std::size_t>();
    cfg.max_sentence_fraction = j.at("max_sentence_fraction").get<double>();
    if (j.contains("prune_exempt")) cfg.prune_exempt = j["prune_exempt"].get<std::set<std::string>>();
    const auto& vectors = j.at("vectors");
    const auto& counts_json = j.at("counts");
    std::vector<std::string> tokens;
    std::vector<std::int64_t> counts;
    std::vector<std::int32_t> data;
    data.reserve(vectors.size() * cfg.dim);
    for (auto it = vectors.begin(); it != vectors.end(); ++it) {
      auto v = it.value().get<std::vector<std::int32_t>>();
      if (v.size() != cfg.dim) throw DataError("word space: vector for '" + it.key() + "' has wrong length");
      tokens.push_back(it.key());
      counts.push_back(counts_json.contains(it.key()) ? counts_json[it.key()].get<std::int64_t>() : 0);
      data.insert(data.end(), v.begin(), v.end());
    }
    return WordSpace(cfg, std::move(tokens), std::move(counts), std::move(data));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("word space: ") + e.what());
  }
}

}  // namespace webtab
