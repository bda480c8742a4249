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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "webtab/context.hpp"

namespace webtab {

struct RIConfig {
  static constexpr std::size_t kNonzeroPositions = 4;  // two +1, two -1

  std::size_t dim = 200;
  std::size_t window = 2;
  std::uint64_t seed = 0;
  std::size_t min_count = 3;
  double max_sentence_fraction = 0.3;
  std::set<std::string> prune_exempt = {"TH", "HREF", "IMG"};
  std::size_t threads = 1;  // training workers; does not affect the result

  void validate() const;
};

struct BaseVector {
  std::array<std::uint32_t, 2> plus;
  std::array<std::uint32_t, 2> minus;

  friend bool operator==(const BaseVector&, const BaseVector&) = default;
};

// A pure function of (token, seed, dim): a splitmix64 stream seeded from the
// FNV-1a digest of the token mixed with the seed picks four distinct
// positions; the first two get +1, the last two -1.
BaseVector base_vector(std::string_view token, const RIConfig& cfg);

struct Vocabulary {
  std::map<std::string, std::int64_t> counts;  // surviving token -> occurrences
  std::size_t sentences = 0;
};

// Drops tokens seen fewer than min_count times, and tokens present in more
// than max_sentence_fraction of the sentences unless exempt. Throws
// DataError("empty vocabulary") if nothing survives.
Vocabulary build_vocab(std::span<const Sentence> corpus, const RIConfig& cfg);

// Token -> integer context vector. Tokens are kept sorted; vectors are stored
// contiguously in that order.
class WordSpace {
 public:
  WordSpace() = default;
  WordSpace(RIConfig cfg, std::vector<std::string> tokens, std::vector<std::int64_t> counts,
            std::vector<std::int32_t> data);

  std::size_t dim() const { return cfg_.dim; }
  std::size_t size() const { return tokens_.size(); }
  const RIConfig& config() const { return cfg_; }
  const std::vector<std::string>& tokens() const { return tokens_; }

  std::optional<std::size_t> index_of(std::string_view token) const;
  std::span<const std::int32_t> row(std::size_t index) const {
    return {data_.data() + index * cfg_.dim, cfg_.dim};
  }
  std::int64_t count(std::size_t index) const { return counts_[index]; }

  friend bool operator==(const WordSpace& a, const WordSpace& b) {
    return a.cfg_.dim == b.cfg_.dim && a.tokens_ == b.tokens_ && a.counts_ == b.counts_ &&
           a.data_ == b.data_;
  }

 private:
  RIConfig cfg_;
  std::vector<std::string> tokens_;
  std::vector<std::int64_t> counts_;
  std::vector<std::int32_t> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

// For every in-vocabulary token at position k, adds the base vectors of the
// in-vocabulary tokens at positions k-w..k+w (k excluded) of the same
// sentence. Out-of-vocabulary tokens still occupy their positions.
// Accumulation is integer-only, so the result is independent of sentence
// order and of cfg.threads.
WordSpace train_word_space(std::span<const Sentence> corpus, const RIConfig& cfg);

std::optional<std::span<const std::int32_t>> word_vector(const WordSpace& space,
                                                         std::string_view token);

nlohmann::json to_json(const WordSpace& space);
// Throws DataError on malformed input.
WordSpace word_space_from_json(const nlohmann::json& j);

}  // namespace webtab
