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
#include <vector>

#include "webtab/evaluation.hpp"
#include "webtab/extract.hpp"

namespace webtab {

// Generator for a labeled benchmark corpus with four table archetypes:
//   relational  TH header row over typed columns
//   entity      TH attribute column beside a value column
//   matrix      TH row and column headers around a numeric body
//   non_data    free-text cells drawn from one shared prose vocabulary
// Each page holds one data table. A fraction of pages also wrap it in an
// outer layout table, which extraction must skip as a non-leaf.
struct SyntheticOptions {
  std::size_t tables_per_type = 200;
  std::uint64_t seed = 0;
  double layout_wrap_fraction = 0.15;
};

struct SyntheticCorpus {
  std::vector<RawPage> pages;
  GroundTruth truth;  // keyed by the table id extraction assigns
};

SyntheticCorpus generate_synthetic_corpus(const SyntheticOptions& opts = {});

}  // namespace webtab
