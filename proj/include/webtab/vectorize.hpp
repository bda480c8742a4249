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
#include <span>
#include <string>
#include <vector>

#include "webtab/preprocess.hpp"
#include "webtab/random_indexing.hpp"

namespace webtab {

using CellVector = std::vector<double>;

// Six d-vectors of mean squared elementwise deviation from the row, column
// and whole-grid centers, each with a mean center and a median center.
struct DeviationProfile {
  std::vector<double> rows_mean;
  std::vector<double> rows_median;
  std::vector<double> cols_mean;
  std::vector<double> cols_median;
  std::vector<double> all_mean;
  std::vector<double> all_median;
};

struct TableVector {
  std::string table_id;
  // rows_mean | rows_median | cols_mean | cols_median | all_mean | all_median
  std::vector<double> values;
};

// Elementwise median (midpoint of the two central values for even counts).
// Returns zeros of length dim when values is empty.
void elementwise_median(std::span<const std::span<const double>> values, std::span<double> out);

// Elementwise median over the cell's in-vocabulary word vectors; the zero
// vector when none are in the vocabulary.
CellVector cell_vector(const Cell& cell, const WordSpace& space);

// cell_vectors holds n_rows * n_cols vectors of length dim, row-major.
// Every deviation is averaged over all n_rows * n_cols cells. Summation
// order is chosen so that transposing the grid swaps the row and column
// components and leaves the global components bit-identical.
DeviationProfile deviation_profile(std::size_t n_rows, std::size_t n_cols, std::size_t dim,
                                   std::span<const double> cell_vectors);
DeviationProfile deviation_profile(const CellGrid& grid, const WordSpace& space);

std::vector<double> concatenate(const DeviationProfile& profile);

TableVector table_vector(const CellGrid& grid, const WordSpace& space);

}  // namespace webtab
