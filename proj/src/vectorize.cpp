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

#include "webtab/vectorize.hpp"

#include <algorithm>

#include "webtab/kernels.hpp"

namespace webtab {
namespace {

class GridView {
 public:
  GridView(std::size_t rows, std::size_t cols, std::size_t dim, std::span<const double> data)
      : rows_(rows), cols_(cols), dim_(dim), data_(data) {}

  std::span<const double> at(std::size_t i, std::size_t j) const {
    return data_.subspan((i * cols_ + j) * dim_, dim_);
  }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const { return dim_; }

 private:
  std::size_t rows_, cols_, dim_;
  std::span<const double> data_;
};

// anchor + mean(v - anchor). Exact for identical inputs.
void shifted_mean(std::span<const std::span<const double>> values, std::span<double> out) {
  const auto anchor = values.front();
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& v : values) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += v[k] - anchor[k];
  }
  const double n = static_cast<double>(values.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = anchor[k] + out[k] / n;
}

// Visits cell positions in an order where (a,b) and (b,a) are adjacent and
// the sequence of position pairs is the same for the grid and its transpose.
template <class Single, class Pair>
void symmetric_traversal(std::size_t rows, std::size_t cols, Single single, Pair pair) {
  const std::size_t side = std::max(rows, cols);
  for (std::size_t a = 0; a < side; ++a) {
    for (std::size_t b = a; b < side; ++b) {
      const bool ab = a < rows && b < cols;
      const bool ba = b < rows && a < cols;
      if (a == b) {
        if (ab) single(a, a);
      } else if (ab && ba) {
        pair(a, b, b, a);
      } else if (ab) {
        single(a, b);
      } else if (ba) {
        single(b, a);
      }
    }
  }
}

}  // namespace

void elementwise_median(std::span<const std::span<const double>> values, std::span<double> out) {
  if (values.empty()) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const std::size_t n = values.size();
  std::vector<double> column(n);
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (std::size_t t = 0; t < n; ++t) column[t] = values[t][k];
    const std::size_t mid = n / 2;
    std::nth_element(column.begin(), column.begin() + mid, column.end());
    const double upper = column[mid];
    if (n % 2 == 1) {
      out[k] = upper;
    } else {
      const double lower = *std::max_element(column.begin(), column.begin() + mid);
      out[k] = (lower + upper) / 2.0;
    }
  }
}

CellVector cell_vector(const Cell& cell, const WordSpace& space) {
  const std::size_t d = space.dim();
  std::vector<double> storage;
  for (const std::string& tok : cell.tokens) {
    auto idx = space.index_of(tok);
    if (!idx) continue;
    auto row = space.row(*idx);
    storage.insert(storage.end(), row.begin(), row.end());
  }
  CellVector out(d, 0.0);
  const std::size_t n = storage.size() / std::max<std::size_t>(d, 1);
  std::vector<std::span<const double>> views;
  views.reserve(n);
  for (std::size_t t = 0; t < n; ++t) views.emplace_back(storage.data() + t * d, d);
  elementwise_median(views, out);
  return out;
}

DeviationProfile deviation_profile(std::size_t n_rows, std::size_t n_cols, std::size_t dim,
                                   std::span<const double> cell_vectors) {
  const GridView grid(n_rows, n_cols, dim, cell_vectors);
  DeviationProfile p;
  for (auto* v : {&p.rows_mean, &p.rows_median, &p.cols_mean, &p.cols_median, &p.all_mean,
                  &p.all_median}) {
    v->assign(dim, 0.0);
  }
  if (n_rows == 0 || n_cols == 0) return p;

  std::vector<double> mean_center(dim), median_center(dim);
  std::vector<std::span<const double>> group;

  // Rows: centers over j, deviations summed row by row.
  for (std::size_t i = 0; i < n_rows; ++i) {
    group.clear();
    for (std::size_t j = 0; j < n_cols; ++j) group.push_back(grid.at(i, j));
    shifted_mean(group, mean_center);
    elementwise_median(group, median_center);
    for (const auto& v : group) {
      simd::accumulate_squared_deviation(p.rows_mean, v, mean_center);
      simd::accumulate_squared_deviation(p.rows_median, v, median_center);
    }
  }
  // Columns: the same with the roles of i and j exchanged.
  for (std::size_t j = 0; j < n_cols; ++j) {
    group.clear();
    for (std::size_t i = 0; i < n_rows; ++i) group.push_back(grid.at(i, j));
    shifted_mean(group, mean_center);
    elementwise_median(group, median_center);
    for (const auto& v : group) {
      simd::accumulate_squared_deviation(p.cols_mean, v, mean_center);
      simd::accumulate_squared_deviation(p.cols_median, v, median_center);
    }
  }

  // Whole grid.
  group.clear();
  for (std::size_t i = 0; i < n_rows; ++i) {
    for (std::size_t j = 0; j < n_cols; ++j) group.push_back(grid.at(i, j));
  }
  elementwise_median(group, median_center);
  {
    const auto anchor = grid.at(0, 0);
    std::vector<double> sum(dim, 0.0), pair_sum(dim);
    auto shifted = [&](std::span<const double> v, std::span<double> out) {
      for (std::size_t k = 0; k < dim; ++k) out[k] = v[k] - anchor[k];
    };
    std::vector<double> tmp(dim);
    symmetric_traversal(
        n_rows, n_cols,
        [&](std::size_t i, std::size_t j) {
          shifted(grid.at(i, j), tmp);
          simd::add(sum, tmp);
        },
        [&](std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) {
          shifted(grid.at(i1, j1), pair_sum);
          shifted(grid.at(i2, j2), tmp);
          simd::add(pair_sum, tmp);
          simd::add(sum, pair_sum);
        });
    const double n = static_cast<double>(n_rows * n_cols);
    for (std::size_t k = 0; k < dim; ++k) mean_center[k] = anchor[k] + sum[k] / n;
  }
  {
    std::vector<double> a(dim), b(dim);
    for (auto [acc, center] : {std::pair{&p.all_mean, &mean_center},
                               std::pair{&p.all_median, &median_center}}) {
      std::span<double> accumulator(*acc);
      std::span<const double> c(*center);
      symmetric_traversal(
          n_rows, n_cols,
          [&](std::size_t i, std::size_t j) {
            simd::accumulate_squared_deviation(accumulator, grid.at(i, j), c);
          },
          [&](std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) {
            simd::squared_deviation(a, grid.at(i1, j1), c);
            simd::squared_deviation(b, grid.at(i2, j2), c);
            simd::add(a, b);
            simd::add(accumulator, a);
          });
    }
  }

  const double cells = static_cast<double>(n_rows * n_cols);
  for (auto* v : {&p.rows_mean, &p.rows_median, &p.cols_mean, &p.cols_median, &p.all_mean,
                  &p.all_median}) {
    simd::divide(*v, cells);
  }
  return p;
}

DeviationProfile deviation_profile(const CellGrid& grid, const WordSpace& space) {
  const std::size_t d = space.dim();
  std::vector<double> data;
  data.reserve(grid.cells.size() * d);
  for (const Cell& cell : grid.cells) {
    const CellVector v = cell_vector(cell, space);
    data.insert(data.end(), v.begin(), v.end());
  }
  return deviation_profile(grid.n_rows, grid.n_cols, d, data);
}

std::vector<double> concatenate(const DeviationProfile& p) {
  std::vector<double> out;
  out.reserve(p.rows_mean.size() * 6);
  for (const auto* v : {&p.rows_mean, &p.rows_median, &p.cols_mean, &p.cols_median, &p.all_mean,
                        &p.all_median}) {
    out.insert(out.end(), v->begin(), v->end());
  }
  return out;
}

TableVector table_vector(const CellGrid& grid, const WordSpace& space) {
  return {grid.table_id, concatenate(deviation_profile(grid, space))};
}

}  // namespace webtab
