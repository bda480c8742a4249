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
#include <optional>
#include <string>
#include <string_view>

namespace webtab {

enum class TableType { relational, entity, matrix, list, non_data, unknown };

inline constexpr std::array<TableType, 6> kAllTableTypes = {
    TableType::relational, TableType::entity,   TableType::matrix,
    TableType::list,       TableType::non_data, TableType::unknown};

constexpr std::string_view to_string(TableType t) {
  switch (t) {
    case TableType::relational: return "relational";
    case TableType::entity: return "entity";
    case TableType::matrix: return "matrix";
    case TableType::list: return "list";
    case TableType::non_data: return "non_data";
    case TableType::unknown: return "unknown";
  }
  return "unknown";
}

constexpr std::optional<TableType> parse_table_type(std::string_view s) {
  for (TableType t : kAllTableTypes) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

}  // namespace webtab
