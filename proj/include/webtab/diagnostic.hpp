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

#include <string>

namespace webtab {

// A non-fatal problem with one input record. Stages collect these and keep
// going; the CLI writes them to stderr as JSONL.
struct Diagnostic {
  std::string stage;
  std::string subject;  // page_id / table_id / setting the problem concerns
  std::string message;
};

}  // namespace webtab
