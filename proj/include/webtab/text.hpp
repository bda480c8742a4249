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
#include <string_view>
#include <vector>

// Byte-level text helpers shared by the HTML, preprocessing and context
// stages. Case folding is ASCII-only.
namespace webtab::text {

// Replaces every invalid UTF-8 sequence with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

std::string to_lower_ascii(std::string_view s);

// Splits on ASCII whitespace and U+00A0. Never yields empty pieces.
std::vector<std::string> split_whitespace(std::string_view s);

// Runs of whitespace become one space; leading/trailing whitespace dropped.
std::string collapse_whitespace(std::string_view s);

void append_utf8(std::string& out, char32_t cp);

}  // namespace webtab::text
