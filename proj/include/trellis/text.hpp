/*
 * Copyright 2026 The Trellis Authors.
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
#ifndef TRELLIS_TEXT_HPP
#define TRELLIS_TEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace trellis::text {

/// Decodes a UTF-8 string into codepoints. Invalid bytes decode to U+FFFD.
std::vector<char32_t> decode_utf8(std::string_view s);
std::string encode_utf8(const std::vector<char32_t>& cps);

/// Lowercases and strips diacritics (Latin-1 supplement and Latin
/// Extended-A), collapses whitespace runs to single spaces and trims.
std::string fold(std::string_view s);

/// fold() without whitespace collapsing; used for character-precise work.
std::string fold_chars(std::string_view s);

/// Splits folded text on non-alphanumeric characters. Codepoints >= 0x80
/// that survive folding count as word characters.
std::vector<std::string> tokenize(std::string_view folded);

/// Light snowball-style suffix stripper; lang is "fr" or "en" (anything
/// else leaves tokens untouched beyond plural stripping).
std::string stem(std::string_view token, const std::string& lang);

/// 1 - levenshtein(a,b)/max(|a|,|b|), over codepoints. Both empty -> 1.
double edit_similarity(std::string_view a, std::string_view b);

/// Rule-based sentence splitter on [.!?] with a French+English
/// abbreviation list; single capital initials ("A. B. Smith") do not split.
std::vector<std::string> split_sentences(std::string_view doc);

bool is_ascii_digit(char c);

}  // namespace trellis::text

#endif  // TRELLIS_TEXT_HPP
