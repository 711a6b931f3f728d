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
#ifndef TRELLIS_PARSERS_HPP
#define TRELLIS_PARSERS_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trellis/types.hpp"

namespace trellis {

/// RFC-4180 CSV with a configurable delimiter. Throws ParseError on an
/// unterminated quoted field.
std::vector<std::vector<std::string>> parse_csv(std::string_view content,
                                                char delimiter = ',');

/// Minimal XML/HTML DOM. Children keep document order, interleaving text
/// and elements.
struct XmlNode {
  enum class Type { Element, Text };
  Type type = Type::Element;
  std::string value;  // tag name (Element) or content (Text)
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<XmlNode> children;
};

/// Strict mode throws ParseError (with line/column) on malformed input.
/// Lenient mode (HTML) never throws: void elements, implied closes,
/// unquoted attributes and stray close tags are tolerated. The returned
/// node is a synthetic root with the document's top-level children.
XmlNode parse_xml(std::string_view content, bool lenient);

struct Triple {
  enum class Term { Uri, Blank, Literal };
  std::string subject;
  Term subject_type = Term::Uri;
  std::string predicate;
  std::string object;
  Term object_type = Term::Uri;
};

/// N-Triples, one triple per line; # comments and blank lines skipped.
std::vector<Triple> parse_ntriples(std::string_view content);

}  // namespace trellis

#endif  // TRELLIS_PARSERS_HPP
