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
#include "trellis/text.hpp"

#include <doctest.h>

using namespace trellis;

TEST_CASE("fold lowercases, strips diacritics and collapses whitespace") {
  CHECK(text::fold("AFRICA") == "africa");
  CHECK(text::fold("Donn\xC3\xA9es  non   publi\xC3\xA9es") ==
        "donnees non publiees");
  CHECK(text::fold("  \tLevallois-Perret \n") == "levallois-perret");
  CHECK(text::fold("c\xC5\x93ur") == "coeur");   // oe ligature
  CHECK(text::fold("\xC3\x89lys\xC3\xA9" "e") == "elysee");
  CHECK(text::fold("Balkany, Patrick") == "balkany, patrick");
  CHECK(text::fold("") == "");
}

TEST_CASE("tokenize splits on non-alphanumerics") {
  CHECK(text::tokenize("p. balkany") == std::vector<std::string>{"p", "balkany"});
  CHECK(text::tokenize("levallois-perret") ==
        std::vector<std::string>{"levallois", "perret"});
  CHECK(text::tokenize("dbo:partof") == std::vector<std::string>{"dbo", "partof"});
  CHECK(text::tokenize("") == std::vector<std::string>{});
  CHECK(text::tokenize("...") == std::vector<std::string>{});
  CHECK(text::tokenize("a1 b2") == std::vector<std::string>{"a1", "b2"});
}

TEST_CASE("light stemming, English and French") {
  CHECK(text::stem("estates", "en") == "estate");
  CHECK(text::stem("cities", "en") == "citi");
  CHECK(text::stem("glasses", "en") == "glass");
  CHECK(text::stem("walking", "en") == "walk");
  CHECK(text::stem("bus", "en") == "bus");
  CHECK(text::stem("declarations", "fr") == "declaration");
  CHECK(text::stem("immeubles", "fr") == "immeubl");
  CHECK(text::stem("logement", "fr") == "log");
  // Index/query symmetry is what matters for stem lookups.
  CHECK(text::stem("declarations", "fr") == text::stem("declarations", "fr"));
}

TEST_CASE("edit similarity") {
  CHECK(text::edit_similarity("abc", "abc") == doctest::Approx(1.0));
  CHECK(text::edit_similarity("", "") == doctest::Approx(1.0));
  CHECK(text::edit_similarity("abc", "") == doctest::Approx(0.0));
  // levenshtein(kitten, sitting) = 3
  CHECK(text::edit_similarity("kitten", "sitting") ==
        doctest::Approx(1.0 - 3.0 / 7.0));
}

TEST_CASE("sentence splitting") {
  auto s = text::split_sentences(
      "P. Balkany was mayor. He owned a villa in Marrakech! Did he declare "
      "it? The inquiry continues.");
  REQUIRE(s.size() == 4);
  CHECK(s[0] == "P. Balkany was mayor.");
  CHECK(s[3] == "The inquiry continues.");

  CHECK(text::split_sentences("A. B. Smith arrived.").size() == 1);
  CHECK(text::split_sentences("").empty());
  CHECK(text::split_sentences("   \n ").empty());
  CHECK(text::split_sentences("M. Balkany est maire. Il habite Paris.").size() ==
        2);
  CHECK(text::split_sentences("Pi vaut 3.14 environ. Oui.").size() == 2);
  CHECK(text::split_sentences("no terminator at all").size() == 1);
}
