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
#include "trellis/parsers.hpp"

#include <doctest.h>

using namespace trellis;

TEST_CASE("csv: quoting, escapes, CRLF, delimiters") {
  auto rows = parse_csv("a,b,c\r\n1,\"x,y\",\"he said \"\"hi\"\"\"\n,,z\n");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == std::vector<std::string>{"a", "b", "c"});
  CHECK(rows[1] == std::vector<std::string>{"1", "x,y", "he said \"hi\""});
  CHECK(rows[2] == std::vector<std::string>{"", "", "z"});

  auto semi = parse_csv("a;b\n1;2", ';');
  CHECK(semi[1] == std::vector<std::string>{"1", "2"});

  CHECK(parse_csv("").empty());
  CHECK(parse_csv("single") ==
        std::vector<std::vector<std::string>>{{"single"}});

  // multi-line quoted field
  auto ml = parse_csv("a\n\"line1\nline2\",b\n");
  CHECK(ml[1][0] == "line1\nline2");

  CHECK_THROWS_AS(parse_csv("a,\"unterminated\nmore"), ParseError);
}

TEST_CASE("xml strict: structure and errors") {
  XmlNode root = parse_xml("<p a=\"x\">t</p>", false);
  REQUIRE(root.children.size() == 1);
  const XmlNode& p = root.children[0];
  CHECK(p.value == "p");
  REQUIRE(p.attrs.size() == 1);
  CHECK(p.attrs[0].first == "a");
  CHECK(p.attrs[0].second == "x");
  REQUIRE(p.children.size() == 1);
  CHECK(p.children[0].type == XmlNode::Type::Text);
  CHECK(p.children[0].value == "t");

  XmlNode empty = parse_xml("<p/>", false);
  CHECK(empty.children[0].children.empty());

  // mixed content keeps order
  XmlNode mixed = parse_xml("<p>one<b>two</b>three</p>", false);
  const XmlNode& m = mixed.children[0];
  REQUIRE(m.children.size() == 3);
  CHECK(m.children[0].value == "one");
  CHECK(m.children[1].value == "b");
  CHECK(m.children[2].value == "three");

  // entities and declarations
  XmlNode ent = parse_xml("<?xml version=\"1.0\"?><a>&lt;&amp;&#65;</a>", false);
  CHECK(ent.children[0].children[0].value == "<&A");

  CHECK_THROWS_AS(parse_xml("<a><b></a>", false), ParseError);
  CHECK_THROWS_AS(parse_xml("<a>", false), ParseError);
  CHECK_THROWS_AS(parse_xml("<a/><b/>", false), ParseError);  // two roots
  try {
    parse_xml("<root>\n  <bad></mismatch>\n</root>", false);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);  // position-reported
  }
}

TEST_CASE("html lenient: void elements, implied closes, raw script") {
  XmlNode root = parse_xml(
      "<html><body><p>first<p>second<br>after"
      "<a href=http://a.org>link</a>"
      "<script>if (x < 3) { code(); }</script>"
      "</body></html>",
      true);
  const XmlNode& html = root.children[0];
  CHECK(html.value == "html");
  const XmlNode& body = html.children[0];
  // the second <p> implicitly closes the first; everything after nests
  // under the second
  REQUIRE(body.children.size() == 2);
  CHECK(body.children[0].value == "p");
  CHECK(body.children[1].value == "p");
  const XmlNode& p2 = body.children[1];
  REQUIRE(p2.children.size() == 5);
  CHECK(p2.children[0].value == "second");
  CHECK(p2.children[1].value == "br");  // void element, no content
  CHECK(p2.children[1].children.empty());
  CHECK(p2.children[2].value == "after");
  const XmlNode& a = p2.children[3];
  CHECK(a.value == "a");
  REQUIRE(a.attrs.size() == 1);
  CHECK(a.attrs[0].second == "http://a.org");  // unquoted attribute
  CHECK(p2.children[4].value == "script");

  // stray close tags and unclosed elements do not throw
  CHECK_NOTHROW(parse_xml("</div><p>text", true));
  // uppercase tags are lowered
  XmlNode up = parse_xml("<DIV>x</DIV>", true);
  CHECK(up.children[0].value == "div");
}

TEST_CASE("ntriples: terms, escapes, errors") {
  auto ts = parse_ntriples(
      "# comment\n"
      "<dbr:Morocco> <dbo:partOf> <dbr:Africa> .\n"
      "\n"
      "<dbr:Africa> <dbo:name> \"Africa\" .\n"
      "_:b0 <p:knows> _:b1 .\n"
      "<s:x> <p:says> \"il a dit \\\"oui\\\"\\n\"@fr .\n"
      "<s:y> <p:age> \"42\"^^<xsd:integer> .\n"
      "<s:z> <p:e> \"caf\\u00E9\" .\n");
  REQUIRE(ts.size() == 6);
  CHECK(ts[0].subject == "dbr:Morocco");
  CHECK(ts[0].predicate == "dbo:partOf");
  CHECK(ts[0].object == "dbr:Africa");
  CHECK(ts[0].object_type == Triple::Term::Uri);
  CHECK(ts[1].object == "Africa");
  CHECK(ts[1].object_type == Triple::Term::Literal);
  CHECK(ts[2].subject_type == Triple::Term::Blank);
  CHECK(ts[2].object == "_:b1");
  CHECK(ts[3].object == "il a dit \"oui\"\n");  // language tag stripped
  CHECK(ts[4].object == "42");                  // datatype stripped
  CHECK(ts[5].object == "caf\xC3\xA9");

  CHECK_THROWS_AS(parse_ntriples("<a> <b> <c>\n"), ParseError);  // missing dot
  CHECK_THROWS_AS(parse_ntriples("\"lit\" <b> <c> .\n"), ParseError);
  CHECK_THROWS_AS(parse_ntriples("<a> _:b <c> .\n"), ParseError);
  try {
    parse_ntriples("<ok> <ok> <ok> .\n<broken> <x>\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}
