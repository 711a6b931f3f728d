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

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "trellis/text.hpp"

namespace trellis {

// ---------------------------------------------------------------- CSV ----

std::vector<std::vector<std::string>> parse_csv(std::string_view content,
                                                char delimiter) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1, col = 1, quote_line = 0, quote_col = 0;

  auto end_field = [&]() {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&]() {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
  };

  for (std::size_t i = 0; i < content.size(); ++i) {
    char c = content[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
          col += 2;
        } else {
          quoted = false;
          ++col;
        }
      } else {
        field.push_back(c);
        if (c == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
      quote_line = line;
      quote_col = col;
      ++col;
    } else if (c == delimiter) {
      end_field();
      ++col;
    } else if (c == '\r' && i + 1 < content.size() && content[i + 1] == '\n') {
      end_row();
      ++i;
      ++line;
      col = 1;
    } else if (c == '\n') {
      end_row();
      ++line;
      col = 1;
    } else {
      field.push_back(c);
      field_started = true;
      ++col;
    }
  }
  if (quoted)
    throw ParseError("unterminated quoted field", quote_line, quote_col);
  if (field_started || !row.empty()) end_row();
  return rows;
}

// ----------------------------------------------------------- XML/HTML ----

namespace {

const std::unordered_set<std::string>& void_elements() {
  static const std::unordered_set<std::string> kVoid = {
      "area", "base",  "br",   "col",  "embed",  "hr",    "img", "input",
      "link", "meta",  "param", "source", "track", "wbr"};
  return kVoid;
}

// Elements implicitly closed when a sibling of the same tag starts.
const std::unordered_set<std::string>& implied_close() {
  static const std::unordered_set<std::string> kImplied = {
      "p", "li", "tr", "td", "th", "dt", "dd", "option"};
  return kImplied;
}

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  static const std::unordered_map<std::string, const char*> kNamed = {
      {"amp", "&"},     {"lt", "<"},      {"gt", ">"},     {"quot", "\""},
      {"apos", "'"},    {"nbsp", "\xC2\xA0"}, {"eacute", "\xC3\xA9"},
      {"egrave", "\xC3\xA8"}, {"agrave", "\xC3\xA0"}, {"ccedil", "\xC3\xA7"},
      {"ecirc", "\xC3\xAA"},  {"ocirc", "\xC3\xB4"},  {"ucirc", "\xC3\xBB"},
      {"icirc", "\xC3\xAE"},  {"uuml", "\xC3\xBC"},   {"ouml", "\xC3\xB6"},
      {"euml", "\xC3\xAB"},   {"iuml", "\xC3\xAF"},   {"laquo", "\xC2\xAB"},
      {"raquo", "\xC2\xBB"},  {"oelig", "\xC5\x93"},  {"deg", "\xC2\xB0"}};
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out.push_back(s[i]);
      continue;
    }
    std::size_t semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back('&');
      continue;
    }
    std::string name(s.substr(i + 1, semi - i - 1));
    if (!name.empty() && name[0] == '#') {
      char32_t cp = 0;
      bool ok = name.size() > 1;
      if (name.size() > 2 && (name[1] == 'x' || name[1] == 'X')) {
        for (std::size_t k = 2; k < name.size() && ok; ++k) {
          char c = static_cast<char>(std::tolower(name[k]));
          if (c >= '0' && c <= '9') cp = cp * 16 + (c - '0');
          else if (c >= 'a' && c <= 'f') cp = cp * 16 + (c - 'a' + 10);
          else ok = false;
        }
      } else {
        for (std::size_t k = 1; k < name.size() && ok; ++k) {
          if (name[k] >= '0' && name[k] <= '9') cp = cp * 10 + (name[k] - '0');
          else ok = false;
        }
      }
      if (ok && cp > 0) {
        out += text::encode_utf8({cp});
        i = semi;
        continue;
      }
    } else {
      auto it = kNamed.find(name);
      if (it != kNamed.end()) {
        out += it->second;
        i = semi;
        continue;
      }
    }
    out.push_back('&');
  }
  return out;
}

bool all_space(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

struct XmlParser {
  std::string_view in;
  bool lenient;
  std::size_t pos = 0, line = 1, col = 1;

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what, line, col);
  }
  bool eof() const { return pos >= in.size(); }
  char peek() const { return in[pos]; }
  char advance() {
    char c = in[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  bool starts_with(std::string_view prefix) const {
    return in.substr(pos, prefix.size()) == prefix;
  }
  void skip(std::size_t n) {
    for (std::size_t i = 0; i < n && !eof(); ++i) advance();
  }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
           c == '_' || c == ':' || c == '.';
  }

  std::string read_name() {
    std::string name;
    while (!eof() && name_char(peek())) name.push_back(advance());
    if (name.empty() && !lenient) fail("expected a name");
    if (lenient)
      std::transform(name.begin(), name.end(), name.begin(),
                     [](unsigned char c) { return std::tolower(c); });
    return name;
  }

  // Consumes until the given literal; returns the content before it.
  std::string until(std::string_view terminator, bool required) {
    std::string out;
    while (!eof()) {
      if (starts_with(terminator)) {
        skip(terminator.size());
        return out;
      }
      out.push_back(advance());
    }
    if (required && !lenient) fail("unexpected end of input");
    return out;
  }

  void parse_attrs(XmlNode& el) {
    while (true) {
      skip_ws();
      if (eof() || peek() == '>' || peek() == '/' || peek() == '?') return;
      std::string name = read_name();
      if (name.empty()) {
        if (lenient) {
          advance();
          continue;
        }
        fail("bad attribute name");
      }
      skip_ws();
      std::string value;
      if (!eof() && peek() == '=') {
        advance();
        skip_ws();
        if (!eof() && (peek() == '"' || peek() == '\'')) {
          char q = advance();
          value = until(std::string_view(&q, 1), true);
        } else if (lenient) {
          while (!eof() && !std::isspace(static_cast<unsigned char>(peek())) &&
                 peek() != '>' && peek() != '/')
            value.push_back(advance());
        } else {
          fail("attribute value must be quoted");
        }
      } else if (!lenient) {
        fail("attribute without value");
      }
      el.attrs.emplace_back(std::move(name), decode_entities(value));
    }
  }

  XmlNode parse_document() {
    XmlNode root;
    root.type = XmlNode::Type::Element;
    std::vector<XmlNode*> stack{&root};

    auto add_text = [&](std::string text) {
      if (all_space(text)) return;
      XmlNode t;
      t.type = XmlNode::Type::Text;
      t.value = decode_entities(text);
      stack.back()->children.push_back(std::move(t));
    };

    std::string text;
    while (!eof()) {
      if (peek() != '<') {
        text.push_back(advance());
        continue;
      }
      add_text(std::move(text));
      text.clear();

      if (starts_with("<!--")) {
        skip(4);
        until("-->", true);
      } else if (starts_with("<![CDATA[")) {
        skip(9);
        std::string cdata = until("]]>", true);
        if (!all_space(cdata)) {
          XmlNode t;
          t.type = XmlNode::Type::Text;
          t.value = std::move(cdata);
          stack.back()->children.push_back(std::move(t));
        }
      } else if (starts_with("<!")) {
        skip(2);
        until(">", true);  // DOCTYPE etc.
      } else if (starts_with("<?")) {
        skip(2);
        until("?>", true);
      } else if (starts_with("</")) {
        skip(2);
        std::string name = read_name();
        skip_ws();
        if (!eof() && peek() == '>') advance();
        else if (!lenient) fail("malformed close tag");
        // Pop to the matching element.
        int idx = -1;
        for (int i = static_cast<int>(stack.size()) - 1; i > 0; --i) {
          if (stack[i]->value == name) {
            idx = i;
            break;
          }
        }
        if (idx < 0) {
          if (!lenient) fail("close tag </" + name + "> matches nothing");
          continue;  // stray close tag
        }
        if (idx != static_cast<int>(stack.size()) - 1 && !lenient)
          fail("mismatched close tag </" + name + ">");
        stack.resize(idx);
      } else {
        advance();  // '<'
        std::string name = read_name();
        if (name.empty()) {
          if (lenient) {
            text.push_back('<');
            continue;
          }
          fail("bad tag");
        }
        XmlNode el;
        el.type = XmlNode::Type::Element;
        el.value = name;
        parse_attrs(el);
        bool self_closed = false;
        skip_ws();
        if (!eof() && peek() == '/') {
          advance();
          self_closed = true;
        }
        if (!eof() && peek() == '>') advance();
        else if (!lenient) fail("unterminated tag <" + name + ">");
        if (lenient && void_elements().count(name)) self_closed = true;
        if (lenient && !self_closed && implied_close().count(name) &&
            stack.back()->value == name && stack.size() > 1) {
          stack.pop_back();  // <li> closes a preceding open <li>
        }
        stack.back()->children.push_back(std::move(el));
        if (!self_closed) {
          stack.push_back(&stack.back()->children.back());
          if (lenient && (name == "script" || name == "style")) {
            std::string raw = until("</" + name, false);
            until(">", false);
            if (!all_space(raw)) {
              XmlNode t;
              t.type = XmlNode::Type::Text;
              t.value = std::move(raw);
              stack.back()->children.push_back(std::move(t));
            }
            stack.pop_back();
          }
        }
      }
    }
    add_text(std::move(text));
    if (stack.size() != 1 && !lenient)
      fail("unclosed element <" + stack.back()->value + ">");
    return root;
  }
};

}  // namespace

XmlNode parse_xml(std::string_view content, bool lenient) {
  XmlParser p{content, lenient};
  XmlNode root = p.parse_document();
  if (!lenient) {
    int elements = 0;
    for (const XmlNode& c : root.children)
      if (c.type == XmlNode::Type::Element) ++elements;
    if (elements != 1) throw ParseError("expected one root element", 1, 1);
  }
  return root;
}

// ----------------------------------------------------------- NTriples ----

namespace {

struct TermParser {
  std::string_view line;
  std::size_t pos = 0;
  std::size_t lineno;

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what, lineno, pos + 1);
  }
  void skip_ws() {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  }
  bool eof() const { return pos >= line.size(); }

  std::string unescape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '\\') {
        out.push_back(s[i]);
        continue;
      }
      if (++i >= s.size()) fail("dangling escape");
      char c = s[i];
      switch (c) {
        case 't': out.push_back('\t'); break;
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'u':
        case 'U': {
          std::size_t n = c == 'u' ? 4 : 8;
          if (i + n >= s.size()) fail("bad unicode escape");
          char32_t cp = 0;
          for (std::size_t k = 1; k <= n; ++k) {
            char h = static_cast<char>(std::tolower(s[i + k]));
            if (h >= '0' && h <= '9') cp = cp * 16 + (h - '0');
            else if (h >= 'a' && h <= 'f') cp = cp * 16 + (h - 'a' + 10);
            else fail("bad unicode escape");
          }
          i += n;
          out += text::encode_utf8({cp});
          break;
        }
        default:
          fail("unknown escape");
      }
    }
    return out;
  }

  std::pair<std::string, Triple::Term> term(bool object_position) {
    skip_ws();
    if (eof()) fail("unexpected end of triple");
    char c = line[pos];
    if (c == '<') {
      std::size_t end = line.find('>', pos + 1);
      if (end == std::string_view::npos) fail("unterminated URI");
      std::string uri(line.substr(pos + 1, end - pos - 1));
      pos = end + 1;
      return {unescape(uri), Triple::Term::Uri};
    }
    if (c == '_' && pos + 1 < line.size() && line[pos + 1] == ':') {
      std::size_t end = pos + 2;
      while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
      std::string label(line.substr(pos, end - pos));
      pos = end;
      return {label, Triple::Term::Blank};
    }
    if (c == '"' && object_position) {
      std::size_t i = pos + 1;
      while (i < line.size()) {
        if (line[i] == '\\') i += 2;
        else if (line[i] == '"') break;
        else ++i;
      }
      if (i >= line.size()) fail("unterminated literal");
      std::string lex = unescape(line.substr(pos + 1, i - pos - 1));
      pos = i + 1;
      // Optional language tag or datatype; kept out of the lexical form.
      if (pos < line.size() && line[pos] == '@') {
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
      } else if (pos + 1 < line.size() && line[pos] == '^' &&
                 line[pos + 1] == '^') {
        pos += 2;
        if (pos < line.size() && line[pos] == '<') {
          std::size_t end = line.find('>', pos);
          if (end == std::string_view::npos) fail("unterminated datatype");
          pos = end + 1;
        }
      }
      return {lex, Triple::Term::Literal};
    }
    fail(object_position ? "expected URI, blank node, or literal"
                         : "expected URI or blank node");
  }
};

}  // namespace

std::vector<Triple> parse_ntriples(std::string_view content) {
  std::vector<Triple> triples;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(start, end - start);
    ++lineno;
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') {
      if (end == content.size()) break;
      continue;
    }

    TermParser p{line, 0, lineno};
    Triple t;
    auto [subj, stype] = p.term(false);
    if (stype == Triple::Term::Literal)
      throw ParseError("literal subject", lineno, 1);
    t.subject = std::move(subj);
    t.subject_type = stype;
    auto [pred, ptype] = p.term(false);
    if (ptype != Triple::Term::Uri)
      throw ParseError("predicate must be a URI", lineno, 1);
    t.predicate = std::move(pred);
    auto [obj, otype] = p.term(true);
    t.object = std::move(obj);
    t.object_type = otype;
    p.skip_ws();
    if (p.eof() || line[p.pos] != '.')
      throw ParseError("triple must end with '.'", lineno, p.pos + 1);
    triples.push_back(std::move(t));
    if (end == content.size()) break;
  }
  return triples;
}

}  // namespace trellis
