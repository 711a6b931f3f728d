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

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace trellis::text {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Maps accented Latin letters to their base lowercase letter; returns 0 when
// the codepoint is not handled here.
char32_t strip_accent(char32_t c) {
  // Latin-1 supplement.
  static constexpr std::pair<char32_t, char> kMap[] = {
      {0xE0, 'a'}, {0xE1, 'a'}, {0xE2, 'a'}, {0xE3, 'a'}, {0xE4, 'a'},
      {0xE5, 'a'}, {0xE7, 'c'}, {0xE8, 'e'}, {0xE9, 'e'}, {0xEA, 'e'},
      {0xEB, 'e'}, {0xEC, 'i'}, {0xED, 'i'}, {0xEE, 'i'}, {0xEF, 'i'},
      {0xF1, 'n'}, {0xF2, 'o'}, {0xF3, 'o'}, {0xF4, 'o'}, {0xF5, 'o'},
      {0xF6, 'o'}, {0xF8, 'o'}, {0xF9, 'u'}, {0xFA, 'u'}, {0xFB, 'u'},
      {0xFC, 'u'}, {0xFD, 'y'}, {0xFF, 'y'},
  };
  for (auto [from, to] : kMap)
    if (c == from) return static_cast<char32_t>(to);
  // Latin Extended-A (0x100..0x17F): one base letter per codepoint.
  if (c >= 0x100 && c <= 0x17F) {
    static constexpr const char kBases[129] =
        "aaaaaa"          // 0x100 A-ogonek family
        "cccccccc"        // 0x106 C with acute/circumflex/dot/caron
        "dddd"            // 0x10E D caron, D stroke
        "eeeeeeeeee"      // 0x112 E macron..caron
        "gggggggg"        // 0x11C G circumflex..cedilla
        "hhhh"            // 0x124 H circumflex, H stroke
        "iiiiiiiiiiii"    // 0x128 I tilde..dotless, IJ ligature
        "jj"              // 0x134 J circumflex
        "kkk"             // 0x136 K cedilla, kra
        "llllllllll"      // 0x139 L acute..L stroke
        "nnnnnnnnn"       // 0x143 N acute..eng
        "oooooooo"        // 0x14C O macron..OE ligature
        "rrrrrr"          // 0x154 R acute..caron
        "ssssssss"        // 0x15A S acute..caron
        "tttttt"          // 0x162 T cedilla..stroke
        "uuuuuuuuuuuu"    // 0x168 U tilde..ogonek
        "ww"              // 0x174 W circumflex
        "yyy"             // 0x176 Y circumflex, Y diaeresis
        "zzzzzz"          // 0x179 Z acute..caron
        "s";              // 0x17F long s
    return static_cast<char32_t>(kBases[c - 0x100]);
  }
  return 0;
}

char32_t to_lower_cp(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;  // Latin-1 caps
  if (c >= 0x100 && c <= 0x17F && (c % 2) == 0) return c + 1;
  if (c == 0x178) return 0xFF;  // Y with diaeresis
  return c;
}

bool is_space_cp(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v' || c == 0xA0;
}

std::string fold_impl(std::string_view s, bool collapse) {
  std::vector<char32_t> cps = decode_utf8(s);
  std::vector<char32_t> out;
  out.reserve(cps.size());
  for (char32_t c : cps) {
    c = to_lower_cp(c);
    if (c == 0x153) {  // oe ligature
      out.push_back('o');
      out.push_back('e');
      continue;
    }
    if (c == 0xE6) {  // ae ligature
      out.push_back('a');
      out.push_back('e');
      continue;
    }
    if (char32_t base = strip_accent(c)) c = base;
    if (collapse && is_space_cp(c)) {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
      continue;
    }
    out.push_back(c);
  }
  if (collapse) {
    while (!out.empty() && out.back() == ' ') out.pop_back();
  }
  return encode_utf8(out);
}

bool is_word_cp(char32_t c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> kAbbrev = {
      "m",   "mr",  "mrs", "ms",  "mme",  "mlle",   "dr",  "prof", "me",
      "st",  "ste", "gen", "col", "sgt",  "jr",     "sr",  "vs",   "etc",
      "cf",  "av",  "bd",  "no",  "nos",  "vol",    "pp",  "p",    "fig",
      "al",  "dept", "univ", "approx",
  };
  return kAbbrev;
}

}  // namespace

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

std::vector<char32_t> decode_utf8(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char b = static_cast<unsigned char>(s[i]);
    char32_t cp = kReplacement;
    std::size_t len = 1;
    if (b < 0x80) {
      cp = b;
    } else if ((b >> 5) == 0x6 && i + 1 < s.size()) {
      cp = (b & 0x1F) << 6 | (s[i + 1] & 0x3F);
      len = 2;
    } else if ((b >> 4) == 0xE && i + 2 < s.size()) {
      cp = (b & 0x0F) << 12 | (s[i + 1] & 0x3F) << 6 | (s[i + 2] & 0x3F);
      len = 3;
    } else if ((b >> 3) == 0x1E && i + 3 < s.size()) {
      cp = (b & 0x07) << 18 | (s[i + 1] & 0x3F) << 12 |
           (s[i + 2] & 0x3F) << 6 | (s[i + 3] & 0x3F);
      len = 4;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t c : cps) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (c >> 12)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (c >> 18)));
      out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }
  return out;
}

std::string fold(std::string_view s) { return fold_impl(s, true); }

std::string fold_chars(std::string_view s) { return fold_impl(s, false); }

std::vector<std::string> tokenize(std::string_view folded) {
  std::vector<std::string> tokens;
  std::vector<char32_t> cps = decode_utf8(folded);
  std::vector<char32_t> cur;
  for (char32_t c : cps) {
    if (is_word_cp(c)) {
      cur.push_back(c);
    } else if (!cur.empty()) {
      tokens.push_back(encode_utf8(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(encode_utf8(cur));
  return tokens;
}

std::string stem(std::string_view token, const std::string& lang) {
  std::string t(token);
  auto ends_with = [&](std::string_view suf) {
    return t.size() >= suf.size() &&
           std::string_view(t).substr(t.size() - suf.size()) == suf;
  };
  auto chop = [&](std::size_t n) { t.resize(t.size() - n); };

  if (lang == "en") {
    if (ends_with("sses")) {
      chop(2);
    } else if (ends_with("ies") && t.size() > 4) {
      chop(2);
    } else if (ends_with("s") && !ends_with("ss") && !ends_with("us") &&
               t.size() > 3) {
      chop(1);
    }
    if (ends_with("ing") && t.size() > 5) chop(3);
    else if (ends_with("ed") && t.size() > 4) chop(2);
  } else if (lang == "fr") {
    for (const char* suf : {"issements", "issement", "ements", "ement",
                            "euses", "euse", "ances", "ance", "iques",
                            "ique", "ments", "ment"}) {
      if (ends_with(suf) && t.size() > std::string_view(suf).size() + 2) {
        chop(std::string_view(suf).size());
        return t;
      }
    }
    if (ends_with("aux") && t.size() > 4) {
      chop(2);  // chevaux -> cheva; good enough for index/query symmetry
    } else if ((ends_with("es") || ends_with("s")) && t.size() > 3) {
      chop(ends_with("es") && t.size() > 4 ? 2 : 1);
    }
  } else {
    if (t.size() > 3 && t.back() == 's') chop(1);
  }
  return t;
}

double edit_similarity(std::string_view a, std::string_view b) {
  std::vector<char32_t> ca = decode_utf8(a), cb = decode_utf8(b);
  if (ca.empty() && cb.empty()) return 1.0;
  const std::size_t n = ca.size(), m = cb.size();
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t sub = prev[j - 1] + (ca[i - 1] == cb[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  double dist = static_cast<double>(prev[m]);
  return 1.0 - dist / static_cast<double>(std::max(n, m));
}

std::vector<std::string> split_sentences(std::string_view doc) {
  std::vector<char32_t> cps = decode_utf8(doc);
  std::vector<std::string> sentences;
  std::vector<char32_t> cur;

  auto flush = [&]() {
    // Trim surrounding whitespace.
    std::size_t b = 0, e = cur.size();
    while (b < e && is_space_cp(cur[b])) ++b;
    while (e > b && is_space_cp(cur[e - 1])) --e;
    if (e > b)
      sentences.push_back(
          encode_utf8(std::vector<char32_t>(cur.begin() + b, cur.begin() + e)));
    cur.clear();
  };

  // Word immediately preceding position i in cur (lowercased ASCII letters
  // and dots only), used to recognize abbreviations.
  auto preceding_word = [&]() {
    std::string w;
    for (auto it = cur.rbegin(); it != cur.rend(); ++it) {
      char32_t c = *it;
      if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '.') {
        if (c == '.') break;
        w.insert(w.begin(), static_cast<char>(std::tolower(static_cast<int>(c))));
        if (w.size() > 12) break;
      } else {
        break;
      }
    }
    return w;
  };

  for (std::size_t i = 0; i < cps.size(); ++i) {
    char32_t c = cps[i];
    if (c == '.' || c == '!' || c == '?') {
      // Consume terminator runs ("..." / "?!").
      cur.push_back(c);
      while (i + 1 < cps.size() &&
             (cps[i + 1] == '.' || cps[i + 1] == '!' || cps[i + 1] == '?')) {
        cur.push_back(cps[++i]);
      }
      if (c == '.') {
        std::string w = preceding_word();
        bool initial = w.size() == 1;  // "A." in "A. B. Smith"
        bool abbrev = abbreviations().count(w) > 0;
        // "3.14": digit on both sides of the dot.
        bool numeric = i + 1 < cps.size() && i >= 1 && cps[i + 1] >= '0' &&
                       cps[i + 1] <= '9' && cps[i - 1] >= '0' &&
                       cps[i - 1] <= '9';
        if (initial || abbrev || numeric) continue;
      }
      // Boundary only when followed by whitespace then an upper-case
      // letter, digit, quote, or end of text.
      std::size_t j = i + 1;
      while (j < cps.size() && is_space_cp(cps[j])) ++j;
      if (j == cps.size()) {
        flush();
      } else if (j > i + 1) {
        char32_t next = cps[j];
        bool upper = (next >= 'A' && next <= 'Z') ||
                     (next >= 0xC0 && next <= 0xDE) ||
                     (next >= '0' && next <= '9') || next == '"' ||
                     next == 0xAB || next == '\'';
        if (upper) {
          flush();
          i = j - 1;
        }
      }
    } else if (c == '\n' && i + 1 < cps.size() && cps[i + 1] == '\n') {
      flush();  // paragraph break
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return sentences;
}

}  // namespace trellis::text
