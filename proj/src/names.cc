// Copyright 2026 The scimob Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scimob/names.h"

#include <cctype>
#include <cstdint>
#include <vector>

namespace scimob {
namespace {

#include "fold_table.inc"

// Decodes one UTF-8 sequence starting at text[*pos]. Returns false and
// advances one byte on malformed input.
bool DecodeUtf8(std::string_view text, size_t *pos, uint32_t *cp) {
  const auto lead = static_cast<unsigned char>(text[*pos]);
  int extra = 0;
  uint32_t value = 0;
  if (lead < 0x80) {
    *cp = lead;
    ++*pos;
    return true;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    value = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    value = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    value = lead & 0x07;
  } else {
    ++*pos;
    return false;
  }
  if (*pos + extra >= text.size()) {
    ++*pos;
    return false;
  }
  for (int i = 1; i <= extra; ++i) {
    const auto c = static_cast<unsigned char>(text[*pos + i]);
    if ((c & 0xC0) != 0x80) {
      ++*pos;
      return false;
    }
    value = (value << 6) | (c & 0x3F);
  }
  *pos += extra + 1;
  *cp = value;
  return true;
}

void AppendFolded(uint32_t cp, std::string *out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(std::tolower(static_cast<int>(cp))));
  } else if (cp >= 0xC0 && cp <= 0x24F) {
    out->append(kLatinFold[cp - 0xC0]);
  } else if (cp >= 0x1E00 && cp <= 0x1EFF) {
    out->append(kLatinExtendedAdditionalFold[cp - 0x1E00]);
  } else if (cp == 0x2010 || cp == 0x2011 || cp == 0x2013 || cp == 0x2019) {
    // Typographic hyphens and apostrophes become their ASCII forms.
    out->push_back(cp == 0x2019 ? '\'' : '-');
  }
}

bool IsAlnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::string FoldDiacritics(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  size_t pos = 0;
  while (pos < utf8.size()) {
    uint32_t cp = 0;
    if (DecodeUtf8(utf8, &pos, &cp)) AppendFolded(cp, &out);
  }
  return out;
}

std::string NormalizeName(std::string_view utf8) {
  std::string folded = FoldDiacritics(utf8);
  std::string out;
  out.reserve(folded.size());
  for (char c : folded) {
    if (IsAlnum(c)) out.push_back(c);
  }
  return out;
}

char FirstInitial(std::string_view utf8) {
  for (char c : FoldDiacritics(utf8)) {
    if (IsAlnum(c)) return c;
  }
  return '\0';
}

std::string FullForename(std::string_view utf8) {
  // Tokens are split on anything that is not a letter in the raw text so
  // that "J.-M." and "J M" read as initials.
  std::vector<std::string> raw_tokens;
  std::string current;
  const std::string folded = FoldDiacritics(utf8);
  for (char c : folded) {
    if (IsAlnum(c)) {
      current.push_back(c);
    } else if (!current.empty()) {
      raw_tokens.push_back(current);
      current.clear();
    }
  }
  if (!current.empty()) raw_tokens.push_back(current);

  // An all-caps ASCII token of up to three letters ("JM") is a run of
  // initials, not a name.
  std::vector<std::string> upper_tokens;
  current.clear();
  for (char c : utf8) {
    if (std::isalpha(static_cast<unsigned char>(c)) ||
        (static_cast<unsigned char>(c) & 0x80)) {
      current.push_back(c);
    } else if (!current.empty()) {
      upper_tokens.push_back(current);
      current.clear();
    }
  }
  if (!current.empty()) upper_tokens.push_back(current);

  bool all_initials = true;
  for (const auto &token : raw_tokens) {
    if (token.size() > 1) all_initials = false;
  }
  if (!all_initials && raw_tokens.size() == 1 && upper_tokens.size() == 1) {
    const std::string &t = upper_tokens.front();
    bool caps = t.size() <= 3;
    for (char c : t) {
      if (!std::isupper(static_cast<unsigned char>(c))) caps = false;
    }
    if (caps) all_initials = true;
  }
  if (all_initials) return {};

  std::string out;
  for (const auto &token : raw_tokens) out += token;
  return out;
}

}  // namespace scimob
