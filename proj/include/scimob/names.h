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

#ifndef SCIMOB_NAMES_H_
#define SCIMOB_NAMES_H_

#include <string>
#include <string_view>

namespace scimob {

// Folds a UTF-8 name to lowercase ASCII. Latin-1 and Latin Extended-A
// letters lose their diacritics (e.g. "Ö" -> "o", "ß" -> "ss",
// "Ł" -> "l"); code points with no ASCII base are dropped. Invalid UTF-8
// bytes are dropped.
std::string FoldDiacritics(std::string_view utf8);

// Folded name reduced to [a-z0-9]. Hyphens, apostrophes, dots and spaces
// vanish, so "El-Ouahi", "el ouahi" and "El Ouahi" agree.
std::string NormalizeName(std::string_view utf8);

// First folded alphanumeric character of a forename, or '\0' when none.
char FirstInitial(std::string_view utf8);

// Folded forename with punctuation removed, or empty when the forename is
// only initials ("J.", "J-M", "JM"). Used for full-name matching.
std::string FullForename(std::string_view utf8);

}  // namespace scimob

#endif  // SCIMOB_NAMES_H_
