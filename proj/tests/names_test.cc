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

#include <gtest/gtest.h>

namespace scimob {
namespace {

TEST(FoldDiacriticsTest, GoldenLatinFolds) {
  EXPECT_EQ(FoldDiacritics("Müller"), "muller");
  EXPECT_EQ(FoldDiacritics("Gößmann"), "gossmann");
  EXPECT_EQ(FoldDiacritics("Łukasz"), "lukasz");
  EXPECT_EQ(FoldDiacritics("Øster"), "oster");
  EXPECT_EQ(FoldDiacritics("Ærø"), "aero");
  EXPECT_EQ(FoldDiacritics("Þór"), "thor");
  EXPECT_EQ(FoldDiacritics("Çelik"), "celik");
  EXPECT_EQ(FoldDiacritics("Şahin"), "sahin");
  EXPECT_EQ(FoldDiacritics("Yıldız"), "yildiz");
  EXPECT_EQ(FoldDiacritics("Ğ"), "g");
  EXPECT_EQ(FoldDiacritics("Nguyễn"), "nguyen");
  EXPECT_EQ(FoldDiacritics("Ḥusayn"), "husayn");
  EXPECT_EQ(FoldDiacritics("ASCII Only"), "ascii only");
}

TEST(FoldDiacriticsTest, DropsUnfoldableAndInvalidBytes) {
  EXPECT_EQ(FoldDiacritics("محمد"), "");
  EXPECT_EQ(FoldDiacritics("ab\xff" "c"), "abc");
  EXPECT_EQ(FoldDiacritics("x\xc3"), "x");
}

TEST(NormalizeNameTest, HyphensSpacesAndApostrophesVanish) {
  EXPECT_EQ(NormalizeName("El-Ouahi"), "elouahi");
  EXPECT_EQ(NormalizeName("el ouahi"), "elouahi");
  EXPECT_EQ(NormalizeName("El Ouahi"), "elouahi");
  EXPECT_EQ(NormalizeName("O'Brien"), "obrien");
  EXPECT_EQ(NormalizeName("O’Brien"), "obrien");
  EXPECT_EQ(NormalizeName("Al‐Khalili"), "alkhalili");
  EXPECT_EQ(NormalizeName("St. John"), "stjohn");
}

TEST(FirstInitialTest, FirstAlphanumericFolded) {
  EXPECT_EQ(FirstInitial("Jamal"), 'j');
  EXPECT_EQ(FirstInitial("J."), 'j');
  EXPECT_EQ(FirstInitial("Émile"), 'e');
  EXPECT_EQ(FirstInitial("  -Ali"), 'a');
  EXPECT_EQ(FirstInitial(""), '\0');
  EXPECT_EQ(FirstInitial("..."), '\0');
}

TEST(FullForenameTest, InitialsGiveEmpty) {
  EXPECT_EQ(FullForename("J."), "");
  EXPECT_EQ(FullForename("J.-M."), "");
  EXPECT_EQ(FullForename("JM"), "");
  EXPECT_EQ(FullForename("J M"), "");
  EXPECT_EQ(FullForename("Jamal"), "jamal");
  EXPECT_EQ(FullForename("Jean-Marc"), "jeanmarc");
  EXPECT_EQ(FullForename("Zoë"), "zoe");
}

}  // namespace
}  // namespace scimob
