// Copyright (C) 2026 The croloc Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance
// with the License. You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under the License.


#include <gtest/gtest.h>

#include <algorithm>

#include "croloc/porter_stemmer.hpp"
#include "croloc/stopwords.hpp"
#include "croloc/tokenize.hpp"

using namespace croloc;
using Terms = std::vector<std::string>;

TEST(SplitIdentifier, Boundaries) {
    auto split = [](std::string_view w) {
        Terms out;
        for (auto p : split_identifier(w)) out.emplace_back(p);
        return out;
    };
    EXPECT_EQ(split("getUserName"), (Terms{"get", "User", "Name"}));
    EXPECT_EQ(split("parseHTTPResponse2"), (Terms{"parse", "HTTP", "Response", "2"}));
    EXPECT_EQ(split("HTMLParser"), (Terms{"HTML", "Parser"}));
    EXPECT_EQ(split("error2x"), (Terms{"error", "2", "x"}));
    EXPECT_EQ(split("URL"), (Terms{"URL"}));
    EXPECT_EQ(split("x"), (Terms{"x"}));
}

TEST(Tokenize, CamelCaseEmitsWholeAndParts) {
    EXPECT_EQ(tokenize("getUserName"), (Terms{"getusername", "get", "user", "name"}));
}

TEST(Tokenize, StopwordsRemoved) { EXPECT_EQ(tokenize("the file"), (Terms{"file"})); }

TEST(Tokenize, SnakeCaseWithDigits) { EXPECT_EQ(tokenize("parse_error2x"), (Terms{"parse", "error"})); }

TEST(Tokenize, DropsShortAndNumericTokens) {
    EXPECT_EQ(tokenize("a b 12 x9 v2Api id"), (Terms{"api", "id"}));
}

TEST(Tokenize, NonAsciiSeparatesWords) {
    EXPECT_EQ(tokenize("在庫stock引当allocation"), (Terms{"stock", "allocation"}));
    EXPECT_EQ(tokenize("café"), (Terms{"caf"}));
    EXPECT_TRUE(tokenize("在庫引当").empty());
}

TEST(Tokenize, OptionsToggleEachStage) {
    TokenizerOptions plain{false, false, false};
    EXPECT_EQ(tokenize("The getUserName", plain), (Terms{"the", "getusername"}));
    TokenizerOptions stem{true, true, true};
    EXPECT_EQ(tokenize("connections loading", stem), (Terms{"connect", "load"}));
}

TEST(Tokenize, StemmingAppliesBeforeLengthFilter) {
    TokenizerOptions stem{true, true, true};
    // "ies" stems to "i", then falls under the length filter.
    EXPECT_EQ(tokenize("ies", stem), Terms{});
}

TEST(Stopwords, SortedAndCaseSensitive) {
    EXPECT_TRUE(std::is_sorted(kEnglishStopwords.begin(), kEnglishStopwords.end()));
    EXPECT_TRUE(is_stopword("the"));
    EXPECT_TRUE(is_stopword("which"));
    EXPECT_FALSE(is_stopword("The"));
    EXPECT_FALSE(is_stopword("file"));
}

// Frozen from tests/oracle/porter_reference.py (NLTK, reference-C variant).
TEST(PorterStemmer, MatchesReferenceImplementation) {
    const std::vector<std::pair<std::string, std::string>> rows{
        {"caresses", "caress"},
        {"ponies", "poni"},
        {"ties", "ti"},
        {"caress", "caress"},
        {"cats", "cat"},
        {"feed", "feed"},
        {"agreed", "agre"},
        {"plastered", "plaster"},
        {"bled", "bled"},
        {"motoring", "motor"},
        {"sing", "sing"},
        {"conflated", "conflat"},
        {"troubled", "troubl"},
        {"sized", "size"},
        {"hopping", "hop"},
        {"tanned", "tan"},
        {"falling", "fall"},
        {"hissing", "hiss"},
        {"fizzed", "fizz"},
        {"failing", "fail"},
        {"filing", "file"},
        {"happy", "happi"},
        {"sky", "sky"},
        {"relational", "relat"},
        {"conditional", "condit"},
        {"rational", "ration"},
        {"valenci", "valenc"},
        {"hesitanci", "hesit"},
        {"digitizer", "digit"},
        {"conformabli", "conform"},
        {"radicalli", "radic"},
        {"differentli", "differ"},
        {"vileli", "vile"},
        {"analogousli", "analog"},
        {"vietnamization", "vietnam"},
        {"predication", "predic"},
        {"operator", "oper"},
        {"feudalism", "feudal"},
        {"decisiveness", "decis"},
        {"hopefulness", "hope"},
        {"callousness", "callous"},
        {"formaliti", "formal"},
        {"sensitiviti", "sensit"},
        {"sensibiliti", "sensibl"},
        {"triplicate", "triplic"},
        {"formative", "form"},
        {"formalize", "formal"},
        {"electriciti", "electr"},
        {"electrical", "electr"},
        {"hopeful", "hope"},
        {"goodness", "good"},
        {"revival", "reviv"},
        {"allowance", "allow"},
        {"inference", "infer"},
        {"airliner", "airlin"},
        {"gyroscopic", "gyroscop"},
        {"adjustable", "adjust"},
        {"defensible", "defens"},
        {"irritant", "irrit"},
        {"replacement", "replac"},
        {"adjustment", "adjust"},
        {"dependent", "depend"},
        {"adoption", "adopt"},
        {"homologou", "homolog"},
        {"communism", "commun"},
        {"activate", "activ"},
        {"angulariti", "angular"},
        {"homologous", "homolog"},
        {"effective", "effect"},
        {"bowdlerize", "bowdler"},
        {"probate", "probat"},
        {"rate", "rate"},
        {"cease", "ceas"},
        {"controll", "control"},
        {"roll", "roll"},
        {"generalizations", "gener"},
        {"oscillators", "oscil"},
        {"connection", "connect"},
        {"connections", "connect"},
        {"connective", "connect"},
        {"connected", "connect"},
        {"connecting", "connect"},
        {"exception", "except"},
        {"exceptions", "except"},
        {"archaeology", "archaeolog"},
        {"analogies", "analog"},
        {"database", "databas"},
        {"databases", "databas"},
        {"configuration", "configur"},
        {"configured", "configur"},
        {"loading", "load"},
        {"loaded", "load"},
        {"initialization", "initi"},
        {"initialize", "initi"},
        {"synchronization", "synchron"},
        {"synchronized", "synchron"},
        {"timeout", "timeout"},
        {"exception", "except"},
        {"retrying", "retri"},
        {"renderer", "render"},
        {"settings", "set"},
    };
    for (const auto& [word, stem] : rows) EXPECT_EQ(porter_stem(word), stem) << word;
}

TEST(PorterStemmer, ShortWordsUnchanged) {
    EXPECT_EQ(porter_stem("is"), "is");
    EXPECT_EQ(porter_stem("a"), "a");
    EXPECT_EQ(porter_stem(""), "");
}
