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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "croloc/porter_stemmer.hpp"
#include "croloc/stopwords.hpp"

namespace croloc {

struct TokenizerOptions {
    bool split_identifiers = true;
    bool stopwords = true;
    bool stemming = false;

    bool operator==(const TokenizerOptions&) const = default;
};

namespace detail {

inline bool is_ascii_alnum(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}
inline bool is_upper(char c) noexcept { return c >= 'A' && c <= 'Z'; }
inline bool is_lower(char c) noexcept { return c >= 'a' && c <= 'z'; }
inline bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out)
        if (is_upper(c)) c = static_cast<char>(c - 'A' + 'a');
    return out;
}

}  // namespace detail

/// Splits an alphanumeric word at lower->Upper, ACRONYMWord and letter<->digit
/// boundaries: "parseHTTPResponse2" -> {parse, HTTP, Response, 2}.
inline std::vector<std::string_view> split_identifier(std::string_view word) {
    using namespace detail;
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 1; i < word.size(); ++i) {
        char prev = word[i - 1], cur = word[i];
        bool boundary = (is_lower(prev) && is_upper(cur)) || (is_digit(prev) != is_digit(cur)) ||
                        (is_upper(prev) && is_upper(cur) && i + 1 < word.size() && is_lower(word[i + 1]));
        if (boundary) {
            parts.push_back(word.substr(start, i - start));
            start = i;
        }
    }
    if (start < word.size()) parts.push_back(word.substr(start));
    return parts;
}

/// Term stream for indexing and querying.
///
/// Words are maximal runs of ASCII letters and digits; everything else,
/// including non-ASCII text, separates words. With identifier splitting a
/// word yields its subtokens, preceded by the whole word when it is made of
/// letters only and has more than one subtoken. Pure-digit tokens are
/// dropped. Terms are lowercased, stopwords removed, optionally stemmed, and
/// terms shorter than two characters discarded.
inline std::vector<std::string> tokenize(std::string_view text, const TokenizerOptions& options = {}) {
    using namespace detail;
    std::vector<std::string> raw;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_ascii_alnum(text[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && is_ascii_alnum(text[j])) ++j;
        auto word = text.substr(i, j - i);
        i = j;

        bool has_digit = false;
        for (char c : word) has_digit = has_digit || is_digit(c);
        if (!options.split_identifiers) {
            raw.push_back(to_lower(word));
            continue;
        }
        auto parts = split_identifier(word);
        if (parts.size() > 1 && !has_digit) raw.push_back(to_lower(word));
        for (auto p : parts) raw.push_back(to_lower(p));
    }

    std::vector<std::string> out;
    out.reserve(raw.size());
    PorterStemmer stem;
    for (auto& t : raw) {
        bool all_digits = true;
        for (char c : t) all_digits = all_digits && is_digit(c);
        if (all_digits) continue;
        if (options.stopwords && is_stopword(t)) continue;
        if (options.stemming) t = stem(t);
        if (t.size() < 2) continue;
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace croloc
