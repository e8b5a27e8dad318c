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

#include <algorithm>
#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "croloc/corpus.hpp"
#include "croloc/error.hpp"
#include "croloc/utf8.hpp"

namespace croloc {

// ---------------------------------------------------------------------------
// Japanese detection
// ---------------------------------------------------------------------------

struct CodepointRange {
    char32_t lo;
    char32_t hi;  // inclusive

    constexpr bool contains(char32_t cp) const noexcept { return cp >= lo && cp <= hi; }
};

inline constexpr CodepointRange kCjkPunctuation{0x3001, 0x303F};

/// Hiragana, Katakana, halfwidth Katakana, CJK ideographs (URO and
/// Extension A) and CJK punctuation. Ideographs shared with Chinese are
/// counted as Japanese.
inline constexpr std::array<CodepointRange, 6> kJapaneseRanges{{
    {0x3040, 0x309F},  // Hiragana
    {0x30A0, 0x30FF},  // Katakana
    {0xFF66, 0xFF9D},  // Halfwidth Katakana
    {0x4E00, 0x9FFF},  // CJK Unified Ideographs
    {0x3400, 0x4DBF},  // CJK Extension A
    kCjkPunctuation,
}};

inline bool is_japanese(char32_t cp, std::span<const CodepointRange> ranges = kJapaneseRanges) noexcept {
    return std::any_of(ranges.begin(), ranges.end(), [cp](const CodepointRange& r) { return r.contains(cp); });
}

inline bool detect_japanese(std::string_view text, std::span<const CodepointRange> ranges = kJapaneseRanges) {
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto d = utf8::decode(text, pos);
        if (!d) {
            ++pos;
            continue;
        }
        if (is_japanese(d->codepoint, ranges)) return true;
        pos += d->length;
    }
    return false;
}

/// Part of a span's text to translate. Offsets are relative to the span text.
struct Segment {
    std::size_t start = 0;
    std::size_t end = 0;
    std::string text;

    bool operator==(const Segment&) const = default;
};

namespace detail {

inline bool is_run_space(char32_t cp) noexcept { return cp == U' ' || cp == U'\t' || cp == 0x3000; }

}  // namespace detail

/// Maximal runs of Japanese characters. A run also absorbs CJK punctuation
/// and horizontal whitespace that sits between two Japanese characters.
inline std::vector<Segment> japanese_segments(std::string_view text,
                                              std::span<const CodepointRange> ranges = kJapaneseRanges) {
    struct Cp {
        std::size_t pos;
        std::size_t len;
        char32_t cp;  // 0xFFFFFFFF for an undecodable byte
    };
    std::vector<Cp> cps;
    for (std::size_t pos = 0; pos < text.size();) {
        if (auto d = utf8::decode(text, pos)) {
            cps.push_back({pos, d->length, d->codepoint});
            pos += d->length;
        } else {
            cps.push_back({pos, 1, 0xFFFFFFFF});
            ++pos;
        }
    }
    auto in_run = [&](char32_t cp) { return is_japanese(cp, ranges) || kCjkPunctuation.contains(cp); };

    std::vector<Segment> out;
    std::size_t i = 0;
    while (i < cps.size()) {
        if (!in_run(cps[i].cp)) {
            ++i;
            continue;
        }
        std::size_t first = i, last = i;
        bool has_japanese = is_japanese(cps[i].cp, ranges);
        ++i;
        while (i < cps.size()) {
            if (in_run(cps[i].cp)) {
                has_japanese = has_japanese || is_japanese(cps[i].cp, ranges);
                last = i++;
                continue;
            }
            std::size_t j = i;
            while (j < cps.size() && detail::is_run_space(cps[j].cp)) ++j;
            if (j > i && j < cps.size() && in_run(cps[j].cp)) {
                i = j;
                continue;
            }
            break;
        }
        if (has_japanese) {
            auto s = cps[first].pos;
            auto e = cps[last].pos + cps[last].len;
            out.push_back({s, e, std::string(text.substr(s, e - s))});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Span extraction
// ---------------------------------------------------------------------------

enum class SpanKind { line_comment, block_comment, string_literal };

inline std::string_view to_string(SpanKind k) {
    switch (k) {
        case SpanKind::line_comment: return "line_comment";
        case SpanKind::block_comment: return "block_comment";
        case SpanKind::string_literal: return "string_literal";
    }
    return "";
}

/// Comment or string-literal body; `text` equals the raw bytes in
/// [byte_start, byte_end) and never includes delimiters.
struct Span {
    std::size_t byte_start = 0;
    std::size_t byte_end = 0;
    SpanKind kind = SpanKind::line_comment;
    std::string text;

    bool operator==(const Span&) const = default;
};

struct ExtractResult {
    std::vector<Span> spans;
    Diagnostics diagnostics;
};

namespace detail {

class SpanLexer {
 public:
    SpanLexer(std::string_view src, Language lang, std::string where)
        : src_(src), lang_(lang), where_(std::move(where)) {}

    ExtractResult run() {
        while (pos_ < src_.size()) {
            if (!try_token()) ++pos_;
        }
        return {std::move(spans_), std::move(diags_)};
    }

 private:
    bool at(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }
    char peek(std::size_t ahead = 0) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }
    bool csharp() const { return lang_ == Language::csharp; }
    bool has_char_literals() const { return lang_ != Language::generic; }

    void emit(std::size_t start, std::size_t end, SpanKind kind) {
        if (start < end) spans_.push_back({start, end, kind, std::string(src_.substr(start, end - start))});
    }

    void diag(std::size_t at, std::string msg) {
        diags_.push_back({where_ + ":" + std::to_string(line_of(at)), std::move(msg)});
    }

    std::size_t line_of(std::size_t at) const {
        return 1 + static_cast<std::size_t>(std::count(src_.begin(), src_.begin() + static_cast<std::ptrdiff_t>(at), '\n'));
    }

    // Consumes a comment, string or char literal starting at pos_.
    bool try_token() {
        if (at("//")) return line_comment(), true;
        if (at("/*")) return block_comment(), true;
        if (csharp()) {
            std::size_t dollars = 0, ats = 0, k = pos_;
            while (k < src_.size() && (src_[k] == '$' || src_[k] == '@')) {
                (src_[k] == '$' ? dollars : ats)++;
                ++k;
            }
            if (k > pos_ && k < src_.size() && src_[k] == '"' && ats <= 1 && (dollars <= 1 || ats == 0)) {
                if (ats == 0 && src_.substr(k, 3) == "\"\"\"") {
                    pos_ = k;
                    return raw_string(dollars), true;
                }
                pos_ = k + 1;
                if (ats == 1)
                    verbatim_string(dollars == 1);
                else
                    regular_string(dollars == 1);
                return true;
            }
            if (at("\"\"\"")) return raw_string(0), true;
        }
        if (lang_ == Language::java && at("\"\"\"")) return text_block(), true;
        if (peek() == '"') {
            ++pos_;
            regular_string(false);
            return true;
        }
        if (has_char_literals() && peek() == '\'') return char_literal(), true;
        return false;
    }

    void line_comment() {
        pos_ += 2;
        while (peek() == '/') ++pos_;  // doc-comment slashes
        if (peek() == ' ') ++pos_;
        auto start = pos_;
        auto nl = src_.find('\n', pos_);
        auto end = nl == std::string_view::npos ? src_.size() : nl;
        pos_ = end;
        if (end > start && src_[end - 1] == '\r') --end;
        emit(start, end, SpanKind::line_comment);
    }

    void block_comment() {
        auto open = pos_;
        auto start = pos_ + 2;
        auto close = src_.find("*/", start);
        if (close == std::string_view::npos) {
            diag(open, "unterminated block comment");
            emit(start, src_.size(), SpanKind::block_comment);
            pos_ = src_.size();
            return;
        }
        emit(start, close, SpanKind::block_comment);
        pos_ = close + 2;
    }

    void char_literal() {
        ++pos_;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\\') {
                pos_ += 2;
            } else if (c == '\'' ) {
                ++pos_;
                return;
            } else if (c == '\n') {
                return;  // stray apostrophe; resume lexing on the next line
            } else {
                ++pos_;
            }
        }
    }

    void unterminated_string(std::size_t open, std::size_t frag_start) {
        diag(open, "unterminated string literal");
        emit(frag_start, src_.size(), SpanKind::string_literal);
        pos_ = src_.size();
    }

    // pos_ is just past the opening quote.
    void regular_string(bool interpolated) {
        auto open = pos_ - 1;
        auto frag = pos_;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\\') {
                pos_ += 2;
            } else if (c == '"') {
                emit(frag, pos_, SpanKind::string_literal);
                ++pos_;
                return;
            } else if (interpolated && c == '{') {
                if (peek(1) == '{') {
                    pos_ += 2;
                    continue;
                }
                emit(frag, pos_, SpanKind::string_literal);
                if (!interpolation_hole(1)) return;
                frag = pos_;
            } else if (interpolated && c == '}' && peek(1) == '}') {
                pos_ += 2;
            } else {
                ++pos_;
            }
        }
        pos_ = std::min(pos_, src_.size());
        unterminated_string(open, std::min(frag, src_.size()));
    }

    // C# @"..." with "" as the escaped quote.
    void verbatim_string(bool interpolated) {
        auto open = pos_ - 1;
        auto frag = pos_;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '"') {
                if (peek(1) == '"') {
                    pos_ += 2;
                    continue;
                }
                emit(frag, pos_, SpanKind::string_literal);
                ++pos_;
                return;
            }
            if (interpolated && c == '{') {
                if (peek(1) == '{') {
                    pos_ += 2;
                    continue;
                }
                emit(frag, pos_, SpanKind::string_literal);
                if (!interpolation_hole(1)) return;
                frag = pos_;
                continue;
            }
            if (interpolated && c == '}' && peek(1) == '}') {
                pos_ += 2;
                continue;
            }
            ++pos_;
        }
        unterminated_string(open, frag);
    }

    // C# 11 raw string: N >= 3 quotes, closed by the same run; with $ prefixes
    // a run of that many braces opens a hole.
    void raw_string(std::size_t dollars) {
        auto open = pos_;
        std::size_t quotes = 0;
        while (peek() == '"') ++quotes, ++pos_;
        auto frag = pos_;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '"') {
                std::size_t run = 0;
                while (peek(run) == '"') ++run;
                if (run >= quotes) {
                    auto close = pos_ + run - quotes;
                    emit(frag, close, SpanKind::string_literal);
                    pos_ += run;
                    return;
                }
                pos_ += run;
                continue;
            }
            if (dollars > 0 && c == '{') {
                std::size_t run = 0;
                while (peek(run) == '{') ++run;
                if (run < dollars) {
                    pos_ += run;
                    continue;
                }
                pos_ += run - dollars;  // surplus braces are content
                emit(frag, pos_, SpanKind::string_literal);
                pos_ += dollars - 1;
                if (!interpolation_hole(dollars)) return;
                frag = pos_;
                continue;
            }
            ++pos_;
        }
        unterminated_string(open, frag);
    }

    // Java text block """...""" with backslash escapes.
    void text_block() {
        auto open = pos_;
        pos_ += 3;
        auto frag = pos_;
        while (pos_ < src_.size()) {
            if (src_[pos_] == '\\') {
                pos_ += 2;
            } else if (at("\"\"\"")) {
                emit(frag, pos_, SpanKind::string_literal);
                pos_ += 3;
                return;
            } else {
                ++pos_;
            }
        }
        pos_ = src_.size();
        unterminated_string(open, frag);
    }

    // pos_ is at the last '{' of the opening run. Skips the hole as code,
    // lexing any nested comments or strings. Returns false at end of input.
    bool interpolation_hole(std::size_t closing_braces) {
        auto open = pos_;
        ++pos_;
        int depth = 0;
        while (pos_ < src_.size()) {
            if (try_token()) continue;
            char c = src_[pos_];
            if (c == '{') {
                ++depth;
            } else if (c == '}') {
                if (depth == 0) {
                    pos_ += std::max<std::size_t>(closing_braces, 1);
                    return true;
                }
                --depth;
            }
            ++pos_;
        }
        diag(open, "unterminated interpolation hole");
        return false;
    }

    std::string_view src_;
    Language lang_;
    std::string where_;
    std::size_t pos_ = 0;
    std::vector<Span> spans_;
    Diagnostics diags_;
};

}  // namespace detail

/// Comment and string-literal spans of `text` under `lang`'s lexical rules,
/// in source order.
inline ExtractResult extract_spans(std::string_view text, Language lang, std::string where = {}) {
    return detail::SpanLexer(text, lang, std::move(where)).run();
}

inline ExtractResult extract_spans(const SourceDocument& doc) {
    return extract_spans(doc.raw_text, doc.language, doc.path);
}

// ---------------------------------------------------------------------------
// Re-embedding
// ---------------------------------------------------------------------------

struct Replacement {
    Span span;
    Segment segment;
    std::string new_text;
};

/// Replaces each targeted segment with its new text. Every other byte of the
/// document is copied unchanged.
inline SourceDocument reembed(const SourceDocument& doc, const std::vector<Replacement>& replacements) {
    struct Target {
        std::size_t start, end;
        const std::string* text;
    };
    std::vector<Target> targets;
    targets.reserve(replacements.size());
    const auto size = doc.raw_text.size();
    for (const auto& r : replacements) {
        const auto& sp = r.span;
        const auto& sg = r.segment;
        if (sp.byte_start >= sp.byte_end || sp.byte_end > size)
            throw Error(doc.path + ": span [" + std::to_string(sp.byte_start) + ", " + std::to_string(sp.byte_end) +
                        ") out of range");
        if (sg.start > sg.end || sg.end > sp.byte_end - sp.byte_start)
            throw Error(doc.path + ": segment [" + std::to_string(sg.start) + ", " + std::to_string(sg.end) +
                        ") out of span range");
        auto abs_start = sp.byte_start + sg.start;
        auto abs_end = sp.byte_start + sg.end;
        if (std::string_view(doc.raw_text).substr(abs_start, abs_end - abs_start) != sg.text)
            throw Error(doc.path + ": segment text does not match document at byte " + std::to_string(abs_start));
        targets.push_back({abs_start, abs_end, &r.new_text});
    }
    std::sort(targets.begin(), targets.end(), [](const Target& a, const Target& b) { return a.start < b.start; });
    for (std::size_t i = 1; i < targets.size(); ++i)
        if (targets[i].start < targets[i - 1].end)
            throw Error(doc.path + ": overlapping replacements at byte " + std::to_string(targets[i].start));

    SourceDocument out = doc;
    out.raw_text.clear();
    std::size_t cursor = 0;
    for (const auto& t : targets) {
        out.raw_text.append(doc.raw_text, cursor, t.start - cursor);
        out.raw_text += *t.text;
        cursor = t.end;
    }
    out.raw_text.append(doc.raw_text, cursor, std::string::npos);
    return out;
}

}  // namespace croloc
