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
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <openssl/evp.h>

#include <json.hpp>

#include "croloc/corpus.hpp"
#include "croloc/error.hpp"
#include "croloc/extract.hpp"
#include "croloc/utf8.hpp"

namespace croloc {

/// Backend response violates the batch contract.
class ProtocolError : public Error {
 public:
    using Error::Error;
};

/// One machine translator. translate_batch returns exactly one output per
/// input, in order.
class TranslatorBackend {
 public:
    virtual ~TranslatorBackend() = default;
    virtual std::string name() const = 0;
    virtual std::vector<std::string> translate_batch(const std::vector<std::string>& texts) = 0;
    /// Whether translate_batch may be called from several threads at once.
    virtual bool concurrent() const { return false; }
};

class IdentityBackend final : public TranslatorBackend {
 public:
    std::string name() const override { return "identity"; }
    std::vector<std::string> translate_batch(const std::vector<std::string>& texts) override { return texts; }
    bool concurrent() const override { return true; }
};

// ---------------------------------------------------------------------------
// Glossary
// ---------------------------------------------------------------------------

class Glossary {
 public:
    Glossary() = default;
    Glossary(std::initializer_list<std::pair<std::string, std::string>> entries) {
        for (const auto& [k, v] : entries) add(k, v);
    }

    void add(std::string key, std::string value) {
        if (key.empty()) throw Error("glossary key must be nonempty");
        auto len = key.size();
        if (!entries_.emplace(std::move(key), std::move(value)).second) throw Error("duplicate glossary key");
        max_key_ = std::max(max_key_, len);
    }

    /// Value of the longest key that is a prefix of `text`, with the key length.
    std::optional<std::pair<std::size_t, const std::string*>> longest_match(std::string_view text) const {
        for (auto len = std::min(max_key_, text.size()); len > 0; --len) {
            if (auto it = entries_.find(std::string(text.substr(0, len))); it != entries_.end())
                return std::make_pair(len, &it->second);
        }
        return std::nullopt;
    }

    std::size_t size() const noexcept { return entries_.size(); }
    const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

 private:
    std::map<std::string, std::string> entries_;
    std::size_t max_key_ = 0;
};

/// TSV: one "japanese<TAB>english" pair per line. Blank lines are ignored.
inline Glossary parse_glossary(std::istream& in, const std::string& source = "<glossary>") {
    Glossary g;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError(source, lineno, "expected japanese<TAB>english");
        try {
            g.add(line.substr(0, tab), line.substr(tab + 1));
        } catch (const Error& e) {
            throw ParseError(source, lineno, e.what());
        }
    }
    return g;
}

inline Glossary load_glossary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read glossary " + path.string());
    return parse_glossary(in, path.string());
}

namespace detail {

inline bool ascii_alnum_at_end(std::string_view s) {
    return !s.empty() && std::isalnum(static_cast<unsigned char>(s.back())) && static_cast<unsigned char>(s.back()) < 0x80;
}
inline bool ascii_alnum_at_start(std::string_view s) {
    return !s.empty() && std::isalnum(static_cast<unsigned char>(s.front())) && static_cast<unsigned char>(s.front()) < 0x80;
}

}  // namespace detail

/// Greedy longest-match replacement, left to right. Uncovered characters pass
/// through. A space is inserted where a replacement would otherwise fuse with
/// adjacent ASCII letters or digits, since the source text has no word breaks.
inline std::string glossary_translate(std::string_view text, const Glossary& glossary) {
    std::string out;
    out.reserve(text.size());
    bool last_was_replacement = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (auto m = glossary.longest_match(text.substr(pos))) {
            const auto& value = *m->second;
            if (detail::ascii_alnum_at_end(out) && detail::ascii_alnum_at_start(value)) out.push_back(' ');
            out += value;
            pos += m->first;
            last_was_replacement = true;
            continue;
        }
        auto d = utf8::decode(text, pos);
        std::size_t len = d ? d->length : 1;
        auto piece = text.substr(pos, len);
        if (last_was_replacement && detail::ascii_alnum_at_end(out) && detail::ascii_alnum_at_start(piece))
            out.push_back(' ');
        out += piece;
        pos += len;
        last_was_replacement = false;
    }
    return out;
}

class GlossaryBackend final : public TranslatorBackend {
 public:
    explicit GlossaryBackend(Glossary glossary) : glossary_(std::move(glossary)) {}
    std::string name() const override { return "glossary"; }
    std::vector<std::string> translate_batch(const std::vector<std::string>& texts) override {
        std::vector<std::string> out;
        out.reserve(texts.size());
        for (const auto& t : texts) out.push_back(glossary_translate(t, glossary_));
        return out;
    }
    bool concurrent() const override { return true; }

 private:
    Glossary glossary_;
};

// ---------------------------------------------------------------------------
// Cache
// ---------------------------------------------------------------------------

inline std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 computation failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

/// Translations keyed by (backend, SHA-256 of source). With a file, existing
/// entries are loaded up front and new ones appended as JSON Lines
/// {backend, sha256, source, translation}.
class TranslationCache {
 public:
    TranslationCache() = default;

    explicit TranslationCache(std::filesystem::path file) : file_(std::move(file)) {
        std::ifstream in(*file_, std::ios::binary);
        if (!in) return;  // created on first insert
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            try {
                auto j = nlohmann::json::parse(line);
                entries_[key(j.at("backend").get<std::string>(), j.at("sha256").get<std::string>())] =
                    j.at("translation").get<std::string>();
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(file_->string(), lineno, e.what());
            }
        }
    }

    TranslationCache(const TranslationCache&) = delete;
    TranslationCache& operator=(const TranslationCache&) = delete;

    std::optional<std::string> lookup(const std::string& backend, std::string_view source) const {
        std::shared_lock lock(mutex_);
        auto it = entries_.find(key(backend, sha256_hex(source)));
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    void insert(const std::string& backend, std::string_view source, const std::string& translation) {
        auto digest = sha256_hex(source);
        std::unique_lock lock(mutex_);
        if (!entries_.emplace(key(backend, digest), translation).second) return;
        if (!file_) return;
        if (file_->has_parent_path()) std::filesystem::create_directories(file_->parent_path());
        std::ofstream out(*file_, std::ios::binary | std::ios::app);
        if (!out) throw Error("cannot append to translation cache " + file_->string());
        nlohmann::json j{{"backend", backend}, {"sha256", digest}, {"source", source}, {"translation", translation}};
        out << j.dump() << '\n';
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return entries_.size();
    }

 private:
    static std::string key(const std::string& backend, const std::string& digest) { return backend + '\x1f' + digest; }

    std::optional<std::filesystem::path> file_;
    std::unordered_map<std::string, std::string> entries_;
    mutable std::shared_mutex mutex_;
};

// ---------------------------------------------------------------------------
// Document and report translation
// ---------------------------------------------------------------------------

struct TranslateOptions {
    /// Backend failures abort instead of leaving text untranslated.
    bool strict = false;
};

namespace detail {

/// Keeps a translation from closing or breaking the construct it lands in.
inline std::string sanitize_for(SpanKind kind, std::string text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '\n' || c == '\r') {
            out.push_back(' ');
        } else if (kind == SpanKind::block_comment && c == '*' && i + 1 < text.size() && text[i + 1] == '/') {
            out += "* ";
        } else if (kind == SpanKind::string_literal && c == '"') {
            out.push_back('\'');
        } else if (kind == SpanKind::string_literal && c == '\\') {
            out.push_back('/');
        } else if (kind == SpanKind::string_literal && (c == '{' || c == '}')) {
            out.push_back(c == '{' ? '(' : ')');
        } else {
            out.push_back(c);
        }
    }
    return out;
}

/// Translates `texts` through the cache, calling the backend once for all
/// misses. Returns nullopt entries for texts the backend failed on.
inline std::vector<std::optional<std::string>> translate_texts(const std::vector<std::string>& texts,
                                                               TranslatorBackend& backend, TranslationCache* cache,
                                                               const TranslateOptions& options,
                                                               Diagnostics& diags, const std::string& where) {
    std::vector<std::optional<std::string>> out(texts.size());
    std::vector<std::string> misses;
    std::map<std::string, std::vector<std::size_t>> miss_positions;
    const auto backend_name = backend.name();
    for (std::size_t i = 0; i < texts.size(); ++i) {
        if (texts[i].empty()) {
            out[i] = std::string();
            continue;
        }
        if (cache) {
            if (auto hit = cache->lookup(backend_name, texts[i])) {
                out[i] = std::move(*hit);
                continue;
            }
        }
        auto& pos = miss_positions[texts[i]];
        if (pos.empty()) misses.push_back(texts[i]);
        pos.push_back(i);
    }
    if (misses.empty()) return out;

    std::vector<std::string> translated;
    try {
        translated = backend.translate_batch(misses);
        if (translated.size() != misses.size())
            throw ProtocolError(backend_name + " returned " + std::to_string(translated.size()) +
                                " translations for " + std::to_string(misses.size()) + " texts");
    } catch (const std::exception& e) {
        if (options.strict) throw;
        diags.push_back({where, std::string("translation failed, text left untranslated: ") + e.what()});
        return out;
    }
    for (std::size_t m = 0; m < misses.size(); ++m) {
        if (cache) cache->insert(backend_name, misses[m], translated[m]);
        for (auto i : miss_positions[misses[m]]) out[i] = translated[m];
    }
    return out;
}

}  // namespace detail

struct TranslatedDocument {
    SourceDocument document;
    std::size_t segments = 0;
    std::size_t translated = 0;
    Diagnostics diagnostics;
};

/// Translates the Japanese segments of every comment and string literal and
/// writes the results back in place. Bytes outside those segments are never
/// touched.
inline TranslatedDocument translate_document(const SourceDocument& doc, TranslatorBackend& backend,
                                             TranslationCache* cache, const TranslateOptions& options = {}) {
    TranslatedDocument result;
    auto extracted = extract_spans(doc);
    result.diagnostics = std::move(extracted.diagnostics);

    std::vector<std::pair<const Span*, Segment>> targets;
    for (const auto& span : extracted.spans)
        for (auto& seg : japanese_segments(span.text)) targets.emplace_back(&span, std::move(seg));
    result.segments = targets.size();
    if (targets.empty()) {
        result.document = doc;
        return result;
    }

    std::vector<std::string> texts;
    texts.reserve(targets.size());
    for (const auto& [_, seg] : targets) texts.push_back(seg.text);
    auto translations = detail::translate_texts(texts, backend, cache, options, result.diagnostics, doc.path);

    std::vector<Replacement> replacements;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (!translations[i]) continue;
        const auto& [span, seg] = targets[i];
        replacements.push_back({*span, seg, detail::sanitize_for(span->kind, std::move(*translations[i]))});
        ++result.translated;
    }
    result.document = reembed(doc, replacements);
    return result;
}

struct TranslatedReport {
    BugReport report;
    Diagnostics diagnostics;
};

/// Translates summary and description, each as a whole, when they contain
/// Japanese. Everything else is copied.
inline TranslatedReport translate_report(const BugReport& report, TranslatorBackend& backend, TranslationCache* cache,
                                         const TranslateOptions& options = {}) {
    TranslatedReport result{report, {}};
    std::vector<std::string*> fields;
    std::vector<std::string> texts;
    for (auto* f : {&result.report.summary, &result.report.description}) {
        if (detect_japanese(*f)) {
            fields.push_back(f);
            texts.push_back(*f);
        }
    }
    if (texts.empty()) return result;
    auto translations = detail::translate_texts(texts, backend, cache, options, result.diagnostics, report.id);
    for (std::size_t i = 0; i < fields.size(); ++i)
        if (translations[i]) *fields[i] = std::move(*translations[i]);
    return result;
}

}  // namespace croloc
