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
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "croloc/corpus.hpp"
#include "croloc/error.hpp"
#include "croloc/tokenize.hpp"

namespace croloc {

using TermId = std::uint32_t;

/// log(c_td / c_d + 1). Undefined for an empty document.
inline double tf(std::size_t c_td, std::size_t c_d) {
    if (c_d == 0) throw Error("tf: empty document");
    if (c_td > c_d) throw Error("tf: term count exceeds document length");
    return std::log(static_cast<double>(c_td) / static_cast<double>(c_d) + 1.0);
}

/// log(|D| / df). Terms only exist with df >= 1.
inline double idf(std::size_t df, std::size_t corpus_size) {
    if (df == 0 || df > corpus_size) throw Error("idf: document frequency out of range");
    return std::log(static_cast<double>(corpus_size) / static_cast<double>(df));
}

struct TermStats {
    std::vector<std::string> terms;  // indexed by TermId, sorted
    std::vector<std::size_t> document_frequency;
    std::size_t corpus_size = 0;

    std::optional<TermId> find(const std::string& term) const {
        auto it = std::lower_bound(terms.begin(), terms.end(), term);
        if (it == terms.end() || *it != term) return std::nullopt;
        return static_cast<TermId>(it - terms.begin());
    }
    std::size_t size() const noexcept { return terms.size(); }
};

struct TermWeight {
    TermId term;
    double weight;
};

/// Sparse tf-idf vector. `counts` holds raw occurrences of in-vocabulary
/// terms; `weights` holds the nonzero tf*idf entries. Both sorted by term id.
struct DocumentVector {
    std::size_t doc_id = 0;
    std::size_t term_count = 0;
    std::vector<std::pair<TermId, std::size_t>> counts;
    std::vector<TermWeight> weights;
    double norm = 0.0;

    bool is_zero() const noexcept { return norm == 0.0; }
};

struct Index {
    TermStats stats;
    std::vector<DocumentVector> documents;
    std::vector<std::string> paths;  // parallel to documents
    std::size_t c_min = 0;
    std::size_t c_max = 0;
    TokenizerOptions tokenizer;

    std::size_t size() const noexcept { return documents.size(); }
};

struct IndexInput {
    std::string path;
    std::vector<std::string> tokens;
};

namespace detail {

inline DocumentVector weigh(std::size_t doc_id, std::size_t term_count, std::map<TermId, std::size_t> counts,
                            const TermStats& stats) {
    DocumentVector v;
    v.doc_id = doc_id;
    v.term_count = term_count;
    double sq = 0.0;
    for (const auto& [term, c] : counts) {
        v.counts.emplace_back(term, c);
        double w = tf(c, term_count) * idf(stats.document_frequency[term], stats.corpus_size);
        if (w != 0.0) {
            v.weights.push_back({term, w});
            sq += w * w;
        }
    }
    v.norm = std::sqrt(sq);
    return v;
}

}  // namespace detail

inline Index build_index(const std::vector<IndexInput>& docs, const TokenizerOptions& tokenizer = {}) {
    if (docs.empty()) throw Error("cannot build an index over an empty corpus");
    Index index;
    index.tokenizer = tokenizer;
    index.stats.corpus_size = docs.size();

    std::map<std::string, std::size_t> df;
    for (const auto& d : docs) {
        std::vector<std::string> uniq(d.tokens);
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        for (auto& t : uniq) ++df[t];
    }
    for (auto& [term, n] : df) {
        index.stats.terms.push_back(term);
        index.stats.document_frequency.push_back(n);
    }

    index.c_min = docs.front().tokens.size();
    index.c_max = index.c_min;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        const auto& d = docs[i];
        std::map<TermId, std::size_t> counts;
        for (const auto& t : d.tokens) ++counts[*index.stats.find(t)];
        index.documents.push_back(detail::weigh(i, d.tokens.size(), std::move(counts), index.stats));
        index.paths.push_back(normalize_path(d.path));
        index.c_min = std::min(index.c_min, d.tokens.size());
        index.c_max = std::max(index.c_max, d.tokens.size());
    }
    return index;
}

inline Index build_index(const Corpus& corpus, const TokenizerOptions& tokenizer = {}) {
    std::vector<IndexInput> inputs;
    inputs.reserve(corpus.size());
    for (const auto& doc : corpus.documents()) inputs.push_back({doc.path, tokenize(doc.raw_text, tokenizer)});
    return build_index(inputs, tokenizer);
}

/// Vectorizes a token stream in the index's term space. tf uses the stream's
/// own length, out-of-vocabulary tokens included; those tokens get no weight.
inline DocumentVector vectorize_tokens(const std::vector<std::string>& tokens, const TermStats& stats) {
    std::map<TermId, std::size_t> counts;
    for (const auto& t : tokens)
        if (auto id = stats.find(t)) ++counts[*id];
    if (tokens.empty()) return {};
    return detail::weigh(0, tokens.size(), std::move(counts), stats);
}

inline DocumentVector vectorize_query(std::string_view text, const Index& index) {
    return vectorize_tokens(tokenize(text, index.tokenizer), index.stats);
}

inline DocumentVector vectorize_query(const BugReport& report, const Index& index) {
    return vectorize_query(report.query_text(), index);
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

inline constexpr std::string_view kIndexFormat = "croloc-index";
inline constexpr int kIndexVersion = 1;

inline nlohmann::json to_json(const Index& index) {
    using nlohmann::json;
    json vocab = json::array();
    for (std::size_t t = 0; t < index.stats.size(); ++t)
        vocab.push_back({{"term", index.stats.terms[t]}, {"df", index.stats.document_frequency[t]}});
    json docs = json::array();
    for (std::size_t i = 0; i < index.size(); ++i) {
        const auto& v = index.documents[i];
        json counts = json::array(), weights = json::array();
        for (auto [t, c] : v.counts) counts.push_back({t, c});
        for (auto [t, w] : v.weights) weights.push_back({t, w});
        docs.push_back({{"doc_id", v.doc_id},
                        {"path", index.paths[i]},
                        {"term_count", v.term_count},
                        {"norm", v.norm},
                        {"counts", std::move(counts)},
                        {"weights", std::move(weights)}});
    }
    return {{"format", kIndexFormat},
            {"version", kIndexVersion},
            {"tokenizer",
             {{"split_identifiers", index.tokenizer.split_identifiers},
              {"stopwords", index.tokenizer.stopwords},
              {"stemming", index.tokenizer.stemming}}},
            {"corpus_size", index.stats.corpus_size},
            {"c_min", index.c_min},
            {"c_max", index.c_max},
            {"vocabulary", std::move(vocab)},
            {"documents", std::move(docs)}};
}

inline Index index_from_json(const nlohmann::json& j) {
    try {
        if (j.at("format") != kIndexFormat) throw Error("not an index file");
        if (j.at("version") != kIndexVersion)
            throw Error("unsupported index version " + j.at("version").dump());
        Index index;
        const auto& tok = j.at("tokenizer");
        index.tokenizer.split_identifiers = tok.at("split_identifiers").get<bool>();
        index.tokenizer.stopwords = tok.at("stopwords").get<bool>();
        index.tokenizer.stemming = tok.at("stemming").get<bool>();
        index.stats.corpus_size = j.at("corpus_size").get<std::size_t>();
        index.c_min = j.at("c_min").get<std::size_t>();
        index.c_max = j.at("c_max").get<std::size_t>();
        for (const auto& e : j.at("vocabulary")) {
            index.stats.terms.push_back(e.at("term").get<std::string>());
            index.stats.document_frequency.push_back(e.at("df").get<std::size_t>());
        }
        if (!std::is_sorted(index.stats.terms.begin(), index.stats.terms.end()))
            throw Error("vocabulary is not sorted");
        for (const auto& d : j.at("documents")) {
            DocumentVector v;
            v.doc_id = d.at("doc_id").get<std::size_t>();
            v.term_count = d.at("term_count").get<std::size_t>();
            v.norm = d.at("norm").get<double>();
            for (const auto& c : d.at("counts")) {
                auto t = c.at(0).get<TermId>();
                if (t >= index.stats.size()) throw Error("term id out of range");
                v.counts.emplace_back(t, c.at(1).get<std::size_t>());
            }
            for (const auto& w : d.at("weights")) {
                auto t = w.at(0).get<TermId>();
                if (t >= index.stats.size()) throw Error("term id out of range");
                v.weights.push_back({t, w.at(1).get<double>()});
            }
            index.paths.push_back(d.at("path").get<std::string>());
            index.documents.push_back(std::move(v));
        }
        if (index.documents.size() != index.stats.corpus_size) throw Error("document count mismatch");
        return index;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed index: ") + e.what());
    }
}

inline void save_index(const Index& index, const std::filesystem::path& path) {
    write_file(path, to_json(index).dump() + "\n");
}

inline Index load_index(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw MissingArtifact("index " + path.string());
    try {
        return index_from_json(nlohmann::json::parse(read_file(path)));
    } catch (const nlohmann::json::exception& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

}  // namespace croloc
