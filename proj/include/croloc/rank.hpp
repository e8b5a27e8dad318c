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
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "croloc/corpus.hpp"
#include "croloc/error.hpp"
#include "croloc/index.hpp"

namespace croloc {

/// Cosine of two sparse vectors; 0 when either has zero norm.
inline double cosine(const DocumentVector& a, const DocumentVector& b) {
    if (a.norm == 0.0 || b.norm == 0.0) return 0.0;
    double dot = 0.0;
    auto i = a.weights.begin(), j = b.weights.begin();
    while (i != a.weights.end() && j != b.weights.end()) {
        if (i->term < j->term) {
            ++i;
        } else if (j->term < i->term) {
            ++j;
        } else {
            dot += i->weight * j->weight;
            ++i;
            ++j;
        }
    }
    return dot / (a.norm * b.norm);
}

inline double vsm_score(const DocumentVector& query, const DocumentVector& doc) { return cosine(query, doc); }

/// Linear rescaling of x from [lo, hi] to [0, 1]. A degenerate range maps
/// everything to 0.5; values outside the range are clamped.
inline double minmax(double x, double lo, double hi, Diagnostics* diags = nullptr) {
    if (lo > hi) throw Error("minmax: lo > hi");
    if (hi == lo) return 0.5;
    if (x < lo || x > hi) {
        if (diags) diags->push_back({"minmax", "value " + std::to_string(x) + " outside range, clamped"});
        x = std::clamp(x, lo, hi);
    }
    return (x - lo) / (hi - lo);
}

inline double logistic(double n) { return 1.0 / (1.0 + std::exp(-n)); }

/// Length weight applied by rVSM: logistic of the normalized term count.
inline double length_weight(std::size_t term_count, const Index& index) {
    return logistic(minmax(static_cast<double>(term_count), static_cast<double>(index.c_min),
                           static_cast<double>(index.c_max)));
}

inline double rvsm_score(const DocumentVector& query, const DocumentVector& doc, const Index& index) {
    return length_weight(doc.term_count, index) * vsm_score(query, doc);
}

/// Mixing weight between rVSM and history similarity, in [0, 1].
class Alpha {
 public:
    explicit Alpha(double value) : value_(value) {
        if (!(value >= 0.0 && value <= 1.0)) throw Error("alpha must lie in [0, 1], got " + std::to_string(value));
    }
    double value() const noexcept { return value_; }

 private:
    double value_;
};

inline constexpr double kDefaultAlpha = 0.2;

// ---------------------------------------------------------------------------
// History of resolved reports
// ---------------------------------------------------------------------------

struct HistoryEntry {
    std::string id;
    DocumentVector vector;
    std::vector<std::string> fixed_files;  // normalized, unique
    Timestamp resolved_at;
};

/// Reports resolved strictly before a query was reported, vectorized in the
/// corpus term space.
class HistorySet {
 public:
    HistorySet() = default;

    static HistorySet build(const std::vector<BugReport>& reports, Timestamp query_reported_at, const Index& index) {
        HistorySet h;
        for (const auto& r : reports) {
            if (!r.resolved_at || !(*r.resolved_at < query_reported_at)) continue;
            if (!r.fixed_files || r.fixed_files->empty()) continue;
            h.add(r.id, vectorize_query(r, index), *r.fixed_files, *r.resolved_at);
        }
        return h;
    }

    /// Adds an already vectorized report. Fixed files are normalized and deduplicated.
    void add(std::string id, DocumentVector vector, const std::vector<std::string>& fixed_files,
             Timestamp resolved_at = {}) {
        std::set<std::string> files;
        for (const auto& f : fixed_files) files.insert(normalize_path(f));
        if (files.empty()) throw Error("history report " + id + " has no fixed files");
        entries_.push_back({std::move(id), std::move(vector), {files.begin(), files.end()}, resolved_at});
    }

    const std::vector<HistoryEntry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }

    /// SimiScore for every path touched by the history: sum over reports b
    /// that fixed the path of cos(q, b) / n_b.
    std::unordered_map<std::string, double> similarity_by_path(const DocumentVector& query) const {
        std::unordered_map<std::string, double> out;
        for (const auto& b : entries_) {
            double share = cosine(query, b.vector) / static_cast<double>(b.fixed_files.size());
            for (const auto& f : b.fixed_files) out[f] += share;
        }
        return out;
    }

 private:
    std::vector<HistoryEntry> entries_;
};

inline double simi_score(const DocumentVector& query, std::string_view path, const HistorySet& history) {
    auto norm = normalize_path(path);
    double sum = 0.0;
    for (const auto& b : history.entries()) {
        if (std::binary_search(b.fixed_files.begin(), b.fixed_files.end(), norm))
            sum += cosine(query, b.vector) / static_cast<double>(b.fixed_files.size());
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Ranking
// ---------------------------------------------------------------------------

enum class Technique { vsm, rvsm, buglocator };

inline std::string_view to_string(Technique t) {
    switch (t) {
        case Technique::vsm: return "vsm";
        case Technique::rvsm: return "rvsm";
        case Technique::buglocator: return "buglocator";
    }
    return "";
}

inline Technique technique_from_string(std::string_view s) {
    if (s == "vsm") return Technique::vsm;
    if (s == "rvsm") return Technique::rvsm;
    if (s == "buglocator") return Technique::buglocator;
    throw Error("unknown technique '" + std::string(s) + "'");
}

struct RankingEntry {
    std::string path;
    double score = 0.0;
    std::size_t rank = 0;  // 1-based
};

using Ranking = std::vector<RankingEntry>;

/// Sorts by score descending, then path ascending, and assigns ranks.
inline Ranking make_ranking(const std::vector<std::string>& paths, const std::vector<double>& scores) {
    Ranking r;
    r.reserve(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) r.push_back({paths[i], scores[i], 0});
    std::sort(r.begin(), r.end(), [](const RankingEntry& a, const RankingEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.path < b.path;
    });
    for (std::size_t i = 0; i < r.size(); ++i) r[i].rank = i + 1;
    return r;
}

inline std::vector<double> rvsm_scores(const DocumentVector& query, const Index& index) {
    std::vector<double> s;
    s.reserve(index.size());
    for (const auto& d : index.documents) s.push_back(rvsm_score(query, d, index));
    return s;
}

inline std::vector<double> simi_scores(const DocumentVector& query, const Index& index, const HistorySet& history) {
    auto by_path = history.similarity_by_path(query);
    std::vector<double> s(index.size(), 0.0);
    for (std::size_t i = 0; i < index.size(); ++i)
        if (auto it = by_path.find(index.paths[i]); it != by_path.end()) s[i] = it->second;
    return s;
}

/// Min-max normalizes a score family across all documents.
inline std::vector<double> normalize_scores(const std::vector<double>& scores) {
    if (scores.empty()) return {};
    auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
    std::vector<double> out;
    out.reserve(scores.size());
    for (double s : scores) out.push_back(minmax(s, *lo, *hi));
    return out;
}

/// (1 - alpha) * N(rVSM) + alpha * N(SimiScore) for every document.
inline std::vector<double> buglocator_scores(const DocumentVector& query, const Index& index,
                                             const HistorySet& history, Alpha alpha) {
    if (index.size() == 0) throw Error("cannot rank an empty corpus");
    auto r = normalize_scores(rvsm_scores(query, index));
    auto s = normalize_scores(simi_scores(query, index, history));
    const double a = alpha.value();
    std::vector<double> out(index.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 - a) * r[i] + a * s[i];
    return out;
}

inline Ranking buglocator_rank(const DocumentVector& query, const Index& index, const HistorySet& history,
                               Alpha alpha) {
    return make_ranking(index.paths, buglocator_scores(query, index, history, alpha));
}

inline Ranking rank_documents(const DocumentVector& query, const Index& index, Technique technique,
                              const HistorySet& history = {}, Alpha alpha = Alpha{kDefaultAlpha}) {
    if (index.size() == 0) throw Error("cannot rank an empty corpus");
    switch (technique) {
        case Technique::vsm: {
            std::vector<double> s;
            for (const auto& d : index.documents) s.push_back(vsm_score(query, d));
            return make_ranking(index.paths, s);
        }
        case Technique::rvsm: return make_ranking(index.paths, rvsm_scores(query, index));
        case Technique::buglocator: return buglocator_rank(query, index, history, alpha);
    }
    return {};
}

/// TREC run lines: "qid Q0 path rank score tag", at most top_k of them.
inline void write_trec_run(std::ostream& out, std::string_view qid, const Ranking& ranking, std::size_t top_k,
                           std::string_view tag) {
    char buf[32];
    for (std::size_t i = 0; i < ranking.size() && i < top_k; ++i) {
        const auto& e = ranking[i];
        std::snprintf(buf, sizeof buf, "%.17g", e.score);
        out << qid << " Q0 " << e.path << ' ' << e.rank << ' ' << buf << ' ' << tag << '\n';
    }
}

}  // namespace croloc
