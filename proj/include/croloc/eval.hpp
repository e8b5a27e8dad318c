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
#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "croloc/error.hpp"
#include "croloc/path.hpp"

namespace croloc {

enum class Grade { indirect = 1, direct = 2 };

enum class EvalMode { direct_only, direct_plus_indirect };

inline EvalMode eval_mode_from_string(std::string_view s) {
    if (s == "direct" || s == "direct_only") return EvalMode::direct_only;
    if (s == "direct+indirect" || s == "direct_plus_indirect") return EvalMode::direct_plus_indirect;
    throw Error("unknown evaluation mode '" + std::string(s) + "'");
}

inline std::string_view to_string(EvalMode m) {
    return m == EvalMode::direct_only ? "direct" : "direct+indirect";
}

/// Oracle files per query, graded direct or indirect.
class Qrels {
 public:
    /// Records a judgment; a path judged twice keeps its strongest grade.
    void add(const std::string& qid, std::string_view path, Grade grade) {
        auto& g = queries_[qid].try_emplace(normalize_path(path), grade).first->second;
        if (grade == Grade::direct) g = grade;
    }

    bool contains(const std::string& qid) const { return queries_.count(qid) != 0; }

    std::set<std::string> oracle(const std::string& qid, EvalMode mode) const {
        std::set<std::string> out;
        auto it = queries_.find(qid);
        if (it == queries_.end()) return out;
        for (const auto& [path, grade] : it->second)
            if (mode == EvalMode::direct_plus_indirect || grade == Grade::direct) out.insert(path);
        return out;
    }

    const std::map<std::string, std::map<std::string, Grade>>& queries() const noexcept { return queries_; }
    std::size_t size() const noexcept { return queries_.size(); }

 private:
    std::map<std::string, std::map<std::string, Grade>> queries_;
};

/// TREC qrels lines "qid 0 path grade"; grade 2 is direct, 1 indirect, and
/// grades <= 0 are non-relevant and ignored.
inline Qrels parse_qrels(std::istream& in, const std::string& source = "<qrels>") {
    Qrels q;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string qid, iter, path, extra;
        long grade;
        if (!(ls >> qid)) continue;
        if (!(ls >> iter >> path >> grade) || (ls >> extra))
            throw ParseError(source, lineno, "expected 'qid 0 path grade'");
        if (grade <= 0) continue;
        if (grade > 2) throw ParseError(source, lineno, "grade must be 0, 1 or 2");
        q.add(qid, path, grade == 2 ? Grade::direct : Grade::indirect);
    }
    return q;
}

inline void write_qrels(std::ostream& out, const Qrels& qrels) {
    for (const auto& [qid, files] : qrels.queries())
        for (const auto& [path, grade] : files) out << qid << " 0 " << path << ' ' << static_cast<int>(grade) << '\n';
}

/// Oracles from a commit log in JSON Lines ({hash, message, changed_files}).
/// Every match of an id pattern in a message names a bug; the pattern's first
/// capture group is the id when present, otherwise the whole match. Changed
/// files with a source extension become direct oracles of that bug.
inline Qrels link_oracles(std::istream& commits, const std::vector<std::regex>& id_patterns,
                          const std::set<std::string>& source_extensions, const std::string& source = "<commits>") {
    Qrels q;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(commits, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::string message;
        std::vector<std::string> files;
        try {
            auto j = nlohmann::json::parse(line);
            if (!j.is_object() || !j.contains("hash") || !j["hash"].is_string())
                throw ParseError(source, lineno, "record needs a string \"hash\"");
            if (!j.contains("message") || !j["message"].is_string())
                throw ParseError(source, lineno, "record needs a string \"message\"");
            if (!j.contains("changed_files") || !j["changed_files"].is_array())
                throw ParseError(source, lineno, "record needs an array \"changed_files\"");
            message = j["message"].get<std::string>();
            for (const auto& f : j["changed_files"]) {
                if (!f.is_string()) throw ParseError(source, lineno, "changed_files entries must be strings");
                files.push_back(f.get<std::string>());
            }
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(source, lineno, e.what());
        }
        std::set<std::string> ids;
        for (const auto& re : id_patterns) {
            for (std::sregex_iterator it(message.begin(), message.end(), re), end; it != end; ++it) {
                const auto& m = *it;
                ids.insert(m.size() > 1 && m[1].matched ? m[1].str() : m[0].str());
            }
        }
        for (const auto& id : ids)
            for (const auto& f : files)
                if (source_extensions.count(extension_of(normalize_path(f)))) q.add(id, f, Grade::direct);
    }
    return q;
}

// ---------------------------------------------------------------------------
// Runs
// ---------------------------------------------------------------------------

struct RunEntry {
    std::string path;
    double score = 0.0;
    std::size_t rank = 0;
};

/// qid -> entries in evaluation order.
using Run = std::map<std::string, std::vector<RunEntry>>;

/// Orders entries the way trec_eval does: score descending, then document
/// name descending. The rank column is not consulted.
inline void sort_trec_order(std::vector<RunEntry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const RunEntry& a, const RunEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.path > b.path;
    });
}

inline Run parse_trec_run(std::istream& in, const std::string& source = "<run>") {
    Run run;
    std::map<std::string, std::set<std::string>> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string qid, q0, path, tag, extra;
        RunEntry e;
        if (!(ls >> qid)) continue;
        if (!(ls >> q0 >> path >> e.rank >> e.score >> tag) || (ls >> extra))
            throw ParseError(source, lineno, "expected 'qid Q0 path rank score tag'");
        e.path = normalize_path(path);
        if (!seen[qid].insert(e.path).second)
            throw ParseError(source, lineno, "duplicate document " + e.path + " for query " + qid);
        run[qid].push_back(std::move(e));
    }
    for (auto& [qid, entries] : run) sort_trec_order(entries);
    return run;
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

/// Uninterpolated average precision; relevant files never retrieved count as
/// zero, so the sum is divided by the full oracle size.
inline double average_precision(const std::vector<std::string>& ranked, const std::set<std::string>& oracle) {
    if (oracle.empty()) throw Error("average precision needs a nonempty oracle set");
    double sum = 0.0;
    std::size_t hits = 0;
    for (std::size_t k = 0; k < ranked.size(); ++k) {
        if (oracle.count(ranked[k])) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(k + 1);
        }
    }
    return sum / static_cast<double>(oracle.size());
}

inline double reciprocal_rank(const std::vector<std::string>& ranked, const std::set<std::string>& oracle) {
    if (oracle.empty()) throw Error("reciprocal rank needs a nonempty oracle set");
    for (std::size_t k = 0; k < ranked.size(); ++k)
        if (oracle.count(ranked[k])) return 1.0 / static_cast<double>(k + 1);
    return 0.0;
}

inline bool hit_within(const std::vector<std::string>& ranked, const std::set<std::string>& oracle, std::size_t n) {
    for (std::size_t k = 0; k < ranked.size() && k < n; ++k)
        if (oracle.count(ranked[k])) return true;
    return false;
}

/// Fraction of queries with an oracle file in the top n. rankings and oracles
/// are parallel.
inline double success_at_n(const std::vector<std::vector<std::string>>& rankings,
                           const std::vector<std::set<std::string>>& oracles, std::size_t n) {
    if (n < 1) throw Error("Success@N needs N >= 1");
    if (rankings.size() != oracles.size()) throw Error("success_at_n: rankings and oracles differ in length");
    if (rankings.empty()) return 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < rankings.size(); ++i) hits += hit_within(rankings[i], oracles[i], n) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(rankings.size());
}

struct QueryMetrics {
    std::string qid;
    double average_precision = 0.0;
    double reciprocal_rank = 0.0;
    bool success_at_5 = false;
    bool success_at_10 = false;
    std::size_t oracle_size = 0;
};

struct EvalReport {
    std::vector<QueryMetrics> per_query;
    double map = 0.0;
    double mrr = 0.0;
    double success_at_5 = 0.0;
    double success_at_10 = 0.0;
    std::size_t query_count = 0;
    Diagnostics diagnostics;
};

inline std::vector<std::string> ranked_paths(const std::vector<RunEntry>& entries) {
    std::vector<std::string> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.path);
    return out;
}

/// Scores every run query against its oracle. Run queries unknown to the
/// qrels are an error; queries whose oracle is empty under `mode` are skipped
/// with a diagnostic.
inline EvalReport evaluate(const Run& run, const Qrels& qrels, EvalMode mode) {
    std::vector<std::string> missing;
    for (const auto& [qid, _] : run)
        if (!qrels.contains(qid)) missing.push_back(qid);
    if (!missing.empty()) {
        std::string ids;
        for (const auto& m : missing) ids += (ids.empty() ? "" : ", ") + m;
        throw Error("run queries missing from qrels: " + ids);
    }

    EvalReport report;
    std::vector<std::vector<std::string>> rankings;
    std::vector<std::set<std::string>> oracles;
    for (const auto& [qid, entries] : run) {
        auto oracle = qrels.oracle(qid, mode);
        if (oracle.empty()) {
            report.diagnostics.push_back({qid, "no oracle files in mode " + std::string(to_string(mode)) +
                                                   "; query excluded"});
            continue;
        }
        auto ranked = ranked_paths(entries);
        QueryMetrics m;
        m.qid = qid;
        m.average_precision = average_precision(ranked, oracle);
        m.reciprocal_rank = reciprocal_rank(ranked, oracle);
        m.success_at_5 = hit_within(ranked, oracle, 5);
        m.success_at_10 = hit_within(ranked, oracle, 10);
        m.oracle_size = oracle.size();
        report.per_query.push_back(m);
        rankings.push_back(std::move(ranked));
        oracles.push_back(std::move(oracle));
    }
    report.query_count = report.per_query.size();
    if (report.query_count == 0) return report;
    const auto n = static_cast<double>(report.query_count);
    for (const auto& m : report.per_query) {
        report.map += m.average_precision;
        report.mrr += m.reciprocal_rank;
    }
    report.map /= n;
    report.mrr /= n;
    report.success_at_5 = success_at_n(rankings, oracles, 5);
    report.success_at_10 = success_at_n(rankings, oracles, 10);
    return report;
}

inline nlohmann::json to_json(const EvalReport& r) {
    nlohmann::json per = nlohmann::json::array();
    for (const auto& m : r.per_query)
        per.push_back({{"qid", m.qid},
                       {"ap", m.average_precision},
                       {"rr", m.reciprocal_rank},
                       {"success_5", m.success_at_5},
                       {"success_10", m.success_at_10},
                       {"oracle_size", m.oracle_size}});
    return {{"queries", r.query_count}, {"map", r.map},           {"mrr", r.mrr},
            {"success_5", r.success_at_5}, {"success_10", r.success_at_10}, {"per_query", per}};
}

inline std::string format_table(const EvalReport& r) {
    std::size_t width = 5;
    for (const auto& m : r.per_query) width = std::max(width, m.qid.size());
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-*s %8s %8s %5s %5s\n", static_cast<int>(width), "query", "AP", "RR", "S@5",
                  "S@10");
    out += buf;
    for (const auto& m : r.per_query) {
        std::snprintf(buf, sizeof buf, "%-*s %8.4f %8.4f %5d %5d\n", static_cast<int>(width), m.qid.c_str(),
                      m.average_precision, m.reciprocal_rank, m.success_at_5 ? 1 : 0, m.success_at_10 ? 1 : 0);
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "\nqueries %zu  MAP %.4f  MRR %.4f  Success@5 %.4f  Success@10 %.4f\n",
                  r.query_count, r.map, r.mrr, r.success_at_5, r.success_at_10);
    out += buf;
    return out;
}

}  // namespace croloc
