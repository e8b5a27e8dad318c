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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "croloc/config.hpp"
#include "croloc/corpus.hpp"
#include "croloc/eval.hpp"
#include "croloc/extract.hpp"
#include "croloc/index.hpp"
#include "croloc/rank.hpp"
#include "croloc/service_backend.hpp"
#include "croloc/translate.hpp"

namespace croloc {

// Pipeline stages behind the command-line tool. Each stage reads the
// artifacts of earlier stages from the configured output paths, and reports
// non-fatal problems through `diags`.

inline void require_artifact(const std::filesystem::path& path, const std::string& what, const std::string& stage) {
    if (!std::filesystem::exists(path))
        throw MissingArtifact(what + " (" + path.string() + "); run `croloc " + stage + "` first");
}

inline void require_key(const std::filesystem::path& value, const std::string& key) {
    if (value.empty()) throw Error("config is missing required key \"" + key + "\"");
}

inline std::unique_ptr<TranslatorBackend> make_backend(const ProjectConfig& config) {
    const auto& t = config.translator;
    if (t.backend == "identity") return std::make_unique<IdentityBackend>();
    if (t.backend == "glossary") {
        require_key(t.glossary, "translator.glossary");
        return std::make_unique<GlossaryBackend>(load_glossary(t.glossary));
    }
    if (t.backend == "service") {
        if (t.endpoint.empty()) throw Error("config is missing required key \"translator.endpoint\"");
        ServiceConfig sc;
        sc.endpoint = t.endpoint;
        if (const char* token = std::getenv(kServiceTokenEnv)) sc.token = token;
        sc.source_language = t.source_language;
        sc.target_language = t.target_language;
        sc.batch_size = t.batch_size;
        return std::make_unique<ServiceBackend>(sc);
    }
    throw Error("unknown translator backend '" + t.backend + "'");
}

inline Corpus load_corpus(const ProjectConfig& config, const std::filesystem::path& root, Diagnostics& diags) {
    auto loaded = load_source_tree(root, config.load_options());
    diags.insert(diags.end(), loaded.diagnostics.begin(), loaded.diagnostics.end());
    return std::move(loaded.corpus);
}

// ---------------------------------------------------------------------------

inline nlohmann::json span_to_json(const std::string& path, const Span& s) {
    return {{"path", path}, {"byte_start", s.byte_start}, {"byte_end", s.byte_end}, {"kind", to_string(s.kind)},
            {"text", s.text}};
}

/// Writes every span of the original source tree as JSON Lines.
inline std::size_t cmd_extract(const ProjectConfig& config, std::ostream& out, Diagnostics& diags) {
    auto corpus = load_corpus(config, config.source_root, diags);
    std::size_t count = 0;
    for (const auto& doc : corpus.documents()) {
        auto result = extract_spans(doc);
        diags.insert(diags.end(), result.diagnostics.begin(), result.diagnostics.end());
        for (const auto& s : result.spans) {
            out << span_to_json(doc.path, s).dump() << '\n';
            ++count;
        }
    }
    return count;
}

struct TranslateSummary {
    std::size_t documents = 0;
    std::size_t documents_changed = 0;
    std::size_t segments = 0;
    std::size_t reports = 0;
    std::size_t reports_changed = 0;
};

inline bool is_within(const std::filesystem::path& inner, const std::filesystem::path& outer) {
    auto a = std::filesystem::weakly_canonical(inner);
    auto b = std::filesystem::weakly_canonical(outer);
    auto [ai, bi] = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
    return bi == b.end();
}

/// Writes a translated copy of the source tree and of the bug reports. The
/// original tree is only read.
inline TranslateSummary cmd_translate(const ProjectConfig& config, TranslatorBackend& backend, Diagnostics& diags) {
    require_key(config.reports, "reports");
    const auto& dest = config.outputs.translated_root;
    if (is_within(dest, config.source_root) || is_within(config.source_root, dest))
        throw Error("translated tree " + dest.string() + " must not overlap the source root " +
                    config.source_root.string());

    std::unique_ptr<TranslationCache> cache;
    if (!config.cache.empty()) cache = std::make_unique<TranslationCache>(config.cache);
    TranslateOptions options{config.strict};

    TranslateSummary summary;
    auto corpus = load_corpus(config, config.source_root, diags);
    for (const auto& doc : corpus.documents()) {
        auto t = translate_document(doc, backend, cache.get(), options);
        diags.insert(diags.end(), t.diagnostics.begin(), t.diagnostics.end());
        ++summary.documents;
        summary.segments += t.segments;
        if (t.document.raw_text != doc.raw_text) ++summary.documents_changed;
        write_file(dest / t.document.path, t.document.raw_text);
    }

    auto reports = load_bug_reports(config.reports);
    std::vector<BugReport> translated;
    for (const auto& r : reports) {
        auto t = translate_report(r, backend, cache.get(), options);
        diags.insert(diags.end(), t.diagnostics.begin(), t.diagnostics.end());
        if (t.report.summary != r.summary || t.report.description != r.description) ++summary.reports_changed;
        translated.push_back(std::move(t.report));
    }
    summary.reports = translated.size();
    std::ostringstream ss;
    write_bug_reports(ss, translated);
    write_file(config.outputs.translated_reports, ss.str());
    return summary;
}

/// Indexes the translated tree, or the original one with `no_translate`.
inline Index cmd_index(const ProjectConfig& config, bool no_translate, Diagnostics& diags) {
    std::filesystem::path root = config.source_root;
    if (!no_translate) {
        require_artifact(config.outputs.translated_root, "translated source tree", "translate");
        root = config.outputs.translated_root;
    }
    auto corpus = load_corpus(config, root, diags);
    if (corpus.empty()) throw Error("no source files matched under " + root.string());
    auto index = build_index(corpus, config.tokenizer);
    save_index(index, no_translate ? config.outputs.index_untranslated : config.outputs.index);
    return index;
}

struct LocateOptions {
    std::vector<std::string> query_ids;  // empty: every report
    Technique technique = Technique::buglocator;
    double alpha = kDefaultAlpha;
    std::size_t top_k = 100;
    bool no_translate = false;
    bool usable_only = false;
};

inline std::filesystem::path default_run_path(const ProjectConfig& config, const LocateOptions& o) {
    std::string name = "run-" + std::string(to_string(o.technique));
    if (o.no_translate) name += "-notranslate";
    return config.outputs.run_dir / (name + ".txt");
}

/// Ranks corpus files for each query report and writes a TREC run.
/// History for BugLocator comes from the same (translated) report file,
/// restricted per query to reports resolved before it was filed.
inline std::size_t cmd_locate(const ProjectConfig& config, const LocateOptions& o, std::ostream& run_out,
                              Diagnostics& diags) {
    const Alpha alpha{o.alpha};
    if (o.top_k < 1) throw Error("top-k must be at least 1");
    const auto index_path = o.no_translate ? config.outputs.index_untranslated : config.outputs.index;
    require_artifact(index_path, o.no_translate ? "untranslated index" : "index",
                     o.no_translate ? "index --no-translate" : "index");
    require_artifact(config.outputs.translated_reports, "translated bug reports", "translate");
    auto index = load_index(index_path);
    auto reports = load_bug_reports(config.outputs.translated_reports);

    std::vector<const BugReport*> queries;
    if (o.query_ids.empty()) {
        std::set<std::string> usable_ids;
        if (o.usable_only) {
            auto corpus = load_corpus(config, config.source_root, diags);
            auto filtered = filter_usable_reports(reports, corpus, config.source_extensions);
            for (const auto& r : filtered.usable) usable_ids.insert(r.id);
            for (const auto& e : filtered.excluded)
                diags.push_back({e.report.id, "excluded: " + std::string(to_string(e.reason))});
        }
        for (const auto& r : reports)
            if (!o.usable_only || usable_ids.count(r.id)) queries.push_back(&r);
    } else {
        std::vector<std::string> unknown;
        for (const auto& id : o.query_ids) {
            auto it = std::find_if(reports.begin(), reports.end(), [&](const BugReport& r) { return r.id == id; });
            if (it == reports.end())
                unknown.push_back(id);
            else
                queries.push_back(&*it);
        }
        if (!unknown.empty()) {
            std::string ids;
            for (const auto& u : unknown) ids += (ids.empty() ? "" : ", ") + u;
            throw Error("unknown query ids: " + ids);
        }
    }

    const std::string tag = "croloc-" + std::string(to_string(o.technique));
    for (const auto* q : queries) {
        auto qv = vectorize_query(*q, index);
        if (qv.is_zero()) diags.push_back({q->id, "query has no in-vocabulary terms"});
        HistorySet history;
        if (o.technique == Technique::buglocator) history = HistorySet::build(reports, q->reported_at, index);
        auto ranking = rank_documents(qv, index, o.technique, history, alpha);
        write_trec_run(run_out, q->id, ranking, o.top_k, tag);
    }
    return queries.size();
}

inline EvalReport cmd_eval(const std::filesystem::path& run_path, const std::filesystem::path& qrels_path,
                           EvalMode mode) {
    require_artifact(run_path, "run file", "locate");
    if (!std::filesystem::exists(qrels_path)) throw MissingArtifact("qrels file " + qrels_path.string());
    std::ifstream run_in(run_path), qrels_in(qrels_path);
    auto run = parse_trec_run(run_in, run_path.string());
    auto qrels = parse_qrels(qrels_in, qrels_path.string());
    return evaluate(run, qrels, mode);
}

inline Qrels cmd_link(const ProjectConfig& config, const std::filesystem::path& commits,
                      const std::vector<std::string>& patterns) {
    if (!std::filesystem::exists(commits)) throw Error("commit log not found: " + commits.string());
    if (patterns.empty()) throw Error("at least one id pattern is required");
    std::vector<std::regex> res;
    for (const auto& p : patterns) {
        try {
            res.emplace_back(p);
        } catch (const std::regex_error& e) {
            throw Error("invalid id pattern '" + p + "': " + e.what());
        }
    }
    std::ifstream in(commits, std::ios::binary);
    return link_oracles(in, res, config.source_extensions, commits.string());
}

}  // namespace croloc
