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

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "croloc/corpus.hpp"
#include "croloc/error.hpp"
#include "croloc/eval.hpp"
#include "croloc/rank.hpp"
#include "croloc/tokenize.hpp"

namespace croloc {

struct TranslatorConfig {
    std::string backend = "identity";  // identity | glossary | service
    std::filesystem::path glossary;
    std::string endpoint;
    std::string source_language = "ja";
    std::string target_language = "en";
    std::size_t batch_size = 32;
};

struct OutputPaths {
    std::filesystem::path spans;
    std::filesystem::path translated_root;
    std::filesystem::path translated_reports;
    std::filesystem::path index;
    std::filesystem::path index_untranslated;
    std::filesystem::path run_dir;
    std::filesystem::path eval;
};

/// Project settings. Relative paths in the file resolve against the file's
/// directory.
struct ProjectConfig {
    std::filesystem::path source_root;
    std::vector<std::string> include_patterns{"**/*.java", "**/*.cs"};
    LanguageMap language_map = default_language_map();
    std::set<std::string> source_extensions{".java", ".cs"};
    std::filesystem::path reports;
    TranslatorConfig translator;
    std::filesystem::path cache;
    TokenizerOptions tokenizer;
    double alpha = kDefaultAlpha;
    std::size_t top_k = 100;
    Technique technique = Technique::buglocator;
    EvalMode mode = EvalMode::direct_plus_indirect;
    std::filesystem::path qrels;
    std::filesystem::path commits;
    std::vector<std::string> id_patterns;
    bool strict = false;
    bool permissive = false;
    OutputPaths outputs;

    void validate() const {
        (void)Alpha{alpha};
        if (top_k < 1) throw Error("top_k must be at least 1");
    }

    LoadOptions load_options() const { return {include_patterns, language_map, permissive}; }
};

namespace detail {

inline std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : (base / path).lexically_normal();
}

}  // namespace detail

inline ProjectConfig project_config_from_json(const nlohmann::json& j, const std::filesystem::path& base) {
    using detail::resolve;
    ProjectConfig c;
    try {
        if (!j.is_object()) throw Error("config must be a JSON object");
        if (!j.contains("source_root")) throw Error("config is missing required key \"source_root\"");
        c.source_root = resolve(base, j.at("source_root").get<std::string>());
        if (j.contains("include")) c.include_patterns = j.at("include").get<std::vector<std::string>>();
        if (j.contains("language_map")) {
            c.language_map.clear();
            for (auto& [ext, lang] : j.at("language_map").items())
                c.language_map[ext] = language_from_string(lang.get<std::string>());
        }
        if (j.contains("source_extensions")) {
            c.source_extensions.clear();
            for (const auto& e : j.at("source_extensions")) c.source_extensions.insert(e.get<std::string>());
        } else if (j.contains("language_map")) {
            c.source_extensions.clear();
            for (const auto& [ext, _] : c.language_map) c.source_extensions.insert(ext);
        }
        if (j.contains("reports")) c.reports = resolve(base, j.at("reports").get<std::string>());
        if (j.contains("translator")) {
            const auto& t = j.at("translator");
            c.translator.backend = t.value("backend", c.translator.backend);
            if (t.contains("glossary")) c.translator.glossary = resolve(base, t.at("glossary").get<std::string>());
            c.translator.endpoint = t.value("endpoint", c.translator.endpoint);
            c.translator.source_language = t.value("source", c.translator.source_language);
            c.translator.target_language = t.value("target", c.translator.target_language);
            c.translator.batch_size = t.value("batch_size", c.translator.batch_size);
        }
        if (j.contains("cache")) c.cache = resolve(base, j.at("cache").get<std::string>());
        if (j.contains("tokenizer")) {
            const auto& t = j.at("tokenizer");
            c.tokenizer.split_identifiers = t.value("split_identifiers", c.tokenizer.split_identifiers);
            c.tokenizer.stopwords = t.value("stopwords", c.tokenizer.stopwords);
            c.tokenizer.stemming = t.value("stemming", c.tokenizer.stemming);
        }
        c.alpha = j.value("alpha", c.alpha);
        c.top_k = j.value("top_k", c.top_k);
        if (j.contains("technique")) c.technique = technique_from_string(j.at("technique").get<std::string>());
        if (j.contains("mode")) c.mode = eval_mode_from_string(j.at("mode").get<std::string>());
        if (j.contains("qrels")) c.qrels = resolve(base, j.at("qrels").get<std::string>());
        if (j.contains("commits")) c.commits = resolve(base, j.at("commits").get<std::string>());
        if (j.contains("id_patterns")) c.id_patterns = j.at("id_patterns").get<std::vector<std::string>>();
        c.strict = j.value("strict", false);
        c.permissive = j.value("permissive", false);

        auto out_dir = resolve(base, j.value("output_dir", std::string("croloc-out")));
        c.outputs = {out_dir / "spans.jsonl",      out_dir / "translated" / "src", out_dir / "translated" / "reports.jsonl",
                     out_dir / "index.json",       out_dir / "index-untranslated.json", out_dir,
                     out_dir / "eval.json"};
        if (j.contains("outputs")) {
            const auto& o = j.at("outputs");
            auto set = [&](const char* key, std::filesystem::path& target) {
                if (o.contains(key)) target = resolve(base, o.at(key).get<std::string>());
            };
            set("spans", c.outputs.spans);
            set("translated_root", c.outputs.translated_root);
            set("translated_reports", c.outputs.translated_reports);
            set("index", c.outputs.index);
            set("index_untranslated", c.outputs.index_untranslated);
            set("run_dir", c.outputs.run_dir);
            set("eval", c.outputs.eval);
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid config: ") + e.what());
    }
    c.validate();
    return c;
}

inline ProjectConfig load_project_config(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw Error("config file not found: " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw Error(path.string() + ": " + e.what());
    }
    return project_config_from_json(j, std::filesystem::absolute(path).parent_path());
}

}  // namespace croloc
