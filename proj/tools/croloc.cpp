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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "croloc/pipeline.hpp"

namespace {

struct Flags {
    std::string config;
    std::optional<double> alpha;
    std::optional<std::size_t> top_k;
    std::optional<std::string> technique;
    std::optional<std::string> translator;
    std::optional<std::string> glossary;
    std::optional<std::string> cache;
    std::optional<std::string> mode;
    bool no_translate = false;
    bool stemming = false;
    bool strict = false;
    bool usable_only = false;
    std::vector<std::string> queries;
    std::string output;
    std::string run;
    std::string qrels;
    std::string json_out;
    std::string commits;
    std::vector<std::string> patterns;
};

void print_diagnostics(const croloc::Diagnostics& diags) {
    for (const auto& d : diags) std::cerr << "croloc: warning: " << d.str() << '\n';
}

croloc::ProjectConfig load_config(const Flags& f) {
    if (f.config.empty()) throw croloc::Error("--config is required for this command");
    auto c = croloc::load_project_config(f.config);
    if (f.alpha) c.alpha = *f.alpha;
    if (f.top_k) c.top_k = *f.top_k;
    if (f.technique) c.technique = croloc::technique_from_string(*f.technique);
    if (f.translator) c.translator.backend = *f.translator;
    if (f.glossary) c.translator.glossary = std::filesystem::absolute(*f.glossary);
    if (f.cache) c.cache = std::filesystem::absolute(*f.cache);
    if (f.mode) c.mode = croloc::eval_mode_from_string(*f.mode);
    if (f.stemming) c.tokenizer.stemming = true;
    if (f.strict) c.strict = true;
    c.validate();
    return c;
}

// Writes to `path`, or stdout for "-".
template <typename Fn>
void with_output(const std::filesystem::path& path, Fn&& fn) {
    if (path == "-") {
        fn(std::cout);
        return;
    }
    std::ostringstream ss;
    fn(ss);
    croloc::write_file(path, ss.str());
}

croloc::LocateOptions locate_options(const Flags& f, const croloc::ProjectConfig& c) {
    croloc::LocateOptions o;
    o.query_ids = f.queries;
    o.technique = c.technique;
    o.alpha = c.alpha;
    o.top_k = c.top_k;
    o.no_translate = f.no_translate;
    o.usable_only = f.usable_only;
    return o;
}

std::filesystem::path run_path(const Flags& f, const croloc::ProjectConfig& c, const croloc::LocateOptions& o) {
    return f.output.empty() ? croloc::default_run_path(c, o) : std::filesystem::path(f.output);
}

int run_eval(const Flags& f, std::optional<croloc::ProjectConfig> config, const std::filesystem::path& run) {
    std::filesystem::path qrels = f.qrels;
    if (qrels.empty() && config) qrels = config->qrels;
    if (qrels.empty()) throw croloc::Error("no qrels file: pass --qrels or set \"qrels\" in the config");
    auto mode = config ? config->mode : croloc::EvalMode::direct_plus_indirect;
    if (f.mode) mode = croloc::eval_mode_from_string(*f.mode);
    auto report = croloc::cmd_eval(run, qrels, mode);
    print_diagnostics(report.diagnostics);
    std::cout << croloc::format_table(report);
    std::filesystem::path json_out = f.json_out;
    if (json_out.empty() && config) json_out = config->outputs.eval;
    if (!json_out.empty()) with_output(json_out, [&](std::ostream& o) { o << croloc::to_json(report).dump(2) << '\n'; });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"croloc: cross-lingual IR-based bug localization"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;

    app.add_option("-c,--config", f.config, "Project config file (JSON)");
    app.add_option("--alpha", f.alpha, "BugLocator mixing weight in [0, 1]")->check(CLI::Range(0.0, 1.0));
    app.add_option("--top-k", f.top_k, "Ranked files written per query")->check(CLI::PositiveNumber);
    app.add_option("--technique", f.technique, "vsm, rvsm or buglocator")
        ->check(CLI::IsMember({"vsm", "rvsm", "buglocator"}));
    app.add_option("--translator", f.translator, "identity, glossary or service")
        ->check(CLI::IsMember({"identity", "glossary", "service"}));
    app.add_option("--glossary", f.glossary, "Glossary TSV for the glossary translator");
    app.add_option("--cache", f.cache, "Translation cache file (JSONL)");
    app.add_option("--mode", f.mode, "Oracle grades to score: direct or direct+indirect")
        ->check(CLI::IsMember({"direct", "direct+indirect"}));
    app.add_flag("--no-translate", f.no_translate, "Use untranslated sources (reports are still translated)");
    app.add_flag("--stemming", f.stemming, "Enable Porter stemming when indexing");
    app.add_flag("--strict", f.strict, "Fail on translation errors instead of leaving text untranslated");

    auto* extract = app.add_subcommand("extract", "Write comment and string-literal spans as JSONL");
    extract->add_option("-o,--output", f.output, "Output file, '-' for stdout (default: configured spans path)");

    auto* translate = app.add_subcommand("translate", "Write translated copies of the sources and bug reports");

    auto* index = app.add_subcommand("index", "Build and persist the tf-idf index");

    auto* locate = app.add_subcommand("locate", "Rank source files for bug reports (TREC run)");
    locate->add_option("-q,--query", f.queries, "Report id to localize (repeatable; default all)");
    locate->add_flag("--usable-only", f.usable_only, "Only localize reports passing the dataset filter");
    locate->add_option("-o,--output", f.output, "Run file, '-' for stdout");

    auto* eval = app.add_subcommand("eval", "Score a run against qrels (MAP, MRR, Success@5/10)");
    eval->add_option("--run", f.run, "TREC run file")->required();
    eval->add_option("--qrels", f.qrels, "TREC qrels file");
    eval->add_option("--json", f.json_out, "Write the report as JSON here ('-' for stdout)");

    auto* link = app.add_subcommand("link", "Build qrels from a commit log via issue ids");
    link->add_option("--commits", f.commits, "Commit log (JSONL: hash, message, changed_files)");
    link->add_option("--pattern", f.patterns, "Regex matching bug ids in commit messages (repeatable)");
    link->add_option("-o,--output", f.output, "Qrels output, '-' for stdout")->required();

    auto* filter = app.add_subcommand("filter", "Show which bug reports are usable for evaluation");

    auto* pipeline = app.add_subcommand("pipeline", "translate, index, locate usable reports (and eval when qrels are configured)");

    CLI11_PARSE(app, argc, argv);

    try {
        croloc::Diagnostics diags;
        int rc = 0;
        if (*extract) {
            auto c = load_config(f);
            std::size_t n = 0;
            with_output(f.output.empty() ? c.outputs.spans : std::filesystem::path(f.output),
                        [&](std::ostream& o) { n = croloc::cmd_extract(c, o, diags); });
            std::cerr << "croloc: " << n << " spans\n";
        } else if (*translate) {
            auto c = load_config(f);
            auto backend = croloc::make_backend(c);
            auto s = croloc::cmd_translate(c, *backend, diags);
            std::cerr << "croloc: translated " << s.segments << " segments; " << s.documents_changed << "/"
                      << s.documents << " files and " << s.reports_changed << "/" << s.reports
                      << " reports changed\n";
        } else if (*index) {
            auto c = load_config(f);
            auto idx = croloc::cmd_index(c, f.no_translate, diags);
            std::cerr << "croloc: indexed " << idx.size() << " files, " << idx.stats.size() << " terms\n";
        } else if (*locate) {
            auto c = load_config(f);
            auto o = locate_options(f, c);
            std::size_t n = 0;
            with_output(run_path(f, c, o), [&](std::ostream& out) { n = croloc::cmd_locate(c, o, out, diags); });
            std::cerr << "croloc: localized " << n << " reports\n";
        } else if (*eval) {
            std::optional<croloc::ProjectConfig> c;
            if (!f.config.empty()) c = load_config(f);
            rc = run_eval(f, c, f.run);
        } else if (*link) {
            auto c = load_config(f);
            std::filesystem::path commits = f.commits.empty() ? c.commits : std::filesystem::path(f.commits);
            auto patterns = f.patterns.empty() ? c.id_patterns : f.patterns;
            auto qrels = croloc::cmd_link(c, commits, patterns);
            with_output(f.output, [&](std::ostream& o) { croloc::write_qrels(o, qrels); });
            std::cerr << "croloc: oracles for " << qrels.size() << " bug ids\n";
        } else if (*filter) {
            auto c = load_config(f);
            croloc::require_key(c.reports, "reports");
            auto corpus = croloc::load_corpus(c, c.source_root, diags);
            auto result = croloc::filter_usable_reports(croloc::load_bug_reports(c.reports), corpus,
                                                        c.source_extensions);
            for (const auto& r : result.usable) std::cout << r.id << "\tusable\n";
            for (const auto& e : result.excluded)
                std::cout << e.report.id << "\texcluded\t" << croloc::to_string(e.reason) << '\n';
        } else if (*pipeline) {
            auto c = load_config(f);
            auto backend = croloc::make_backend(c);
            croloc::cmd_translate(c, *backend, diags);
            croloc::cmd_index(c, f.no_translate, diags);
            auto o = locate_options(f, c);
            o.usable_only = true;
            auto path = run_path(f, c, o);
            with_output(path, [&](std::ostream& out) { croloc::cmd_locate(c, o, out, diags); });
            std::cerr << "croloc: run written to " << path.string() << '\n';
            if (!c.qrels.empty() && path != "-") rc = run_eval(f, c, path);
        }
        print_diagnostics(diags);
        return rc;
    } catch (const std::exception& e) {
        std::cerr << "croloc: error: " << e.what() << '\n';
        return 1;
    }
}
