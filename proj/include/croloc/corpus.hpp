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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "croloc/error.hpp"
#include "croloc/path.hpp"
#include "croloc/timestamp.hpp"
#include "croloc/utf8.hpp"

namespace croloc {

enum class Language { java, csharp, generic };

inline std::string_view to_string(Language lang) {
    switch (lang) {
        case Language::java: return "java";
        case Language::csharp: return "csharp";
        case Language::generic: return "generic";
    }
    return "generic";
}

inline Language language_from_string(std::string_view name) {
    if (name == "java") return Language::java;
    if (name == "csharp" || name == "cs" || name == "c#") return Language::csharp;
    if (name == "generic") return Language::generic;
    throw Error("unknown language '" + std::string(name) + "'");
}

using LanguageMap = std::map<std::string, Language>;

inline LanguageMap default_language_map() { return {{".java", Language::java}, {".cs", Language::csharp}}; }

struct SourceDocument {
    std::string path;  // normalized, repo-relative
    Language language = Language::generic;
    std::string raw_text;
    std::size_t doc_id = 0;

    std::size_t byte_length() const noexcept { return raw_text.size(); }
};

/// Immutable, path-sorted document set; doc ids are positions 0..size-1.
class Corpus {
 public:
    Corpus() = default;

    /// Sorts by path and assigns contiguous ids. Duplicate paths are an error.
    static Corpus from_documents(std::filesystem::path root, std::vector<SourceDocument> docs) {
        for (auto& d : docs) d.path = normalize_path(d.path);
        std::sort(docs.begin(), docs.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
        for (std::size_t i = 0; i < docs.size(); ++i) {
            if (i > 0 && docs[i].path == docs[i - 1].path) throw Error("duplicate document path: " + docs[i].path);
            docs[i].doc_id = i;
        }
        Corpus c;
        c.root_ = std::move(root);
        c.documents_ = std::move(docs);
        return c;
    }

    const std::vector<SourceDocument>& documents() const noexcept { return documents_; }
    const std::filesystem::path& root() const noexcept { return root_; }
    std::size_t size() const noexcept { return documents_.size(); }
    bool empty() const noexcept { return documents_.empty(); }
    const SourceDocument& operator[](std::size_t id) const { return documents_.at(id); }

    const SourceDocument* find(std::string_view path) const {
        auto norm = normalize_path(path);
        auto it = std::lower_bound(documents_.begin(), documents_.end(), norm,
                                   [](const SourceDocument& d, const std::string& p) { return d.path < p; });
        return it != documents_.end() && it->path == norm ? &*it : nullptr;
    }

 private:
    std::filesystem::path root_;
    std::vector<SourceDocument> documents_;
};

struct LoadOptions {
    std::vector<std::string> include_patterns{"**/*"};
    LanguageMap language_map = default_language_map();
    /// Skip undecodable files with a diagnostic instead of failing.
    bool permissive = false;
};

struct LoadResult {
    Corpus corpus;
    Diagnostics diagnostics;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

inline void write_file(const std::filesystem::path& path, std::string_view data) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error("write failed: " + path.string());
}

inline LoadResult load_source_tree(const std::filesystem::path& root, const LoadOptions& options = {}) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw Error("source root is not a readable directory: " + root.string());

    std::vector<std::pair<std::string, fs::path>> matched;
    fs::recursive_directory_iterator it(root, ec), end;
    if (ec) throw Error("cannot read source root " + root.string() + ": " + ec.message());
    for (; it != end; it.increment(ec)) {
        if (ec) throw Error("cannot traverse " + root.string() + ": " + ec.message());
        if (!it->is_regular_file()) continue;
        auto rel = normalize_path(fs::relative(it->path(), root).generic_string());
        bool wanted = std::any_of(options.include_patterns.begin(), options.include_patterns.end(),
                                  [&](const std::string& pat) { return glob_match(pat, rel); });
        if (wanted) matched.emplace_back(std::move(rel), it->path());
    }
    std::sort(matched.begin(), matched.end());

    LoadResult result;
    std::vector<SourceDocument> docs;
    docs.reserve(matched.size());
    for (auto& [rel, full] : matched) {
        auto text = read_file(full);
        if (auto bad = utf8::find_invalid(text)) {
            std::string msg = "invalid UTF-8 at byte " + std::to_string(*bad);
            if (!options.permissive) throw Error(rel + ": " + msg);
            result.diagnostics.push_back({rel, msg + "; file skipped"});
            continue;
        }
        SourceDocument doc;
        doc.path = rel;
        auto lang = options.language_map.find(extension_of(rel));
        doc.language = lang == options.language_map.end() ? Language::generic : lang->second;
        doc.raw_text = std::move(text);
        docs.push_back(std::move(doc));
    }
    result.corpus = Corpus::from_documents(root, std::move(docs));
    return result;
}

// ---------------------------------------------------------------------------
// Bug reports
// ---------------------------------------------------------------------------

struct BugReport {
    std::string id;
    std::string summary;
    std::string description;
    Timestamp reported_at{};
    std::optional<Timestamp> resolved_at;
    std::optional<std::vector<std::string>> fixed_files;
    bool functional = true;

    /// Query text: summary, newline, description.
    std::string query_text() const { return summary + "\n" + description; }
};

inline std::string to_rfc3339(Timestamp t) {
    using namespace std::chrono;
    auto day = floor<days>(t);
    year_month_day ymd{day};
    hh_mm_ss hms{t - day};
    char buf[64];
    auto us = hms.subseconds().count();
    int n = std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", static_cast<int>(ymd.year()),
                          static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                          static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                          static_cast<int>(hms.seconds().count()));
    std::string out(buf, static_cast<std::size_t>(n));
    if (us != 0) {
        std::snprintf(buf, sizeof buf, ".%06lld", static_cast<long long>(us));
        out += buf;
    }
    return out + "Z";
}

inline BugReport bug_report_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error("report must be a JSON object");
    auto required_string = [&](const char* key) -> std::string {
        auto it = j.find(key);
        if (it == j.end()) throw Error(std::string("missing required field \"") + key + "\"");
        if (!it->is_string()) throw Error(std::string("field \"") + key + "\" must be a string");
        return it->get<std::string>();
    };
    BugReport r;
    r.id = required_string("id");
    if (r.id.empty()) throw Error("field \"id\" must be nonempty");
    r.summary = required_string("summary");
    if (auto it = j.find("description"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) throw Error("field \"description\" must be a string");
        r.description = it->get<std::string>();
    }
    r.reported_at = parse_rfc3339(required_string("reported_at"));
    if (auto it = j.find("resolved_at"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) throw Error("field \"resolved_at\" must be a string");
        r.resolved_at = parse_rfc3339(it->get<std::string>());
        if (*r.resolved_at < r.reported_at) throw Error("resolved_at precedes reported_at");
    }
    if (auto it = j.find("fixed_files"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) throw Error("field \"fixed_files\" must be an array");
        std::vector<std::string> files;
        for (const auto& f : *it) {
            if (!f.is_string() || f.get<std::string>().empty())
                throw Error("fixed_files entries must be nonempty strings");
            files.push_back(f.get<std::string>());
        }
        r.fixed_files = std::move(files);
    }
    if (auto it = j.find("functional"); it != j.end() && !it->is_null()) {
        if (!it->is_boolean()) throw Error("field \"functional\" must be a boolean");
        r.functional = it->get<bool>();
    }
    return r;
}

inline nlohmann::json to_json(const BugReport& r) {
    nlohmann::json j;
    j["id"] = r.id;
    j["summary"] = r.summary;
    j["description"] = r.description;
    j["reported_at"] = to_rfc3339(r.reported_at);
    if (r.resolved_at) j["resolved_at"] = to_rfc3339(*r.resolved_at);
    if (r.fixed_files) j["fixed_files"] = *r.fixed_files;
    if (!r.functional) j["functional"] = false;
    return j;
}

/// Parses JSON Lines. Blank lines are skipped; order is preserved.
inline std::vector<BugReport> parse_bug_reports(std::istream& in, const std::string& source = "<reports>") {
    std::vector<BugReport> reports;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        BugReport r;
        try {
            r = bug_report_from_json(nlohmann::json::parse(line));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(source, lineno, e.what());
        } catch (const Error& e) {
            throw ParseError(source, lineno, e.what());
        }
        if (!seen.insert(r.id).second) throw ParseError(source, lineno, "duplicate report id \"" + r.id + "\"");
        reports.push_back(std::move(r));
    }
    return reports;
}

inline std::vector<BugReport> load_bug_reports(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read bug reports: " + path.string());
    return parse_bug_reports(in, path.string());
}

inline void write_bug_reports(std::ostream& out, const std::vector<BugReport>& reports) {
    for (const auto& r : reports) out << to_json(r).dump() << '\n';
}

// ---------------------------------------------------------------------------
// Report filtering
// ---------------------------------------------------------------------------

enum class ExclusionReason { not_functional, fix_not_completed, no_source_file_fixed };

inline std::string_view to_string(ExclusionReason r) {
    switch (r) {
        case ExclusionReason::not_functional: return "not a functional bug";
        case ExclusionReason::fix_not_completed: return "fix not completed";
        case ExclusionReason::no_source_file_fixed: return "no source file fixed";
    }
    return "";
}

struct ExcludedReport {
    BugReport report;
    ExclusionReason reason;
};

struct FilterResult {
    std::vector<BugReport> usable;
    std::vector<ExcludedReport> excluded;
};

/// Keeps reports that are functional, have a completed fix, and touched at
/// least one corpus file with a source extension. Checks run in that order;
/// the first failure is recorded.
inline FilterResult filter_usable_reports(const std::vector<BugReport>& reports, const Corpus& corpus,
                                          const std::set<std::string>& source_extensions) {
    FilterResult result;
    for (const auto& r : reports) {
        std::optional<ExclusionReason> reason;
        if (!r.functional) {
            reason = ExclusionReason::not_functional;
        } else if (!r.fixed_files || r.fixed_files->empty()) {
            reason = ExclusionReason::fix_not_completed;
        } else {
            bool any = std::any_of(r.fixed_files->begin(), r.fixed_files->end(), [&](const std::string& f) {
                return source_extensions.count(extension_of(normalize_path(f))) && corpus.find(f) != nullptr;
            });
            if (!any) reason = ExclusionReason::no_source_file_fixed;
        }
        if (reason)
            result.excluded.push_back({r, *reason});
        else
            result.usable.push_back(r);
    }
    return result;
}

}  // namespace croloc
