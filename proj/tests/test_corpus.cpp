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


#include <gtest/gtest.h>

#include <sstream>

#include "croloc/corpus.hpp"
#include "support.hpp"

using namespace croloc;
using croloc::test::TempDir;

namespace {

LoadOptions java_and_cs() {
    LoadOptions o;
    o.include_patterns = {"**/*.java", "**/*.cs"};
    return o;
}

std::vector<BugReport> parse(const std::string& text) {
    std::istringstream in(text);
    return parse_bug_reports(in, "reports.jsonl");
}

BugReport report(std::string id, std::optional<std::vector<std::string>> fixed, bool functional = true) {
    BugReport r;
    r.id = std::move(id);
    r.fixed_files = std::move(fixed);
    r.functional = functional;
    return r;
}

}  // namespace

TEST(LoadSourceTree, MatchesPatternsAndInfersLanguage) {
    TempDir dir;
    write_file(dir / "A.java", "class A {}");
    write_file(dir / "B.cs", "class B {}");
    write_file(dir / "C.txt", "text");
    auto result = load_source_tree(dir.path(), java_and_cs());
    const auto& c = result.corpus;
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0].path, "A.java");
    EXPECT_EQ(c[0].language, Language::java);
    EXPECT_EQ(c[1].path, "B.cs");
    EXPECT_EQ(c[1].language, Language::csharp);
    EXPECT_EQ(c[1].byte_length(), 10u);
    EXPECT_TRUE(result.diagnostics.empty());
}

TEST(LoadSourceTree, EmptyDirectoryGivesEmptyCorpus) {
    TempDir dir;
    EXPECT_TRUE(load_source_tree(dir.path(), java_and_cs()).corpus.empty());
}

TEST(LoadSourceTree, UnknownExtensionIsGeneric) {
    TempDir dir;
    write_file(dir / "x/notes.txt", "// hi");
    auto c = load_source_tree(dir.path()).corpus;
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].path, "x/notes.txt");
    EXPECT_EQ(c[0].language, Language::generic);
}

TEST(LoadSourceTree, InvalidUtf8IsFatalInStrictMode) {
    TempDir dir;
    write_file(dir / "Good.java", "class Good {}");
    write_file(dir / "pkg/Bad.java", "// \xFF\xFE");
    try {
        load_source_tree(dir.path(), java_and_cs());
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("pkg/Bad.java"), std::string::npos) << e.what();
    }
}

TEST(LoadSourceTree, InvalidUtf8IsSkippedWithDiagnosticWhenPermissive) {
    TempDir dir;
    write_file(dir / "Good.java", "class Good {}");
    write_file(dir / "Bad.java", "// \xC0\xAF");
    auto o = java_and_cs();
    o.permissive = true;
    auto result = load_source_tree(dir.path(), o);
    ASSERT_EQ(result.corpus.size(), 1u);
    EXPECT_EQ(result.corpus[0].path, "Good.java");
    ASSERT_EQ(result.diagnostics.size(), 1u);
    EXPECT_EQ(result.diagnostics[0].where, "Bad.java");
}

TEST(LoadSourceTree, MissingRootIsFatal) {
    EXPECT_THROW(load_source_tree("/nonexistent/croloc/root"), Error);
}

TEST(LoadSourceTree, IsDeterministic) {
    TempDir dir;
    for (auto name : {"z/Z.java", "a/A.java", "m/M.cs", "a/b/B.java"}) write_file(dir / name, name);
    auto a = load_source_tree(dir.path(), java_and_cs()).corpus;
    auto b = load_source_tree(dir.path(), java_and_cs()).corpus;
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].doc_id, i);
        EXPECT_EQ(a[i].path, b[i].path);
        EXPECT_EQ(a[i].raw_text, b[i].raw_text);
        if (i > 0) {
            EXPECT_LT(a[i - 1].path, a[i].path);
        }
    }
}

TEST(Corpus, RejectsDuplicatePaths) {
    std::vector<SourceDocument> docs{{"a/X.java", Language::java, "", 0}, {"./a/X.java", Language::java, "", 0}};
    EXPECT_THROW(Corpus::from_documents("", docs), Error);
}

TEST(Corpus, FindNormalizes) {
    auto c = Corpus::from_documents("", {{"b/Y.cs", Language::csharp, "", 0}, {"a/X.java", Language::java, "", 0}});
    ASSERT_NE(c.find("./a//X.java"), nullptr);
    EXPECT_EQ(c.find("a/X.java")->doc_id, 0u);
    EXPECT_EQ(c.find("b/Y.cs")->doc_id, 1u);
    EXPECT_EQ(c.find("c/Z.cs"), nullptr);
}

TEST(BugReports, ParsesWellFormedLinesInOrder) {
    auto reports = parse(
        R"({"id":"B-2","summary":"s2","reported_at":"2024-01-02T00:00:00Z"})"
        "\n\n"
        R"({"id":"B-1","summary":"s1","description":"d1","reported_at":"2024-01-01T00:00:00Z","resolved_at":"2024-01-03T00:00:00+09:00","fixed_files":["src/A.java"]})"
        "\n"
        R"({"id":"B-3","summary":"s3","reported_at":"2024-01-03T00:00:00Z","functional":false})"
        "\n");
    ASSERT_EQ(reports.size(), 3u);
    EXPECT_EQ(reports[0].id, "B-2");
    EXPECT_EQ(reports[0].description, "");
    EXPECT_FALSE(reports[0].fixed_files);
    EXPECT_EQ(reports[1].query_text(), "s1\nd1");
    ASSERT_TRUE(reports[1].fixed_files);
    EXPECT_EQ(reports[1].fixed_files->at(0), "src/A.java");
    EXPECT_EQ(to_rfc3339(*reports[1].resolved_at), "2024-01-02T15:00:00Z");
    EXPECT_FALSE(reports[2].functional);
    EXPECT_TRUE(reports[0].functional);
}

TEST(BugReports, MissingIdReportsLine) {
    try {
        parse(R"({"id":"A","summary":"s","reported_at":"2024-01-01T00:00:00Z"})"
              "\n"
              R"({"summary":"s","reported_at":"2024-01-01T00:00:00Z"})"
              "\n");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_NE(std::string(e.what()).find("id"), std::string::npos);
    }
}

TEST(BugReports, DuplicateIdNamesTheId) {
    try {
        parse(R"({"id":"BUG-7","summary":"a","reported_at":"2024-01-01T00:00:00Z"})"
              "\n"
              R"({"id":"BUG-7","summary":"b","reported_at":"2024-01-01T00:00:00Z"})"
              "\n");
        FAIL() << "expected a duplicate-id error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_NE(std::string(e.what()).find("BUG-7"), std::string::npos);
    }
}

TEST(BugReports, ValidatesFields) {
    EXPECT_THROW(parse(R"({"id":"A","summary":"s","reported_at":"2024-01-02T00:00:00Z","resolved_at":"2024-01-01T00:00:00Z"})"),
                 ParseError);
    EXPECT_THROW(parse(R"({"id":"A","summary":"s","reported_at":"2024-01-01T00:00:00Z","fixed_files":[""]})"),
                 ParseError);
    EXPECT_THROW(parse(R"({"id":"A","summary":"s","reported_at":"yesterday"})"), ParseError);
    EXPECT_THROW(parse(R"({"id":"A","summary":1,"reported_at":"2024-01-01T00:00:00Z"})"), ParseError);
    EXPECT_THROW(parse("{not json"), ParseError);
}

TEST(BugReports, RoundTripsThroughJson) {
    auto in = parse(
        R"({"id":"X","summary":"日本語","description":"d","reported_at":"2024-01-01T00:00:00.25Z","resolved_at":"2024-01-05T00:00:00Z","fixed_files":["a.cs","b.java"],"functional":false})");
    std::ostringstream out;
    write_bug_reports(out, in);
    auto back = parse(out.str());
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].summary, "日本語");
    EXPECT_EQ(back[0].reported_at, in[0].reported_at);
    EXPECT_EQ(back[0].resolved_at, in[0].resolved_at);
    EXPECT_EQ(back[0].fixed_files, in[0].fixed_files);
    EXPECT_FALSE(back[0].functional);
}

TEST(FilterUsableReports, AppliesCriteriaWithReasons) {
    auto corpus = Corpus::from_documents("", {{"src/A.java", Language::java, "", 0}, {"src/B.cs", Language::csharp, "", 0}});
    std::vector<BugReport> reports{
        report("usable", std::vector<std::string>{"src/A.java"}),
        report("empty", std::vector<std::string>{}),
        report("missing", std::nullopt),
        report("docs", std::vector<std::string>{"doc/readme.md"}),
        report("nonfunctional", std::vector<std::string>{"src/A.java"}, false),
        report("wrong-ext", std::vector<std::string>{"src/B.cs"}),
        report("absent", std::vector<std::string>{"src/Gone.java"}),
    };
    auto r = filter_usable_reports(reports, corpus, {".java"});
    ASSERT_EQ(r.usable.size(), 1u);
    EXPECT_EQ(r.usable[0].id, "usable");
    std::map<std::string, std::string> reasons;
    for (const auto& e : r.excluded) reasons[e.report.id] = std::string(to_string(e.reason));
    EXPECT_EQ(reasons.at("empty"), "fix not completed");
    EXPECT_EQ(reasons.at("missing"), "fix not completed");
    EXPECT_EQ(reasons.at("docs"), "no source file fixed");
    EXPECT_EQ(reasons.at("nonfunctional"), "not a functional bug");
    EXPECT_EQ(reasons.at("wrong-ext"), "no source file fixed");
    EXPECT_EQ(reasons.at("absent"), "no source file fixed");
}

TEST(FilterUsableReports, PartitionsInput) {
    auto corpus = Corpus::from_documents("", {{"A.java", Language::java, "", 0}});
    std::vector<BugReport> reports;
    for (int i = 0; i < 40; ++i) {
        std::optional<std::vector<std::string>> files;
        if (i % 3 == 1) files = std::vector<std::string>{"A.java"};
        if (i % 3 == 2) files = std::vector<std::string>{i % 2 ? "A.java" : "B.md"};
        reports.push_back(report("R" + std::to_string(i), files, i % 5 != 0));
    }
    auto r = filter_usable_reports(reports, corpus, {".java"});
    EXPECT_EQ(r.usable.size() + r.excluded.size(), reports.size());
    std::set<std::string> ids;
    for (const auto& u : r.usable) ids.insert(u.id);
    for (const auto& e : r.excluded) EXPECT_TRUE(ids.insert(e.report.id).second) << e.report.id;
    EXPECT_EQ(ids.size(), reports.size());
}
