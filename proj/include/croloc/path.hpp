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
#include <string>
#include <string_view>
#include <vector>

namespace croloc {

/// Repo-relative path in canonical form: forward slashes, no leading "./",
/// no duplicate separators.
inline std::string normalize_path(std::string_view path) {
    std::string out;
    out.reserve(path.size());
    for (char c : path) {
        char ch = c == '\\' ? '/' : c;
        if (ch == '/' && !out.empty() && out.back() == '/') continue;
        out.push_back(ch);
    }
    while (out.starts_with("./")) out.erase(0, 2);
    return out;
}

/// Lowercased extension including the dot (".java"), or "" if none.
inline std::string extension_of(std::string_view path) {
    auto slash = path.find_last_of('/');
    auto name = slash == std::string_view::npos ? path : path.substr(slash + 1);
    auto dot = name.find_last_of('.');
    if (dot == std::string_view::npos || dot == 0) return {};
    std::string ext(name.substr(dot));
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

namespace detail {

inline std::vector<std::string_view> split_segments(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto end = s.find('/', start);
        if (end == std::string_view::npos) end = s.size();
        if (end > start) out.push_back(s.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

// '*' and '?' within a single path segment.
inline bool match_segment(std::string_view pat, std::string_view name) {
    std::size_t p = 0, n = 0, star_p = std::string_view::npos, star_n = 0;
    while (n < name.size()) {
        if (p < pat.size() && (pat[p] == '?' || pat[p] == name[n])) {
            ++p; ++n;
        } else if (p < pat.size() && pat[p] == '*') {
            star_p = p++;
            star_n = n;
        } else if (star_p != std::string_view::npos) {
            p = star_p + 1;
            n = ++star_n;
        } else {
            return false;
        }
    }
    while (p < pat.size() && pat[p] == '*') ++p;
    return p == pat.size();
}

inline bool match_segments(const std::vector<std::string_view>& pat, std::size_t pi,
                           const std::vector<std::string_view>& path, std::size_t si) {
    if (pi == pat.size()) return si == path.size();
    if (pat[pi] == "**") {
        for (std::size_t k = si; k <= path.size(); ++k)
            if (match_segments(pat, pi + 1, path, k)) return true;
        return false;
    }
    if (si == path.size()) return false;
    return match_segment(pat[pi], path[si]) && match_segments(pat, pi + 1, path, si + 1);
}

}  // namespace detail

/// Glob match against a normalized relative path. `*` and `?` stay within a
/// segment; a `**` segment spans zero or more directories.
inline bool glob_match(std::string_view pattern, std::string_view path) {
    auto pat = detail::split_segments(pattern);
    auto segs = detail::split_segments(path);
    return detail::match_segments(pat, 0, segs, 0);
}

}  // namespace croloc
