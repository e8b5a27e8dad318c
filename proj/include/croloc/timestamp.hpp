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

#include <charconv>
#include <chrono>
#include <string>
#include <string_view>

#include "croloc/error.hpp"

namespace croloc {

using Timestamp = std::chrono::sys_time<std::chrono::microseconds>;

namespace detail {

inline bool read_int(std::string_view s, std::size_t pos, std::size_t width, int& out) {
    if (pos + width > s.size()) return false;
    for (std::size_t i = pos; i < pos + width; ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    std::from_chars(s.data() + pos, s.data() + pos + width, out);
    return true;
}

}  // namespace detail

/// Parses an RFC 3339 date-time ("2021-03-04T05:06:07Z",
/// "2021-03-04T14:06:07.25+09:00"). Lowercase 't'/'z' and a space separator
/// are accepted as RFC 3339 permits.
inline Timestamp parse_rfc3339(std::string_view s) {
    using namespace std::chrono;
    auto fail = [&](const char* why) -> Error {
        return Error("invalid RFC 3339 timestamp '" + std::string(s) + "': " + why);
    };
    int y, mo, d, h, mi, sec;
    if (!detail::read_int(s, 0, 4, y) || s.size() < 19 || s[4] != '-' || !detail::read_int(s, 5, 2, mo) ||
        s[7] != '-' || !detail::read_int(s, 8, 2, d))
        throw fail("bad date");
    if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') throw fail("missing 'T'");
    if (!detail::read_int(s, 11, 2, h) || s[13] != ':' || !detail::read_int(s, 14, 2, mi) || s[16] != ':' ||
        !detail::read_int(s, 17, 2, sec))
        throw fail("bad time");

    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) throw fail("no such date");
    if (h > 23 || mi > 59 || sec > 60) throw fail("time out of range");

    std::size_t pos = 19;
    microseconds frac{0};
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        std::size_t digits = 0;
        long long value = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            if (digits < 6) {
                value = value * 10 + (s[pos] - '0');
                ++digits;
            }
            ++pos;
        }
        if (digits == 0) throw fail("empty fraction");
        for (auto i = digits; i < 6; ++i) value *= 10;
        frac = microseconds{value};
    }

    minutes offset{0};
    if (pos < s.size() && (s[pos] == 'Z' || s[pos] == 'z')) {
        ++pos;
    } else if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        int oh, om;
        if (!detail::read_int(s, pos + 1, 2, oh) || pos + 3 >= s.size() || s[pos + 3] != ':' ||
            !detail::read_int(s, pos + 4, 2, om))
            throw fail("bad offset");
        offset = hours{oh} + minutes{om};
        if (s[pos] == '-') offset = -offset;
        pos += 6;
    } else {
        throw fail("missing offset");
    }
    if (pos != s.size()) throw fail("trailing characters");

    auto local = sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec};
    return time_point_cast<microseconds>(local - offset) + frac;
}

}  // namespace croloc
