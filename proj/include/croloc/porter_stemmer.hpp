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

#include <string>
#include <string_view>

namespace croloc {

/// Porter (1980) suffix-stripping stemmer, following the reference C
/// implementation (including its "bli"->"ble" and "logi"->"log" rules).
/// Expects a lowercase ASCII word.
class PorterStemmer {
 public:
    std::string operator()(std::string_view word) const {
        Buffer b{std::string(word)};
        if (b.s.size() <= 2) return b.s;
        b.k = static_cast<int>(b.s.size()) - 1;
        b.step1ab();
        if (b.k > 0) {
            b.step1c();
            b.step2();
            b.step3();
            b.step4();
            b.step5();
        }
        b.s.resize(static_cast<std::size_t>(b.k + 1));
        return b.s;
    }

 private:
    struct Buffer {
        std::string s;
        int k = 0;  // last index of the current word
        int j = 0;  // end of the stem once a suffix matched

        bool cons(int i) const {
            switch (s[i]) {
                case 'a': case 'e': case 'i': case 'o': case 'u': return false;
                case 'y': return i == 0 ? true : !cons(i - 1);
                default: return true;
            }
        }

        // Number of VC sequences in s[0..j].
        int m() const {
            int n = 0, i = 0;
            for (;;) {
                if (i > j) return n;
                if (!cons(i)) break;
                ++i;
            }
            ++i;
            for (;;) {
                for (;;) {
                    if (i > j) return n;
                    if (cons(i)) break;
                    ++i;
                }
                ++i;
                ++n;
                for (;;) {
                    if (i > j) return n;
                    if (!cons(i)) break;
                    ++i;
                }
                ++i;
            }
        }

        bool vowel_in_stem() const {
            for (int i = 0; i <= j; ++i)
                if (!cons(i)) return true;
            return false;
        }

        bool double_consonant(int i) const { return i >= 1 && s[i] == s[i - 1] && cons(i); }

        // consonant-vowel-consonant ending at i, last not w, x or y
        bool cvc(int i) const {
            if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
            char ch = s[i];
            return ch != 'w' && ch != 'x' && ch != 'y';
        }

        bool ends(std::string_view suffix) {
            int len = static_cast<int>(suffix.size());
            if (len > k + 1) return false;
            if (std::string_view(s).substr(static_cast<std::size_t>(k - len + 1), suffix.size()) != suffix)
                return false;
            j = k - len;
            return true;
        }

        void set_to(std::string_view repl) {
            s.replace(static_cast<std::size_t>(j + 1), static_cast<std::size_t>(k - j), repl);
            k = j + static_cast<int>(repl.size());
            s.resize(static_cast<std::size_t>(k + 1));
        }

        void replace_if_measure(std::string_view repl) {
            if (m() > 0) set_to(repl);
        }

        void step1ab() {
            if (s[k] == 's') {
                if (ends("sses"))
                    k -= 2;
                else if (ends("ies"))
                    set_to("i");
                else if (s[k - 1] != 's')
                    --k;
            }
            if (ends("eed")) {
                if (m() > 0) --k;
            } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
                k = j;
                if (ends("at"))
                    set_to("ate");
                else if (ends("bl"))
                    set_to("ble");
                else if (ends("iz"))
                    set_to("ize");
                else if (double_consonant(k)) {
                    --k;
                    char ch = s[k];
                    if (ch == 'l' || ch == 's' || ch == 'z') ++k;
                } else if (m() == 1 && cvc(k)) {
                    set_to("e");
                }
            }
        }

        void step1c() {
            if (ends("y") && vowel_in_stem()) s[k] = 'i';
        }

        // First matching suffix wins, whether or not the measure allows it.
        template <std::size_t N>
        void try_rules(const std::pair<std::string_view, std::string_view> (&rules)[N]) {
            for (const auto& [suffix, repl] : rules) {
                if (ends(suffix)) {
                    replace_if_measure(repl);
                    return;
                }
            }
        }

        void step2() {
            switch (s[k - 1]) {
                case 'a': {
                    static constexpr std::pair<std::string_view, std::string_view> r[] = {{"ational", "ate"},
                                                                                         {"tional", "tion"}};
                    try_rules(r);
                    break;
                }
                case 'c': {
                    static constexpr std::pair<std::string_view, std::string_view> r[] = {{"enci", "ence"},
                                                                                         {"anci", "ance"}};
                    try_rules(r);
                    break;
                }
                case 'e': {
                    static constexpr std::pair<std::string_view, std::string_view> r[] = {{"izer", "ize"}};
                    try_rules(r);
                    break;
                }
                case 'l': {
                    static constexpr std::pair<std::string_view, std::string_view> r[] = {
                        {"bli", "ble"}, {"alli", "al"}, {"entli", "ent"}, {"eli", "e"}, {"ousli", "ous"}};
                    try_rules(r);
                    break;
                }
                case 'o': {
                    static constexpr std::pair<std::string_view, std::string_view> r[] = {
                        {"ization", "ize"}, {"ation", "ate"}, {"ator", "ate"}};
                    try_rules(r);
                    break;
                }
                case 's': {
                    static constexpr std::pair<std::string_view, std::string_view> r[] = {
                        {"alism", "al"}, {"iveness", "ive"}, {"fulness", "ful"}, {"ousness", "ous"}};
                    try_rules(r);
                    break;
                }
                case 't': {
                    static constexpr std::pair<std::string_view, std::string_view> r[] = {
                        {"aliti", "al"}, {"iviti", "ive"}, {"biliti", "ble"}};
                    try_rules(r);
                    break;
                }
                case 'g': {
                    static constexpr std::pair<std::string_view, std::string_view> r[] = {{"logi", "log"}};
                    try_rules(r);
                    break;
                }
                default: break;
            }
        }

        void step3() {
            switch (s[k]) {
                case 'e': {
                    static constexpr std::pair<std::string_view, std::string_view> r[] = {
                        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}};
                    try_rules(r);
                    break;
                }
                case 'i': {
                    static constexpr std::pair<std::string_view, std::string_view> r[] = {{"iciti", "ic"}};
                    try_rules(r);
                    break;
                }
                case 'l': {
                    static constexpr std::pair<std::string_view, std::string_view> r[] = {{"ical", "ic"},
                                                                                         {"ful", ""}};
                    try_rules(r);
                    break;
                }
                case 's': {
                    static constexpr std::pair<std::string_view, std::string_view> r[] = {{"ness", ""}};
                    try_rules(r);
                    break;
                }
                default: break;
            }
        }

        void step4() {
            auto any = [&](std::initializer_list<std::string_view> suffixes) {
                for (auto sfx : suffixes)
                    if (ends(sfx)) return true;
                return false;
            };
            bool matched = false;
            switch (s[k - 1]) {
                case 'a': matched = any({"al"}); break;
                case 'c': matched = any({"ance", "ence"}); break;
                case 'e': matched = any({"er"}); break;
                case 'i': matched = any({"ic"}); break;
                case 'l': matched = any({"able", "ible"}); break;
                case 'n': matched = any({"ant", "ement", "ment", "ent"}); break;
                case 'o':
                    matched = (ends("ion") && j >= 0 && (s[j] == 's' || s[j] == 't')) || ends("ou");
                    break;
                case 's': matched = any({"ism"}); break;
                case 't': matched = any({"ate", "iti"}); break;
                case 'u': matched = any({"ous"}); break;
                case 'v': matched = any({"ive"}); break;
                case 'z': matched = any({"ize"}); break;
                default: break;
            }
            if (matched && m() > 1) k = j;
        }

        void step5() {
            j = k;
            if (s[k] == 'e') {
                int a = m();
                if (a > 1 || (a == 1 && !cvc(k - 1))) --k;
            }
            if (s[k] == 'l' && double_consonant(k) && m() > 1) --k;
        }
    };
};

inline std::string porter_stem(std::string_view word) { return PorterStemmer{}(word); }

}  // namespace croloc
