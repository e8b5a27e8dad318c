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


// Helpers shared by the test binaries.

#pragma once

#include <atomic>
#include <filesystem>
#include <random>
#include <string>

namespace croloc::test {

inline std::filesystem::path fixtures() { return CROLOC_FIXTURES; }

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("croloc-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
    std::filesystem::path path_;
};

/// Copies a fixture directory into `dest`.
inline void copy_fixture(const std::string& name, const std::filesystem::path& dest) {
    std::filesystem::copy(fixtures() / name, dest, std::filesystem::copy_options::recursive);
}

}  // namespace croloc::test
