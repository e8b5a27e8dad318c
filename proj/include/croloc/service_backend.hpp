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
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "croloc/error.hpp"
#include "croloc/translate.hpp"

namespace croloc {

/// Translation service answered with a non-2xx status (or not at all, status 0).
class ServiceError : public Error {
 public:
    ServiceError(int status, const std::string& what) : Error(what), status_(status) {}
    int status() const noexcept { return status_; }

 private:
    int status_;
};

inline constexpr const char* kServiceTokenEnv = "CROLOC_SERVICE_TOKEN";

struct ServiceConfig {
    std::string endpoint;  // e.g. "https://mt.example.com/v1/translate"
    std::string token;
    std::string source_language = "ja";
    std::string target_language = "en";
    std::size_t batch_size = 32;
    int max_attempts = 3;
    std::chrono::milliseconds initial_backoff{250};
    std::chrono::milliseconds max_backoff{4000};
    std::chrono::seconds timeout{30};
};

/// Generic JSON translation client.
///
/// Request:  POST endpoint {"texts": [...], "source": "ja", "target": "en"}
/// Response: {"translations": [...]} with one entry per input text.
///
/// Connection failures, 429 and 5xx responses are retried with capped
/// exponential backoff up to max_attempts in total.
class ServiceBackend final : public TranslatorBackend {
 public:
    explicit ServiceBackend(ServiceConfig config) : config_(std::move(config)) {
        auto scheme_end = config_.endpoint.find("://");
        if (scheme_end == std::string::npos) throw Error("service endpoint must be an absolute URL");
        auto path_start = config_.endpoint.find('/', scheme_end + 3);
        if (path_start == std::string::npos) {
            base_ = config_.endpoint;
            path_ = "/";
        } else {
            base_ = config_.endpoint.substr(0, path_start);
            path_ = config_.endpoint.substr(path_start);
        }
        if (config_.batch_size == 0) throw Error("service batch size must be positive");
        if (config_.max_attempts < 1) throw Error("service attempts must be at least 1");
    }

    std::string name() const override { return "service:" + config_.endpoint; }
    bool concurrent() const override { return true; }

    std::vector<std::string> translate_batch(const std::vector<std::string>& texts) override {
        std::vector<std::string> out;
        out.reserve(texts.size());
        for (std::size_t i = 0; i < texts.size(); i += config_.batch_size) {
            auto last = std::min(texts.size(), i + config_.batch_size);
            auto part = post({texts.begin() + static_cast<std::ptrdiff_t>(i), texts.begin() + static_cast<std::ptrdiff_t>(last)});
            out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
        }
        return out;
    }

    /// Requests issued so far, retries included.
    std::size_t requests() const noexcept { return requests_; }

 private:
    static bool transient(int status) { return status == 0 || status == 429 || status >= 500; }

    std::vector<std::string> post(const std::vector<std::string>& texts) {
        nlohmann::json body{{"texts", texts}, {"source", config_.source_language}, {"target", config_.target_language}};
        const auto payload = body.dump();
        httplib::Headers headers;
        if (!config_.token.empty()) headers.emplace("Authorization", "Bearer " + config_.token);

        int status = 0;
        std::string detail;
        auto backoff = config_.initial_backoff;
        for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
            httplib::Client client(base_);
            client.set_connection_timeout(config_.timeout);
            client.set_read_timeout(config_.timeout);
            client.set_write_timeout(config_.timeout);
            ++requests_;
            auto res = client.Post(path_, headers, payload, "application/json");
            if (res) {
                status = res->status;
                if (status >= 200 && status < 300) return parse_response(res->body, texts.size());
                detail = res->body.substr(0, 200);
            } else {
                status = 0;
                detail = httplib::to_string(res.error());
            }
            if (!transient(status) || attempt == config_.max_attempts) break;
            std::this_thread::sleep_for(backoff);
            backoff = std::min(backoff * 2, config_.max_backoff);
        }
        throw ServiceError(status, "translation service " + config_.endpoint + " failed with status " +
                                       std::to_string(status) + (detail.empty() ? "" : ": " + detail));
    }

    static std::vector<std::string> parse_response(const std::string& body, std::size_t expected) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(body);
        } catch (const nlohmann::json::exception& e) {
            throw ProtocolError(std::string("translation service returned invalid JSON: ") + e.what());
        }
        if (!j.is_object() || !j.contains("translations") || !j["translations"].is_array())
            throw ProtocolError("translation service response lacks a \"translations\" array");
        const auto& arr = j["translations"];
        if (arr.size() != expected)
            throw ProtocolError("translation service returned " + std::to_string(arr.size()) + " translations for " +
                                std::to_string(expected) + " texts");
        std::vector<std::string> out;
        out.reserve(expected);
        for (const auto& t : arr) {
            if (!t.is_string()) throw ProtocolError("translation service returned a non-string translation");
            out.push_back(t.get<std::string>());
        }
        return out;
    }

    ServiceConfig config_;
    std::string base_;
    std::string path_;
    std::atomic<std::size_t> requests_{0};
};

}  // namespace croloc
