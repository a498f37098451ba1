#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <string>
#include <unordered_set>

#include <httplib.h>
#include <json.hpp>

#include "veriforge/corpus.hpp"
#include "veriforge/errors.hpp"
#include "veriforge/lint.hpp"

namespace veriforge {

// External quality-assessment hook. Implementations must be total: every call
// yields a verdict or a transport_error within a bounded timeout.
class JudgeClient {
public:
    virtual ~JudgeClient() = default;
    virtual StyleVerdict assess(const Sample& sample) = 0;
};

// Offline default: passes everything, or fails a scripted id set.
class StubJudge final : public JudgeClient {
public:
    StubJudge() = default;
    explicit StubJudge(std::unordered_set<std::string> failing_ids)
        : failing_ids_(std::move(failing_ids)) {}

    StyleVerdict assess(const Sample& sample) override {
        if (failing_ids_.count(sample.id)) {
            return StyleVerdict::from_violations(
                {{"JUDGE", 0, "sample '" + sample.id + "' rejected by stub judge script"}});
        }
        return StyleVerdict::from_violations({});
    }

private:
    std::unordered_set<std::string> failing_ids_;
};

// Test double with programmable behaviour, including transport failures.
class ScriptedJudge final : public JudgeClient {
public:
    explicit ScriptedJudge(std::function<StyleVerdict(const Sample&)> fn) : fn_(std::move(fn)) {}
    StyleVerdict assess(const Sample& sample) override { return fn_(sample); }

private:
    std::function<StyleVerdict(const Sample&)> fn_;
};

// POSTs {"id","problem","solution"} to <url>/assess and expects
// {"passed": bool, "violations": [{"rule","line","message"}]}.
class HttpJudge final : public JudgeClient {
public:
    explicit HttpJudge(std::string url, std::chrono::seconds timeout = std::chrono::seconds(30))
        : url_(std::move(url)), timeout_(timeout) {}

    StyleVerdict assess(const Sample& sample) override {
        auto [host, path_prefix] = split_url(url_);
        httplib::Client client(host);
        client.set_connection_timeout(5, 0);
        client.set_read_timeout(timeout_.count(), 0);

        json body;
        body["id"] = sample.id;
        body["problem"] = sample.problem;
        body["solution"] = sample.solution;
        auto res = client.Post(path_prefix + "/assess", body.dump(), "application/json");
        if (!res) throw transport_error("judge endpoint unreachable: " + url_);
        if (res->status != 200)
            throw transport_error("judge endpoint returned HTTP " + std::to_string(res->status));
        try {
            json j = json::parse(res->body);
            std::vector<LintViolation> violations;
            if (j.contains("violations")) {
                for (const auto& v : j.at("violations")) {
                    violations.push_back({v.value("rule", "JUDGE"), v.value("line", 0),
                                          v.value("message", "")});
                }
            }
            if (!j.at("passed").get<bool>() && violations.empty()) {
                violations.push_back({"JUDGE", 0, "rejected by judge endpoint"});
            }
            return StyleVerdict::from_violations(std::move(violations));
        } catch (const nlohmann::json::exception& e) {
            throw transport_error(std::string("malformed judge response: ") + e.what());
        }
    }

    // "http://host:port/base" -> ("http://host:port", "/base")
    static std::pair<std::string, std::string> split_url(const std::string& url) {
        auto scheme_end = url.find("://");
        std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
        auto path_start = url.find('/', host_start);
        if (path_start == std::string::npos) return {url, ""};
        return {url.substr(0, path_start), url.substr(path_start)};
    }

private:
    std::string url_;
    std::chrono::seconds timeout_;
};

} // namespace veriforge
