#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <unordered_map>

#include <httplib.h>
#include <json.hpp>

#include "veriforge/corpus.hpp"
#include "veriforge/errors.hpp"
#include "veriforge/judge.hpp"
#include "veriforge/util.hpp"

namespace veriforge {

struct SamplingParams {
    double temperature = 0.2;
    double top_p = 0.95;
};

struct GenerationResult {
    std::string text;
    long long tokens_used = 0; // completion tokens
};

// Text-generation endpoint abstraction. Stubs ignore the sampling parameters;
// a real client forwards them and reports its own token usage.
class GenerationClient {
public:
    virtual ~GenerationClient() = default;
    virtual GenerationResult generate(const std::string& prompt,
                                      long long max_new_tokens,
                                      const SamplingParams& params) = 0;
};

// Always emits the same text, trimmed to the requested budget. Token usage is
// the whitespace-token count of the emitted text.
class FixedTextGenerator final : public GenerationClient {
public:
    explicit FixedTextGenerator(std::string text) : text_(std::move(text)) {}

    GenerationResult generate(const std::string&, long long max_new_tokens,
                              const SamplingParams&) override {
        std::string out = truncate_to_tokens(text_, max_new_tokens);
        return {out, whitespace_token_count(out)};
    }

private:
    std::string text_;
};

// Returns the reference solution of whichever problem statement the prompt
// contains; the harness-validation generator.
class ReferenceSolutionGenerator final : public GenerationClient {
public:
    explicit ReferenceSolutionGenerator(const Corpus& problems) {
        for (const Sample& s : problems.samples) {
            if (!s.problem.empty()) solutions_.emplace(s.problem, s.solution);
        }
    }

    GenerationResult generate(const std::string& prompt, long long max_new_tokens,
                              const SamplingParams&) override {
        for (const auto& [problem, solution] : solutions_) {
            if (prompt.find(problem) != std::string::npos) {
                std::string out = truncate_to_tokens(solution, max_new_tokens);
                return {out, whitespace_token_count(out)};
            }
        }
        return {"", 0};
    }

private:
    std::unordered_map<std::string, std::string> solutions_;
};

// Fully programmable test double. The callback may throw transport_error.
class ScriptedGenerator final : public GenerationClient {
public:
    using Fn = std::function<GenerationResult(const std::string&, long long, const SamplingParams&)>;
    explicit ScriptedGenerator(Fn fn) : fn_(std::move(fn)) {}

    GenerationResult generate(const std::string& prompt, long long max_new_tokens,
                              const SamplingParams& params) override {
        return fn_(prompt, max_new_tokens, params);
    }

private:
    Fn fn_;
};

// POSTs {"prompt","max_new_tokens","temperature","top_p"} to <url>/generate
// and expects {"text": ..., "tokens_used": ...}.
class HttpGenerator final : public GenerationClient {
public:
    explicit HttpGenerator(std::string url, std::chrono::seconds timeout = std::chrono::seconds(120))
        : url_(std::move(url)), timeout_(timeout) {}

    GenerationResult generate(const std::string& prompt, long long max_new_tokens,
                              const SamplingParams& params) override {
        auto [host, path_prefix] = HttpJudge::split_url(url_);
        httplib::Client client(host);
        client.set_connection_timeout(5, 0);
        client.set_read_timeout(timeout_.count(), 0);

        json body;
        body["prompt"] = prompt;
        body["max_new_tokens"] = max_new_tokens;
        body["temperature"] = params.temperature;
        body["top_p"] = params.top_p;
        auto res = client.Post(path_prefix + "/generate", body.dump(), "application/json");
        if (!res) throw transport_error("generation endpoint unreachable: " + url_);
        if (res->status != 200)
            throw transport_error("generation endpoint returned HTTP " + std::to_string(res->status));
        try {
            json j = json::parse(res->body);
            GenerationResult result;
            result.text = j.at("text").get<std::string>();
            result.tokens_used = j.contains("tokens_used")
                                     ? j.at("tokens_used").get<long long>()
                                     : whitespace_token_count(result.text);
            return result;
        } catch (const nlohmann::json::exception& e) {
            throw transport_error(std::string("malformed generation response: ") + e.what());
        }
    }

private:
    std::string url_;
    std::chrono::seconds timeout_;
};

} // namespace veriforge
