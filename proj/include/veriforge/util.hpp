#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace veriforge {

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

// Whitespace-delimited token count; the accounting proxy for stub generators.
inline long long whitespace_token_count(std::string_view text) {
    long long count = 0;
    bool in_token = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            ++count;
        }
    }
    return count;
}

// Cut text after its first `limit` whitespace-delimited tokens.
inline std::string truncate_to_tokens(std::string_view text, long long limit) {
    if (limit <= 0) return std::string();
    long long count = 0;
    bool in_token = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        bool ws = std::isspace(static_cast<unsigned char>(text[i])) != 0;
        if (!ws && !in_token) {
            in_token = true;
            ++count;
        } else if (ws && in_token) {
            in_token = false;
            if (count == limit) return std::string(text.substr(0, i));
        }
    }
    return std::string(text);
}

// Signed whole-percent rounding, half away from zero.
inline long long round_percent(double fraction) {
    return std::llround(fraction * 100.0);
}

// Runs fn(i) for i in [0, n) on up to `workers` threads. Callers index into
// preallocated output slots, so the merge order is the input order. The first
// exception thrown by any fn is rethrown on the calling thread after join.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
    if (n == 0) return;
    workers = std::max<std::size_t>(1, std::min(workers, n));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace veriforge
