#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace veriforge {

// Deterministic text-to-vector provider. Same text must always produce the
// same vector; non-empty text embeds to a unit vector, empty text to zeros.
class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual std::vector<double> embed(std::string_view text) const = 0;
    virtual std::size_t dimension() const = 0;
};

// Character 3-gram hashed term-frequency vectorizer, L2-normalized.
// Fully offline and platform-stable: grams hash with 64-bit FNV-1a into a
// fixed-dimension bucket space.
class TrigramHashEmbedder final : public EmbeddingProvider {
public:
    explicit TrigramHashEmbedder(std::size_t dim = 1024) : dim_(dim) {}

    std::size_t dimension() const override { return dim_; }

    std::vector<double> embed(std::string_view text) const override {
        std::vector<double> v(dim_, 0.0);
        if (text.empty()) return v;
        if (text.size() < 3) {
            v[bucket(text)] += 1.0;
        } else {
            for (std::size_t i = 0; i + 3 <= text.size(); ++i) {
                v[bucket(text.substr(i, 3))] += 1.0;
            }
        }
        double norm_sq = 0.0;
        for (double x : v) norm_sq += x * x;
        double norm = std::sqrt(norm_sq);
        if (norm > 0.0) {
            for (double& x : v) x /= norm;
        }
        return v;
    }

private:
    std::size_t bucket(std::string_view gram) const {
        std::uint64_t h = 14695981039346656037ull;
        for (unsigned char c : gram) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h % dim_);
    }

    std::size_t dim_;
};

} // namespace veriforge
