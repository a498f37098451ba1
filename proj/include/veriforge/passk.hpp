#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace veriforge {

struct PassAtKInput {
    long long n = 0; // samples generated per problem
    long long c = 0; // correct among n
    long long k = 0; // selection size
};

// Unbiased estimator of the probability that at least one of k samples drawn
// from n (with c correct) is correct: 1 - C(n-c,k)/C(n,k). Binomials are built
// multiplicatively in exact rational arithmetic, so there is no factorial
// overflow or precision loss before the final conversion.
inline double pass_at_k(const PassAtKInput& input) {
    const long long n = input.n, c = input.c, k = input.k;
    if (n < 1) throw std::invalid_argument("pass_at_k: n must be >= 1");
    if (c < 0 || c > n)
        throw std::invalid_argument("pass_at_k: c must satisfy 0 <= c <= n (c=" +
                                    std::to_string(c) + ", n=" + std::to_string(n) + ")");
    if (k < 1 || k > n)
        throw std::invalid_argument("pass_at_k: k must satisfy 1 <= k <= n (k=" +
                                    std::to_string(k) + ", n=" + std::to_string(n) + ")");
    if (n - c < k) return 1.0; // every k-subset hits a correct sample

    // C(n-c,k)/C(n,k) = prod_{i=0}^{k-1} (n-c-i)/(n-i)
    boost::multiprecision::cpp_int num = 1, den = 1;
    for (long long i = 0; i < k; ++i) {
        num *= (n - c - i);
        den *= (n - i);
    }
    boost::multiprecision::cpp_rational ratio(num, den);
    return 1.0 - ratio.convert_to<double>();
}

inline double pass_at_k(long long n, long long c, long long k) {
    return pass_at_k(PassAtKInput{n, c, k});
}

} // namespace veriforge
