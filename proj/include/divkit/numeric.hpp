#pragma once

// Shared numeric plumbing: wide integers, deterministic float accumulation,
// fixed-node Gauss-Legendre quadrature.

#include <cstdint>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace divkit {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// k is capped at 8 throughout: enough for every supported scan, and it keeps
// the 64-bit overflow analysis of the divisor tables straightforward.
inline constexpr u32 max_k = 8;

inline void require_k(u32 k, const char* where) {
    if (k < 1 || k > max_k)
        throw std::domain_error(std::string(where) + ": k must be in [1, 8]");
}

inline double u128_to_double(u128 v) {
    return static_cast<double>(v);
}

inline std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    return std::string(s.rbegin(), s.rend());
}

inline u64 checked_mul_u64(u64 a, u64 b, const char* what) {
    u64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error(std::string(what) + ": 64-bit overflow");
    return r;
}

inline u64 checked_add_u64(u64 a, u64 b, const char* what) {
    u64 r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error(std::string(what) + ": 64-bit overflow");
    return r;
}

inline u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

// Streaming pairwise (binary-counter) summation.  The rounding error grows
// like O(log n) and the result depends only on the push order, which keeps
// long reductions reproducible.
class PairwiseAccumulator {
public:
    void push(double v) {
        std::size_t level = 0;
        while (level < filled_.size() && filled_[level]) {
            v += slot_[level];
            filled_[level] = false;
            ++level;
        }
        if (level == slot_.size()) {
            slot_.push_back(v);
            filled_.push_back(1);
        } else {
            slot_[level] = v;
            filled_[level] = 1;
        }
    }

    // Fold of all pending levels, low to high.  Cheap enough to snapshot
    // at checkpoints mid-stream.
    double total() const {
        double s = 0.0;
        for (std::size_t i = 0; i < slot_.size(); ++i)
            if (filled_[i]) s += slot_[i];
        return s;
    }

    void reset() {
        slot_.clear();
        filled_.clear();
    }

private:
    std::vector<double> slot_;
    std::vector<unsigned char> filled_;
};

inline double pairwise_sum(const std::vector<double>& v) {
    PairwiseAccumulator acc;
    for (double x : v) acc.push(x);
    return acc.total();
}

// 4-node Gauss-Legendre rule, exact through degree 7.
inline double gauss4(double a, double b, const auto& f) {
    static constexpr double x1 = 0.33998104358485626480;
    static constexpr double x2 = 0.86113631159405257522;
    static constexpr double w1 = 0.65214515486254614263;
    static constexpr double w2 = 0.34785484513745385737;
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    return h * (w1 * (f(c - h * x1) + f(c + h * x1)) +
                w2 * (f(c - h * x2) + f(c + h * x2)));
}

} // namespace divkit
