#pragma once

// Elementary multiplicative machinery: smallest-prime-factor sieve,
// factorization, mu / phi / p-adic valuation, and the generalized divisor
// function d_k together with a segmented table builder.
//
// d_k(n) counts ordered factorizations n = m_1 * ... * m_k.  It is
// multiplicative with d_k(p^v) = C(k+v-1, v) = k(k+1)...(k+v-1)/v!,
// which is all the point evaluator and the sieve below need.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "divkit/numeric.hpp"

namespace divkit {

struct SpfTable {
    u64 limit = 0;
    std::vector<u32> spf; // spf[n] = smallest prime factor of n, 2 <= n <= limit

    bool covers(u64 n) const { return n >= 1 && n <= limit; }
};

// Memory bound: 4 bytes per entry, so 2e8 entries ~ 800 MB; callers beyond
// that should sieve in segments instead.
inline SpfTable sieve_spf(u64 limit) {
    if (limit < 2) throw std::domain_error("sieve_spf: limit must be >= 2");
    if (limit > (u64(1) << 32))
        throw std::domain_error("sieve_spf: limit too large for u32 spf entries");
    SpfTable t;
    t.limit = limit;
    t.spf.assign(limit + 1, 0);
    for (u64 i = 2; i <= limit; ++i) {
        if (t.spf[i] == 0) {
            for (u64 j = i; j <= limit; j += i)
                if (t.spf[j] == 0) t.spf[j] = static_cast<u32>(i);
        }
    }
    return t;
}

struct Factorization {
    // (prime, exponent) pairs in increasing prime order.
    std::vector<std::pair<u64, u32>> pe;

    u32 exponent_of(u64 p) const {
        for (const auto& [q, e] : pe)
            if (q == p) return e;
        return 0;
    }
};

inline Factorization factorize(u64 n, const SpfTable& t) {
    if (n < 1 || !t.covers(n))
        throw std::domain_error("factorize: n outside spf table range");
    Factorization f;
    while (n > 1) {
        u64 p = t.spf[n];
        u32 e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.pe.emplace_back(p, e);
    }
    return f;
}

// Trial division; fine for the modest n this project feeds it.
inline Factorization factor_u64(u64 n) {
    if (n == 0) throw std::domain_error("factor_u64: n must be >= 1");
    Factorization f;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            u32 e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.pe.emplace_back(p, e);
        }
    }
    if (n > 1) f.pe.emplace_back(n, 1);
    return f;
}

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
        if (n % p == 0) return false;
    return true;
}

inline int mobius(u64 n) {
    if (n == 0) throw std::domain_error("mobius: n must be >= 1");
    Factorization f = factor_u64(n);
    for (const auto& [p, e] : f.pe)
        if (e > 1) return 0;
    return (f.pe.size() % 2 == 0) ? 1 : -1;
}

inline u64 euler_phi(u64 n) {
    if (n == 0) throw std::domain_error("euler_phi: n must be >= 1");
    Factorization f = factor_u64(n);
    u64 r = n;
    for (const auto& [p, e] : f.pe) r = r / p * (p - 1);
    return r;
}

// nu_p(n): exponent of p in n (0 when p does not divide n).
inline u32 valuation(u64 n, u64 p) {
    if (n == 0) throw std::domain_error("valuation: n must be >= 1");
    if (!is_prime_u64(p)) throw std::domain_error("valuation: p must be prime");
    u32 v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

// Exact C(n, r) with an overflow check; intermediate products in 128 bits.
inline u64 binomial(u64 n, u64 r) {
    if (r > n) return 0;
    if (r > n - r) r = n - r;
    u128 acc = 1;
    for (u64 i = 1; i <= r; ++i) {
        acc = acc * (n - r + i);
        acc /= i; // exact: acc is C(n-r+i, i) after each step
        if (acc > u128(~u64(0)))
            throw std::overflow_error("binomial: value exceeds 64 bits");
    }
    return static_cast<u64>(acc);
}

// d_k(p^v) = C(k+v-1, v).
inline u64 d_k_prime_power(u32 k, u32 v) {
    return binomial(u64(k) + v - 1, v);
}

inline u64 d_k_point(u64 n, u32 k) {
    require_k(k, "d_k_point");
    if (n == 0) throw std::domain_error("d_k_point: n must be >= 1");
    Factorization f = factor_u64(n);
    u64 r = 1;
    for (const auto& [p, e] : f.pe)
        r = checked_mul_u64(r, d_k_prime_power(k, e), "d_k_point");
    return r;
}

inline std::vector<u32> primes_up_to(u64 limit) {
    std::vector<u32> primes;
    if (limit < 2) return primes;
    std::vector<unsigned char> comp(limit + 1, 0);
    for (u64 i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            primes.push_back(static_cast<u32>(i));
            for (u64 j = i * i; j <= limit; j += i) comp[j] = 1;
        }
    }
    return primes;
}

struct DivisorTable {
    u32 k = 0;
    u64 lo = 0, hi = 0;
    std::vector<u64> values; // values[n - lo] = d_k(n) for lo <= n <= hi

    bool covers(u64 a, u64 b) const { return lo <= a && a <= b && b <= hi; }

    u64 operator()(u64 n) const { return values[n - lo]; }

    u64 at(u64 n) const {
        if (n < lo || n > hi)
            throw std::domain_error("DivisorTable: n outside [lo, hi]");
        return values[n - lo];
    }
};

// Segmented sieve for d_k on [lo, hi].  Within each block we divide every
// prime p <= sqrt(hi) out of a residual copy of n; whatever remains is 1 or
// a single prime > sqrt(hi), contributing a factor d_k(p) = k.  Memory is
// two arrays of block length plus the output table.
inline DivisorTable d_k_table(u32 k, u64 lo, u64 hi, u64 block_len = u64(1) << 20) {
    require_k(k, "d_k_table");
    if (lo < 1 || lo > hi) throw std::domain_error("d_k_table: need 1 <= lo <= hi");
    if (block_len < 1) throw std::domain_error("d_k_table: block_len must be >= 1");
    DivisorTable t;
    t.k = k;
    t.lo = lo;
    t.hi = hi;
    t.values.assign(hi - lo + 1, 0);

    const std::vector<u32> primes = primes_up_to(isqrt_u64(hi));

    // Prime-power values d_k(p^v); v < 64 always since 2^64 > any u64 input.
    std::vector<u64> pp_val(64);
    for (u32 v = 0; v < 64; ++v) pp_val[v] = d_k_prime_power(k, v);

    std::vector<u64> rem(block_len), val(block_len);
    for (u64 blo = lo; blo <= hi; blo += block_len) {
        const u64 end = std::min(hi, blo + block_len - 1);
        const u64 len = end - blo + 1;
        for (u64 i = 0; i < len; ++i) {
            rem[i] = blo + i;
            val[i] = 1;
        }
        for (u32 p : primes) {
            const u64 pp = p;
            for (u64 m = ((blo + pp - 1) / pp) * pp; m <= end; m += pp) {
                u64 idx = m - blo;
                u32 v = 0;
                while (rem[idx] % pp == 0) { rem[idx] /= pp; ++v; }
                if (__builtin_mul_overflow(val[idx], pp_val[v], &val[idx]))
                    throw std::overflow_error(
                        "d_k_table: d_k(" + std::to_string(m) + ") exceeds 64 bits");
            }
        }
        for (u64 i = 0; i < len; ++i) {
            u64 v = val[i];
            if (rem[i] > 1) {
                if (__builtin_mul_overflow(v, u64(k), &v))
                    throw std::overflow_error(
                        "d_k_table: d_k(" + std::to_string(blo + i) + ") exceeds 64 bits");
            }
            t.values[blo - lo + i] = v;
        }
    }
    return t;
}

} // namespace divkit
