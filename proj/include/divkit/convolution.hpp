#pragma once

// Exact summatory objects and their error terms:
//
//   D_k(x)      = sum_{n <= x} d_k(n)                    (exact integers)
//   Delta_k(x)  = D_k(x) - x p_{k-1}(log x)
//   D_k(N,h)    = sum_{N < n <= 2N} d_k(n) d_k(n+h)
//   Delta_k(N;h)= D_k(N,h) - integral_N^{2N} S_k(x,h) dx
//
// plus the h-averaged forms, the M_k + R_k decomposition identity, and the
// mean-square integral of Delta_k used for beta_k estimation.  Integer sums
// accumulate in 128 bits and are converted to floating point only at the
// final subtraction; floating sums go through pairwise accumulation.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "divkit/arith.hpp"
#include "divkit/laurent.hpp"
#include "divkit/numeric.hpp"
#include "divkit/singular.hpp"

namespace divkit {

// Prefix sums P[n] = D_k(n).  Fits u64 for hi <= 1e8, k <= 8 (the largest
// case is D_8(1e8) ~ 1.4e13); overflow is checked anyway.
struct DivisorPrefix {
    u32 k = 0;
    u64 hi = 0;
    std::vector<u64> P; // P[n] = sum_{m <= n} d_k(m); P[0] = 0

    u64 operator()(u64 n) const { return P[n]; }
};

inline DivisorPrefix build_divisor_prefix(const DivisorTable& t) {
    if (t.lo != 1) throw std::domain_error("build_divisor_prefix: table must start at 1");
    DivisorPrefix p;
    p.k = t.k;
    p.hi = t.hi;
    p.P.assign(t.hi + 1, 0);
    for (u64 n = 1; n <= t.hi; ++n)
        p.P[n] = checked_add_u64(p.P[n - 1], t(n), "build_divisor_prefix");
    return p;
}

struct SummatoryPoint {
    u64 x = 0;
    u128 D = 0;       // exact D_k(x)
    double main = 0;  // x * p_{k-1}(log x)
    double delta = 0; // D - main, rounded once
};

inline SummatoryPoint divisor_summatory(u64 x, u32 k, const DivisorTable& table) {
    require_k(k, "divisor_summatory");
    if (table.lo != 1 || x > table.hi || x < 1)
        throw std::domain_error("divisor_summatory: x outside table range");
    u128 D = 0;
    for (u64 n = 1; n <= x; ++n) D += table(n);
    const LogPolynomial p = main_term_polynomial(k);
    const double xd = static_cast<double>(x);
    const double main = xd * p.eval_log(std::log(xd));
    return SummatoryPoint{x, D, main, u128_to_double(D) - main};
}

// D_k(N,h): exact product sum over the window (N, 2N].
inline u128 shifted_convolution(u64 N, u64 h, u32 k, const DivisorTable& table) {
    require_k(k, "shifted_convolution");
    if (N < 1 || h < 1) throw std::domain_error("shifted_convolution: need N, h >= 1");
    if (!table.covers(N + 1, 2 * N + h))
        throw std::domain_error("shifted_convolution: table must cover [N+1, 2N+h]");
    if (table.k != k) throw std::domain_error("shifted_convolution: table built for different k");
    u128 acc = 0;
    for (u64 n = N + 1; n <= 2 * N; ++n)
        acc += static_cast<u128>(table(n)) * table(n + h);
    return acc;
}

struct ShiftedSumResult {
    u64 N = 0, h = 0;
    u32 k = 0;
    u128 D_Nh = 0;            // exact double sum
    double main_integral = 0; // truncated integral of the singular series
    double delta_Nh = 0;      // D_Nh - main_integral
    double tail_bound = 0;    // bound on the discarded q > q_max integral
};

// Delta_k(N;h) = D_k(N,h) - integral_N^{2N} S_k(x,h) dx.  The tail bound of
// the truncated singular series is propagated as (interval length) x
// (density tail at x = 2N), the tail being increasing in x.
inline ShiftedSumResult delta_Nh(u64 N, u64 h, u32 k, const DivisorTable& table,
                                 const SingularSeriesConfig& cfg) {
    const u128 D = shifted_convolution(N, h, k, table);
    const double Nd = static_cast<double>(N);
    const double I = singular_series_integral(Nd, h, k, cfg);
    const double tb = Nd * singular_tail_bound(2.0 * Nd, h, k, cfg);
    return ShiftedSumResult{N, h, k, D, I, u128_to_double(D) - I, tb};
}

// sum_{h <= H} D_k(N,h) rewritten with prefix sums:
//   sum_{N < n <= 2N} d_k(n) * (D_k(n+H) - D_k(n)),
// one O(N) pass instead of O(N H).  Exact in 128 bits.
inline u128 averaged_shifted_sum(u64 N, u64 H, u32 k, const DivisorTable& table,
                                 const DivisorPrefix& prefix) {
    require_k(k, "averaged_shifted_sum");
    if (N < 1 || H < 1) throw std::domain_error("averaged_shifted_sum: need N, H >= 1");
    if (!table.covers(N + 1, 2 * N) || prefix.hi < 2 * N + H)
        throw std::domain_error("averaged_shifted_sum: tables must cover [1, 2N+H]");
    if (table.k != k || prefix.k != k)
        throw std::domain_error("averaged_shifted_sum: tables built for different k");
    u128 acc = 0;
    for (u64 n = N + 1; n <= 2 * N; ++n)
        acc += static_cast<u128>(table(n)) * (prefix(n + H) - prefix(n));
    return acc;
}

// sum_{h <= H} Delta_k(N;h), main part via averaged_singular_integral.
inline double averaged_delta(u64 N, u64 H, u32 k, const DivisorTable& table,
                             const DivisorPrefix& prefix, const SingularSeriesConfig& cfg) {
    const u128 exact = averaged_shifted_sum(N, H, k, table, prefix);
    return u128_to_double(exact) -
           averaged_singular_integral(static_cast<double>(N), H, k, cfg);
}

// Convenience overload that builds the prefix table itself (one-shot use).
inline double averaged_delta(u64 N, u64 H, u32 k, const DivisorTable& table,
                             const SingularSeriesConfig& cfg) {
    const DivisorPrefix prefix = build_divisor_prefix(table);
    return averaged_delta(N, H, k, table, prefix, cfg);
}

struct DecomposeResult {
    double lhs = 0;      // exact sum_{N<n<=2N} d_k(n)(D_k(n+H) - D_k(n)), rounded once
    double m_term = 0;   // M_k(N,H) = sum d_k(n) * window main term at n
    double r_term = 0;   // R_k(N,H) = sum d_k(n) * (Delta_k(n+H) - Delta_k(n))
    double residual = 0; // |m_term + r_term - lhs|, pure floating-point noise
    double relative_residual = 0;
};

// The decomposition identity: since sum_{h<=H} d_k(n+h) = D_k(n+H) - D_k(n)
// exactly, splitting D_k into main term + Delta gives
//   sum d_k(n)(D_k(n+H) - D_k(n)) = M_k(N,H) + R_k(N,H)
// identically; the reported residual measures only rounding.
inline DecomposeResult decompose_check(u64 N, u64 H, u32 k, const DivisorTable& table,
                                       const DivisorPrefix& prefix) {
    require_k(k, "decompose_check");
    if (N < 1) throw std::domain_error("decompose_check: need N >= 1");
    if (!table.covers(N + 1, 2 * N) || prefix.hi < 2 * N + H)
        throw std::domain_error("decompose_check: tables must cover [1, 2N+H]");
    const LogPolynomial p = main_term_polynomial(k);
    const auto delta_at = [&](u64 m) {
        const double md = static_cast<double>(m);
        return static_cast<double>(prefix(m)) - md * p.eval_log(std::log(md));
    };
    u128 exact = 0;
    PairwiseAccumulator m_acc, r_acc;
    for (u64 n = N + 1; n <= 2 * N; ++n) {
        const u64 dn = table(n);
        exact += static_cast<u128>(dn) * (prefix(n + H) - prefix(n));
        const double dnd = static_cast<double>(dn);
        m_acc.push(dnd * window_main_term(static_cast<double>(n), static_cast<double>(H), p));
        r_acc.push(dnd * (delta_at(n + H) - delta_at(n)));
    }
    DecomposeResult r;
    r.lhs = u128_to_double(exact);
    r.m_term = m_acc.total();
    r.r_term = r_acc.total();
    r.residual = std::abs(r.m_term + r.r_term - r.lhs);
    r.relative_residual = r.residual / std::max(1.0, std::abs(r.lhs));
    return r;
}

inline DecomposeResult decompose_check(u64 N, u64 H, u32 k, const DivisorTable& table) {
    const DivisorPrefix prefix = build_divisor_prefix(table);
    return decompose_check(N, H, k, table, prefix);
}

// integral_N^{2N} (Res_{s=1} zeta(s)^k x^{s-1})^2 dx, the main part of the
// h-averaged singular integral.  Deliberately routed through the same
// helper as the per-q singular integrals so q_max = 1 comparisons cancel
// to the last bit.
inline double main_term_square_integral(double N, u32 k) {
    require_k(k, "main_term_square_integral");
    if (!(N >= 2.0)) throw std::domain_error("main_term_square_integral: need N >= 2");
    return log_poly_square_window_integral(main_term_density(k), N, 2.0 * N);
}

// integral_1^X Delta_k(t)^2 dt, piecewise over unit intervals [n, n+1) on
// which Delta_k(t) = D_k(n) - t p_{k-1}(log t) is smooth.  Fixed 4-node
// Gauss-Legendre per interval (no adaptivity noise in exponent fits),
// pairwise accumulation across intervals.
inline double mean_square_delta(u64 X, u32 k, const DivisorTable& table) {
    require_k(k, "mean_square_delta");
    if (table.lo != 1 || X > table.hi || X < 1)
        throw std::domain_error("mean_square_delta: X outside table range");
    const LogPolynomial p = main_term_polynomial(k);
    PairwiseAccumulator acc;
    u64 D = 0;
    for (u64 n = 1; n < X; ++n) {
        D = checked_add_u64(D, table(n), "mean_square_delta");
        const double Dn = static_cast<double>(D);
        acc.push(gauss4(static_cast<double>(n), static_cast<double>(n + 1), [&](double t) {
            const double d = Dn - t * p.eval_log(std::log(t));
            return d * d;
        }));
    }
    return acc.total();
}

// |Delta_k(x) - (1/H) integral_x^{x+H} Delta_k(y) dy| / H: the defect of
// replacing Delta_k by its short average.  Quadrature per unit interval.
inline double averaging_diagnostic(u64 x, u64 H, u32 k, const DivisorTable& table) {
    require_k(k, "averaging_diagnostic");
    if (x < 1 || H < 1) throw std::domain_error("averaging_diagnostic: need x, H >= 1");
    if (table.lo != 1 || x + H > table.hi)
        throw std::domain_error("averaging_diagnostic: need x + H <= table.hi");
    const LogPolynomial p = main_term_polynomial(k);
    u64 D = 0;
    for (u64 n = 1; n <= x; ++n) D = checked_add_u64(D, table(n), "averaging_diagnostic");
    const double xd = static_cast<double>(x);
    const double delta_x = static_cast<double>(D) - xd * p.eval_log(std::log(xd));
    PairwiseAccumulator integral;
    u64 Dn = D;
    for (u64 n = x; n < x + H; ++n) {
        if (n > x) Dn = checked_add_u64(Dn, table(n), "averaging_diagnostic");
        const double Dd = static_cast<double>(Dn);
        integral.push(gauss4(static_cast<double>(n), static_cast<double>(n + 1), [&](double t) {
            return Dd - t * p.eval_log(std::log(t));
        }));
    }
    const double Hd = static_cast<double>(H);
    return std::abs(delta_x - integral.total() / Hd) / Hd;
}

} // namespace divkit
