#pragma once

// The singular series and its ingredients:
//
//   c_q(h)               Ramanujan sum (Hoelder closed form)
//   F_p(s)               local Euler factor (1 - p^{-s})^k sum_v d_k(p^{v+a}) p^{-vs}
//   Psi_{d,e}(s,q,k)     d mu(d) mu(e) / (phi(d) e) * prod_{p | eq/d} F_p(s)
//   Q_k(x,q)             Res_{s=1} zeta(s)^k sum_{d|q} sum_{e|d} Psi_{d,e} (ex/dq)^{s-1}
//   S_k(x,h)             sum_q c_q(h) q^{-2} Q_k(x,q)^2   (truncated at q_max)
//
// plus closed-form x-integrals of the truncated series over [N, 2N] and the
// h-averaged version.  Q polynomials are cached per (q, k) behind a mutex;
// scans should prepopulate the cache before going parallel.

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "divkit/arith.hpp"
#include "divkit/laurent.hpp"
#include "divkit/numeric.hpp"

namespace divkit {

// ---------------------------------------------------------------------------
// Ramanujan sums.
// ---------------------------------------------------------------------------

// c_q(h) = sum_{d | (h,q)} d mu(q/d), computed via Hoelder's identity
// c_q(h) = mu(q/g) phi(q) / phi(q/g) with g = gcd(q, h).  phi(q/g) divides
// phi(q) exactly (q/g | q), so the division below is integer-exact.
inline i64 ramanujan_c(u64 q, u64 h) {
    if (q < 1) throw std::domain_error("ramanujan_c: q must be >= 1");
    if (h < 1) throw std::domain_error("ramanujan_c: h must be >= 1");
    const u64 g = std::gcd(q, h);
    const u64 m = q / g;
    const int mu = mobius(m);
    if (mu == 0) return 0;
    return static_cast<i64>(mu) * static_cast<i64>(euler_phi(q) / euler_phi(m));
}

// S_q(H) = sum_{h <= H} c_q(h).  Full periods cancel (sum over a period is
// zero for q > 1), so only the partial period H mod q is summed directly.
inline i64 ramanujan_partial_sum(u64 q, u64 H) {
    if (q < 1) throw std::domain_error("ramanujan_partial_sum: q must be >= 1");
    if (q == 1) return static_cast<i64>(H);
    i64 s = 0;
    for (u64 h = 1; h <= H % q; ++h) s += ramanujan_c(q, h);
    return s;
}

// ---------------------------------------------------------------------------
// Local factors and Psi.
// ---------------------------------------------------------------------------

struct LocalFactorParams {
    u64 p;     // prime
    u32 a;     // valuation nu_p(eq/d)
    u32 k;
    int T;     // series truncation order
};

// Taylor expansion at s = 1 of
//   F_p(s) = (1 - z)^k sum_{v >= 0} d_k(p^{v+a}) z^v,   z = p^{-s}.
// The geometric-type identity sum_m d_k(p^m) z^m = (1 - z)^{-k} collapses
// the infinite sum to
//   F_p(s) = z^{-a} [ 1 - (1 - z)^k sum_{m < a} d_k(p^m) z^m ],
// and the bracket is divisible by z^a as a polynomial (its first a
// coefficients cancel against the matching head of (1 - z)^{-k}).  Carrying
// out that division symbolically leaves a degree k-1 polynomial in z with
// small integer coefficients,
//   F_p(s) = sum_{i < k} f_i z^i,
//   f_i = [z^{a+i}] (1 - (1 - z)^k sum_{m < a} d_k(p^m) z^m),
// which we evaluate with z = p^{-1} exp(-t log p) in series arithmetic.
// Expanding z^{-a} as a series instead loses ~ p^a (a log p)^T / T! to
// cancellation (fourteen digits at p = 47, a = 5), so it is avoided.
// The truncated direct sum survives only as a test oracle.
inline LaurentSeries local_factor(const LocalFactorParams& lp) {
    if (!is_prime_u64(lp.p)) throw std::domain_error("local_factor: p must be prime");
    require_k(lp.k, "local_factor");
    const int T = lp.T;
    const u32 k = lp.k, a = lp.a;

    // f_i = [z^{a+i}] of the bracket, exactly in 64-bit integers.  The "1 -"
    // term only touches z^0, which the division by z^a discards for a >= 1.
    std::vector<i64> f(k, 0);
    for (u32 i = 0; i < k; ++i) {
        if (a == 0) { f[i] = (i == 0) ? 1 : 0; continue; }
        i64 c = 0;
        for (u32 m = 0; m < a; ++m) {
            const u32 j = a + i - m; // power of -z drawn from (1 - z)^k
            if (j > k) continue;
            const i64 sign = (j % 2 == 0) ? 1 : -1;
            c += sign * static_cast<i64>(d_k_prime_power(lp.k, m)) *
                 static_cast<i64>(binomial(k, j));
        }
        f[i] = -c;
    }

    const double lp_log = std::log(static_cast<double>(lp.p));
    LaurentSeries acc = LaurentSeries::constant(0.0, T);
    double pi = 1.0; // p^i
    for (u32 i = 0; i < k; ++i) {
        if (f[i] != 0)
            acc = series_add(acc, series_scale(exp_log_series(-static_cast<double>(i) * lp_log, T),
                                               static_cast<double>(f[i]) / pi));
        pi *= static_cast<double>(lp.p);
    }
    return acc;
}

// Psi_{d,e}(s, q, k): scalar prefactor d mu(d) mu(e) / (phi(d) e) times the
// product of local factors over the distinct primes dividing eq/d.
// Analytic at s = 1.
inline LaurentSeries psi_de(u64 d, u64 e, u64 q, u32 k, int T) {
    if (d < 1 || q % d != 0) throw std::domain_error("psi_de: d must divide q");
    if (e < 1 || d % e != 0) throw std::domain_error("psi_de: e must divide d");
    require_k(k, "psi_de");
    const int mu_d = mobius(d), mu_e = mobius(e);
    if (mu_d == 0 || mu_e == 0) return LaurentSeries::constant(0.0, T);
    const double pref = static_cast<double>(d) * mu_d * mu_e /
                        (static_cast<double>(euler_phi(d)) * static_cast<double>(e));
    const u64 m = (q / d) * e;
    LaurentSeries prod = LaurentSeries::constant(1.0, T);
    for (const auto& [p, nu] : factor_u64(m).pe)
        prod = series_mul(prod, local_factor({p, nu, k, T}));
    return series_scale(prod, pref);
}

// ---------------------------------------------------------------------------
// Q_k(x, q).
// ---------------------------------------------------------------------------

struct QPolynomial {
    u64 q = 0;
    u32 k = 0;
    LogPolynomial poly; // coefficients of powers of L = log x

    // The residue of a pole of order k gives degree <= k-1; reported rather
    // than assumed (the choice of truncation never hard-codes a degree).
    int observed_degree() const { return poly.observed_degree(); }
};

// Q_k(x,q) = Res_{s=1} zeta(s)^k sum_{d|q} sum_{e|d} Psi_{d,e} (dx/(eq))^{s-1},
// with (dx/(eq))^{s-1} = exp{t (L + log(d/(eq)))} handled symbolically in L.
//
// The d/e orientation of the power is pinned by the classical k = 2 case:
// with it, Q_2(x,q) = log x + 2*gamma - 2*log q for every q, which summed
// against c_q(h)/q^2 is exactly the proven binary additive divisor density.
// The opposite orientation flips the sign of the q-local constant and
// visibly overshoots/undershoots D_k at desk scale.
inline QPolynomial q_polynomial(u64 q, u32 k, int T = -1) {
    if (q < 1) throw std::domain_error("q_polynomial: q must be >= 1");
    require_k(k, "q_polynomial");
    if (T < 0) T = default_truncation(k);
    const LaurentSeries zk = zeta_series(k, T);
    LogPolynomial acc;
    std::vector<u64> divs;
    for (u64 d = 1; d <= q; ++d)
        if (q % d == 0) divs.push_back(d);
    for (u64 d : divs) {
        if (mobius(d) == 0) continue;
        for (u64 e : divs) {
            if (d % e != 0 || mobius(e) == 0) continue;
            const LaurentSeries psi = psi_de(d, e, q, k, T);
            const double shift =
                std::log(static_cast<double>(d) / (static_cast<double>(e) * static_cast<double>(q)));
            acc = poly_add(acc, residue_log_polynomial(series_mul(zk, psi), shift));
        }
    }
    return QPolynomial{q, k, std::move(acc)};
}

// Process-wide cache of Q polynomials keyed by (q, k).  Reads and inserts
// are serialized by a mutex; node-based map storage keeps returned
// references stable across later insertions.
class QPolyCache {
public:
    static QPolyCache& instance() {
        static QPolyCache c;
        return c;
    }

    const LogPolynomial& get(u64 q, u32 k) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find({q, k});
        if (it == map_.end())
            it = map_.emplace(std::make_pair(q, k), q_polynomial(q, k).poly).first;
        return it->second;
    }

    // Build every polynomial up front so parallel scans hit a read-only map.
    void prepopulate(u64 q_max, u32 k) {
        for (u64 q = 1; q <= q_max; ++q) (void)get(q, k);
    }

private:
    QPolyCache() = default;
    std::mutex mu_;
    std::map<std::pair<u64, u32>, LogPolynomial> map_;
};

// ---------------------------------------------------------------------------
// Truncated singular series and its integrals.
// ---------------------------------------------------------------------------

enum class TailEstimateMode { crude, gcd_weighted };

struct SingularSeriesConfig {
    u64 q_max = 1000;
    int local_trunc = -1; // -1: use default_truncation(k)
    TailEstimateMode tail_mode = TailEstimateMode::gcd_weighted;
};

struct SingularValue {
    double value = 0.0;
    double tail_bound = 0.0;
};

// sum_{m >= m0} m^{-1.8}, bounded by the first term plus the integral tail.
inline double tail_power_sum(double m0) {
    return std::pow(m0, -1.8) + std::pow(m0, -0.8) / 0.8;
}

// Largest |Q_k(x,q)| / (q^eps (log x)^{k-1}) over q <= q_max, with eps = 0.1.
// Doubles as the empirical constant in the truncation tail bound: the bound
// Q_k(x,q) << q^eps (log x)^{k-1} has an ineffective constant, so the
// artifact calibrates one from the range it actually computed.
inline double q_poly_sup_ratio(double x, u32 k, u64 q_max) {
    const double L = std::log(x);
    const double Lpow = std::pow(L, static_cast<double>(k) - 1.0);
    double sup = 0.0;
    for (u64 q = 1; q <= q_max; ++q) {
        const double Qv = QPolyCache::instance().get(q, k).eval_log(L);
        const double ratio = std::abs(Qv) / (std::pow(static_cast<double>(q), 0.1) * Lpow);
        if (ratio > sup) sup = ratio;
    }
    return sup;
}

inline void check_singular_args(double x, u64 h, u32 k, const SingularSeriesConfig& cfg,
                                const char* where) {
    require_k(k, where);
    if (!(x >= 2.0)) throw std::domain_error(std::string(where) + ": need x >= 2");
    if (h < 1) throw std::domain_error(std::string(where) + ": need h >= 1");
    if (cfg.q_max < 1) throw std::domain_error(std::string(where) + ": need q_max >= 1");
}

// Tail of sum_{q > q_max} (h,q)/q^2 * (C q^eps (log x)^{k-1})^2 with eps=0.1:
// either the crude (h,q) <= h bound, or the gcd-weighted split
// sum_{g | h} g^{2 eps - 1} sum_{m > q_max/g} m^{2 eps - 2}.
inline double singular_tail_bound(double x, u64 h, u32 k, const SingularSeriesConfig& cfg) {
    const double L = std::log(x);
    const double Lpow = std::pow(L, static_cast<double>(k) - 1.0);
    const double C = 2.0 * q_poly_sup_ratio(x, k, cfg.q_max);
    const double scale = C * C * Lpow * Lpow;
    if (cfg.tail_mode == TailEstimateMode::crude)
        return scale * static_cast<double>(h) * tail_power_sum(static_cast<double>(cfg.q_max) + 1.0);
    double acc = 0.0;
    for (u64 g = 1; g <= h; ++g) {
        if (h % g != 0) continue;
        const double m0 = static_cast<double>(cfg.q_max / g) + 1.0;
        acc += std::pow(static_cast<double>(g), -0.8) * tail_power_sum(m0);
    }
    return scale * acc;
}

// Truncated singular series sum_{q <= q_max} c_q(h)/q^2 Q_k(x,q)^2 plus a
// defensible bound on the discarded tail.
inline SingularValue singular_series(double x, u64 h, u32 k, const SingularSeriesConfig& cfg) {
    check_singular_args(x, h, k, cfg, "singular_series");
    const double L = std::log(x);
    PairwiseAccumulator acc;
    for (u64 q = 1; q <= cfg.q_max; ++q) {
        const i64 cq = ramanujan_c(q, h);
        if (cq == 0) continue;
        const double Qv = QPolyCache::instance().get(q, k).eval_log(L);
        acc.push(static_cast<double>(cq) /
                 (static_cast<double>(q) * static_cast<double>(q)) * Qv * Qv);
    }
    return SingularValue{acc.total(), singular_tail_bound(x, h, k, cfg)};
}

// integral_N^{2N} of the truncated singular series, in closed form: each
// Q_k(x,q)^2 is a polynomial in log x, integrated by the shared
// log-polynomial antiderivative.
inline double singular_series_integral(double N, u64 h, u32 k, const SingularSeriesConfig& cfg) {
    check_singular_args(N, h, k, cfg, "singular_series_integral");
    PairwiseAccumulator acc;
    for (u64 q = 1; q <= cfg.q_max; ++q) {
        const i64 cq = ramanujan_c(q, h);
        if (cq == 0) continue;
        const double I =
            log_poly_square_window_integral(QPolyCache::instance().get(q, k), N, 2.0 * N);
        acc.push(static_cast<double>(cq) /
                 (static_cast<double>(q) * static_cast<double>(q)) * I);
    }
    return acc.total();
}

// sum_{h <= H} integral_N^{2N} S_k(x,h) dx with the h-sum pushed inside:
// sum_q S_q(H)/q^2 * integral of Q_k(.,q)^2.  The q = 1 term is exactly
// H * integral of Q_k(.,1)^2.
inline double averaged_singular_integral(double N, u64 H, u32 k, const SingularSeriesConfig& cfg) {
    check_singular_args(N, std::max<u64>(H, 1), k, cfg, "averaged_singular_integral");
    if (H < 1 || static_cast<double>(H) > N)
        throw std::domain_error("averaged_singular_integral: need 1 <= H <= N");
    PairwiseAccumulator acc;
    for (u64 q = 1; q <= cfg.q_max; ++q) {
        const i64 S = ramanujan_partial_sum(q, H);
        if (S == 0) continue;
        const double I =
            log_poly_square_window_integral(QPolyCache::instance().get(q, k), N, 2.0 * N);
        acc.push(static_cast<double>(S) /
                 (static_cast<double>(q) * static_cast<double>(q)) * I);
    }
    return acc.total();
}

} // namespace divkit
