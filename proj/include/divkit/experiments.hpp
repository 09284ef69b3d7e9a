#pragma once

// Desk-scale empirical program: log-log exponent fits, beta_k estimation
// from mean-square integrals, and grid scans of the h-averaged error term
// against its envelopes
//
//   trivial:  H * N^{1.05}
//   theorem:  H^2 + N^{1 + beta_k}
//
// Asymptotic bounds cannot be verified at finite scale, so scans report
// ratio columns and trend statistics, never pass/fail equalities.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "divkit/arith.hpp"
#include "divkit/convolution.hpp"
#include "divkit/numeric.hpp"
#include "divkit/singular.hpp"

namespace divkit {

// ---------------------------------------------------------------------------
// Ordinary least squares on (log x, log y).
// ---------------------------------------------------------------------------

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0; // 0 for a 2-point (exact) fit
};

inline FitResult fit_exponent(const std::vector<std::pair<double, double>>& pts) {
    const std::size_t n = pts.size();
    if (n < 2) throw std::domain_error("fit_exponent: need at least 2 points");
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(pts[i].first > 0.0) || !(pts[i].second > 0.0))
            throw std::domain_error("fit_exponent: points must be strictly positive");
        lx[i] = std::log(pts[i].first);
        ly[i] = std::log(pts[i].second);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) { mx += lx[i]; my += ly[i]; }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0))
        throw std::runtime_error("fit_exponent: degenerate x values (rank deficient)");
    FitResult f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (n > 2) {
        double sse = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = ly[i] - (f.intercept + f.slope * lx[i]);
            sse += r * r;
        }
        f.stderr_slope = std::sqrt(sse / static_cast<double>(n - 2) / sxx);
    }
    return f;
}

// ---------------------------------------------------------------------------
// beta_k estimation from the mean square of Delta_k.
// ---------------------------------------------------------------------------

// Envelope exponents: beta_3 = 1/3, beta_4 = 3/8, beta_5 = 9/20 and
// beta_6 = 1/2 are the values the corollary exponents 1 + beta_k are built
// from; beta_2 = 1/4 is the classical divisor-problem value.  k = 1 gets 0
// and k >= 7 conservatively reuses 1/2.
inline double beta_default(u32 k) {
    switch (k) {
        case 1: return 0.0;
        case 2: return 0.25;
        case 3: return 1.0 / 3.0;
        case 4: return 0.375;
        case 5: return 0.45;
        case 6: return 0.5;
        default: return 0.5;
    }
}

struct BetaEstimate {
    u32 k = 0;
    std::vector<u64> X_grid;
    std::vector<double> mean_square;
    bool degenerate = false; // set when some mean square is nonpositive
    double exponent = 0.0;   // fitted e with mean_square ~ X^e
    double beta = 0.0;       // (e - 1) / 2
    double stderr_slope = 0.0;
};

// One pass over [1, max X): the mean-square accumulator is snapshotted at
// each grid point, giving values bit-identical to separate
// mean_square_delta calls at a fraction of the cost.
inline BetaEstimate beta_estimate(u32 k, const std::vector<u64>& X_grid,
                                  const DivisorTable& table) {
    require_k(k, "beta_estimate");
    if (X_grid.size() < 4)
        throw std::domain_error("beta_estimate: need at least 4 grid points");
    for (std::size_t i = 0; i + 1 < X_grid.size(); ++i)
        if (X_grid[i] >= X_grid[i + 1])
            throw std::domain_error("beta_estimate: X grid must be strictly increasing");
    if (X_grid.front() < 1 || table.lo != 1 || X_grid.back() > table.hi)
        throw std::domain_error("beta_estimate: X grid outside table range");

    BetaEstimate est;
    est.k = k;
    est.X_grid = X_grid;
    est.mean_square.assign(X_grid.size(), 0.0);

    const LogPolynomial p = main_term_polynomial(k);
    PairwiseAccumulator acc;
    u64 D = 0;
    std::size_t idx = 0;
    while (idx < X_grid.size() && X_grid[idx] == 1) est.mean_square[idx++] = 0.0;
    for (u64 n = 1; n < X_grid.back(); ++n) {
        D = checked_add_u64(D, table(n), "beta_estimate");
        const double Dn = static_cast<double>(D);
        acc.push(gauss4(static_cast<double>(n), static_cast<double>(n + 1), [&](double t) {
            const double d = Dn - t * p.eval_log(std::log(t));
            return d * d;
        }));
        while (idx < X_grid.size() && n + 1 == X_grid[idx])
            est.mean_square[idx++] = acc.total();
    }

    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < X_grid.size(); ++i) {
        if (!(est.mean_square[i] > 0.0)) {
            est.degenerate = true;
            est.exponent = est.beta = est.stderr_slope =
                std::numeric_limits<double>::quiet_NaN();
            return est;
        }
        pts.emplace_back(static_cast<double>(X_grid[i]), est.mean_square[i]);
    }
    const FitResult f = fit_exponent(pts);
    est.exponent = f.slope;
    est.beta = (f.slope - 1.0) / 2.0;
    est.stderr_slope = f.stderr_slope;
    return est;
}

// ---------------------------------------------------------------------------
// Theorem-scale grid scans.
// ---------------------------------------------------------------------------

struct HRule {
    enum class Kind { fixed, power } kind = Kind::power;
    double value = 0.5; // fixed H (>= 1) or the exponent theta in H = N^theta

    u64 apply(u64 N) const {
        double H = kind == Kind::fixed
                       ? value
                       : std::floor(std::pow(static_cast<double>(N), value));
        if (H < 1.0) H = 1.0;
        return static_cast<u64>(H);
    }

    std::string describe() const {
        char buf[64];
        if (kind == Kind::fixed)
            std::snprintf(buf, sizeof buf, "H=%.17g", value);
        else
            std::snprintf(buf, sizeof buf, "theta=%.17g", value);
        return buf;
    }
};

struct ScanRow {
    u64 N = 0, H = 0;
    double avg_delta = 0.0;
    double trivial_envelope = 0.0; // H * N^{1.05}
    double theorem_envelope = 0.0; // H^2 + N^{1+beta_k}
    double ratio_trivial = 0.0;    // |avg_delta| / trivial_envelope
    double ratio_theorem = 0.0;    // |avg_delta| / theorem_envelope
    double identity_residual = 0.0; // relative residual of the (M+R) identity
};

struct SlopeFit {
    std::string rule;
    bool degenerate = false; // too few positive |avg_delta| points to fit
    double slope = 0.0;
    double stderr_slope = 0.0;
};

// Echo of everything that determines the numbers.  Deliberately excludes
// the worker count: output must be byte-identical across worker counts, and
// workers cannot change any value in the report.
struct ScanConfigEcho {
    u32 k = 0;
    HRule rule;
    std::vector<u64> N_grid;
    u64 q_max = 0;
    int local_trunc = -1;
    double beta_k = 0.0;
};

struct ScanReport {
    ScanConfigEcho config;
    std::vector<ScanRow> rows;
    std::vector<SlopeFit> fits;
};

struct ScanOptions {
    SingularSeriesConfig singular;
    int workers = 1;
    double beta_override = -1.0; // < 0: use beta_default(k)
};

// Grid scan of the h-averaged error term.  The divisor table, its prefix
// sums, and the Q-polynomial cache are built up front and shared immutably;
// grid cells are independent jobs claimed off an atomic counter, each
// writing only its own slot, so the result is identical for any worker
// count and the final assembly is in grid order.
inline ScanReport theorem_scan(u32 k, const std::vector<u64>& N_grid, HRule rule,
                               const ScanOptions& opt = {}) {
    require_k(k, "theorem_scan");
    if (N_grid.empty()) throw std::domain_error("theorem_scan: empty N grid");
    for (std::size_t i = 0; i + 1 < N_grid.size(); ++i)
        if (N_grid[i] >= N_grid[i + 1])
            throw std::domain_error("theorem_scan: N grid must be strictly increasing");
    if (rule.kind == HRule::Kind::fixed && rule.value < 1.0)
        throw std::domain_error("theorem_scan: fixed H must be >= 1");
    if (rule.kind == HRule::Kind::power && !(rule.value > 0.0 && rule.value <= 1.0))
        throw std::domain_error("theorem_scan: theta must lie in (0, 1]");

    const double beta_k = opt.beta_override >= 0.0 ? opt.beta_override : beta_default(k);

    u64 Hmax = 1;
    for (u64 N : N_grid) Hmax = std::max(Hmax, rule.apply(N));
    const u64 hi = 2 * N_grid.back() + Hmax;
    const DivisorTable table = d_k_table(k, 1, hi);
    const DivisorPrefix prefix = build_divisor_prefix(table);
    QPolyCache::instance().prepopulate(opt.singular.q_max, k);

    ScanReport report;
    report.config = ScanConfigEcho{k, rule, N_grid, opt.singular.q_max,
                                   opt.singular.local_trunc, beta_k};
    report.rows.assign(N_grid.size(), ScanRow{});

    const auto compute_row = [&](std::size_t i) {
        const u64 N = N_grid[i];
        const u64 H = rule.apply(N);
        const double Nd = static_cast<double>(N);
        const double Hd = static_cast<double>(H);
        ScanRow row;
        row.N = N;
        row.H = H;
        row.avg_delta = averaged_delta(N, H, k, table, prefix, opt.singular);
        row.trivial_envelope = Hd * std::pow(Nd, 1.05);
        row.theorem_envelope = Hd * Hd + std::pow(Nd, 1.0 + beta_k);
        row.ratio_trivial = std::abs(row.avg_delta) / row.trivial_envelope;
        row.ratio_theorem = std::abs(row.avg_delta) / row.theorem_envelope;
        row.identity_residual =
            decompose_check(N, H, k, table, prefix).relative_residual;
        report.rows[i] = row;
    };

    const int workers = std::max(1, std::min(opt.workers, 64));
    if (workers == 1 || N_grid.size() == 1) {
        for (std::size_t i = 0; i < N_grid.size(); ++i) compute_row(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto drain = [&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= N_grid.size()) break;
                compute_row(i);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
        for (auto& t : pool) t.join();
    }

    SlopeFit fit;
    fit.rule = rule.describe();
    std::vector<std::pair<double, double>> pts;
    for (const ScanRow& row : report.rows)
        if (std::abs(row.avg_delta) > 0.0)
            pts.emplace_back(static_cast<double>(row.N), std::abs(row.avg_delta));
    if (pts.size() >= 2) {
        const FitResult f = fit_exponent(pts);
        fit.slope = f.slope;
        fit.stderr_slope = f.stderr_slope;
    } else {
        fit.degenerate = true;
        fit.slope = fit.stderr_slope = std::numeric_limits<double>::quiet_NaN();
    }
    report.fits.push_back(std::move(fit));
    return report;
}

// Finite-scale look at the h-averaged singular integral against its main
// term: lhs = sum_{h<=H} integral S_k, rhs = H * integral (Res zeta^k x^{s-1})^2.
// The gap is the finite-q_max shadow of the O(N^{1+eps}) term.
struct Eq38Result {
    double lhs = 0.0;
    double rhs_main = 0.0;
    double discrepancy = 0.0;
};

inline Eq38Result eq38_check(u32 k, u64 N, u64 H, const SingularSeriesConfig& cfg) {
    Eq38Result r;
    r.lhs = averaged_singular_integral(static_cast<double>(N), H, k, cfg);
    r.rhs_main = static_cast<double>(H) * main_term_square_integral(static_cast<double>(N), k);
    r.discrepancy = std::abs(r.lhs - r.rhs_main);
    return r;
}

} // namespace divkit
