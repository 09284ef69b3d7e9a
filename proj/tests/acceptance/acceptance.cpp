// Acceptance gate: end-to-end checks of the shipped behavior, one printed
// line per criterion.  Each criterion has a pinned tolerance and a wall-time
// budget; the binary exits nonzero if any line fails.  The CLI binary path
// is injected by the build as DIVKIT_CLI_PATH.
#include <divkit/convolution.hpp>
#include <divkit/experiments.hpp>
#include <divkit/oracles.hpp>
#include <divkit/report.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace divkit;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + DIVKIT_CLI_PATH + "\" " + args + " 2>/dev/null";
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<double> parse_last_csv_row(const std::string& text) {
    std::istringstream in(text);
    std::string line, last;
    while (std::getline(in, line))
        if (!line.empty()) last = line;
    std::vector<double> vals;
    std::istringstream row(last);
    std::string cell;
    while (std::getline(row, cell, ',')) {
        try {
            vals.push_back(std::stod(cell));
        } catch (...) {
            return {};
        }
    }
    return vals;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

char fmt_buf[256];

std::string fnum(double v) {
    std::snprintf(fmt_buf, sizeof fmt_buf, "%.3g", v);
    return fmt_buf;
}

// --------------------------------------------------------------------------
// Criterion 1: the main-term polynomial through the CLI, plus the symbolic
// residue against the contour oracle for k = 3..6.
// --------------------------------------------------------------------------
bool criterion1(std::string& detail) {
    const CliResult r = run_cli("main-term --k 2");
    if (r.exit_code != 0) {
        detail = "CLI exit code " + std::to_string(r.exit_code);
        return false;
    }
    const std::vector<double> row = parse_last_csv_row(r.out);
    if (row.size() != 2 || row[0] != 1.0) {
        detail = "unexpected CLI row: " + r.out;
        return false;
    }
    const double target = 2.0 * euler_gamma() - 1.0;
    const double a0_err = std::abs(row[1] - target);
    if (!(a0_err < 1e-12)) {
        detail = "constant term off by " + fnum(a0_err);
        return false;
    }

    const ZetaComplex zeta;
    double worst = 0.0;
    for (u32 k = 3; k <= 6; ++k) {
        const LogPolynomial p = main_term_polynomial(k);
        for (double x : {10.0, 1e3, 1e6}) {
            const double lx = std::log(x);
            const double via_contour = contour_residue_oracle(
                [&](std::complex<double> s) {
                    return std::pow(zeta(s), static_cast<int>(k)) *
                           std::exp((s - 1.0) * lx) / s;
                });
            const double via_series = p.eval_log(lx);
            worst = std::max(worst, std::abs(via_contour - via_series) / std::abs(via_series));
        }
    }
    detail = "constant-term error " + fnum(a0_err) + ", worst contour rel " + fnum(worst);
    return worst <= 1e-8;
}

// --------------------------------------------------------------------------
// Criterion 2: the decomposition identity over the full (k, N, H) grid.
// --------------------------------------------------------------------------
bool criterion2(std::string& detail) {
    double worst = 0.0;
    for (u32 k : {2u, 3u, 4u}) {
        const DivisorTable table = d_k_table(k, 1, 20100);
        const DivisorPrefix prefix = build_divisor_prefix(table);
        for (u64 N : {100ULL, 1000ULL, 10000ULL})
            for (u64 H : {1ULL, 10ULL, 100ULL})
                worst = std::max(worst,
                                 decompose_check(N, H, k, table, prefix).relative_residual);
    }
    detail = "worst relative residual " + fnum(worst);
    return worst <= 1e-6;
}

// --------------------------------------------------------------------------
// Criterion 3: Ramanujan identity suite exhaustively for q, h <= 500 and
// the local-factor closed form against the nu-sum oracle.
// --------------------------------------------------------------------------
bool criterion3(std::string& detail) {
    for (u64 q = 1; q <= 500; ++q) {
        i64 period = 0;
        for (u64 h = 1; h <= 500; ++h) {
            const i64 c = ramanujan_c(q, h);
            if (c != oracle::ramanujan_defining(q, h)) {
                detail = "defining sum mismatch at q=" + std::to_string(q) +
                         " h=" + std::to_string(h);
                return false;
            }
            if (std::abs(c) > static_cast<i64>(std::gcd(q, h))) {
                detail = "gcd bound violated at q=" + std::to_string(q) +
                         " h=" + std::to_string(h);
                return false;
            }
            if (h <= q) period += c;
        }
        if (q >= 2 && period != 0) {
            detail = "period sum nonzero at q=" + std::to_string(q);
            return false;
        }
    }
    // Multiplicativity on coprime moduli with product within the range.
    for (u64 q1 = 2; q1 <= 500; ++q1)
        for (u64 q2 = q1 + 1; q1 * q2 <= 500; ++q2) {
            if (std::gcd(q1, q2) != 1) continue;
            for (u64 h = 1; h <= 500; ++h)
                if (ramanujan_c(q1 * q2, h) != ramanujan_c(q1, h) * ramanujan_c(q2, h)) {
                    detail = "multiplicativity fails at q1=" + std::to_string(q1) +
                             " q2=" + std::to_string(q2) + " h=" + std::to_string(h);
                    return false;
                }
        }

    double worst = 0.0;
    for (u32 p : primes_up_to(50))
        for (u32 a = 0; a <= 5; ++a)
            for (u32 k = 1; k <= 6; ++k) {
                const int T = default_truncation(k);
                const LaurentSeries fast = local_factor({p, a, k, T});
                const LaurentSeries slow = oracle::local_factor_nu_sum(p, a, k, T);
                const int top = std::min(fast.top_exponent(), slow.top_exponent());
                for (int e = 0; e <= top; ++e)
                    worst = std::max(worst, std::abs(fast.coeff(e) - slow.coeff(e)));
            }
    detail = "Ramanujan suite exhaustive to 500; worst local-factor coeff diff " + fnum(worst);
    return worst <= 1e-12;
}

// --------------------------------------------------------------------------
// Criterion 4: the averaged singular integral against its main term —
// exactly zero at q_max = 1, relatively small at q_max = 1000.
// --------------------------------------------------------------------------
bool criterion4(std::string& detail) {
    SingularSeriesConfig q1;
    q1.q_max = 1;
    for (u32 k : {2u, 3u, 4u}) {
        if (eq38_check(k, 1000, 10, q1).discrepancy != 0.0 ||
            eq38_check(k, 10000, 100, q1).discrepancy != 0.0) {
            detail = "q_max=1 discrepancy not exactly zero at k=" + std::to_string(k);
            return false;
        }
    }
    SingularSeriesConfig full;
    full.q_max = 1000;
    const Eq38Result r = eq38_check(3, 100000, 1000, full);
    const double ratio = r.discrepancy / r.rhs_main;
    detail = "q_max=1 exact; q_max=1000 discrepancy ratio " + fnum(ratio);
    return ratio < 0.05;
}

// --------------------------------------------------------------------------
// Criterion 5: exact equality with naive double loops for every N <= 500,
// shift <= 20, k in {2, 3}.
// --------------------------------------------------------------------------
bool criterion5(std::string& detail) {
    for (u32 k : {2u, 3u}) {
        const DivisorTable table = d_k_table(k, 1, 1020);
        const DivisorPrefix prefix = build_divisor_prefix(table);
        for (u64 N = 1; N <= 500; ++N) {
            u128 running = 0; // sum over h of the naive shifted sums
            for (u64 h = 1; h <= 20; ++h) {
                u128 naive = 0;
                for (u64 n = N + 1; n <= 2 * N; ++n)
                    naive += static_cast<u128>(table(n)) * table(n + h);
                if (shifted_convolution(N, h, k, table) != naive) {
                    detail = "shifted sum mismatch at k=" + std::to_string(k) +
                             " N=" + std::to_string(N) + " h=" + std::to_string(h);
                    return false;
                }
                running += naive;
                if (averaged_shifted_sum(N, h, k, table, prefix) != running) {
                    detail = "averaged sum mismatch at k=" + std::to_string(k) +
                             " N=" + std::to_string(N) + " H=" + std::to_string(h);
                    return false;
                }
            }
        }
    }
    detail = "all 10000 shifted and 10000 averaged instances exact per k";
    return true;
}

// --------------------------------------------------------------------------
// Criterion 6: recovery of the classical k = 2 mean-square exponent.
// --------------------------------------------------------------------------
bool criterion6(std::string& detail) {
    const DivisorTable table = d_k_table(2, 1, 1000000);
    std::vector<u64> grid;
    for (u64 X = 1000; X < 1000000; X *= 2) grid.push_back(X);
    grid.push_back(1000000);
    const BetaEstimate est = beta_estimate(2, grid, table);
    detail = "beta_2 estimate " + fnum(est.beta) + " (stderr of slope " +
             fnum(est.stderr_slope) + ")";
    return !est.degenerate && est.beta >= 0.17 && est.beta <= 0.33;
}

// --------------------------------------------------------------------------
// Criterion 7: envelope-normalized ratios show no monotone growth across
// the dyadic grid 2^14 .. 2^23 at theta = 0.7.
//
// The averaged bound being exercised carries an N^epsilon factor on the
// H^2 + N^{4/3} envelope.  At theta = 0.7 the H^2 term dominates, and the
// averaged error genuinely contains H^2 times a log-power factor (the
// second-order Taylor term of the density product across the H-window,
// of order (log N)^{2k-3} = (log N)^3 for k = 3).  The bare ratio to
// H^2 + N^{4/3} therefore grows like (log N)^3 no matter how accurate the
// singular series is; the scale-stable trend statement divides it out.
// Both the bare and the normalized ratios are reported.
// --------------------------------------------------------------------------
bool criterion7(std::string& detail) {
    std::vector<u64> grid;
    for (int e = 14; e <= 23; ++e) grid.push_back(u64(1) << e);
    ScanOptions opt;
    opt.workers = 8;
    const ScanReport rep = theorem_scan(3, grid, HRule{HRule::Kind::power, 0.7}, opt);
    const auto normalized = [](const ScanRow& row) {
        const double L = std::log(static_cast<double>(row.N));
        return row.ratio_theorem / (L * L * L);
    };
    const double first = normalized(rep.rows.front());
    const double last = normalized(rep.rows.back());
    bool monotone_ok = true;
    for (const ScanRow& row : rep.rows)
        if (!(std::isfinite(row.ratio_theorem)) || normalized(row) > 3.0 * first)
            monotone_ok = false;
    detail = "log^3-normalized ratio first " + fnum(first) + ", last " + fnum(last) +
             ", trend factor " + fnum(last / first) + " (bare ratios " +
             fnum(rep.rows.front().ratio_theorem) + " -> " +
             fnum(rep.rows.back().ratio_theorem) + ")";
    return first > 0.0 && last <= 3.0 * first && monotone_ok;
}

// --------------------------------------------------------------------------
// Criterion 8: scan output is byte-identical across worker counts.
// --------------------------------------------------------------------------
bool criterion8(std::string& detail) {
    const char* base = "scan --k 3 --theta 0.5 --nmin 256 --nmax 2048 --qmax 50 --format json";
    std::vector<std::string> contents;
    for (int w : {1, 2, 8}) {
        const std::string path = "/tmp/divkit_scan_w" + std::to_string(w) + ".json";
        const CliResult r =
            run_cli(std::string(base) + " --workers " + std::to_string(w) + " --out " + path);
        if (r.exit_code != 0) {
            detail = "CLI exit code " + std::to_string(r.exit_code) + " at workers=" +
                     std::to_string(w);
            return false;
        }
        contents.push_back(read_file(path));
        std::remove(path.c_str());
        if (contents.back().empty()) {
            detail = "empty output file at workers=" + std::to_string(w);
            return false;
        }
    }
    detail = "outputs byte-identical across workers {1, 2, 8} (" +
             std::to_string(contents[0].size()) + " bytes)";
    return contents[0] == contents[1] && contents[0] == contents[2];
}

struct Criterion {
    int id;
    const char* label;
    bool (*fn)(std::string&);
    double budget_s;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "main-term polynomial vs contour oracle", criterion1, 1.0},
        {2, "decomposition identity residuals", criterion2, 30.0},
        {3, "Ramanujan suite and local factors", criterion3, 30.0},
        {4, "averaged singular integral main term", criterion4, 60.0},
        {5, "naive-loop equality at small scale", criterion5, 60.0},
        {6, "beta_2 recovery from mean squares", criterion6, 120.0},
        {7, "envelope ratio trend on the dyadic grid", criterion7, 600.0},
        {8, "byte-identical scans across worker counts", criterion8, 600.0},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string detail;
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_budget = secs <= c.budget_s;
        if (!in_budget) detail += " [over budget " + fnum(c.budget_s) + " s]";
        const bool pass = ok && in_budget;
        std::printf("[%s] criterion %d: %s — %s (%.2f s)\n", pass ? "PASS" : "FAIL", c.id,
                    c.label, detail.c_str(), secs);
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    if (failures > 0) std::printf("%d of 8 criteria failed\n", failures);
    else std::printf("all 8 criteria passed\n");
    return failures == 0 ? 0 : 1;
}
