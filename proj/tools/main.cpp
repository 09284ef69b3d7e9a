// divkit command-line frontend.
//
// One subcommand per computation; everything is flag-driven and
// deterministic, so identical invocations produce byte-identical output.
// Exit codes: 0 success, 1 computation error, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "divkit/arith.hpp"
#include "divkit/convolution.hpp"
#include "divkit/experiments.hpp"
#include "divkit/laurent.hpp"
#include "divkit/numeric.hpp"
#include "divkit/report.hpp"
#include "divkit/singular.hpp"
#include "divkit/verify.hpp"

namespace {

using namespace divkit;

// A single output row of named values, rendered to any of the three
// formats.  Each cell carries both its plain text and its JSON token
// (numbers bare, strings quoted: u128 counts exceed double precision and
// are serialized as JSON strings).
struct Cell {
    std::string name;
    std::string text;
    std::string json;
};

Cell num_cell(const std::string& name, double v) { return {name, fmt17(v), json_num(v)}; }
Cell int_cell(const std::string& name, u64 v) { return {name, fmt_u64(v), fmt_u64(v)}; }
Cell big_cell(const std::string& name, u128 v) {
    const std::string s = u128_to_string(v);
    return {name, s, "\"" + s + "\""};
}

std::string render_cells(const std::vector<std::vector<Cell>>& rows, OutputFormat fmt,
                         const std::string& comment) {
    std::string out;
    switch (fmt) {
    case OutputFormat::csv:
        for (std::size_t i = 0; i < rows[0].size(); ++i) {
            if (i) out += ", ";
            out += rows[0][i].name;
        }
        out += '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ", ";
                out += row[i].text;
            }
            out += '\n';
        }
        break;
    case OutputFormat::json:
        out += "{\n  \"config\": {" + comment + "},\n  \"rows\": [\n";
        for (std::size_t r = 0; r < rows.size(); ++r) {
            out += "    {";
            for (std::size_t i = 0; i < rows[r].size(); ++i) {
                if (i) out += ", ";
                out += "\"" + rows[r][i].name + "\": " + rows[r][i].json;
            }
            out += (r + 1 < rows.size()) ? "},\n" : "}\n";
        }
        out += "  ]\n}\n";
        break;
    case OutputFormat::gnuplot:
        out += "# ";
        for (std::size_t i = 0; i < rows[0].size(); ++i) {
            if (i) out += ' ';
            out += rows[0][i].name;
        }
        out += '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ' ';
                out += row[i].text;
            }
            out += '\n';
        }
        break;
    }
    return out;
}

// Key-value pairs for the JSON "config" echo of scalar subcommands.
std::string kv(const std::string& key, const std::string& tok) {
    return "\"" + key + "\": " + tok;
}

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file: " << out_path << "\n";
        return 1;
    }
    f << text;
    return f.good() ? 0 : 1;
}

// Coefficient row (highest power of L = log x first) for main-term / qpoly.
std::vector<std::vector<Cell>> poly_cells(const LogPolynomial& p) {
    std::vector<Cell> row;
    for (std::size_t i = p.a.size(); i-- > 0;)
        row.push_back(num_cell("L^" + std::to_string(i), p.a[i]));
    return {row};
}

int usage_error(const std::string& msg) {
    std::cerr << "usage error: " << msg << "\n";
    return 2;
}

struct CommonOpts {
    std::string format = "csv";
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--format", c.format, "output format: csv, json, gnuplot")
        ->check(CLI::IsMember({"csv", "json", "gnuplot"}));
    cmd->add_option("--out", c.out_path, "write output to this file instead of stdout");
}

SingularSeriesConfig make_singular_config(u64 q_max, int trunc, const std::string& tail_mode) {
    SingularSeriesConfig cfg;
    cfg.q_max = q_max;
    cfg.local_trunc = trunc;
    cfg.tail_mode = tail_mode == "crude" ? TailEstimateMode::crude : TailEstimateMode::gcd_weighted;
    return cfg;
}

std::string singular_config_echo(u32 k, const SingularSeriesConfig& cfg) {
    return kv("k", fmt_u64(k)) + ", " + kv("q_max", fmt_u64(cfg.q_max)) + ", " +
           kv("local_trunc", std::to_string(cfg.local_trunc)) + ", " +
           kv("tail_mode", cfg.tail_mode == TailEstimateMode::crude ? "\"crude\"" : "\"gcd_weighted\"");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"divkit: additive divisor correlations, singular series, and exponent scans"};
    app.require_subcommand(1);
    // Several subcommands take a shift flag spelled --h, so the automatic
    // -h/--help short form must not claim that name.
    app.set_help_flag("--help", "print help and exit");

    // --- dk ---------------------------------------------------------------
    auto* dk_cmd = app.add_subcommand("dk", "d_k(n) at a point or over a range");
    u32 dk_k = 2;
    u64 dk_n = 0, dk_lo = 0, dk_hi = 0;
    CommonOpts dk_c;
    dk_cmd->add_option("--k", dk_k, "number of factors k")->required()->check(CLI::Range(1, 8));
    auto* dk_n_opt = dk_cmd->add_option("--n", dk_n, "single evaluation point");
    auto* dk_lo_opt = dk_cmd->add_option("--lo", dk_lo, "table start (with --hi)");
    dk_cmd->add_option("--hi", dk_hi, "table end (with --lo)");
    add_common(dk_cmd, dk_c);

    // --- main-term ----------------------------------------------------------
    auto* mt_cmd = app.add_subcommand("main-term", "coefficients of the main-term polynomial p_{k-1}");
    u32 mt_k = 2;
    CommonOpts mt_c;
    mt_cmd->add_option("--k", mt_k, "number of factors k")->required()->check(CLI::Range(1, 8));
    add_common(mt_cmd, mt_c);

    // --- ramanujan ----------------------------------------------------------
    auto* ram_cmd = app.add_subcommand("ramanujan", "Ramanujan sum c_q(h)");
    u64 ram_q = 1, ram_h = 1;
    CommonOpts ram_c;
    ram_cmd->add_option("--q", ram_q, "modulus q >= 1")->required()->check(CLI::PositiveNumber);
    ram_cmd->add_option("--h", ram_h, "shift h >= 1")->required()->check(CLI::PositiveNumber);
    add_common(ram_cmd, ram_c);

    // --- qpoly ----------------------------------------------------------------
    auto* qp_cmd = app.add_subcommand("qpoly", "coefficients of Q_k(x, q) as a polynomial in log x");
    u64 qp_q = 1;
    u32 qp_k = 2;
    CommonOpts qp_c;
    qp_cmd->add_option("--q", qp_q, "modulus q >= 1")->required()->check(CLI::PositiveNumber);
    qp_cmd->add_option("--k", qp_k, "number of factors k")->required()->check(CLI::Range(1, 8));
    add_common(qp_cmd, qp_c);

    // --- singular ---------------------------------------------------------
    auto* sg_cmd = app.add_subcommand("singular", "truncated singular series S_k(x, h)");
    double sg_x = 0.0;
    u64 sg_h = 1, sg_qmax = 1000;
    u32 sg_k = 2;
    int sg_trunc = -1;
    std::string sg_tail = "gcd_weighted";
    CommonOpts sg_c;
    sg_cmd->add_option("--x", sg_x, "evaluation point x >= 1")->required();
    sg_cmd->add_option("--h", sg_h, "shift h >= 1")->required()->check(CLI::PositiveNumber);
    sg_cmd->add_option("--k", sg_k, "number of factors k")->required()->check(CLI::Range(1, 8));
    sg_cmd->add_option("--qmax", sg_qmax, "truncation point of the q-sum")->check(CLI::PositiveNumber);
    sg_cmd->add_option("--trunc", sg_trunc, "series truncation order (-1: default)");
    sg_cmd->add_option("--tail", sg_tail, "tail bound mode")->check(CLI::IsMember({"crude", "gcd_weighted"}));
    add_common(sg_cmd, sg_c);

    // --- delta -------------------------------------------------------------
    auto* dl_cmd = app.add_subcommand("delta", "shifted-convolution error Delta_k(N; h)");
    u64 dl_N = 0, dl_h = 1, dl_qmax = 1000;
    u32 dl_k = 2;
    int dl_trunc = -1;
    std::string dl_tail = "gcd_weighted";
    CommonOpts dl_c;
    dl_cmd->add_option("--N", dl_N, "dyadic block start")->required()->check(CLI::PositiveNumber);
    dl_cmd->add_option("--h", dl_h, "shift h >= 1")->required()->check(CLI::PositiveNumber);
    dl_cmd->add_option("--k", dl_k, "number of factors k")->required()->check(CLI::Range(1, 8));
    dl_cmd->add_option("--qmax", dl_qmax, "truncation point of the q-sum")->check(CLI::PositiveNumber);
    dl_cmd->add_option("--trunc", dl_trunc, "series truncation order (-1: default)");
    dl_cmd->add_option("--tail", dl_tail, "tail bound mode")->check(CLI::IsMember({"crude", "gcd_weighted"}));
    add_common(dl_cmd, dl_c);

    // --- avg-delta ----------------------------------------------------------
    auto* ad_cmd = app.add_subcommand("avg-delta", "h-averaged error sum_{h<=H} Delta_k(N; h)");
    u64 ad_N = 0, ad_H = 1, ad_qmax = 1000;
    u32 ad_k = 2;
    int ad_trunc = -1;
    CommonOpts ad_c;
    ad_cmd->add_option("--N", ad_N, "dyadic block start")->required()->check(CLI::PositiveNumber);
    ad_cmd->add_option("--H", ad_H, "averaging length H >= 1")->required()->check(CLI::PositiveNumber);
    ad_cmd->add_option("--k", ad_k, "number of factors k")->required()->check(CLI::Range(1, 8));
    ad_cmd->add_option("--qmax", ad_qmax, "truncation point of the q-sum")->check(CLI::PositiveNumber);
    ad_cmd->add_option("--trunc", ad_trunc, "series truncation order (-1: default)");
    add_common(ad_cmd, ad_c);

    // --- decompose ----------------------------------------------------------
    auto* dc_cmd = app.add_subcommand("decompose", "exact M + R identity check over (N, 2N]");
    u64 dc_N = 0, dc_H = 1;
    u32 dc_k = 2;
    CommonOpts dc_c;
    dc_cmd->add_option("--N", dc_N, "dyadic block start")->required()->check(CLI::PositiveNumber);
    dc_cmd->add_option("--H", dc_H, "window length H >= 0");
    dc_cmd->add_option("--k", dc_k, "number of factors k")->required()->check(CLI::Range(1, 8));
    add_common(dc_cmd, dc_c);

    // --- beta ----------------------------------------------------------------
    auto* bt_cmd = app.add_subcommand("beta", "mean-square exponent estimate beta_k");
    u32 bt_k = 2;
    u64 bt_xmin = 1000, bt_xmax = 0;
    u32 bt_points = 8;
    CommonOpts bt_c;
    bt_cmd->add_option("--k", bt_k, "number of factors k")->required()->check(CLI::Range(1, 8));
    bt_cmd->add_option("--xmin", bt_xmin, "smallest X on the grid (default 1000)");
    bt_cmd->add_option("--xmax", bt_xmax, "largest X on the grid")->required()->check(CLI::PositiveNumber);
    bt_cmd->add_option("--points", bt_points, "geometric grid size (default 8)");
    add_common(bt_cmd, bt_c);

    // --- scan ----------------------------------------------------------------
    auto* sc_cmd = app.add_subcommand("scan", "doubling-grid scan of the averaged error vs envelopes");
    u32 sc_k = 3;
    u64 sc_nmin = 0, sc_nmax = 0, sc_H = 0, sc_qmax = 1000;
    double sc_theta = -1.0, sc_beta = -1.0;
    int sc_trunc = -1, sc_workers = 1;
    CommonOpts sc_c;
    sc_cmd->add_option("--k", sc_k, "number of factors k")->required()->check(CLI::Range(1, 8));
    sc_cmd->add_option("--nmin", sc_nmin, "first N on the doubling grid")->required()->check(CLI::PositiveNumber);
    sc_cmd->add_option("--nmax", sc_nmax, "last N on the doubling grid")->required()->check(CLI::PositiveNumber);
    auto* sc_theta_opt = sc_cmd->add_option("--theta", sc_theta, "window rule H = N^theta, theta in (0, 1]");
    auto* sc_H_opt = sc_cmd->add_option("--H", sc_H, "fixed window rule H >= 1");
    sc_cmd->add_option("--qmax", sc_qmax, "truncation point of the q-sum")->check(CLI::PositiveNumber);
    sc_cmd->add_option("--trunc", sc_trunc, "series truncation order (-1: default)");
    sc_cmd->add_option("--workers", sc_workers, "worker thread count (no effect on output bytes)")
        ->check(CLI::Range(1, 64));
    sc_cmd->add_option("--beta", sc_beta, "override beta_k in the theorem envelope");
    add_common(sc_cmd, sc_c);

    // --- verify ----------------------------------------------------------------
    auto* vf_cmd = app.add_subcommand("verify", "run the oracle and property suite");
    std::string vf_filter;
    bool vf_list = false;
    vf_cmd->add_option("--filter", vf_filter, "run only checks whose name contains this substring");
    vf_cmd->add_flag("--list", vf_list, "list check names and exit");

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->set_help_flag("--help", "print help and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (dk_cmd->parsed()) {
            const bool point = dk_n_opt->count() > 0;
            const bool range = dk_lo_opt->count() > 0;
            if (point == range) return usage_error("dk needs exactly one of --n or --lo/--hi");
            std::vector<std::vector<Cell>> rows;
            if (point) {
                if (dk_n < 1) return usage_error("--n must be >= 1");
                rows.push_back({int_cell("n", dk_n), int_cell("d", d_k_point(dk_n, dk_k))});
            } else {
                if (dk_lo < 1 || dk_hi < dk_lo) return usage_error("need 1 <= --lo <= --hi");
                const DivisorTable t = d_k_table(dk_k, dk_lo, dk_hi);
                for (u64 n = dk_lo; n <= dk_hi; ++n)
                    rows.push_back({int_cell("n", n), int_cell("d", t(n))});
            }
            return emit(render_cells(rows, parse_format(dk_c.format), kv("k", fmt_u64(dk_k))),
                        dk_c.out_path);
        }

        if (mt_cmd->parsed()) {
            const LogPolynomial p = main_term_polynomial(mt_k);
            return emit(render_cells(poly_cells(p), parse_format(mt_c.format), kv("k", fmt_u64(mt_k))),
                        mt_c.out_path);
        }

        if (ram_cmd->parsed()) {
            const i64 c = ramanujan_c(ram_q, ram_h);
            std::vector<std::vector<Cell>> rows{{Cell{"c", std::to_string(c), std::to_string(c)}}};
            return emit(render_cells(rows, parse_format(ram_c.format),
                                     kv("q", fmt_u64(ram_q)) + ", " + kv("h", fmt_u64(ram_h))),
                        ram_c.out_path);
        }

        if (qp_cmd->parsed()) {
            const QPolynomial Q = q_polynomial(qp_q, qp_k);
            return emit(render_cells(poly_cells(Q.poly), parse_format(qp_c.format),
                                     kv("q", fmt_u64(qp_q)) + ", " + kv("k", fmt_u64(qp_k))),
                        qp_c.out_path);
        }

        if (sg_cmd->parsed()) {
            const SingularSeriesConfig cfg = make_singular_config(sg_qmax, sg_trunc, sg_tail);
            const SingularValue v = singular_series(sg_x, sg_h, sg_k, cfg);
            std::vector<std::vector<Cell>> rows{{num_cell("x", sg_x), int_cell("h", sg_h),
                                                 num_cell("value", v.value),
                                                 num_cell("tail_bound", v.tail_bound)}};
            return emit(render_cells(rows, parse_format(sg_c.format), singular_config_echo(sg_k, cfg)),
                        sg_c.out_path);
        }

        if (dl_cmd->parsed()) {
            const SingularSeriesConfig cfg = make_singular_config(dl_qmax, dl_trunc, dl_tail);
            const DivisorTable t = d_k_table(dl_k, 1, 2 * dl_N + dl_h);
            const ShiftedSumResult r = delta_Nh(dl_N, dl_h, dl_k, t, cfg);
            std::vector<std::vector<Cell>> rows{
                {int_cell("N", r.N), int_cell("h", r.h), big_cell("D", r.D_Nh),
                 num_cell("main_integral", r.main_integral), num_cell("delta", r.delta_Nh),
                 num_cell("tail_bound", r.tail_bound)}};
            return emit(render_cells(rows, parse_format(dl_c.format), singular_config_echo(dl_k, cfg)),
                        dl_c.out_path);
        }

        if (ad_cmd->parsed()) {
            SingularSeriesConfig cfg = make_singular_config(ad_qmax, ad_trunc, "gcd_weighted");
            if (ad_H > ad_N) return usage_error("avg-delta needs H <= N");
            const DivisorTable t = d_k_table(ad_k, 1, 2 * ad_N + ad_H);
            const DivisorPrefix pre = build_divisor_prefix(t);
            const u128 exact = averaged_shifted_sum(ad_N, ad_H, ad_k, t, pre);
            const double integral =
                averaged_singular_integral(static_cast<double>(ad_N), ad_H, ad_k, cfg);
            const double delta = u128_to_double(exact) - integral;
            std::vector<std::vector<Cell>> rows{
                {int_cell("N", ad_N), int_cell("H", ad_H), big_cell("D_avg", exact),
                 num_cell("main_integral", integral), num_cell("avg_delta", delta)}};
            return emit(render_cells(rows, parse_format(ad_c.format), singular_config_echo(ad_k, cfg)),
                        ad_c.out_path);
        }

        if (dc_cmd->parsed()) {
            const DivisorTable t = d_k_table(dc_k, 1, 2 * dc_N + dc_H);
            const DecomposeResult r = decompose_check(dc_N, dc_H, dc_k, t);
            std::vector<std::vector<Cell>> rows{
                {int_cell("N", dc_N), int_cell("H", dc_H), num_cell("lhs", r.lhs),
                 num_cell("m_term", r.m_term), num_cell("r_term", r.r_term),
                 num_cell("residual", r.residual),
                 num_cell("relative_residual", r.relative_residual)}};
            return emit(render_cells(rows, parse_format(dc_c.format), kv("k", fmt_u64(dc_k))),
                        dc_c.out_path);
        }

        if (bt_cmd->parsed()) {
            if (bt_xmin < 2 || bt_xmax <= bt_xmin) return usage_error("need 2 <= --xmin < --xmax");
            if (bt_points < 4) return usage_error("--points must be >= 4");
            std::vector<u64> grid;
            const double ratio = static_cast<double>(bt_xmax) / static_cast<double>(bt_xmin);
            for (u32 i = 0; i < bt_points; ++i) {
                const double f = static_cast<double>(i) / static_cast<double>(bt_points - 1);
                const u64 X = static_cast<u64>(std::llround(
                    static_cast<double>(bt_xmin) * std::pow(ratio, f)));
                if (grid.empty() || X > grid.back()) grid.push_back(X);
            }
            if (grid.size() < 4) return usage_error("grid collapsed below 4 distinct points; widen the X range");
            const DivisorTable t = d_k_table(bt_k, 1, grid.back());
            const BetaEstimate est = beta_estimate(bt_k, grid, t);
            const OutputFormat fmt = parse_format(bt_c.format);
            std::string text;
            if (fmt == OutputFormat::csv) text = beta_to_csv(est);
            else if (fmt == OutputFormat::json) text = beta_to_json(est);
            else text = beta_to_gnuplot(est);
            return emit(text, bt_c.out_path);
        }

        if (sc_cmd->parsed()) {
            const bool has_theta = sc_theta_opt->count() > 0;
            const bool has_H = sc_H_opt->count() > 0;
            if (has_theta == has_H) return usage_error("scan needs exactly one of --theta or --H");
            if (has_theta && !(sc_theta > 0.0 && sc_theta <= 1.0))
                return usage_error("--theta must lie in (0, 1]");
            if (has_H && sc_H < 1) return usage_error("--H must be >= 1");
            if (sc_nmin < 2 || sc_nmax < sc_nmin) return usage_error("need 2 <= --nmin <= --nmax");
            std::vector<u64> grid;
            for (u64 N = sc_nmin; N <= sc_nmax; N *= 2) {
                grid.push_back(N);
                if (N > sc_nmax / 2) break; // avoid u64 overflow on the doubling step
            }
            const HRule rule = has_theta ? HRule{HRule::Kind::power, sc_theta}
                                         : HRule{HRule::Kind::fixed, static_cast<double>(sc_H)};
            ScanOptions opt;
            opt.singular = make_singular_config(sc_qmax, sc_trunc, "gcd_weighted");
            opt.workers = sc_workers;
            opt.beta_override = sc_beta;
            const ScanReport rep = theorem_scan(sc_k, grid, rule, opt);
            const OutputFormat fmt = parse_format(sc_c.format);
            std::string text;
            if (fmt == OutputFormat::csv) text = scan_to_csv(rep);
            else if (fmt == OutputFormat::json) text = scan_to_json(rep);
            else text = scan_to_gnuplot(rep);
            return emit(text, sc_c.out_path);
        }

        if (vf_cmd->parsed()) {
            if (vf_list) {
                for (const NamedCheck& c : verification_checks()) std::printf("%s\n", c.name);
                return 0;
            }
            const std::vector<CheckResult> results = run_verification(vf_filter);
            if (results.empty()) {
                std::cerr << "error: no checks match filter '" << vf_filter << "'\n";
                return 1;
            }
            int failures = 0;
            for (const CheckResult& r : results) {
                std::printf("%-4s %-28s %s\n", r.pass ? "ok" : "FAIL", r.name.c_str(),
                            r.detail.c_str());
                if (!r.pass) ++failures;
            }
            std::printf("%zu checks, %d failures\n", results.size(), failures);
            return failures == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    return usage_error("no subcommand given");
}
