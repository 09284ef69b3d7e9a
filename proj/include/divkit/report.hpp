#pragma once

// Serialization of scan and beta reports.
//
// Three consumers, three formats:
//   csv      header row + data rows, ", "-separated (spreadsheets)
//   json     config + rows + fits in one object (scripts; re-parseable)
//   gnuplot  '#'-commented header, whitespace-aligned columns (plot scripts)
//
// Doubles are printed with %.17g throughout, which round-trips exactly, and
// JSON emission is hand-assembled with a fixed key order so that a report
// serializes to identical bytes on every run.  Parsing goes through
// nlohmann::json; non-finite values are emitted as null and parsed back to
// NaN (they only occur in degenerate fits).

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "divkit/experiments.hpp"
#include "divkit/numeric.hpp"

namespace divkit {

// ---------------------------------------------------------------------------
// Formatting primitives.
// ---------------------------------------------------------------------------

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_u64(u64 v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(v));
    return buf;
}

// JSON number token: null for non-finite values.
inline std::string json_num(double v) { return std::isfinite(v) ? fmt17(v) : "null"; }

inline double json_to_double(const nlohmann::json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    return j.get<double>();
}

enum class OutputFormat { csv, json, gnuplot };

inline OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    if (name == "gnuplot") return OutputFormat::gnuplot;
    throw std::domain_error("unknown output format: " + name);
}

// ---------------------------------------------------------------------------
// Scan reports.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string scan_row_fields(const ScanRow& r, const char* sep) {
    std::string s;
    s += fmt_u64(r.N);
    s += sep; s += fmt_u64(r.H);
    s += sep; s += fmt17(r.avg_delta);
    s += sep; s += fmt17(r.trivial_envelope);
    s += sep; s += fmt17(r.theorem_envelope);
    s += sep; s += fmt17(r.ratio_trivial);
    s += sep; s += fmt17(r.ratio_theorem);
    s += sep; s += fmt17(r.identity_residual);
    return s;
}

inline std::string hrule_kind_name(HRule::Kind k) {
    return k == HRule::Kind::fixed ? "fixed" : "power";
}

inline HRule::Kind hrule_kind_from(const std::string& s) {
    if (s == "fixed") return HRule::Kind::fixed;
    if (s == "power") return HRule::Kind::power;
    throw std::domain_error("unknown H-rule kind: " + s);
}

inline std::string json_u64_array(const std::vector<u64>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += fmt_u64(v[i]);
    }
    return s + "]";
}

} // namespace detail

inline const char* scan_header_fields() {
    return "N, H, avg_delta, trivial_envelope, theorem_envelope, "
           "ratio_trivial, ratio_theorem, identity_residual";
}

inline std::string scan_to_csv(const ScanReport& rep) {
    std::string out = scan_header_fields();
    out += '\n';
    for (const ScanRow& r : rep.rows) {
        out += detail::scan_row_fields(r, ", ");
        out += '\n';
    }
    return out;
}

inline std::string scan_to_json(const ScanReport& rep) {
    const ScanConfigEcho& c = rep.config;
    std::string out = "{\n  \"config\": {";
    out += "\"k\": " + fmt_u64(c.k);
    out += ", \"h_rule\": {\"kind\": \"" + detail::hrule_kind_name(c.rule.kind) +
           "\", \"value\": " + json_num(c.rule.value) + "}";
    out += ", \"N_grid\": " + detail::json_u64_array(c.N_grid);
    out += ", \"q_max\": " + fmt_u64(c.q_max);
    out += ", \"local_trunc\": " + std::to_string(c.local_trunc);
    out += ", \"beta_k\": " + json_num(c.beta_k);
    out += "},\n  \"rows\": [\n";
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const ScanRow& r = rep.rows[i];
        out += "    {\"N\": " + fmt_u64(r.N) + ", \"H\": " + fmt_u64(r.H) +
               ", \"avg_delta\": " + json_num(r.avg_delta) +
               ", \"trivial_envelope\": " + json_num(r.trivial_envelope) +
               ", \"theorem_envelope\": " + json_num(r.theorem_envelope) +
               ", \"ratio_trivial\": " + json_num(r.ratio_trivial) +
               ", \"ratio_theorem\": " + json_num(r.ratio_theorem) +
               ", \"identity_residual\": " + json_num(r.identity_residual) + "}";
        out += (i + 1 < rep.rows.size()) ? ",\n" : "\n";
    }
    out += "  ],\n  \"fits\": [\n";
    for (std::size_t i = 0; i < rep.fits.size(); ++i) {
        const SlopeFit& f = rep.fits[i];
        out += "    {\"rule\": \"" + f.rule + "\", \"degenerate\": " +
               (f.degenerate ? "true" : "false") +
               ", \"slope\": " + (f.degenerate ? "null" : json_num(f.slope)) +
               ", \"stderr_slope\": " + (f.degenerate ? "null" : json_num(f.stderr_slope)) + "}";
        out += (i + 1 < rep.fits.size()) ? ",\n" : "\n";
    }
    out += "  ]\n}\n";
    return out;
}

inline std::string scan_to_gnuplot(const ScanReport& rep) {
    const ScanConfigEcho& c = rep.config;
    std::string out;
    out += "# divisor-correlation scan: k=" + fmt_u64(c.k) + " " + c.rule.describe() +
           " q_max=" + fmt_u64(c.q_max) + " local_trunc=" + std::to_string(c.local_trunc) +
           " beta_k=" + fmt17(c.beta_k) + "\n";
    for (const SlopeFit& f : rep.fits) {
        out += "# fit " + f.rule + ": ";
        if (f.degenerate)
            out += "degenerate\n";
        else
            out += "slope=" + fmt17(f.slope) + " stderr=" + fmt17(f.stderr_slope) + "\n";
    }
    out += "# N H avg_delta trivial_envelope theorem_envelope "
           "ratio_trivial ratio_theorem identity_residual\n";
    for (const ScanRow& r : rep.rows) {
        out += detail::scan_row_fields(r, " ");
        out += '\n';
    }
    return out;
}

inline ScanReport scan_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ScanReport rep;
    const auto& c = j.at("config");
    rep.config.k = c.at("k").get<u32>();
    rep.config.rule.kind = detail::hrule_kind_from(c.at("h_rule").at("kind").get<std::string>());
    rep.config.rule.value = json_to_double(c.at("h_rule").at("value"));
    rep.config.N_grid = c.at("N_grid").get<std::vector<u64>>();
    rep.config.q_max = c.at("q_max").get<u64>();
    rep.config.local_trunc = c.at("local_trunc").get<int>();
    rep.config.beta_k = json_to_double(c.at("beta_k"));
    for (const auto& rj : j.at("rows")) {
        ScanRow r;
        r.N = rj.at("N").get<u64>();
        r.H = rj.at("H").get<u64>();
        r.avg_delta = json_to_double(rj.at("avg_delta"));
        r.trivial_envelope = json_to_double(rj.at("trivial_envelope"));
        r.theorem_envelope = json_to_double(rj.at("theorem_envelope"));
        r.ratio_trivial = json_to_double(rj.at("ratio_trivial"));
        r.ratio_theorem = json_to_double(rj.at("ratio_theorem"));
        r.identity_residual = json_to_double(rj.at("identity_residual"));
        rep.rows.push_back(r);
    }
    for (const auto& fj : j.at("fits")) {
        SlopeFit f;
        f.rule = fj.at("rule").get<std::string>();
        f.degenerate = fj.at("degenerate").get<bool>();
        f.slope = json_to_double(fj.at("slope"));
        f.stderr_slope = json_to_double(fj.at("stderr_slope"));
        rep.fits.push_back(f);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Beta estimates.
// ---------------------------------------------------------------------------

inline std::string beta_to_csv(const BetaEstimate& est) {
    std::string out = "X, mean_square\n";
    for (std::size_t i = 0; i < est.X_grid.size(); ++i)
        out += fmt_u64(est.X_grid[i]) + ", " + fmt17(est.mean_square[i]) + "\n";
    return out;
}

inline std::string beta_to_json(const BetaEstimate& est) {
    std::string out = "{\n  \"k\": " + fmt_u64(est.k);
    out += ",\n  \"X_grid\": " + detail::json_u64_array(est.X_grid);
    out += ",\n  \"mean_square\": [";
    for (std::size_t i = 0; i < est.mean_square.size(); ++i) {
        if (i) out += ", ";
        out += json_num(est.mean_square[i]);
    }
    out += "],\n  \"degenerate\": ";
    out += est.degenerate ? "true" : "false";
    out += ",\n  \"exponent\": " + json_num(est.exponent);
    out += ",\n  \"beta\": " + json_num(est.beta);
    out += ",\n  \"stderr_slope\": " + json_num(est.stderr_slope);
    out += "\n}\n";
    return out;
}

inline std::string beta_to_gnuplot(const BetaEstimate& est) {
    std::string out = "# mean-square scan: k=" + fmt_u64(est.k);
    if (est.degenerate)
        out += " (degenerate fit)\n";
    else
        out += " exponent=" + fmt17(est.exponent) + " beta=" + fmt17(est.beta) +
               " stderr=" + fmt17(est.stderr_slope) + "\n";
    out += "# X mean_square\n";
    for (std::size_t i = 0; i < est.X_grid.size(); ++i)
        out += fmt_u64(est.X_grid[i]) + " " + fmt17(est.mean_square[i]) + "\n";
    return out;
}

inline BetaEstimate beta_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    BetaEstimate est;
    est.k = j.at("k").get<u32>();
    est.X_grid = j.at("X_grid").get<std::vector<u64>>();
    for (const auto& v : j.at("mean_square")) est.mean_square.push_back(json_to_double(v));
    est.degenerate = j.at("degenerate").get<bool>();
    est.exponent = json_to_double(j.at("exponent"));
    est.beta = json_to_double(j.at("beta"));
    est.stderr_slope = json_to_double(j.at("stderr_slope"));
    return est;
}

} // namespace divkit
