// Tests for report emission: 17-significant-digit numeric formatting, the
// three output formats, and lossless JSON round-trips of scan and
// mean-square reports.
#include <catch2/catch_amalgamated.hpp>

#include <divkit/report.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace divkit;

namespace {

ScanReport small_scan() {
    ScanOptions opt;
    opt.singular.q_max = 30;
    return theorem_scan(2, {64, 128, 256, 512}, HRule{HRule::Kind::power, 0.5}, opt);
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("17-digit formatting is value-faithful", "[report]") {
    CHECK(fmt17(0.1) == "0.10000000000000001");
    CHECK(fmt17(1.0) == "1");
    CHECK(fmt17(-2.5) == "-2.5");
    // Round-trip: parsing the printed form recovers the exact double.
    for (double v : {3.141592653589793, 1e-300, 6.02214076e23, -0.0728158454836767}) {
        const double back = std::stod(fmt17(v));
        REQUIRE(back == v);
    }
    CHECK(fmt_u64(18446744073709551615ULL) == "18446744073709551615");
    CHECK(json_num(std::numeric_limits<double>::quiet_NaN()) == "null");
    CHECK(json_num(std::numeric_limits<double>::infinity()) == "null");
    CHECK(json_num(2.0) == "2");
}

TEST_CASE("output format names", "[report]") {
    CHECK(parse_format("csv") == OutputFormat::csv);
    CHECK(parse_format("json") == OutputFormat::json);
    CHECK(parse_format("gnuplot") == OutputFormat::gnuplot);
    CHECK_THROWS_AS(parse_format("xml"), std::domain_error);
    CHECK_THROWS_AS(parse_format(""), std::domain_error);
}

TEST_CASE("scan CSV layout", "[report]") {
    const ScanReport rep = small_scan();
    const std::string csv = scan_to_csv(rep);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == scan_header_fields());
    CHECK(header ==
          "N, H, avg_delta, trivial_envelope, theorem_envelope, ratio_trivial, "
          "ratio_theorem, identity_residual");
    CHECK(count_lines(csv) == rep.rows.size() + 1);
    // First data row starts with the first N.
    std::string row;
    std::getline(in, row);
    CHECK(row.substr(0, 4) == "64, ");
}

TEST_CASE("scan JSON round-trip is byte-stable", "[report]") {
    const ScanReport rep = small_scan();
    const std::string first = scan_to_json(rep);
    const ScanReport parsed = scan_from_json(first);
    const std::string second = scan_to_json(parsed);
    REQUIRE(first == second);

    REQUIRE(parsed.rows.size() == rep.rows.size());
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        REQUIRE(parsed.rows[i].N == rep.rows[i].N);
        REQUIRE(parsed.rows[i].H == rep.rows[i].H);
        REQUIRE(parsed.rows[i].avg_delta == rep.rows[i].avg_delta);
        REQUIRE(parsed.rows[i].identity_residual == rep.rows[i].identity_residual);
    }
    REQUIRE(parsed.config.k == rep.config.k);
    REQUIRE(parsed.config.q_max == rep.config.q_max);
    REQUIRE(parsed.config.rule.kind == rep.config.rule.kind);
    REQUIRE(parsed.config.rule.value == rep.config.rule.value);
    REQUIRE(parsed.config.N_grid == rep.config.N_grid);
    REQUIRE(parsed.fits.size() == rep.fits.size());
    REQUIRE(parsed.fits[0].slope == rep.fits[0].slope);
    CHECK_THROWS(scan_from_json("{")); // malformed input surfaces as an exception
}

TEST_CASE("scan gnuplot layout", "[report]") {
    const ScanReport rep = small_scan();
    const std::string gp = scan_to_gnuplot(rep);
    REQUIRE(gp.size() > 0);
    CHECK(gp[0] == '#');
    // Data lines (non-comment) match the row count.
    std::istringstream in(gp);
    std::string line;
    std::size_t data_lines = 0;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') ++data_lines;
    CHECK(data_lines == rep.rows.size());
}

TEST_CASE("degenerate fit serializes as null and parses as NaN", "[report]") {
    ScanReport rep = small_scan();
    rep.fits[0].degenerate = true;
    rep.fits[0].slope = std::numeric_limits<double>::quiet_NaN();
    rep.fits[0].stderr_slope = std::numeric_limits<double>::quiet_NaN();
    const std::string text = scan_to_json(rep);
    REQUIRE(text.find("null") != std::string::npos);
    const ScanReport parsed = scan_from_json(text);
    REQUIRE(parsed.fits[0].degenerate);
    CHECK(std::isnan(parsed.fits[0].slope));
    CHECK(std::isnan(parsed.fits[0].stderr_slope));
    // Still byte-stable through another cycle.
    CHECK(scan_to_json(parsed) == text);
}

TEST_CASE("mean-square report round-trips in every format", "[report]") {
    const DivisorTable t = d_k_table(2, 1, 2000);
    const BetaEstimate est = beta_estimate(2, {200, 500, 1000, 2000}, t);

    const std::string csv = beta_to_csv(est);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "X, mean_square");
    CHECK(count_lines(csv) == est.X_grid.size() + 1);

    const std::string first = beta_to_json(est);
    const BetaEstimate parsed = beta_from_json(first);
    REQUIRE(beta_to_json(parsed) == first);
    REQUIRE(parsed.k == est.k);
    REQUIRE(parsed.X_grid == est.X_grid);
    REQUIRE(parsed.mean_square == est.mean_square);
    REQUIRE(parsed.degenerate == est.degenerate);
    REQUIRE(parsed.beta == est.beta);

    const std::string gp = beta_to_gnuplot(est);
    CHECK(gp[0] == '#');
}
