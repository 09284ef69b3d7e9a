#pragma once

// Truncated Laurent expansions around s = 1 (in the local variable
// t = s - 1), polynomials in log x, and the residue calculus connecting
// them:
//
//   zeta(s)    = 1/t + sum_{n>=0} (-1)^n gamma_n t^n / n!
//   zeta(s)^k  = pole of order k
//   Res_{s=1} zeta(s)^k x^{s-1} / s = P_{k-1}(log x)   (main-term polynomial)
//   Res_{s=1} zeta(s)^k x^{s-1}     = Q(log x)         (main-term density)
//
// A series with pole order m carries coefficients of t^{-m} .. t^{T-m};
// products keep min(T_a, T_b) known coefficient slots, which is exactly
// what survives of the error terms.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "divkit/numeric.hpp"

namespace divkit {

// ---------------------------------------------------------------------------
// Stieltjes constants gamma_0 .. gamma_12 (gamma_0 is Euler-Mascheroni).
// ---------------------------------------------------------------------------

struct StieltjesConstants {
    static const std::vector<double>& standard() {
        static const std::vector<double> g = {
            0.577215664901532860607,    // gamma_0
            -0.0728158454836767248606,  // gamma_1
            -0.00969036319287231848453, // gamma_2
            0.00205383442030334586616,  // gamma_3
            0.00232537006546730005747,  // gamma_4
            0.000793323817301062701753, // gamma_5
            -0.000238769345430199609872, // gamma_6
            -0.000527289567057751046074, // gamma_7
            -0.000352123353803039509602, // gamma_8
            -0.0000343947744180880481779, // gamma_9
            0.000205332814909064794684, // gamma_10
            0.000270184439543903526673, // gamma_11
            0.000167272912105140193354, // gamma_12
        };
        return g;
    }

    static double gamma(std::size_t n) {
        const auto& g = standard();
        if (n >= g.size())
            throw std::out_of_range("StieltjesConstants: only gamma_0..gamma_12 are tabulated");
        return g[n];
    }

    static std::size_t count() { return standard().size(); }
};

inline double euler_gamma() { return StieltjesConstants::gamma(0); }

// ---------------------------------------------------------------------------
// Truncated Laurent series in t = s - 1.
// ---------------------------------------------------------------------------

struct LaurentSeries {
    int pole = 0;          // order of the pole (>= 0); leading exponent is -pole
    std::vector<double> c; // c[i] multiplies t^(i - pole)

    int trunc() const { return static_cast<int>(c.size()) - 1; }
    int top_exponent() const { return trunc() - pole; }

    // Coefficient of t^e.  Exponents below the pole are genuinely zero;
    // exponents above the stored window are unknown, which is a usage bug.
    double coeff(int e) const {
        const int i = e + pole;
        if (i < 0) return 0.0;
        if (i >= static_cast<int>(c.size()))
            throw std::out_of_range("LaurentSeries::coeff: exponent beyond truncation");
        return c[static_cast<std::size_t>(i)];
    }

    static LaurentSeries analytic(std::vector<double> coeffs) {
        if (coeffs.empty()) throw std::invalid_argument("LaurentSeries: empty coefficient list");
        LaurentSeries s;
        s.pole = 0;
        s.c = std::move(coeffs);
        return s;
    }

    static LaurentSeries constant(double v, int T) {
        std::vector<double> c(static_cast<std::size_t>(T) + 1, 0.0);
        c[0] = v;
        return analytic(std::move(c));
    }

    // Representation of s = 1 + t with T known coefficients.
    static LaurentSeries one_plus_t(int T) {
        if (T < 1) throw std::invalid_argument("one_plus_t: need T >= 1");
        std::vector<double> c(static_cast<std::size_t>(T) + 1, 0.0);
        c[0] = 1.0;
        c[1] = 1.0;
        return analytic(std::move(c));
    }

    std::complex<double> eval(std::complex<double> t) const {
        std::complex<double> acc = 0.0;
        // Horner from the top coefficient down, then divide out the pole.
        for (std::size_t i = c.size(); i-- > 0;)
            acc = acc * t + c[i];
        for (int j = 0; j < pole; ++j) acc /= t;
        return acc;
    }
};

inline LaurentSeries series_scale(const LaurentSeries& a, double v) {
    LaurentSeries r = a;
    for (double& x : r.c) x *= v;
    return r;
}

inline LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b) {
    LaurentSeries r;
    r.pole = std::max(a.pole, b.pole);
    const int top = std::min(a.top_exponent(), b.top_exponent());
    const int len = top + r.pole + 1;
    if (len <= 0) throw std::invalid_argument("series_add: no overlapping known range");
    r.c.assign(static_cast<std::size_t>(len), 0.0);
    for (int e = -r.pole; e <= top; ++e)
        r.c[static_cast<std::size_t>(e + r.pole)] = a.coeff(e) + b.coeff(e);
    return r;
}

inline LaurentSeries series_sub(const LaurentSeries& a, const LaurentSeries& b) {
    return series_add(a, series_scale(b, -1.0));
}

inline LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b) {
    LaurentSeries r;
    r.pole = a.pole + b.pole;
    const int T = std::min(a.trunc(), b.trunc());
    r.c.assign(static_cast<std::size_t>(T) + 1, 0.0);
    for (int i = 0; i <= T; ++i) {
        double acc = 0.0;
        for (int j = 0; j <= i; ++j) {
            if (j > a.trunc() || i - j > b.trunc()) continue;
            acc += a.c[static_cast<std::size_t>(j)] * b.c[static_cast<std::size_t>(i - j)];
        }
        r.c[static_cast<std::size_t>(i)] = acc;
    }
    return r;
}

inline LaurentSeries series_pow(const LaurentSeries& a, unsigned k) {
    if (k == 0) return LaurentSeries::constant(1.0, a.trunc());
    LaurentSeries r = a;
    for (unsigned i = 1; i < k; ++i) r = series_mul(r, a);
    return r;
}

// Inverse.  Writing a = t^{-m} g(t) with g(0) != 0, the inverse is the
// analytic series t^{m} / g(t): pole order 0 with m leading zero slots.
inline LaurentSeries series_inv(const LaurentSeries& a) {
    if (a.c.empty() || a.c[0] == 0.0)
        throw std::invalid_argument("series_inv: leading coefficient must be nonzero");
    const int T = a.trunc();
    std::vector<double> h(static_cast<std::size_t>(T) + 1, 0.0);
    h[0] = 1.0 / a.c[0];
    for (int n = 1; n <= T; ++n) {
        double acc = 0.0;
        for (int j = 1; j <= n; ++j)
            acc += a.c[static_cast<std::size_t>(j)] * h[static_cast<std::size_t>(n - j)];
        h[static_cast<std::size_t>(n)] = -acc / a.c[0];
    }
    LaurentSeries r;
    r.pole = 0;
    r.c.assign(static_cast<std::size_t>(a.pole), 0.0);
    r.c.insert(r.c.end(), h.begin(), h.end());
    return r;
}

inline int default_truncation(u32 k) { return static_cast<int>(k) + 4; }

// zeta(1 + t)^k.  The k = 1 expansion is
//   1/t + sum_{n=0}^{T-1} (-1)^n gamma_n t^n / n!
// and higher powers are formed by series multiplication (pole order k).
inline LaurentSeries zeta_series(u32 k, int T = -1) {
    if (k < 1) throw std::domain_error("zeta_series: k must be >= 1");
    if (T < 0) T = default_truncation(k);
    if (T < 1) throw std::domain_error("zeta_series: need T >= 1");
    if (static_cast<std::size_t>(T) > StieltjesConstants::count())
        throw std::domain_error("zeta_series: truncation beyond tabulated Stieltjes constants");
    LaurentSeries z;
    z.pole = 1;
    z.c.assign(static_cast<std::size_t>(T) + 1, 0.0);
    z.c[0] = 1.0;
    double fact = 1.0;
    double sign = 1.0;
    for (int n = 0; n < T; ++n) {
        if (n > 0) { fact *= n; sign = -sign; }
        z.c[static_cast<std::size_t>(n + 1)] = sign * StieltjesConstants::gamma(static_cast<std::size_t>(n)) / fact;
    }
    return k == 1 ? z : series_pow(z, k);
}

// exp(c t) truncated at t^T.
inline LaurentSeries exp_log_series(double c, int T) {
    std::vector<double> e(static_cast<std::size_t>(T) + 1, 0.0);
    e[0] = 1.0;
    for (int n = 1; n <= T; ++n)
        e[static_cast<std::size_t>(n)] = e[static_cast<std::size_t>(n - 1)] * c / n;
    return LaurentSeries::analytic(std::move(e));
}

inline double residue(const LaurentSeries& s) {
    if (s.pole < 1) return 0.0;
    if (s.pole - 1 > s.trunc())
        throw std::domain_error("residue: truncation window does not reach t^-1");
    return s.c[static_cast<std::size_t>(s.pole - 1)];
}

// ---------------------------------------------------------------------------
// Polynomials in y = log x.
// ---------------------------------------------------------------------------

struct LogPolynomial {
    std::vector<double> a; // value = sum_j a[j] * y^j; empty means identically 0

    int degree() const { return static_cast<int>(a.size()) - 1; }

    double eval_log(double y) const {
        double acc = 0.0;
        for (std::size_t i = a.size(); i-- > 0;)
            acc = acc * y + a[i];
        return acc;
    }

    double eval_at(double x) const { return eval_log(std::log(x)); }

    LogPolynomial derivative() const {
        LogPolynomial d;
        if (a.size() <= 1) return d;
        d.a.resize(a.size() - 1);
        for (std::size_t j = 1; j < a.size(); ++j)
            d.a[j - 1] = a[j] * static_cast<double>(j);
        return d;
    }

    // Degree after dropping trailing coefficients that are exactly zero.
    int observed_degree(double tol = 0.0) const {
        for (std::size_t i = a.size(); i-- > 0;)
            if (std::abs(a[i]) > tol) return static_cast<int>(i);
        return -1;
    }
};

inline LogPolynomial poly_add(const LogPolynomial& p, const LogPolynomial& q) {
    LogPolynomial r;
    r.a.assign(std::max(p.a.size(), q.a.size()), 0.0);
    for (std::size_t i = 0; i < p.a.size(); ++i) r.a[i] += p.a[i];
    for (std::size_t i = 0; i < q.a.size(); ++i) r.a[i] += q.a[i];
    return r;
}

inline LogPolynomial poly_scale(const LogPolynomial& p, double v) {
    LogPolynomial r = p;
    for (double& x : r.a) x *= v;
    return r;
}

inline LogPolynomial poly_mul(const LogPolynomial& p, const LogPolynomial& q) {
    LogPolynomial r;
    if (p.a.empty() || q.a.empty()) return r;
    r.a.assign(p.a.size() + q.a.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.a.size(); ++i)
        for (std::size_t j = 0; j < q.a.size(); ++j)
            r.a[i + j] += p.a[i] * q.a[j];
    return r;
}

// Antiderivative trick: d/dx [ x * A(log x) ] = (A + A')(log x), so the A
// with A + A' = P is A = P - P' + P'' - ...  (finite sum).
inline LogPolynomial window_antiderivative(const LogPolynomial& p) {
    LogPolynomial acc = p;
    LogPolynomial d = p.derivative();
    double sign = -1.0;
    while (!d.a.empty()) {
        acc = poly_add(acc, poly_scale(d, sign));
        d = d.derivative();
        sign = -sign;
    }
    return acc;
}

// integral_{x0}^{x1} P(log u) du, in closed form.
inline double log_poly_window_integral(const LogPolynomial& p, double x0, double x1) {
    if (!(x0 > 0.0) || !(x1 > 0.0))
        throw std::invalid_argument("log_poly_window_integral: endpoints must be positive");
    const LogPolynomial A = window_antiderivative(p);
    return x1 * A.eval_log(std::log(x1)) - x0 * A.eval_log(std::log(x0));
}

// ---------------------------------------------------------------------------
// Residues with an x^{s-1} (and optional constant e^{c t}) factor.
//
//   Res_{t=0} S(t) e^{t(y + c)} = sum_{n=0}^{m-1} S_{-1-n} (y + c)^n / n!
//
// expanded as a polynomial in y:
//   a_j = sum_{n=j}^{m-1} S_{-1-n} c^{n-j} / ( j! (n-j)! ).
// ---------------------------------------------------------------------------

inline LogPolynomial residue_log_polynomial(const LaurentSeries& s, double shift) {
    LogPolynomial p;
    const int m = s.pole;
    if (m <= 0) return p;
    p.a.assign(static_cast<std::size_t>(m), 0.0);

    // Factorials up to m-1; pole orders here are single digits.
    std::vector<double> fact(static_cast<std::size_t>(m), 1.0);
    for (int j = 1; j < m; ++j)
        fact[static_cast<std::size_t>(j)] = fact[static_cast<std::size_t>(j - 1)] * j;

    if (shift == 0.0) {
        // Keep this branch a plain reindexing so unshifted residues are
        // bitwise reproducible regardless of how the shifted loop orders
        // its accumulation.
        for (int j = 0; j < m; ++j)
            p.a[static_cast<std::size_t>(j)] =
                s.coeff(-1 - j) / fact[static_cast<std::size_t>(j)];
        return p;
    }

    for (int j = 0; j < m; ++j) {
        double acc = 0.0;
        double cpow = 1.0; // shift^(n-j)
        for (int n = j; n < m; ++n) {
            acc += s.coeff(-1 - n) * cpow /
                   (fact[static_cast<std::size_t>(j)] * fact[static_cast<std::size_t>(n - j)]);
            cpow *= shift;
        }
        p.a[static_cast<std::size_t>(j)] = acc;
    }
    return p;
}

// P_{k-1}: residue of zeta(s)^k x^{s-1} / s at s = 1.  Leading coefficient
// is 1/(k-1)!; for k = 2 this is log x + (2 gamma - 1).
inline LogPolynomial main_term_polynomial(u32 k, int T = -1) {
    require_k(k, "main_term_polynomial");
    if (T < 0) T = default_truncation(k);
    const LaurentSeries zk = zeta_series(k, T);
    const LaurentSeries inv_s = series_inv(LaurentSeries::one_plus_t(T));
    return residue_log_polynomial(series_mul(zk, inv_s), 0.0);
}

// Density polynomial: residue of zeta(s)^k x^{s-1} at s = 1, i.e. the
// derivative (P + P') of the main term x P(log x).
inline LogPolynomial main_term_density(u32 k, int T = -1) {
    require_k(k, "main_term_density");
    if (T < 0) T = default_truncation(k);
    return residue_log_polynomial(zeta_series(k, T), 0.0);
}

// u_k(y) = y p_{k-1}(log y) evaluated between x and x + H: the main-term
// increment over a window of length H.
inline double window_main_term(double x, double H, const LogPolynomial& p) {
    return (x + H) * p.eval_log(std::log(x + H)) - x * p.eval_log(std::log(x));
}

inline double window_main_term(double x, double H, u32 k) {
    return window_main_term(x, H, main_term_polynomial(k));
}

// integral over (x0, x1] of Q(log u)^2 du, in closed form.  Shared by the
// main-term square integral and the per-q singular series integrals so the
// two sides of any q = 1 comparison go through identical arithmetic.
inline double log_poly_square_window_integral(const LogPolynomial& q, double x0, double x1) {
    return log_poly_window_integral(poly_mul(q, q), x0, x1);
}

// ---------------------------------------------------------------------------
// Complex zeta (Borwein's alternating-series algorithm) and a contour
// integral oracle for residues at s = 1.  These exist so the series-side
// results can be checked against quadrature that shares no code with them.
// ---------------------------------------------------------------------------

class ZetaComplex {
public:
    explicit ZetaComplex(int n = 48) : n_(n), d_(static_cast<std::size_t>(n) + 1) {
        // d_k = n * sum_{i<=k} t_i with t_0 = 1/n and
        // t_i / t_{i-1} = 4 (n+i-1)(n-i+1) / (2i (2i-1)).
        double t = 1.0 / n_;
        double s = t;
        d_[0] = n_ * s;
        for (int i = 1; i <= n_; ++i) {
            t *= 4.0 * (n_ + i - 1.0) * (n_ - i + 1.0) / (2.0 * i * (2.0 * i - 1.0));
            s += t;
            d_[static_cast<std::size_t>(i)] = n_ * s;
        }
    }

    // Valid (to essentially full double precision) for Re s >= 1/2, s != 1.
    std::complex<double> operator()(std::complex<double> s) const {
        std::complex<double> eta = 0.0;
        double sign = 1.0;
        for (int k = 0; k < n_; ++k) {
            eta += sign * (d_[static_cast<std::size_t>(k)] - d_[static_cast<std::size_t>(n_)]) *
                   std::exp(-s * std::log(static_cast<double>(k + 1)));
            sign = -sign;
        }
        eta *= -1.0 / d_[static_cast<std::size_t>(n_)];
        const std::complex<double> denom =
            1.0 - std::exp((1.0 - s) * std::log(2.0));
        return eta / denom;
    }

private:
    int n_;
    std::vector<double> d_;
};

// (1/2 pi i) * closed contour integral of f around s = 1 on the circle
// |s - 1| = r, by the trapezoid rule with doubling node counts.  Trapezoid
// on a periodic analytic integrand converges geometrically, so the doubling
// test is a reliable error estimate.
inline double contour_residue_oracle(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    double r = 0.125, double rel_tol = 1e-9, int max_nodes = 1 << 16) {
    const double two_pi = 6.283185307179586476925287;
    double prev = 0.0;
    bool have_prev = false;
    for (int M = 64; M <= max_nodes; M *= 2) {
        std::complex<double> acc = 0.0;
        for (int j = 0; j < M; ++j) {
            const double th = two_pi * (j + 0.5) / M;
            const std::complex<double> e(std::cos(th), std::sin(th));
            acc += f(1.0 + r * e) * e;
        }
        const double v = r * acc.real() / M;
        if (have_prev) {
            const double scale = std::max(std::abs(v), 1e-300);
            if (std::abs(v - prev) <= rel_tol * scale) return v;
        }
        prev = v;
        have_prev = true;
    }
    throw std::runtime_error("contour_residue_oracle: quadrature did not settle");
}

} // namespace divkit
