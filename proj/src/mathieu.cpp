#include "quadop/mathieu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace quadop {

namespace {

// Number of eigenvalues of the tridiagonal strictly below x, via the
// negative-pivot count of the LDL^T factorization of T - xI. Zero pivots
// are nudged negative so eigenvalues exactly at x count as below.
int sturm_count_below(const TridiagonalSpec& t, double x) {
    const double q2 = t.offdiag * t.offdiag;
    int count = 0;
    double pivot = 1.0;
    for (std::size_t i = 0; i < t.diag.size(); ++i) {
        pivot = t.diag[i] - x - (i > 0 ? q2 / pivot : 0.0);
        if (pivot == 0.0) pivot = -std::numeric_limits<double>::min();
        if (pivot < 0.0) ++count;
    }
    return count;
}

// Smallest eigenvalue by bisection inside the Gerschgorin interval.
double smallest_eigenvalue(const TridiagonalSpec& t, double tol) {
    const int m = t.order();
    const double r = std::abs(t.offdiag);
    double lo = t.diag.front() - r;
    double hi = t.diag.front() + r;
    for (int i = 1; i < m; ++i) {
        const double radius = (i == m - 1) ? r : 2.0 * r;
        lo = std::min(lo, t.diag[i] - radius);
        hi = std::max(hi, t.diag[i] + radius);
    }
    const double pad = 1e-6 + 4.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(lo), std::abs(hi));
    lo -= pad;
    hi += pad;

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval at floating-point resolution
        if (sturm_count_below(t, mid) >= 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Inverse iteration for the eigenvector of the isolated eigenvalue lam.
// Gaussian elimination with partial pivoting on the tridiagonal, zero
// pivots guarded; a couple of iterations suffice since the eigenvalues
// of this family are well separated.
std::vector<double> inverse_iteration(const TridiagonalSpec& t, double lam) {
    const int m = t.order();
    const double q = t.offdiag;

    // Band storage of T - lam I after elimination: d (pivot), u1, u2.
    std::vector<double> d(m), u1(m, 0.0), u2(m, 0.0), sub(m, 0.0);
    std::vector<char> swapped(m, 0);

    double norm_scale = 0.0;
    for (int i = 0; i < m; ++i) norm_scale = std::max(norm_scale, std::abs(t.diag[i] - lam));
    norm_scale = std::max(norm_scale, std::abs(q));
    const double pivot_guard = std::numeric_limits<double>::epsilon() * std::max(norm_scale, 1.0);

    auto factor = [&]() {
        for (int i = 0; i < m; ++i) {
            d[i] = t.diag[i] - lam;
            u1[i] = (i + 1 < m) ? q : 0.0;
            u2[i] = 0.0;
            sub[i] = (i + 1 < m) ? q : 0.0;  // sub[i] couples row i+1 to column i
            swapped[i] = 0;
        }
        for (int i = 0; i + 1 < m; ++i) {
            if (std::abs(sub[i]) > std::abs(d[i])) {
                std::swap(d[i], sub[i]);        // row i <-> row i+1, column i
                const double next_d = d[i + 1];
                d[i + 1] = u1[i];
                u1[i] = next_d;
                u2[i] = u1[i + 1];
                u1[i + 1] = 0.0;
                swapped[i] = 1;
            }
            if (d[i] == 0.0) d[i] = pivot_guard;
            const double factor_i = sub[i] / d[i];
            sub[i] = factor_i;  // keep the multiplier for the solve
            d[i + 1] -= factor_i * u1[i];
            u1[i + 1] -= factor_i * u2[i];
        }
        if (d[m - 1] == 0.0) d[m - 1] = pivot_guard;
    };

    auto solve = [&](std::vector<double>& x) {
        for (int i = 0; i + 1 < m; ++i) {
            if (swapped[i]) std::swap(x[i], x[i + 1]);
            x[i + 1] -= sub[i] * x[i];
        }
        x[m - 1] /= d[m - 1];
        if (m >= 2) x[m - 2] = (x[m - 2] - u1[m - 2] * x[m - 1]) / d[m - 2];
        for (int i = m - 3; i >= 0; --i) {
            x[i] = (x[i] - u1[i] * x[i + 1] - u2[i] * x[i + 2]) / d[i];
        }
    };

    factor();
    std::vector<double> x(m, 1.0 / std::sqrt(static_cast<double>(m)));
    for (int iter = 0; iter < 3; ++iter) {
        solve(x);
        double nrm = 0.0;
        for (double v : x) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (!(nrm > 0.0) || !std::isfinite(nrm)) {
            throw std::runtime_error("inverse iteration failed to converge");
        }
        for (double& v : x) v /= nrm;
    }
    return x;
}

struct Se2Solution {
    double b2 = 0.0;
    std::vector<double> coeffs;
};

// Rayleigh quotient c^T T c of a unit vector; for the inverse-iteration
// eigenvector this polishes the bisection eigenvalue to machine precision
// (and to exactly 4 at q = 0, where the eigenvector is e_1).
double rayleigh_quotient(const TridiagonalSpec& t, const std::vector<double>& c) {
    const int m = t.order();
    double rho = 0.0;
    for (int i = 0; i < m; ++i) {
        double ti = t.diag[i] * c[i];
        if (i > 0) ti += t.offdiag * c[i - 1];
        if (i + 1 < m) ti += t.offdiag * c[i + 1];
        rho += c[i] * ti;
    }
    return rho;
}

// Eigen-solve with the truncation-doubling policy: the tail coefficient
// of the normalized eigenvector must fall below kTailThreshold.
Se2Solution solve_se2(double q, int truncation, double tol) {
    if (!std::isfinite(q)) throw std::invalid_argument("mathieu: q must be finite");
    if (truncation < 8) throw std::invalid_argument("mathieu: truncation must be >= 8");
    if (!(tol > 0.0)) throw std::invalid_argument("mathieu: tol must be positive");

    int m = std::min(truncation, kMaxTruncation);
    while (true) {
        const TridiagonalSpec t = TridiagonalSpec::for_parameter(q, m);
        Se2Solution s;
        const double lam = smallest_eigenvalue(t, tol);
        s.coeffs = inverse_iteration(t, lam);
        if (s.coeffs.front() < 0.0) {
            for (double& c : s.coeffs) c = -c;
        }
        s.b2 = rayleigh_quotient(t, s.coeffs);
        if (std::abs(s.coeffs.back()) <= kTailThreshold) return s;
        if (m >= kMaxTruncation) {
            throw truncation_error("mathieu: truncation " + std::to_string(m) +
                                   " cannot resolve the series tail at q = " + std::to_string(q));
        }
        m = std::min(2 * m, kMaxTruncation);
    }
}

}  // namespace

TridiagonalSpec TridiagonalSpec::for_parameter(double q, int order) {
    if (order < 1) throw std::invalid_argument("TridiagonalSpec: order must be positive");
    TridiagonalSpec t;
    t.diag.resize(order);
    for (int m = 1; m <= order; ++m) t.diag[m - 1] = 4.0 * m * m;
    t.offdiag = q;
    return t;
}

double char_value_b2(double q, int truncation, double tol) {
    return solve_se2(q, truncation, tol).b2;
}

SineSeries se2_coefficients(double q, int truncation, double tol) {
    Se2Solution s = solve_se2(q, truncation, tol);
    SineSeries out;
    out.q = q;
    out.b2 = s.b2;
    out.coeffs = std::move(s.coeffs);
    return out;
}

double se2_eval(const SineSeries& s, double x) {
    double sum = 0.0;
    for (std::size_t m = 1; m <= s.coeffs.size(); ++m) {
        sum += s.coeffs[m - 1] * std::sin(2.0 * static_cast<double>(m) * x);
    }
    return sum;
}

double se2_eval_dd(const SineSeries& s, double x) {
    double sum = 0.0;
    for (std::size_t m = 1; m <= s.coeffs.size(); ++m) {
        const double two_m = 2.0 * static_cast<double>(m);
        sum -= two_m * two_m * s.coeffs[m - 1] * std::sin(two_m * x);
    }
    return sum;
}

double mathieu_ode_residual(const SineSeries& s, double a, double x) {
    return se2_eval_dd(s, x) + (a - 2.0 * s.q * std::cos(2.0 * x)) * se2_eval(s, x);
}

double max_recurrence_residual(const SineSeries& s) {
    const auto& c = s.coeffs;
    if (c.size() < 2) return 0.0;
    double worst = std::abs(s.q * c[1] - (s.b2 - 4.0) * c[0]);
    for (std::size_t m = 2; m + 1 <= c.size(); ++m) {
        const double four_m2 = 4.0 * static_cast<double>(m) * static_cast<double>(m);
        worst = std::max(worst,
                         std::abs(s.q * c[m] - (s.b2 - four_m2) * c[m - 1] + s.q * c[m - 2]));
    }
    return worst;
}

double find_char_level(double bracket_lo, double bracket_hi, double target, double tol,
                       int truncation) {
    if (!(tol > 0.0)) throw std::invalid_argument("find_char_level: tol must be positive");
    if (!(bracket_lo < bracket_hi)) {
        throw std::invalid_argument("find_char_level: bracket_lo must be < bracket_hi");
    }
    const double inner_tol = std::clamp(tol / 16.0, 1e-14, 1e-12);
    auto phi = [&](double q) { return char_value_b2(q, truncation, inner_tol) - target; };

    double a = bracket_lo, b = bracket_hi;
    double fa = phi(a), fb = phi(b);
    if (std::abs(fa) <= tol) return a;
    if (std::abs(fb) <= tol) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        throw std::domain_error("find_char_level: no sign change of b2 - target on the bracket");
    }

    for (int iter = 0; iter < 200; ++iter) {
        // Secant proposal with bisection fallback, forced midpoint every
        // other step to keep the bracket shrinking geometrically.
        double cand = (fb != fa) ? b - fb * (b - a) / (fb - fa) : 0.5 * (a + b);
        const bool inside = cand > a && cand < b;
        if (!inside || (iter % 2 == 1)) cand = 0.5 * (a + b);
        if (cand <= a || cand >= b) break;  // bracket at floating-point resolution

        const double fx = phi(cand);
        if (std::abs(fx) <= tol) return cand;
        if ((fx > 0.0) == (fa > 0.0)) {
            a = cand;
            fa = fx;
        } else {
            b = cand;
            fb = fx;
        }
    }
    throw std::runtime_error("find_char_level: bracket exhausted without meeting tol");
}

double find_qstar(double bracket_lo, double bracket_hi, double tol, int truncation) {
    return find_char_level(bracket_lo, bracket_hi, -1.0, tol, truncation);
}

}  // namespace quadop
