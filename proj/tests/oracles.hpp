#pragma once

// Test-side reference routines, kept independent of the library's
// computational paths: a dense Jacobi eigensolver, a separately coded
// Sturm bisection, and frozen 40-digit reference values.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

// Reference values computed with 40-digit interval bisection on the
// sine-side tridiagonal family at truncation 40.
inline constexpr double kB2At5 = 2.099460445486665364;
inline constexpr double kB2At8 = -0.3893617701820677698;
inline constexpr double kB2At12 = -4.563539928152875039;
inline constexpr double kQstar = 8.6367424353350046567;

// Dense symmetric Jacobi eigensolver; returns all eigenvalues, unsorted.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::abs(a[p * n + q]);
        if (off == 0.0) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double theta = 0.5 * (a[q * n + q] - a[p * n + p]) / apq;
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int i = 0; i < n; ++i) {
                    const double aip = a[i * n + p], aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    const double apj = a[p * n + j], aqj = a[q * n + j];
                    a[p * n + j] = c * apj - s * aqj;
                    a[q * n + j] = s * apj + c * aqj;
                }
            }
        }
    }
    std::vector<double> evals(n);
    for (int i = 0; i < n; ++i) evals[i] = a[i * n + i];
    return evals;
}

// Smallest eigenvalue of the sine-side tridiagonal at truncation m,
// through the dense route.
inline double b2_dense(double q, int m) {
    std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) {
        a[i * m + i] = 4.0 * (i + 1.0) * (i + 1.0);
        if (i + 1 < m) {
            a[i * m + i + 1] = q;
            a[(i + 1) * m + i] = q;
        }
    }
    const std::vector<double> evals = jacobi_eigenvalues(std::move(a), m);
    double smallest = evals.front();
    for (double e : evals) smallest = std::min(smallest, e);
    return smallest;
}

// Independent Sturm bisection, written in the characteristic-polynomial
// ratio form rather than the LDL^T pivot form used by the library.
inline double b2_bisect(double q, int m, double tol = 1e-14) {
    const double q2 = q * q;
    auto eigs_below = [&](double x) {
        int count = 0;
        double ratio = 4.0 - x;  // p_1 / p_0
        if (ratio < 0.0) ++count;
        for (int i = 2; i <= m; ++i) {
            if (ratio == 0.0) ratio = 1e-300;
            ratio = (4.0 * i * i - x) - q2 / ratio;
            if (ratio < 0.0) ++count;
        }
        return count;
    };
    double lo = -4.0 * std::abs(q) - 8.0;
    double hi = 4.0 * static_cast<double>(m) * m + 2.0 * std::abs(q) + 8.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (eigs_below(mid) >= 1 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// Pure bisection for the level b2(q) = -1 on [7, 9], no secant steps.
inline double qstar_bisect(int m, double tol = 1e-13) {
    double lo = 7.0, hi = 9.0;
    const double flo = b2_bisect(lo, m) + 1.0;
    if (!(flo > 0.0)) throw std::runtime_error("oracle_qstar: unexpected sign at q=7");
    if (!(b2_bisect(hi, m) + 1.0 < 0.0)) throw std::runtime_error("oracle_qstar: unexpected sign at q=9");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        ((b2_bisect(mid, m) + 1.0 > 0.0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracle
