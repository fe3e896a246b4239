#pragma once

#include <stdexcept>
#include <vector>

namespace quadop {

/// Truncated even-index sine expansion sum_m coeffs[m-1] * sin(2 m x),
/// tied to its parameter q and characteristic value b2. Normalized so
/// that sum of squared coefficients is 1 and the first coefficient is
/// positive; the tail coefficient is below the truncation threshold.
struct SineSeries {
    double q = 0.0;
    double b2 = 0.0;
    std::vector<double> coeffs;  // coeffs[m-1] is the sin(2mx) coefficient

    int truncation() const { return static_cast<int>(coeffs.size()); }
};

/// Symmetric tridiagonal operator acting on the sine coefficients:
/// diagonal 4m^2 for m = 1..M, constant off-diagonal q.
struct TridiagonalSpec {
    std::vector<double> diag;
    double offdiag = 0.0;

    static TridiagonalSpec for_parameter(double q, int order);
    int order() const { return static_cast<int>(diag.size()); }
};

/// Requested truncation could not resolve the sine-series tail even
/// after doubling up to the hard cap.
class truncation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultTruncation = 48;
inline constexpr int kMaxTruncation = 192;
inline constexpr double kTailThreshold = 1e-13;

/// Characteristic value b2(q): the smallest eigenvalue of the sine-side
/// tridiagonal family, computed by Sturm-count bisection to absolute
/// accuracy tol. Truncation is doubled (up to kMaxTruncation) until the
/// tail coefficient falls below kTailThreshold.
double char_value_b2(double q, int truncation = kDefaultTruncation, double tol = 1e-13);

/// Eigenvector of the tridiagonal family for b2(q), packaged as a
/// normalized SineSeries with positive leading coefficient.
SineSeries se2_coefficients(double q, int truncation = kDefaultTruncation, double tol = 1e-13);

/// sum_m coeffs[m-1] sin(2 m x).
double se2_eval(const SineSeries& s, double x);

/// Termwise second derivative: -sum_m 4 m^2 coeffs[m-1] sin(2 m x).
double se2_eval_dd(const SineSeries& s, double x);

/// z'' + (a - 2 q cos 2x) z evaluated on the series; near zero only when
/// a equals the series' characteristic value.
double mathieu_ode_residual(const SineSeries& s, double a, double x);

/// Largest residual of the three-term coefficient recurrences,
/// |q c[1] - (b2 - 4) c[0]| and |q c[m] - (b2 - 4 m^2) c[m-1] + q c[m-2]|.
double max_recurrence_residual(const SineSeries& s);

/// Root of b2(q) = target inside [bracket_lo, bracket_hi], located by
/// bisection with secant acceleration. Endpoints already within tol of
/// the target are accepted; otherwise a sign change is required.
double find_char_level(double bracket_lo, double bracket_hi, double target, double tol,
                       int truncation = kDefaultTruncation);

/// The parameter q* with b2(q*) = -1, so that the series solves the
/// separated equation with a = -1.
double find_qstar(double bracket_lo = 0.0, double bracket_hi = 20.0, double tol = 1e-10,
                  int truncation = kDefaultTruncation);

}  // namespace quadop
