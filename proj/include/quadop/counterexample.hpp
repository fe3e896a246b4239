#pragma once

#include <utility>

#include "quadop/grid.hpp"
#include "quadop/mathieu.hpp"

namespace quadop {

/// Product solution X(x) * cos(y) of the separated system: xpart is the
/// sine series solving the x-equation with characteristic value -1,
/// qsign tags which of +-q* generated it.
struct SeparableSolution {
    SineSeries xpart;
    int ysign = +1;  // +1 selects the cos(y) factor
    int qsign = +1;
};

/// Residual magnitudes over interior nodes plus the norms used to
/// certify that the two solutions are genuinely distinct.
struct ResidualReport {
    double max_abs = 0.0;
    double rms = 0.0;
    double norm_L_u = 0.0;
    double norm_L_v = 0.0;
    double dist_minus = 0.0;  // sup |u - v|
    double dist_plus = 0.0;   // sup |u + v|
    int grid_n = 0;
};

struct VerifyOutcome {
    ResidualReport report;
    bool passed = false;
};

/// Separation threshold certifying "neither u = v nor u = -v".
inline constexpr double kDistinctnessThreshold = 0.05;

/// The coefficient profile p(x) = -2 q cos(2x) of the separated system.
double p_profile(double q, double x);

/// Solves the x-equation at parameter qsign * qstar and checks that the
/// characteristic value is -1 within tol.
SeparableSolution make_separable_solution(double qstar, int truncation, int qsign,
                                          double tol = 1e-8);

/// Samples X(x_i) * cos(y_j) on the grid.
GridFunction2D sample_solution(const SeparableSolution& s, const Grid2D& grid);

/// The annihilating pair u(x,y) = X_+(x) cos y and v(x,y) = X_-(x) cos y,
/// where X_+- solve the x-equation at +-qstar. Both vanish on the
/// boundary to machine precision.
std::pair<GridFunction2D, GridFunction2D> assemble_pair(double qstar, int truncation,
                                                        const Grid2D& grid, double tol = 1e-8);

/// Laplacian of the product solution through the series:
/// (X''(x_i) - X(x_i)) * cos(y_j).
GridFunction2D analytic_laplacian(const SeparableSolution& s, const Grid2D& grid);

/// Scans |u lap_v + v lap_u| over interior nodes. Passes iff the max
/// residual is within tol.
VerifyOutcome verify_bilinear_annihilation(const GridFunction2D& u, const GridFunction2D& v,
                                           const GridFunction2D& lap_u,
                                           const GridFunction2D& lap_v, double tol);

/// Scans |u lap_u - v lap_v| over interior nodes and fills the
/// distinctness norms. Passes iff the max residual is within tol AND
/// min(sup|u-v|, sup|u+v|) >= kDistinctnessThreshold.
VerifyOutcome verify_equal_rhs(const GridFunction2D& u, const GridFunction2D& v,
                               const GridFunction2D& lap_u, const GridFunction2D& lap_v,
                               double tol);

}  // namespace quadop
