#include "quadop/counterexample.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace quadop {

namespace {

struct ResidualScan {
    double max_abs = 0.0;
    double rms = 0.0;
};

// Interior scan of |combine(i, j)|; the RMS accumulates in a fixed serial
// order so repeated runs are byte-identical.
template <typename F>
ResidualScan scan_interior(int n, F&& combine) {
    ResidualScan s;
    double sum_sq = 0.0;
    std::size_t count = 0;
    for (int i = 1; i + 1 < n; ++i) {
        for (int j = 1; j + 1 < n; ++j) {
            const double r = combine(i, j);
            s.max_abs = std::max(s.max_abs, std::abs(r));
            sum_sq += r * r;
            ++count;
        }
    }
    s.rms = count > 0 ? std::sqrt(sum_sq / static_cast<double>(count)) : 0.0;
    return s;
}

void check_grids(const GridFunction2D& u, const GridFunction2D& v, const GridFunction2D& lap_u,
                 const GridFunction2D& lap_v) {
    if (!(u.grid() == v.grid()) || !(u.grid() == lap_u.grid()) || !(u.grid() == lap_v.grid())) {
        throw std::invalid_argument("verify: all grid functions must share one grid");
    }
}

ResidualReport base_report(const GridFunction2D& u, const GridFunction2D& v) {
    ResidualReport rep;
    rep.grid_n = u.n();
    rep.norm_L_u = norm_L(u);
    rep.norm_L_v = norm_L(v);
    rep.dist_minus = (u - v).max_abs();
    rep.dist_plus = (u + v).max_abs();
    return rep;
}

}  // namespace

double p_profile(double q, double x) { return -2.0 * q * std::cos(2.0 * x); }

SeparableSolution make_separable_solution(double qstar, int truncation, int qsign, double tol) {
    if (qsign != +1 && qsign != -1) {
        throw std::invalid_argument("make_separable_solution: qsign must be +1 or -1");
    }
    if (!(tol > 0.0)) throw std::invalid_argument("make_separable_solution: tol must be positive");
    SeparableSolution s;
    s.qsign = qsign;
    s.ysign = +1;
    s.xpart = se2_coefficients(qsign * qstar, truncation);
    if (std::abs(s.xpart.b2 + 1.0) > tol) {
        throw std::invalid_argument(
            "make_separable_solution: characteristic value at q = " + std::to_string(qsign * qstar) +
            " is " + std::to_string(s.xpart.b2) + ", not -1 within tolerance");
    }
    return s;
}

GridFunction2D sample_solution(const SeparableSolution& s, const Grid2D& grid) {
    std::vector<double> xvals(grid.n), yvals(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        xvals[i] = se2_eval(s.xpart, grid.nodes[i]);
        yvals[i] = std::cos(grid.nodes[i]);
    }
    GridFunction2D out(grid);
    for (int i = 0; i < grid.n; ++i) {
        for (int j = 0; j < grid.n; ++j) {
            out.at(i, j) = xvals[i] * yvals[j];
        }
    }
    return out;
}

std::pair<GridFunction2D, GridFunction2D> assemble_pair(double qstar, int truncation,
                                                        const Grid2D& grid, double tol) {
    const SeparableSolution sp = make_separable_solution(qstar, truncation, +1, tol);
    const SeparableSolution sm = make_separable_solution(qstar, truncation, -1, tol);
    return {sample_solution(sp, grid), sample_solution(sm, grid)};
}

GridFunction2D analytic_laplacian(const SeparableSolution& s, const Grid2D& grid) {
    std::vector<double> xvals(grid.n), yvals(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        xvals[i] = se2_eval_dd(s.xpart, grid.nodes[i]) - se2_eval(s.xpart, grid.nodes[i]);
        yvals[i] = std::cos(grid.nodes[i]);
    }
    GridFunction2D out(grid);
    for (int i = 0; i < grid.n; ++i) {
        for (int j = 0; j < grid.n; ++j) {
            out.at(i, j) = xvals[i] * yvals[j];
        }
    }
    return out;
}

VerifyOutcome verify_bilinear_annihilation(const GridFunction2D& u, const GridFunction2D& v,
                                           const GridFunction2D& lap_u,
                                           const GridFunction2D& lap_v, double tol) {
    check_grids(u, v, lap_u, lap_v);
    if (!(tol > 0.0)) throw std::invalid_argument("verify: tol must be positive");

    VerifyOutcome out;
    out.report = base_report(u, v);
    const ResidualScan scan = scan_interior(u.n(), [&](int i, int j) {
        return u.at(i, j) * lap_v.at(i, j) + v.at(i, j) * lap_u.at(i, j);
    });
    out.report.max_abs = scan.max_abs;
    out.report.rms = scan.rms;
    out.passed = scan.max_abs <= tol;
    return out;
}

VerifyOutcome verify_equal_rhs(const GridFunction2D& u, const GridFunction2D& v,
                               const GridFunction2D& lap_u, const GridFunction2D& lap_v,
                               double tol) {
    check_grids(u, v, lap_u, lap_v);
    if (!(tol > 0.0)) throw std::invalid_argument("verify: tol must be positive");

    VerifyOutcome out;
    out.report = base_report(u, v);
    const ResidualScan scan = scan_interior(u.n(), [&](int i, int j) {
        return u.at(i, j) * lap_u.at(i, j) - v.at(i, j) * lap_v.at(i, j);
    });
    out.report.max_abs = scan.max_abs;
    out.report.rms = scan.rms;
    out.passed = scan.max_abs <= tol &&
                 std::min(out.report.dist_minus, out.report.dist_plus) >= kDistinctnessThreshold;
    return out;
}

}  // namespace quadop
