#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "quadop/counterexample.hpp"
#include "quadop/grid.hpp"
#include "quadop/mathieu.hpp"
#include "quadop/quadratic.hpp"

using namespace quadop;

namespace {
constexpr double kPi = std::numbers::pi;

double fd_annihilation_max(int n, double qstar) {
    const Grid2D grid = Grid2D::uniform(n);
    const auto [u, v] = assemble_pair(qstar, kDefaultTruncation, grid);
    const VerifyOutcome out =
        verify_bilinear_annihilation(u, v, fd_laplacian(u), fd_laplacian(v), 1.0);
    return out.report.max_abs;
}
}  // namespace

TEST_CASE("coefficient profile p(x) = -2 q cos 2x") {
    CHECK(p_profile(8.0, 0.0) == -16.0);
    CHECK(std::abs(p_profile(3.7, kPi / 4.0)) <= 1e-15 * (1.0 + 2.0 * 3.7));
    const double qstar = find_qstar();
    CHECK(std::abs(p_profile(qstar, kPi / 2.0) - 2.0 * qstar) <= 1e-13);
}

TEST_CASE("grid construction: exact symmetric nodes") {
    CHECK_THROWS_AS(Grid2D::uniform(4), std::invalid_argument);

    for (int n : {5, 64, 129}) {
        const Grid2D g = Grid2D::uniform(n);
        CHECK(g.h > 0.0);
        CHECK(g.nodes.front() == -kPi / 2.0);
        CHECK(g.nodes.back() == kPi / 2.0);
        for (int i = 0; i < n; ++i) CHECK(g.nodes[n - 1 - i] == -g.nodes[i]);
        if (n % 2 == 1) CHECK(g.nodes[(n - 1) / 2] == 0.0);
        for (int i = 1; i < n; ++i) {
            CHECK(std::abs(g.nodes[i] - g.nodes[i - 1] - g.h) <= 1e-14);
        }
    }
}

TEST_CASE("assembled pair: boundary, midline, separation") {
    const double qstar = find_qstar();
    const Grid2D grid = Grid2D::uniform(129);
    const auto [u, v] = assemble_pair(qstar, kDefaultTruncation, grid);

    const SineSeries s = se2_coefficients(qstar);
    double coeff_sum = 0.0;
    for (double c : s.coeffs) coeff_sum += std::abs(c);

    const int n = grid.n;
    for (int i = 0; i < n; ++i) {
        for (int b : {0, n - 1}) {
            CHECK(std::abs(u.at(b, i)) <= 1e-14 * coeff_sum);
            CHECK(std::abs(u.at(i, b)) <= 1e-14 * coeff_sum);
            CHECK(std::abs(v.at(b, i)) <= 1e-14 * coeff_sum);
            CHECK(std::abs(v.at(i, b)) <= 1e-14 * coeff_sum);
        }
    }

    // y = 0 midline: cos 0 = 1, so the row is the x-profile itself.
    const int mid = (n - 1) / 2;
    for (int i = 0; i < n; ++i) {
        CHECK(u.at(i, mid) == se2_eval(s, grid.nodes[i]));
    }

    CHECK((u - v).max_abs() >= 0.05);
    CHECK((u + v).max_abs() >= 0.05);
    CHECK(u.max_abs() >= 0.05);
    CHECK(v.max_abs() >= 0.05);

    // Odd in x, even in y.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; j += 7) {
            CHECK(std::abs(u.at(n - 1 - i, j) + u.at(i, j)) <= 1e-14);
            CHECK(std::abs(u.at(i, n - 1 - j) - u.at(i, j)) <= 1e-14);
        }
    }
}

TEST_CASE("assemble_pair rejects a parameter away from the level set") {
    const Grid2D grid = Grid2D::uniform(17);
    CHECK_THROWS_AS(assemble_pair(7.0, kDefaultTruncation, grid), std::invalid_argument);
}

TEST_CASE("analytic Laplacians satisfy the separated equations") {
    const double qstar = find_qstar();
    const Grid2D grid = Grid2D::uniform(129);
    const SeparableSolution sp = make_separable_solution(qstar, kDefaultTruncation, +1);
    const SeparableSolution sm = make_separable_solution(qstar, kDefaultTruncation, -1);
    const GridFunction2D u = sample_solution(sp, grid);
    const GridFunction2D v = sample_solution(sm, grid);
    const GridFunction2D lap_u = analytic_laplacian(sp, grid);
    const GridFunction2D lap_v = analytic_laplacian(sm, grid);

    double worst_u = 0.0, worst_v = 0.0;
    for (int i = 1; i + 1 < grid.n; ++i) {
        const double p = p_profile(qstar, grid.nodes[i]);
        for (int j = 1; j + 1 < grid.n; ++j) {
            worst_u = std::max(worst_u, std::abs(lap_u.at(i, j) + p * u.at(i, j)));
            worst_v = std::max(worst_v, std::abs(lap_v.at(i, j) - p * v.at(i, j)));
        }
    }
    CHECK(worst_u <= 1e-9);
    CHECK(worst_v <= 1e-9);

    // The cos factor kills the Laplacian on the y-boundary rows.
    for (int i = 0; i < grid.n; ++i) {
        CHECK(std::abs(lap_u.at(i, 0)) <= 1e-13);
        CHECK(std::abs(lap_u.at(i, grid.n - 1)) <= 1e-13);
    }
}

TEST_CASE("five-point stencil basics") {
    const Grid2D grid = Grid2D::uniform(33);

    const GridFunction2D ones = GridFunction2D::sample(grid, [](double, double) { return 1.0; });
    const GridFunction2D lap_ones = fd_laplacian(ones);
    CHECK(lap_ones.max_abs() == 0.0);

    const GridFunction2D xsq =
        GridFunction2D::sample(grid, [](double x, double) { return x * x; });
    const GridFunction2D lap_xsq = fd_laplacian(xsq);
    for (int i = 1; i + 1 < grid.n; ++i) {
        for (int j = 1; j + 1 < grid.n; ++j) {
            CHECK(std::abs(lap_xsq.at(i, j) - 2.0) <= 1e-10);
        }
    }
    for (int i = 0; i < grid.n; ++i) {
        CHECK(lap_xsq.at(0, i) == 0.0);
        CHECK(lap_xsq.at(grid.n - 1, i) == 0.0);
    }
}

TEST_CASE("discrete Laplacian converges to the analytic one at second order") {
    const double qstar = find_qstar();
    double errs[3];
    int idx = 0;
    for (int n : {65, 129, 257}) {
        const Grid2D grid = Grid2D::uniform(n);
        const SeparableSolution sp = make_separable_solution(qstar, kDefaultTruncation, +1);
        const GridFunction2D u = sample_solution(sp, grid);
        const GridFunction2D fd = fd_laplacian(u);
        const GridFunction2D exact = analytic_laplacian(sp, grid);
        double worst = 0.0;
        for (int i = 1; i + 1 < n; ++i)
            for (int j = 1; j + 1 < n; ++j)
                worst = std::max(worst, std::abs(fd.at(i, j) - exact.at(i, j)));
        errs[idx++] = worst;
    }
    const double order1 = std::log2(errs[0] / errs[1]);
    const double order2 = std::log2(errs[1] / errs[2]);
    CHECK(order1 >= 1.8);
    CHECK(order1 <= 2.2);
    CHECK(order2 >= 1.8);
    CHECK(order2 <= 2.2);
}

TEST_CASE("annihilation verification on both routes") {
    const double qstar = find_qstar();
    const Grid2D grid = Grid2D::uniform(129);
    const SeparableSolution sp = make_separable_solution(qstar, kDefaultTruncation, +1);
    const SeparableSolution sm = make_separable_solution(qstar, kDefaultTruncation, -1);
    const GridFunction2D u = sample_solution(sp, grid);
    const GridFunction2D v = sample_solution(sm, grid);

    const VerifyOutcome analytic = verify_bilinear_annihilation(
        u, v, analytic_laplacian(sp, grid), analytic_laplacian(sm, grid), 1e-8);
    CHECK(analytic.passed);
    CHECK(analytic.report.max_abs <= 1e-8);
    CHECK(analytic.report.max_abs >= analytic.report.rms);
    CHECK(analytic.report.grid_n == 129);

    // The stencil route shrinks by ~4x when h halves.
    const double r65 = fd_annihilation_max(65, qstar);
    const double r129 = fd_annihilation_max(129, qstar);
    const double ratio = r65 / r129;
    CHECK(ratio >= std::pow(2.0, 1.8));
    CHECK(ratio <= std::pow(2.0, 2.2));

    const GridFunction2D zero(grid);
    const VerifyOutcome zeros = verify_bilinear_annihilation(zero, zero, zero, zero, 1e-8);
    CHECK(zeros.report.max_abs == 0.0);
    CHECK(zeros.report.rms == 0.0);

    const Grid2D other = Grid2D::uniform(65);
    const GridFunction2D misfit(other);
    CHECK_THROWS_AS(verify_bilinear_annihilation(u, v, misfit, misfit, 1e-8),
                    std::invalid_argument);
}

TEST_CASE("equal right-hand sides for the collision pair") {
    const double qstar = find_qstar();
    const Grid2D grid = Grid2D::uniform(129);
    const SeparableSolution sp = make_separable_solution(qstar, kDefaultTruncation, +1);
    const SeparableSolution sm = make_separable_solution(qstar, kDefaultTruncation, -1);
    const GridFunction2D u = sample_solution(sp, grid);
    const GridFunction2D v = sample_solution(sm, grid);
    const GridFunction2D lap_u = analytic_laplacian(sp, grid);
    const GridFunction2D lap_v = analytic_laplacian(sm, grid);

    const GridFunction2D a = u + v;
    const GridFunction2D b = u - v;
    const VerifyOutcome out = verify_equal_rhs(a, b, lap_u + lap_v, lap_u - lap_v, 1e-8);
    CHECK(out.passed);
    CHECK(out.report.max_abs <= 1e-8);
    CHECK(out.report.dist_minus >= 0.05);
    CHECK(out.report.dist_plus >= 0.05);
    CHECK(out.report.max_abs >= out.report.rms);

    // Guard behavior: identical inputs have zero residual but fail the
    // distinctness requirement; opposite inputs fail on the plus side.
    const VerifyOutcome same = verify_equal_rhs(u, u, lap_u, lap_u, 1e-8);
    CHECK(same.report.max_abs == 0.0);
    CHECK(same.report.dist_minus == 0.0);
    CHECK(!same.passed);

    GridFunction2D neg_u(grid), neg_lap(grid);
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j) {
            neg_u.at(i, j) = -u.at(i, j);
            neg_lap.at(i, j) = -lap_u.at(i, j);
        }
    const VerifyOutcome opposite = verify_equal_rhs(u, neg_u, lap_u, neg_lap, 1e-8);
    CHECK(opposite.report.dist_plus == 0.0);
    CHECK(!opposite.passed);
}

TEST_CASE("the L-norm: sup plus gradient sup") {
    const Grid2D grid = Grid2D::uniform(129);

    CHECK(norm_L(GridFunction2D(grid)) == 0.0);

    const GridFunction2D linear = GridFunction2D::sample(grid, [](double x, double) { return x; });
    CHECK(std::abs(norm_L(linear) - (kPi / 2.0 + 1.0)) <= 1e-10);

    const double qstar = find_qstar();
    const SeparableSolution sp = make_separable_solution(qstar, kDefaultTruncation, +1);
    const double n129 = norm_L(sample_solution(sp, Grid2D::uniform(129)));
    const double n257 = norm_L(sample_solution(sp, Grid2D::uniform(257)));
    CHECK(n129 > 0.0);
    CHECK(std::isfinite(n129));
    CHECK(std::abs(n129 - n257) <= 0.01 * n257);
}

TEST_CASE("grid collisions feed the quadratic-operator machinery") {
    const double qstar = find_qstar();
    const int n = 33;
    const Grid2D grid = Grid2D::uniform(n);
    const auto [u, v] = assemble_pair(qstar, kDefaultTruncation, grid);

    const VerifyOutcome fd_eqrhs = verify_equal_rhs(u + v, u - v, fd_laplacian(u + v),
                                                    fd_laplacian(u - v), 1.0);

    // Discrete operator w -> w * lap_h(w) restricted to interior nodes.
    const std::size_t interior = static_cast<std::size_t>(n - 2) * (n - 2);
    const QuadraticMap discrete_q = QuadraticMap::opaque(
        static_cast<std::size_t>(n) * n, interior, [&grid, n](const Vector& w) {
            const GridFunction2D f = GridFunction2D::from_flat(grid, w);
            const GridFunction2D lap = fd_laplacian(f);
            std::vector<double> out;
            out.reserve(static_cast<std::size_t>(n - 2) * (n - 2));
            for (int i = 1; i + 1 < n; ++i)
                for (int j = 1; j + 1 < n; ++j) out.push_back(f.at(i, j) * lap.at(i, j));
            return Vector(std::move(out));
        });

    // The collision construction on flattened grid data reproduces the
    // grid-level sum and difference.
    const auto [a, b] = collision_from_witness(u.flatten(), v.flatten());
    CHECK(a == (u + v).flatten());
    CHECK(b == (u - v).flatten());
    const auto [wu, wv] = witness_from_collision(a, b);

    // And the reconstructed witnesses are the original pair.
    CHECK((wu - u.flatten()).max_abs() <= 1e-13);
    CHECK((wv - v.flatten()).max_abs() <= 1e-13);

    // Their polarized product under the discrete operator is small at the
    // stencil's own residual scale.
    const Vector pol = polarize(discrete_q, wu, wv);
    CHECK(pol.max_abs() <= 0.3 * fd_eqrhs.report.max_abs + 1e-9);
}
