#include "quadop/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace quadop {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_same_grid(const GridFunction2D& a, const GridFunction2D& b) {
    if (!(a.grid() == b.grid())) {
        throw std::invalid_argument("GridFunction2D: grid mismatch");
    }
}

}  // namespace

Grid2D Grid2D::uniform(int n) {
    if (n < 5) throw std::invalid_argument("Grid2D: need at least 5 points per axis");
    Grid2D g;
    g.n = n;
    g.h = std::numbers::pi / (n - 1);
    g.nodes.resize(n);
    for (int i = 0; i <= (n - 1) / 2; ++i) {
        const double x = (i == 0) ? -kHalfPi : -kHalfPi + i * g.h;
        g.nodes[i] = x;
        g.nodes[n - 1 - i] = -x;
    }
    if (n % 2 == 1) g.nodes[(n - 1) / 2] = 0.0;
    return g;
}

GridFunction2D::GridFunction2D(Grid2D grid)
    : grid_(std::move(grid)), values_(static_cast<std::size_t>(grid_.n) * grid_.n, 0.0) {}

GridFunction2D GridFunction2D::sample(const Grid2D& grid,
                                      const std::function<double(double, double)>& f) {
    GridFunction2D out(grid);
    for (int i = 0; i < grid.n; ++i) {
        for (int j = 0; j < grid.n; ++j) {
            out.at(i, j) = f(grid.nodes[i], grid.nodes[j]);
        }
    }
    return out;
}

GridFunction2D& GridFunction2D::operator+=(const GridFunction2D& rhs) {
    check_same_grid(*this, rhs);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += rhs.values_[i];
    return *this;
}

GridFunction2D& GridFunction2D::operator-=(const GridFunction2D& rhs) {
    check_same_grid(*this, rhs);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= rhs.values_[i];
    return *this;
}

double GridFunction2D::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double GridFunction2D::interior_max_abs() const {
    double m = 0.0;
    for (int i = 1; i + 1 < grid_.n; ++i) {
        for (int j = 1; j + 1 < grid_.n; ++j) {
            m = std::max(m, std::abs(at(i, j)));
        }
    }
    return m;
}

Vector GridFunction2D::flatten() const { return Vector(values_); }

GridFunction2D GridFunction2D::from_flat(const Grid2D& grid, const Vector& v) {
    if (v.dim() != static_cast<std::size_t>(grid.n) * grid.n) {
        throw std::invalid_argument("GridFunction2D: flat vector size does not match grid");
    }
    GridFunction2D out(grid);
    out.values_ = v.entries();
    return out;
}

GridFunction2D operator+(GridFunction2D lhs, const GridFunction2D& rhs) { return lhs += rhs; }
GridFunction2D operator-(GridFunction2D lhs, const GridFunction2D& rhs) { return lhs -= rhs; }

GridFunction2D fd_laplacian(const GridFunction2D& f) {
    const int n = f.n();
    if (n < 5) throw std::invalid_argument("fd_laplacian: grid too small");
    const double inv_h2 = 1.0 / (f.grid().h * f.grid().h);
    GridFunction2D out(f.grid());
    for (int i = 1; i + 1 < n; ++i) {
        for (int j = 1; j + 1 < n; ++j) {
            out.at(i, j) = (f.at(i - 1, j) + f.at(i + 1, j) + f.at(i, j - 1) + f.at(i, j + 1) -
                            4.0 * f.at(i, j)) *
                           inv_h2;
        }
    }
    return out;
}

double norm_L(const GridFunction2D& f) {
    const int n = f.n();
    const double inv_2h = 1.0 / (2.0 * f.grid().h);
    double sup = f.max_abs();
    double sup_grad = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
        for (int j = 1; j + 1 < n; ++j) {
            const double fx = (f.at(i + 1, j) - f.at(i - 1, j)) * inv_2h;
            const double fy = (f.at(i, j + 1) - f.at(i, j - 1)) * inv_2h;
            sup_grad = std::max(sup_grad, std::hypot(fx, fy));
        }
    }
    return sup + sup_grad;
}

}  // namespace quadop
