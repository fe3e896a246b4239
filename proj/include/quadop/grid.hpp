#pragma once

#include <functional>
#include <vector>

#include "quadop/vector.hpp"

namespace quadop {

/// Uniform boundary-inclusive grid on the closed square [-pi/2, pi/2]^2.
/// Nodes are symmetric by construction: nodes[0] and nodes[n-1] are
/// exactly -pi/2 and +pi/2, and nodes[n-1-i] == -nodes[i].
struct Grid2D {
    int n = 0;
    double h = 0.0;
    std::vector<double> nodes;

    static Grid2D uniform(int n);
    bool operator==(const Grid2D& other) const { return n == other.n; }
};

/// Real function sampled at the grid nodes, values[i*n + j] = f(x_i, y_j).
class GridFunction2D {
public:
    explicit GridFunction2D(Grid2D grid);
    static GridFunction2D sample(const Grid2D& grid,
                                 const std::function<double(double, double)>& f);

    const Grid2D& grid() const { return grid_; }
    int n() const { return grid_.n; }
    double at(int i, int j) const { return values_[static_cast<std::size_t>(i) * grid_.n + j]; }
    double& at(int i, int j) { return values_[static_cast<std::size_t>(i) * grid_.n + j]; }

    GridFunction2D& operator+=(const GridFunction2D& rhs);
    GridFunction2D& operator-=(const GridFunction2D& rhs);

    double max_abs() const;
    double interior_max_abs() const;

    /// Row-major flattening into a coordinate vector of length n*n, used
    /// to drive the quadratic-operator machinery on grid data.
    Vector flatten() const;
    static GridFunction2D from_flat(const Grid2D& grid, const Vector& v);

private:
    Grid2D grid_;
    std::vector<double> values_;
};

GridFunction2D operator+(GridFunction2D lhs, const GridFunction2D& rhs);
GridFunction2D operator-(GridFunction2D lhs, const GridFunction2D& rhs);

/// Five-point discrete Laplacian. Interior nodes get
/// (f[i-1][j] + f[i+1][j] + f[i][j-1] + f[i][j+1] - 4 f[i][j]) / h^2;
/// boundary nodes are set to zero and excluded from residual scans.
GridFunction2D fd_laplacian(const GridFunction2D& f);

/// sup |f| over all nodes plus sup of the central-difference gradient
/// magnitude over interior nodes.
double norm_L(const GridFunction2D& f);

}  // namespace quadop
