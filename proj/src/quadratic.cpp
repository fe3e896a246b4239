#include "quadop/quadratic.hpp"

#include <cmath>
#include <stdexcept>

namespace quadop {

namespace {

void check_domain(const QuadraticMap& q, const Vector& u) {
    if (u.dim() != q.domain_dim()) {
        throw std::invalid_argument("QuadraticMap: argument dimension mismatch");
    }
}

void check_domain(const BilinearMap& b, const Vector& u) {
    if (u.dim() != b.domain_dim()) {
        throw std::invalid_argument("BilinearMap: argument dimension mismatch");
    }
}

}  // namespace

BilinearMap::BilinearMap(std::size_t domain_dim, std::size_t codomain_dim)
    : n_(domain_dim), np_(codomain_dim), coeffs_(domain_dim * domain_dim * codomain_dim, 0.0) {
    if (n_ == 0 || np_ == 0) {
        throw std::invalid_argument("BilinearMap: dimensions must be positive");
    }
}

BilinearMap BilinearMap::from_tensor(std::size_t domain_dim, std::size_t codomain_dim,
                                     std::vector<double> coeffs) {
    BilinearMap b(domain_dim, codomain_dim);
    if (coeffs.size() != domain_dim * domain_dim * codomain_dim) {
        throw std::invalid_argument("BilinearMap: tensor size does not match dimensions");
    }
    for (double c : coeffs) {
        if (!std::isfinite(c)) throw std::invalid_argument("BilinearMap: coefficients must be finite");
    }
    b.coeffs_ = std::move(coeffs);
    for (std::size_t i = 0; i < domain_dim; ++i) {
        for (std::size_t j = i + 1; j < domain_dim; ++j) {
            for (std::size_t k = 0; k < codomain_dim; ++k) {
                if (b.coeff(i, j, k) != b.coeff(j, i, k)) {
                    throw std::invalid_argument("BilinearMap: tensor is not symmetric in (i, j)");
                }
            }
        }
    }
    return b;
}

void BilinearMap::set_coeff(std::size_t i, std::size_t j, std::size_t k, double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("BilinearMap: coefficient must be finite");
    coeffs_[(i * n_ + j) * np_ + k] = value;
    coeffs_[(j * n_ + i) * np_ + k] = value;
}

Vector BilinearMap::eval(const Vector& u, const Vector& v) const {
    check_domain(*this, u);
    check_domain(*this, v);
    Vector out(np_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (u[i] == 0.0) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            const double uv = u[i] * v[j];
            if (uv == 0.0) continue;
            const double* row = &coeffs_[(i * n_ + j) * np_];
            for (std::size_t k = 0; k < np_; ++k) out[k] += row[k] * uv;
        }
    }
    return out;
}

std::vector<double> BilinearMap::contract_left(const Vector& u) const {
    check_domain(*this, u);
    std::vector<double> m(np_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        if (u[i] == 0.0) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            const double* row = &coeffs_[(i * n_ + j) * np_];
            for (std::size_t k = 0; k < np_; ++k) m[k * n_ + j] += row[k] * u[i];
        }
    }
    return m;
}

double BilinearMap::frobenius_norm() const {
    double s = 0.0;
    for (double c : coeffs_) s += c * c;
    return std::sqrt(s);
}

QuadraticMap QuadraticMap::from_bilinear(BilinearMap b) {
    QuadraticMap q;
    q.n_ = b.domain_dim();
    q.np_ = b.codomain_dim();
    q.bilinear_ = std::move(b);
    return q;
}

QuadraticMap QuadraticMap::opaque(std::size_t domain_dim, std::size_t codomain_dim, Rule rule) {
    if (domain_dim == 0 || codomain_dim == 0) {
        throw std::invalid_argument("QuadraticMap: dimensions must be positive");
    }
    if (!rule) throw std::invalid_argument("QuadraticMap: missing evaluation rule");
    QuadraticMap q;
    q.n_ = domain_dim;
    q.np_ = codomain_dim;
    q.rule_ = std::move(rule);
    return q;
}

Vector QuadraticMap::apply(const Vector& u) const {
    check_domain(*this, u);
    if (bilinear_) return bilinear_->eval(u, u);
    Vector out = rule_(u);
    if (out.dim() != np_) {
        throw std::invalid_argument("QuadraticMap: rule returned wrong codomain dimension");
    }
    return out;
}

QuadraticMap quadratic_from_bilinear(const BilinearMap& b) {
    return QuadraticMap::from_bilinear(b);
}

Vector polarize(const QuadraticMap& q, const Vector& u, const Vector& v) {
    check_domain(q, u);
    check_domain(q, v);
    return 0.25 * (q.apply(u + v) - q.apply(u - v));
}

Vector parallelogram_residual(const QuadraticMap& q, const Vector& u, const Vector& v) {
    check_domain(q, u);
    check_domain(q, v);
    return q.apply(u + v) + q.apply(u - v) - 2.0 * q.apply(u) - 2.0 * q.apply(v);
}

Vector homogeneity_residual(const QuadraticMap& q, double k, const Vector& u) {
    check_domain(q, u);
    if (!std::isfinite(k)) throw std::invalid_argument("homogeneity_residual: k must be finite");
    return q.apply(k * u) - (k * k) * q.apply(u);
}

Vector additivity_residual(const BilinearMap& b, const Vector& u, const Vector& v,
                           const Vector& w) {
    check_domain(b, u);
    check_domain(b, v);
    check_domain(b, w);
    return 4.0 * (b.eval(u + v, w) - b.eval(u, w) - b.eval(v, w));
}

Vector additivity_residual(const QuadraticMap& q, const Vector& u, const Vector& v,
                           const Vector& w) {
    check_domain(q, u);
    check_domain(q, v);
    check_domain(q, w);
    return q.apply(u + v + w) - q.apply(u + v - w) - q.apply(u + w) + q.apply(u - w) -
           q.apply(v + w) + q.apply(v - w);
}

Vector scalar_linearity_residual(const BilinearMap& b, double k, const Vector& u,
                                 const Vector& v) {
    check_domain(b, u);
    check_domain(b, v);
    if (!std::isfinite(k)) throw std::invalid_argument("scalar_linearity_residual: k must be finite");
    return b.eval(k * u, v) - k * b.eval(u, v);
}

std::pair<Vector, Vector> collision_from_witness(const Vector& u, const Vector& v) {
    if (u.dim() != v.dim()) throw std::invalid_argument("collision_from_witness: dimension mismatch");
    if (u.is_zero() || v.is_zero()) {
        throw std::invalid_argument("collision_from_witness: witness vectors must be nonzero");
    }
    return {u + v, u - v};
}

std::pair<Vector, Vector> witness_from_collision(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("witness_from_collision: dimension mismatch");
    if (a == b || a == -b) {
        throw std::invalid_argument("witness_from_collision: collision pair must satisfy a != +-b");
    }
    return {0.5 * (a + b), 0.5 * (a - b)};
}

}  // namespace quadop
