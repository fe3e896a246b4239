#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "quadop/vector.hpp"

namespace quadop {

/// Symmetric bilinear map R^n x R^n -> R^n', stored as the coefficient
/// tensor T[i][j][k] with i,j over the domain and k over the codomain.
/// Symmetry in (i,j) is enforced on construction.
class BilinearMap {
public:
    BilinearMap(std::size_t domain_dim, std::size_t codomain_dim);

    /// Builds from a flat row-major tensor, coeffs[(i*n + j)*np + k].
    /// Rejects tensors that are not exactly symmetric in (i, j).
    static BilinearMap from_tensor(std::size_t domain_dim, std::size_t codomain_dim,
                                   std::vector<double> coeffs);

    std::size_t domain_dim() const { return n_; }
    std::size_t codomain_dim() const { return np_; }

    double coeff(std::size_t i, std::size_t j, std::size_t k) const {
        return coeffs_[(i * n_ + j) * np_ + k];
    }
    /// Sets T[i][j][k] and T[j][i][k] together, keeping the tensor symmetric.
    void set_coeff(std::size_t i, std::size_t j, std::size_t k, double value);

    Vector eval(const Vector& u, const Vector& v) const;

    /// Matrix of the linear map v -> B(u, v), row-major codomain x domain.
    std::vector<double> contract_left(const Vector& u) const;

    double frobenius_norm() const;

private:
    std::size_t n_ = 0;
    std::size_t np_ = 0;
    std::vector<double> coeffs_;
};

/// Map Q : R^n -> R^n'. Either the diagonal u -> B(u,u) of a BilinearMap
/// ("derived") or an arbitrary evaluation rule ("opaque", for negative
/// tests against maps that are not quadratic).
class QuadraticMap {
public:
    using Rule = std::function<Vector(const Vector&)>;

    static QuadraticMap from_bilinear(BilinearMap b);
    static QuadraticMap opaque(std::size_t domain_dim, std::size_t codomain_dim, Rule rule);

    Vector apply(const Vector& u) const;

    bool is_derived() const { return bilinear_.has_value(); }
    const BilinearMap* bilinear() const { return bilinear_ ? &*bilinear_ : nullptr; }
    std::size_t domain_dim() const { return n_; }
    std::size_t codomain_dim() const { return np_; }

private:
    QuadraticMap() = default;
    std::size_t n_ = 0;
    std::size_t np_ = 0;
    std::optional<BilinearMap> bilinear_;
    Rule rule_;
};

QuadraticMap quadratic_from_bilinear(const BilinearMap& b);

/// (Q(u+v) - Q(u-v)) / 4. Recovers B(u,v) when Q is the diagonal of B.
Vector polarize(const QuadraticMap& q, const Vector& u, const Vector& v);

/// Q(u+v) + Q(u-v) - 2Q(u) - 2Q(v). Zero (to roundoff) iff the
/// parallelogram identity holds at (u, v).
Vector parallelogram_residual(const QuadraticMap& q, const Vector& u, const Vector& v);

/// Q(ku) - k^2 Q(u).
Vector homogeneity_residual(const QuadraticMap& q, double k, const Vector& u);

/// 4(B(u+v, w) - B(u, w) - B(v, w)): additivity defect in the first slot.
Vector additivity_residual(const BilinearMap& b, const Vector& u, const Vector& v,
                           const Vector& w);

/// Same defect evaluated purely through Q:
/// Q(u+v+w) - Q(u+v-w) - Q(u+w) + Q(u-w) - Q(v+w) + Q(v-w).
/// Agrees with the bilinear form above to roundoff when Q is derived.
Vector additivity_residual(const QuadraticMap& q, const Vector& u, const Vector& v,
                           const Vector& w);

/// B(ku, v) - k B(u, v): scalar-linearity defect in the first slot.
Vector scalar_linearity_residual(const BilinearMap& b, double k, const Vector& u,
                                 const Vector& v);

/// From an annihilating pair B(u,v) = 0 to a solution collision: returns
/// (u+v, u-v), which satisfy Q(u+v) = Q(u-v) while being distinct and
/// non-opposite whenever u, v are nonzero.
std::pair<Vector, Vector> collision_from_witness(const Vector& u, const Vector& v);

/// Inverse construction: from a collision pair (a, b), a != +-b, returns
/// (u, v) = ((a+b)/2, (a-b)/2), both nonzero; the polarized product of
/// the pair vanishes when Q(a) = Q(b).
std::pair<Vector, Vector> witness_from_collision(const Vector& a, const Vector& b);

}  // namespace quadop
