#include "quadop/vector.hpp"

#include <cmath>
#include <stdexcept>

namespace quadop {

namespace {

void check_finite(const std::vector<double>& entries) {
    for (double x : entries) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("Vector: entries must be finite");
        }
    }
}

void check_same_dim(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("Vector: dimension mismatch");
    }
}

}  // namespace

Vector::Vector(std::initializer_list<double> entries) : entries_(entries) {
    check_finite(entries_);
}

Vector::Vector(std::vector<double> entries) : entries_(std::move(entries)) {
    check_finite(entries_);
}

Vector& Vector::operator+=(const Vector& rhs) {
    check_same_dim(*this, rhs);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
    return *this;
}

Vector& Vector::operator-=(const Vector& rhs) {
    check_same_dim(*this, rhs);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
    return *this;
}

Vector& Vector::operator*=(double k) {
    for (double& x : entries_) x *= k;
    return *this;
}

double Vector::norm() const {
    double s = 0.0;
    for (double x : entries_) s += x * x;
    return std::sqrt(s);
}

double Vector::max_abs() const {
    double m = 0.0;
    for (double x : entries_) m = std::max(m, std::abs(x));
    return m;
}

bool Vector::is_zero() const {
    for (double x : entries_) {
        if (x != 0.0) return false;
    }
    return true;
}

Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
Vector operator*(double k, Vector v) { return v *= k; }
Vector operator*(Vector v, double k) { return v *= k; }
Vector operator-(Vector v) { return v *= -1.0; }

double dot(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace quadop
