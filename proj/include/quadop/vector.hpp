#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace quadop {

/// Finite-dimensional real coordinate vector. Entries are validated to be
/// finite on construction; dimension mismatches in arithmetic throw.
class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t dim) : entries_(dim, 0.0) {}
    Vector(std::initializer_list<double> entries);
    explicit Vector(std::vector<double> entries);

    std::size_t dim() const { return entries_.size(); }
    double operator[](std::size_t i) const { return entries_[i]; }
    double& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<double>& entries() const { return entries_; }

    Vector& operator+=(const Vector& rhs);
    Vector& operator-=(const Vector& rhs);
    Vector& operator*=(double k);

    double norm() const;
    double max_abs() const;
    bool is_zero() const;

    bool operator==(const Vector& rhs) const { return entries_ == rhs.entries_; }

private:
    std::vector<double> entries_;
};

Vector operator+(Vector lhs, const Vector& rhs);
Vector operator-(Vector lhs, const Vector& rhs);
Vector operator*(double k, Vector v);
Vector operator*(Vector v, double k);
Vector operator-(Vector v);

double dot(const Vector& a, const Vector& b);

}  // namespace quadop
