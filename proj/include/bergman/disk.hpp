#pragma once

#include <complex>

#include "bergman/errors.hpp"

namespace bergman {

using Complex = std::complex<double>;

/// Points with |z| >= 1 - kBoundaryGuard are rejected everywhere: quadrature
/// and truncation error diverge well before that radius, so admitting them
/// would only produce garbage with large exponents.
inline constexpr double kBoundaryGuard = 1e-12;

/// A point strictly inside the unit disk.
class DiskPoint {
public:
    DiskPoint() : value_(0.0, 0.0) {}
    explicit DiskPoint(Complex value) : value_(value) {
        if (std::abs(value) >= 1.0 - kBoundaryGuard)
            throw std::domain_error("DiskPoint: |z| must be < 1");
    }
    DiskPoint(double re, double im) : DiskPoint(Complex(re, im)) {}

    Complex value() const { return value_; }
    double abs() const { return std::abs(value_); }
    /// |z|^2, the radial variable used throughout.
    double abs2() const { return std::norm(value_); }

private:
    Complex value_;
};

/// The involutive automorphism w -> (z - w) / (1 - conj(z) w).
Complex mobius(DiskPoint z, DiskPoint w);

/// d/dw of the automorphism: (|z|^2 - 1) / (1 - conj(z) w)^2.
Complex mobius_derivative(DiskPoint z, DiskPoint w);

/// Reproducing kernel K_z(w) = 1 / (1 - conj(z) w)^2.
Complex kernel(DiskPoint z, DiskPoint w);

/// Normalized kernel k_z(w) = (1 - |z|^2) / (1 - conj(z) w)^2, unit L2 norm.
Complex normalized_kernel(DiskPoint z, DiskPoint w);

}  // namespace bergman
