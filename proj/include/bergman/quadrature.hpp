#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "bergman/disk.hpp"

namespace bergman {

/// Node summation order. Both modes are deterministic; the mode is part of a
/// run's configuration so outputs are reproducible bit-for-bit per mode.
enum class SumMode { Serial, Pairwise };

/// Tensor rule for normalized area measure on the unit disk:
/// Gauss-Legendre in s = r^2 on [0,1] times equispaced angles.
/// Flattened nodes are radius-major: node index q * angular_order + t.
struct QuadratureRule {
    int radial_order = 0;   // number of radial (Gauss) nodes
    int angular_order = 0;  // number of equispaced angles
    int exact_degree = 0;   // monomial moments exact for a, b <= exact_degree

    Eigen::VectorXd radial_s;        // Gauss nodes in s = r^2
    Eigen::VectorXd radial_weights;  // Gauss weights on [0,1], sum 1
    double angle_offset = 0.0;       // angles are 2*pi*(t + offset)/M

    std::vector<Complex> nodes;
    std::vector<double> weights;

    int node_count() const { return static_cast<int>(nodes.size()); }
    double angle(int t) const;
    double radius(int q) const { return std::sqrt(radial_s[q]); }
};

/// Same tensor layout with radial nodes graded toward |w| = 1 through the
/// substitution s = 1 - (1 - x)^grading; integrates boundary-singular weights
/// such as (1 - |w|^2)^{-3/5}.
struct SingularRule : QuadratureRule {
    double grading = 0.0;
};

/// Gauss-Legendre nodes/weights on [0,1].
void gauss_legendre_01(int n, Eigen::VectorXd& x, Eigen::VectorXd& w);

QuadratureRule build_rule(int radial_order, int angular_order);

SingularRule build_singular_rule(double grading, int radial_order, int angular_order);

Complex integrate(std::span<const Complex> samples, const QuadratureRule& rule,
                  SumMode mode = SumMode::Serial);

Complex integrate(const std::function<Complex(Complex)>& f, const QuadratureRule& rule,
                  SumMode mode = SumMode::Serial);

}  // namespace bergman
