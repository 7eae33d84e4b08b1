#include "bergman/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace bergman {

namespace {

Complex sum_range(std::span<const Complex> v, std::span<const double> w, size_t lo, size_t hi) {
    if (hi - lo <= 16) {
        Complex s = 0.0;
        for (size_t i = lo; i < hi; ++i) s += w[i] * v[i];
        return s;
    }
    const size_t mid = lo + (hi - lo) / 2;
    return sum_range(v, w, lo, mid) + sum_range(v, w, mid, hi);
}

void fill_tensor_nodes(QuadratureRule& rule) {
    const int R = rule.radial_order;
    const int M = rule.angular_order;
    rule.nodes.resize(static_cast<size_t>(R) * M);
    rule.weights.resize(static_cast<size_t>(R) * M);
    for (int q = 0; q < R; ++q) {
        const double r = std::sqrt(rule.radial_s[q]);
        const double wq = rule.radial_weights[q] / M;
        for (int t = 0; t < M; ++t) {
            const double th = 2.0 * std::numbers::pi * (t + rule.angle_offset) / M;
            rule.nodes[static_cast<size_t>(q) * M + t] = std::polar(r, th);
            rule.weights[static_cast<size_t>(q) * M + t] = wq;
        }
    }
}

}  // namespace

double QuadratureRule::angle(int t) const {
    return 2.0 * std::numbers::pi * (t + angle_offset) / angular_order;
}

void gauss_legendre_01(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
    // Newton iteration on P_n, standard [-1,1] construction mapped to [0,1].
    x.resize(n);
    w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double z1, pp;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
        } while (std::abs(z - z1) > 1e-15);
        x[i] = 0.5 * (1.0 - z);
        x[n - 1 - i] = 0.5 * (1.0 + z);
        w[i] = 1.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

QuadratureRule build_rule(int radial_order, int angular_order) {
    if (radial_order < 1 || angular_order < 1)
        throw std::domain_error("build_rule: orders must be >= 1");
    QuadratureRule rule;
    rule.radial_order = radial_order;
    rule.angular_order = angular_order;
    rule.exact_degree = std::min(2 * radial_order - 1, angular_order - 1);
    gauss_legendre_01(radial_order, rule.radial_s, rule.radial_weights);
    fill_tensor_nodes(rule);
    return rule;
}

SingularRule build_singular_rule(double grading, int radial_order, int angular_order) {
    if (grading <= 1.0)
        throw std::domain_error("build_singular_rule: grading must be > 1");
    if (radial_order < 1 || angular_order < 1)
        throw std::domain_error("build_singular_rule: orders must be >= 1");
    SingularRule rule;
    rule.grading = grading;
    rule.radial_order = radial_order;
    rule.angular_order = angular_order;
    rule.exact_degree = 0;  // graded nodes trade moment exactness for boundary resolution
    rule.angle_offset = 0.5;

    Eigen::VectorXd x, wx;
    gauss_legendre_01(radial_order, x, wx);
    rule.radial_s.resize(radial_order);
    rule.radial_weights.resize(radial_order);
    for (int q = 0; q < radial_order; ++q) {
        const double u = 1.0 - x[q];
        rule.radial_s[q] = 1.0 - std::pow(u, grading);
        rule.radial_weights[q] = wx[q] * grading * std::pow(u, grading - 1.0);
    }
    fill_tensor_nodes(rule);
    return rule;
}

Complex integrate(std::span<const Complex> samples, const QuadratureRule& rule, SumMode mode) {
    if (samples.size() != rule.nodes.size())
        throw std::invalid_argument("integrate: sample count does not match node count");
    if (mode == SumMode::Pairwise)
        return sum_range(samples, rule.weights, 0, samples.size());
    Complex s = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) s += rule.weights[i] * samples[i];
    return s;
}

Complex integrate(const std::function<Complex(Complex)>& f, const QuadratureRule& rule,
                  SumMode mode) {
    std::vector<Complex> samples(rule.nodes.size());
    for (size_t i = 0; i < samples.size(); ++i) samples[i] = f(rule.nodes[i]);
    return integrate(samples, rule, mode);
}

}  // namespace bergman
