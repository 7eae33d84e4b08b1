#include <doctest.h>

#include <cmath>

#include "bergman/quadrature.hpp"

using namespace bergman;

TEST_CASE("rule construction and invariants") {
    const auto rule = build_rule(8, 16);
    CHECK(rule.exact_degree == 15);
    CHECK(rule.node_count() == 8 * 16);

    double wsum = 0;
    for (double w : rule.weights) {
        CHECK(w > 0);
        wsum += w;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-15));
    for (const auto& n : rule.nodes) CHECK(std::abs(n) < 1.0);

    CHECK_THROWS_AS(build_rule(0, 16), std::domain_error);
    CHECK_THROWS_AS(build_rule(8, 0), std::domain_error);
}

TEST_CASE("moment integrals") {
    const auto rule = build_rule(8, 16);
    // measure of the disk is 1
    CHECK(std::abs(integrate([](Complex) { return Complex(1.0); }, rule) - Complex(1.0)) < 1e-15);
    // |w|^2 integrates to 1/2
    CHECK(std::abs(integrate([](Complex w) { return Complex(std::norm(w)); }, rule) -
                   Complex(0.5)) < 1e-15);
    // rotational symmetry kills w
    CHECK(std::abs(integrate([](Complex w) { return w; }, rule)) < 1e-16);

    // w^a conj(w)^b for a != b, a, b <= exact_degree
    for (int a : {1, 3, 7}) {
        for (int b : {0, 2, 5}) {
            if (a == b) continue;
            const Complex v = integrate(
                [&](Complex w) { return std::pow(w, a) * std::pow(std::conj(w), b); }, rule);
            CHECK(std::abs(v) < 1e-15);
        }
    }
    // diagonal moments 1/(a+1)
    for (int a : {0, 2, 6}) {
        const Complex v = integrate(
            [&](Complex w) { return std::pow(w, a) * std::pow(std::conj(w), a); }, rule);
        CHECK(std::abs(v - Complex(1.0 / (a + 1))) < 1e-14);
    }
}

TEST_CASE("sample count mismatch is rejected") {
    const auto rule = build_rule(4, 8);
    std::vector<Complex> wrong(5, Complex(1.0));
    CHECK_THROWS_AS(integrate(wrong, rule), std::invalid_argument);
}

TEST_CASE("serial and pairwise modes agree to roundoff") {
    const auto rule = build_rule(24, 64);
    std::vector<Complex> samples(rule.nodes.size());
    for (size_t i = 0; i < samples.size(); ++i)
        samples[i] = std::exp(Complex(0.0, 3.0) * rule.nodes[i]);
    const Complex a = integrate(samples, rule, SumMode::Serial);
    const Complex b = integrate(samples, rule, SumMode::Pairwise);
    CHECK(std::abs(a - b) < 1e-13);
    // each mode is itself deterministic
    CHECK(integrate(samples, rule, SumMode::Serial) == a);
    CHECK(integrate(samples, rule, SumMode::Pairwise) == b);
}

TEST_CASE("singular rule handles the boundary weight") {
    CHECK_THROWS_AS(build_singular_rule(1.0, 8, 16), std::domain_error);

    const auto srule = build_singular_rule(2.5, 48, 64);
    for (double w : srule.weights) CHECK(w > 0);

    // 2 int_0^1 r (1-r^2)^(-3/5) dr = 5/2
    Complex v = 0;
    for (size_t i = 0; i < srule.nodes.size(); ++i)
        v += srule.weights[i] * std::pow(1.0 - std::norm(srule.nodes[i]), -0.6);
    CHECK(std::abs(v - Complex(2.5)) < 1e-6);

    // total mass of the disk is still 1
    Complex one = 0;
    for (size_t i = 0; i < srule.nodes.size(); ++i) one += srule.weights[i];
    CHECK(std::abs(one - Complex(1.0)) < 1e-12);
}

TEST_CASE("order doubling leaves smooth integrals unchanged") {
    const auto r1 = build_rule(16, 32), r2 = build_rule(32, 64);
    auto f = [](Complex w) { return std::norm(w) * w * std::conj(w) + Complex(0.25); };
    CHECK(std::abs(integrate(f, r1) - integrate(f, r2)) < 1e-12);
}
