#include <doctest.h>

#include <cmath>

#include "bergman/space.hpp"

using namespace bergman;

TEST_CASE("basis evaluation") {
    const auto e0 = BergmanFunction::basis(0, 4);
    const auto e1 = BergmanFunction::basis(1, 4);
    CHECK(std::abs(evaluate(e0, DiskPoint(0.3, -0.7)) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(evaluate(e1, DiskPoint(0.5, 0.0)) - Complex(std::sqrt(2.0) * 0.5)) < 1e-15);
    CHECK_THROWS_AS(evaluate(e0, DiskPoint(1.2, 0.0)), std::domain_error);
}

TEST_CASE("reproducing property against the kernel by quadrature") {
    const auto rule = build_rule(16, 32);
    const DiskPoint z(0.0, 0.4);
    const auto f = BergmanFunction::basis(3, 8);
    const Complex direct = evaluate(f, z);
    const Complex via_kernel = integrate(
        [&](Complex w) {
            return evaluate(f, DiskPoint(w)) * std::conj(kernel(z, DiskPoint(w)));
        },
        rule);
    CHECK(std::abs(direct - via_kernel) < 1e-12);
}

TEST_CASE("symbol evaluation and classification") {
    const auto mono = SymbolSpec::monomial(2, 1);
    CHECK(mono.harmonic() == 1);
    CHECK(mono.poly_degree() == 3);
    CHECK(!mono.is_radial());
    const Complex w(0.3, 0.2);
    CHECK(std::abs(mono(w) - w * w * std::conj(w)) < 1e-15);

    CHECK(SymbolSpec::monomial(2, 2).is_radial());
    CHECK(SymbolSpec::constant(Complex(1, 2)).is_radial());
    CHECK(SymbolSpec::indicator_disk(0.5).is_radial());
    CHECK(SymbolSpec::lacunary(3).is_analytic());
    CHECK(!SymbolSpec::monomial(0, 1).is_analytic());

    // lacunary: w + w^2 + w^4
    const auto lac = SymbolSpec::lacunary(3);
    CHECK(std::abs(lac(w) - (w + w * w + w * w * w * w)) < 1e-15);
    CHECK(std::abs(lac.conjugated()(w) - std::conj(lac(w))) < 1e-15);

    const auto ind = SymbolSpec::indicator_annulus(0.3, 0.7);
    CHECK(std::abs(ind(Complex(0.5, 0.0)) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(ind(Complex(0.1, 0.0))) < 1e-15);
    CHECK(std::abs(ind(Complex(0.9, 0.0))) < 1e-15);

    const auto table = SymbolSpec::radial_table({0.0, 0.5, 1.0}, {1.0, 2.0, 0.0});
    CHECK(std::abs(table(Complex(0.25, 0.0)) - Complex(1.5)) < 1e-15);
    CHECK(table.sup_bound() == 2.0);

    // |u|^2 closed forms
    CHECK(std::abs((*SymbolSpec::monomial(1, 0).abs_squared())(w) - Complex(std::norm(w))) <
          1e-15);
    CHECK(!SymbolSpec::lacunary(2).abs_squared().has_value());
}

TEST_CASE("bergman projection closed forms") {
    const auto rule = build_rule(24, 48);  // exact through degree 47

    const auto w3 = sample_symbol(SymbolSpec::monomial(3, 0), rule);
    const auto p = bergman_project(w3, rule, 8);
    CHECK(std::abs(p.coeffs[3] - Complex(0.5)) < 1e-14);  // w^3 = e_3 / 2
    for (int n = 0; n <= 8; ++n)
        if (n != 3) CHECK(std::abs(p.coeffs[n]) < 1e-14);

    const auto wbar = sample_symbol(SymbolSpec::monomial(0, 1), rule);
    CHECK(bergman_project(wbar, rule, 8).coeffs.cwiseAbs().maxCoeff() < 1e-14);

    const auto absw2 = sample_symbol(SymbolSpec::monomial(1, 1), rule);
    const auto p2 = bergman_project(absw2, rule, 8);
    CHECK(std::abs(p2.coeffs[0] - Complex(0.5)) < 1e-14);

    // insufficient exactness is rejected rather than degraded
    CHECK_THROWS_AS(bergman_project(w3, rule, 32), NumericError);
}

TEST_CASE("lp norms") {
    const auto rule = build_rule(16, 32);
    const auto ones = sample_symbol(SymbolSpec::constant(1.0), rule);
    for (double p : {1.0, 2.0, 4.0, 6.0})
        CHECK(lp_norm(ones, p, rule) == doctest::Approx(1.0).epsilon(1e-14));

    const auto e1 = evaluate_on_rule(BergmanFunction::basis(1, 1).coeffs, rule);
    CHECK(lp_norm(e1, 2.0, rule) == doctest::Approx(1.0).epsilon(1e-14));

    // || w ||_4 = (1/3)^(1/4)
    const auto w = sample_symbol(SymbolSpec::monomial(1, 0), rule);
    CHECK(lp_norm(w, 4.0, rule) == doctest::Approx(std::pow(1.0 / 3.0, 0.25)).epsilon(1e-14));

    CHECK_THROWS_AS(lp_norm(ones, 0.5, rule), std::domain_error);
}

TEST_CASE("parseval for a mixed coefficient vector") {
    const auto rule = build_rule(40, 96);
    BergmanFunction f;
    f.degree = 30;
    f.coeffs = Eigen::VectorXcd::Zero(31);
    for (int n = 0; n <= 30; ++n) f.coeffs[n] = Complex(std::cos(n * 1.7), std::sin(n * 0.9)) / (n + 1.0);
    const auto vals = evaluate_on_rule(f.coeffs, rule);
    const double qn = lp_norm(vals, 2.0, rule);
    CHECK(qn * qn == doctest::Approx(f.coeffs.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("kernel truncation degree") {
    CHECK(min_degree_for_kernel(DiskPoint(0.0, 0.0), 1e-6) == 0);

    const DiskPoint z(0.9, 0.0);
    const int N = min_degree_for_kernel(z, 1e-6);
    // the tail at the returned degree meets the bound, and one less does not
    const double t = z.abs2();
    auto tail = [&](int n) {
        return (n + 2.0) * std::pow(t, n + 1) - (n + 1.0) * std::pow(t, n + 2);
    };
    CHECK(tail(N) <= 1e-12);
    CHECK(tail(N - 1) > 1e-12);

    CHECK(min_degree_for_kernel(DiskPoint(0.95, 0.0), 1e-6) >= N);
    CHECK_THROWS_AS(min_degree_for_kernel(z, 2.0), std::domain_error);
}

TEST_CASE("truncated kernel coefficients") {
    const DiskPoint z(0.8, 0.0);
    const int N = min_degree_for_kernel(z, 1e-8);
    const auto k = normalized_kernel_coeffs(z, N);
    CHECK(k.norm() == doctest::Approx(1.0).epsilon(1e-12));

    // evaluating the coefficient vector reproduces k_z pointwise
    const DiskPoint w(0.3, 0.3);
    BergmanFunction f{N, k};
    CHECK(std::abs(evaluate(f, w) - normalized_kernel(z, w)) < 1e-10);
}

TEST_CASE("evaluate_on_rule matches direct Horner on pow2 and odd angular orders") {
    BergmanFunction f;
    f.degree = 17;
    f.coeffs = Eigen::VectorXcd::Zero(18);
    for (int n = 0; n <= 17; ++n) f.coeffs[n] = Complex(1.0 / (n + 1), -0.1 * n);
    for (int M : {32, 30}) {
        const auto rule = build_rule(10, M);
        const auto vals = evaluate_on_rule(f.coeffs, rule);
        double err = 0;
        for (size_t i = 0; i < rule.nodes.size(); ++i)
            err = std::max(err, std::abs(vals[i] - evaluate(f, DiskPoint(rule.nodes[i]))));
        CHECK(err < 1e-13);
    }
}
