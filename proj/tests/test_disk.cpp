#include <doctest.h>

#include "bergman/disk.hpp"

using namespace bergman;

TEST_CASE("mobius fixed values") {
    const DiskPoint z(0.3, 0.4);
    CHECK(std::abs(mobius(z, z)) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(mobius(DiskPoint(0.5, 0.0), DiskPoint(0.0, 0.0)) - Complex(0.5)) < 1e-15);

    // involution at a specific pair
    const DiskPoint z2(0.5, 0.0), w(0.0, 0.3);
    const Complex back = mobius(z2, DiskPoint(mobius(z2, w)));
    CHECK(std::abs(back - w.value()) < 1e-15);
}

TEST_CASE("mobius maps into the disk") {
    for (double rz : {0.0, 0.4, 0.9}) {
        for (double rw : {0.1, 0.6, 0.94}) {
            const DiskPoint z(std::polar(rz, 0.7)), w(std::polar(rw, 2.1));
            CHECK(std::abs(mobius(z, w)) < 1.0);
        }
    }
}

TEST_CASE("mobius derivative closed forms") {
    // phi_0(w) = -w
    CHECK(std::abs(mobius_derivative(DiskPoint(0.0, 0.0), DiskPoint(0.2, 0.6)) - Complex(-1.0)) <
          1e-15);

    // |phi_z'(w)| = |k_z(w)|
    const DiskPoint z(0.6, 0.0), w(0.2, 0.1);
    CHECK(std::abs(mobius_derivative(z, w)) ==
          doctest::Approx(std::abs(normalized_kernel(z, w))).epsilon(1e-14));

    // phi_z'(z) (1 - |z|^2) = -1
    const DiskPoint z7(0.0, 0.7);
    CHECK(std::abs(mobius_derivative(z7, z7) * (1.0 - z7.abs2()) - Complex(-1.0)) < 1e-14);
}

TEST_CASE("kernel closed forms") {
    CHECK(std::abs(kernel(DiskPoint(0.0, 0.0), DiskPoint(0.3, -0.2)) - Complex(1.0)) < 1e-15);

    const DiskPoint half(0.5, 0.0);
    CHECK(std::real(kernel(half, half)) == doctest::Approx(16.0 / 9.0).epsilon(1e-15));
    CHECK(std::real(normalized_kernel(half, half)) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));

    // Hermitian symmetry
    const DiskPoint a(0.2, 0.0), b(0.0, 0.3);
    CHECK(std::abs(kernel(a, b) - std::conj(kernel(b, a))) < 1e-15);

    CHECK(std::abs(normalized_kernel(DiskPoint(0.0, 0.0), DiskPoint(0.1, 0.8)) - Complex(1.0)) <
          1e-15);
}

TEST_CASE("boundary guard rejects points at or outside the circle") {
    CHECK_THROWS_AS(DiskPoint(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(DiskPoint(0.8, 0.7), std::domain_error);
    CHECK_THROWS_AS(DiskPoint(1.0 - 1e-13, 0.0), std::domain_error);
    CHECK_NOTHROW(DiskPoint(1.0 - 1e-9, 0.0));
}

TEST_CASE("identity 78 over a grid") {
    for (double rz : {0.0, 0.5, 0.95}) {
        for (double rl : {0.3, 0.95}) {
            const DiskPoint z(std::polar(rz, 1.3)), lam(std::polar(rl, -0.4));
            const double lhs = 1.0 - std::norm(mobius(z, lam));
            const double rhs = (1.0 - z.abs2()) * (1.0 - lam.abs2()) /
                               std::norm(1.0 - std::conj(z.value()) * lam.value());
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
        }
    }
}
