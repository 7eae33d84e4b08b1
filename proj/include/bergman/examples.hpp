#pragma once

#include <optional>

#include "bergman/berezin.hpp"

namespace bergman {

/// Diagonal projection onto the coefficients with index in {1, 2, 4, 8, ...}.
/// Index 0 is not retained: the retained indices are the powers 2^n, n >= 0.
TruncatedOperator lacunary_projection(int N);

/// Diagonal unitary with entries (-1)^n.
TruncatedOperator alternating_unitary(int N);

enum class ClosedFormKind { LacunarySeries, AlternatingRational };

struct ClosedFormBerezin {
    ClosedFormKind kind = ClosedFormKind::AlternatingRational;
    int term_cap = 1 << 20;
    double tolerance = 1e-14;
};

/// Boundary profiles of the two counterexamples as functions of t = |z|^2:
/// (1-t)^2 sum (2^n + 1) t^(2^n) for the lacunary projection (compensated
/// summation, adaptive term count), (1-t)^2/(1+t)^2 for the alternating
/// unitary.
double closed_form_berezin(const ClosedFormBerezin& form, double t);

/// ||f o phi_z - f(z)||_2 for analytic f (monomial or lacunary symbols).
/// Computed through ||f o phi_z||^2 = Berezin transform of |f|^2 at z, with
/// T_{|f|^2} acting in closed banded form on the truncated kernel: direct node
/// quadrature of the composed symbol would need angular orders ~1/(1-|z|)
/// times the top lacunary exponent near the boundary. The quadrature rule
/// argument only sizes cross-checkable workloads; pass degree 0 to size
/// automatically from z.
double little_bloch_distance(const SymbolSpec& f, DiskPoint z, int degree = 0);

/// Same quantity by direct node quadrature of f o phi_z - f(z); feasible for
/// moderate |z| and small exponents, kept as the independent route.
double little_bloch_distance_quadrature(const SymbolSpec& f, DiskPoint z,
                                        const QuadratureRule& rule);

struct LibraryEntry {
    std::string name;
    OperatorFamily family;
    std::optional<SumOfProducts> expression;  // present inside the theorem hypothesis
    bool compact_expected = false;
    bool outside_hypothesis = false;          // not a sum of products of Toeplitz operators
    int score_k = 10;                         // spectral depth for the compactness verdict
    std::string provenance;
};

/// The curated operator set exercised by sweeps, audits and the verify suite.
std::vector<LibraryEntry> test_library();

const LibraryEntry& library_entry(const std::string& name);

}  // namespace bergman
