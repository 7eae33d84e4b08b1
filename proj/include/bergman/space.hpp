#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "bergman/quadrature.hpp"

namespace bergman {

/// Coefficients c_n against the orthonormal basis e_n(w) = sqrt(n+1) w^n,
/// so ||f||_2^2 = sum |c_n|^2 and f(0) = c_0.
struct BergmanFunction {
    int degree = 0;
    Eigen::VectorXcd coeffs;  // length degree + 1

    static BergmanFunction basis(int n, int degree);
    double norm2() const { return coeffs.norm(); }
};

/// f(w) = sum c_n sqrt(n+1) w^n.
Complex evaluate(const BergmanFunction& f, DiskPoint w);

// ---------------------------------------------------------------------------
// Bounded symbols
// ---------------------------------------------------------------------------

struct ConstantSymbol { Complex c; };
struct MonomialSymbol { int a = 0, b = 0; };         // w^a conj(w)^b
struct RadialTableSymbol {                           // piecewise-linear in r
    std::vector<double> radii;
    std::vector<double> values;
};
struct IndicatorDiskSymbol { double r = 0.5; };
struct IndicatorAnnulusSymbol { double r1 = 0.0, r2 = 1.0; };
struct LacunarySymbol { int terms = 1; };            // sum_{n<terms} w^(2^n)
struct ConjLacunarySymbol { int terms = 1; };
struct SampleSymbol {                                // values at the nodes of one rule
    std::vector<Complex> values;
    double sup = 0.0;
};

/// A bounded symbol on the disk, evaluable pointwise (except node samples,
/// which are tied to the rule they were taken on).
class SymbolSpec {
public:
    using Variant = std::variant<ConstantSymbol, MonomialSymbol, RadialTableSymbol,
                                 IndicatorDiskSymbol, IndicatorAnnulusSymbol,
                                 LacunarySymbol, ConjLacunarySymbol, SampleSymbol>;

    static SymbolSpec constant(Complex c);
    static SymbolSpec monomial(int a, int b);
    static SymbolSpec radial_table(std::vector<double> radii, std::vector<double> values);
    static SymbolSpec indicator_disk(double r);
    static SymbolSpec indicator_annulus(double r1, double r2);
    static SymbolSpec lacunary(int terms);
    static SymbolSpec conj_lacunary(int terms);
    static SymbolSpec samples(std::vector<Complex> values, double sup);

    const Variant& variant() const { return v_; }
    double sup_bound() const { return sup_bound_; }
    SymbolSpec& with_sup_bound(double s) { sup_bound_ = s; return *this; }

    /// Pointwise evaluation; throws for node-sample symbols.
    Complex operator()(Complex w) const;

    /// u(w) depends only on |w|.
    bool is_radial() const;
    /// Single angular harmonic e^{i k theta}; k = a - b for monomials, 0 for radial.
    std::optional<int> harmonic() const;
    /// Total polynomial degree in w, conj(w) when u is a monomial/constant.
    std::optional<int> poly_degree() const;
    /// Analytic symbols admit the composition shortcuts.
    bool is_analytic() const;

    SymbolSpec conjugated() const;
    /// |u|^2 when expressible in closed form (monomial, constant, indicators, radial).
    std::optional<SymbolSpec> abs_squared() const;

    std::string describe() const;

private:
    explicit SymbolSpec(Variant v, double sup) : v_(std::move(v)), sup_bound_(sup) {}
    Variant v_;
    double sup_bound_;
};

/// Finite sum of scalar-weighted products of Toeplitz symbols.
struct SumOfProducts {
    struct Term {
        Complex coef{1.0, 0.0};
        std::vector<SymbolSpec> factors;
    };
    std::vector<Term> terms;
};

// ---------------------------------------------------------------------------
// Projection, norms, kernel truncation
// ---------------------------------------------------------------------------

/// Orthogonal projection of node samples onto span{e_0, ..., e_N} by
/// quadrature. Rejects rules with exact_degree < 2N.
BergmanFunction bergman_project(std::span<const Complex> samples, const QuadratureRule& rule,
                                int N);

/// (integral |v|^p dA)^(1/p) over the rule nodes; p >= 1.
double lp_norm(std::span<const Complex> samples, double p, const QuadratureRule& rule,
               SumMode mode = SumMode::Serial);

/// Smallest N such that the squared L2 tail of k_z beyond degree N is <= eps^2.
int min_degree_for_kernel(DiskPoint z, double eps);

/// Basis coefficients of K_z truncated at degree N: sqrt(n+1) conj(z)^n.
Eigen::VectorXcd kernel_coeffs(DiskPoint z, int N);

/// Basis coefficients of k_z truncated at degree N (no renormalization).
Eigen::VectorXcd normalized_kernel_coeffs(DiskPoint z, int N);

/// Evaluate a coefficient vector (basis e_n) at every node of a rule.
/// Grid evaluation runs one inverse DFT per radius when angular_order is a
/// power of two, Horner otherwise.
std::vector<Complex> evaluate_on_rule(const Eigen::VectorXcd& coeffs, const QuadratureRule& rule);

/// Evaluate a pointwise symbol at every node of a rule.
std::vector<Complex> sample_symbol(const SymbolSpec& u, const QuadratureRule& rule);

}  // namespace bergman
