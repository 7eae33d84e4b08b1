#pragma once

#include <functional>
#include <string>

#include <Eigen/Core>

#include "bergman/space.hpp"

namespace bergman {

/// Compression of an operator to span{e_0, ..., e_N}; entry (n, m) = <S e_m, e_n>.
struct TruncatedOperator {
    int degree = 0;
    Eigen::MatrixXcd entries;

    static TruncatedOperator identity(int N);
    static TruncatedOperator zero(int N);
    static TruncatedOperator diagonal(const Eigen::VectorXcd& d);
};

/// A named operator constructible at any truncation degree. Sweeps and
/// compactness diagnostics rebuild the operator as the degree is raised.
struct OperatorFamily {
    std::string name;
    std::function<TruncatedOperator(int degree)> build;
    bool toeplitz_expression = true;
};

/// Entries by quadrature of u e_m conj(e_n) against the rule. Radial symbols
/// assemble on the diagonal and monomials on their single band; anything else
/// goes through per-harmonic angular transforms of the node samples.
/// Rejects rules with exact_degree < 2N + deg(u) for polynomial symbols.
TruncatedOperator toeplitz(const SymbolSpec& u, int N, const QuadratureRule& rule);

/// Sum of products of Toeplitz factors. Factors are built at a working degree
/// N + margin and only the leading N-block is reported; the margin is the sum
/// of factor bandwidths when every factor is banded (exact), N otherwise.
TruncatedOperator toeplitz_expression(const SumOfProducts& expr, int N,
                                      const QuadratureRule& rule);

/// Working degree at which a factor must be built so that its conjugation by
/// U_z is exact on the leading `target` block: columns of U_z spread to rows
/// ~ m (1+|z|)/(1-|z|) plus a geometric tail.
int unitary_work_degree(DiskPoint z, int target, double tol = 1e-12);

/// Tensor rule sized for mobius_unitary at the given z and degree.
QuadratureRule unitary_rule(DiskPoint z, int N, double tol = 1e-12);

/// U_z f = (f o phi_z) phi_z' by column-wise quadrature of the rule.
/// Column 0 is cross-checked against the closed form (|z|^2 - 1) K_z and the
/// construction is rejected if safe columns lose more than 1e-6 of their mass
/// or if the rule cannot resolve the column spread at this z and N.
TruncatedOperator mobius_unitary(DiskPoint z, int N, const QuadratureRule& rule);

/// Same entries through the Taylor recurrence of phi_z^m phi_z'; exact
/// truncation of the infinite matrix up to roundoff, O(N^2). Used wherever
/// quadrature cost would explode (boundary sweeps, large degrees).
TruncatedOperator mobius_unitary_series(DiskPoint z, int N);

/// U_z S U_z at the truncation degree of S (conjugation of the truncated
/// operator; entries of U_z are exact, so no margin is needed for this
/// object). To approximate the conjugate of the underlying infinite operator
/// on a leading block, build S at unitary_work_degree first.
TruncatedOperator conjugate(const TruncatedOperator& S, DiskPoint z);

/// Coefficients of S_z 1 = U_z S U_z e_0 without forming the conjugated
/// matrix; U may be shared across calls at the same (z, degree).
Eigen::VectorXcd conjugate_apply_one(const TruncatedOperator& S, const TruncatedOperator& U);

/// Gram matrix of the Hankel operator: T_{|u|^2} - T_{conj u} T_u.
TruncatedOperator hankel_gram(const SymbolSpec& u, int N, const QuadratureRule& rule);

/// Column m scaled by r^(2m+2): the compression of the integral operator
/// with kernel (S K_z)(w) restricted to z in rD.
TruncatedOperator cutoff(const TruncatedOperator& S, double r);

TruncatedOperator adjoint(const TruncatedOperator& S);

BergmanFunction apply(const TruncatedOperator& S, const BergmanFunction& f);

/// Full set of singular values, descending.
Eigen::VectorXd singular_values(const TruncatedOperator& S);

/// Largest singular value by deterministic power iteration on S^H S; a lower
/// bound for the operator norm of the underlying operator.
double operator_norm_lower_bound(const TruncatedOperator& S, int max_iters = 200,
                                 double tol = 1e-12);

/// Rule sized so toeplitz() meets its exactness precondition at degree N for
/// symbols of polynomial degree <= deg; discontinuous symbols get the
/// documented elevated radial order.
QuadratureRule rule_for_toeplitz(int N, int deg = 2, bool discontinuous = false);

}  // namespace bergman
