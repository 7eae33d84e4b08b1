#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "bergman/operators.hpp"

namespace bergman {

/// All quantities entering the equivalent-compactness conditions at one point:
/// cond_b = ||S k_z||_2, cond_c = |berezin|, cond_d = leading coefficients of
/// S_z 1, cond_ef = L^p norms of S_z 1. cond_b and cond_c use the truncated
/// kernel normalized within the truncation, so cond_c <= cond_b is exact
/// Cauchy-Schwarz on the coefficient vectors.
struct ConditionReport {
    Complex z;
    int degree = 0;
    double cond_b = 0.0;
    double cond_c = 0.0;
    Eigen::VectorXd cond_d;
    std::map<int, double> cond_ef;
    double kernel_lost_mass = 0.0;       // 1 - ||k_z truncated||^2
    double conjugation_lost_mass = 0.0;  // mass of S_z 1 falling beyond the degree
};

struct SweepPath {
    std::vector<double> angles;
    std::vector<double> radii;  // strictly increasing, inside (0, 1)
};

struct SweepParams {
    int n_max = 16;
    std::vector<int> p_list{2, 4, 6};
    double kernel_tail_eps = 1e-8;  // degree auto-raise target
    int degree_cap = 1024;
    double radius_cap = 0.995;
    int fixed_degree = 0;  // 0 = auto per radius
    SumMode mode = SumMode::Serial;
};

struct BerezinProfile {
    std::string description;
    SweepParams params;
    std::vector<ConditionReport> samples;  // angle-major, radii ascending per ray
};

struct SchurAudit {
    Complex z;
    double lhs = 0.0;       // integral of |(S K_z)(w)| / sqrt(1-|w|^2)
    double rhs_core = 0.0;  // ||S_z 1||_6 / sqrt(1-|z|^2)
    double ratio = 0.0;
    double lemma4_value = 0.0;
};

struct CompactnessDiagnostics {
    std::vector<int> degrees;
    int k = 0;
    Eigen::MatrixXd sigma;  // (k, degrees): sigma_i at each degree
    std::string verdict;    // "compact-consistent" | "non-compact-consistent"
};

/// <S k_z, k_z> of the truncation, i.e. the double power series in z truncated
/// at the operator degree. Rejects z whose truncated kernel loses more than 1%
/// of its mass at this degree.
Complex berezin_operator(const TruncatedOperator& S, DiskPoint z);

struct BerezinSymbolResult {
    Complex value;            // integral of u |k_z|^2 dA
    Complex change_of_vars;   // integral of (u o phi_z) dA
    double discrepancy = 0.0;
};

/// Berezin transform of a symbol, computed both as a weighted average against
/// |k_z|^2 and through the change of variables; the discrepancy between the
/// two routes is reported. Node-sample symbols cannot be composed and are
/// rejected.
BerezinSymbolResult berezin_symbol(const SymbolSpec& u, DiskPoint z, const QuadratureRule& rule);

/// Rule adequate for condition_profile at the given degree (p-norm evaluation
/// grid, exact through monomial degree 2N).
QuadratureRule sweep_norm_rule(int N);

ConditionReport condition_profile(const TruncatedOperator& S, DiskPoint z,
                                  const QuadratureRule& rule, int n_max,
                                  std::span<const int> p_list = {},
                                  SumMode mode = SumMode::Serial);

/// Truncation degree for a sweep sample: kernel-tail target, tier-quantized,
/// capped.
int sweep_degree_for(DiskPoint z, const SweepParams& params);

BerezinProfile boundary_sweep(const OperatorFamily& family, const SweepPath& path,
                              const SweepParams& params);

/// max over the grid of |S~(phi_z(lambda)) - (S_z)~(lambda)|.
double berezin_conjugation_check(const TruncatedOperator& S, DiskPoint z,
                                 std::span<const Complex> lambda_grid);

/// integral of dA(lambda) / (|1 - conj(z) lambda|^(6/5) (1-|lambda|^2)^(3/5)).
double lemma4_integral(DiskPoint z, const SingularRule& srule);

/// Singular rule sized for schur_audit / lemma4_integral at this z.
SingularRule schur_rule_for(DiskPoint z);

/// One row of the kernel-integral bound audit. The singular quadrature is
/// re-run at doubled orders and rejected if the lemma4 integral moves by more
/// than 0.5%.
SchurAudit schur_audit(const TruncatedOperator& S, DiskPoint z, const SingularRule& srule,
                       const QuadratureRule& norm_rule);

/// sigma_1..sigma_k of the truncations at each degree. Verdict convention:
/// sigma_k(N_max) < 1e-3 sigma_1(N_max) (or sigma_1 ~ 0) reads
/// "compact-consistent", anything else "non-compact-consistent".
CompactnessDiagnostics compactness_score(const OperatorFamily& family,
                                         std::span<const int> degrees, int k);

}  // namespace bergman
