#include "bergman/berezin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fft_util.hpp"

namespace bergman {

namespace {

constexpr double kKernelMassReject = 0.01;

int geometric_tail_length(double r, double tol) {
    if (r < 1e-6) return 0;
    return static_cast<int>(std::ceil(std::log(tol) / std::log(r)));
}

}  // namespace

Complex berezin_operator(const TruncatedOperator& S, DiskPoint z) {
    const Eigen::VectorXcd k = normalized_kernel_coeffs(z, S.degree);
    const double lost = 1.0 - k.squaredNorm();
    if (lost > kKernelMassReject)
        throw NumericError("berezin_operator: truncated kernel at |z|=" +
                           std::to_string(z.abs()) + " loses mass " + std::to_string(lost) +
                           " at degree " + std::to_string(S.degree));
    return k.dot(S.entries * k);  // Eigen dot conjugates the left argument
}

BerezinSymbolResult berezin_symbol(const SymbolSpec& u, DiskPoint z,
                                   const QuadratureRule& rule) {
    if (std::holds_alternative<SampleSymbol>(u.variant()))
        throw std::invalid_argument("berezin_symbol: node-sample symbols cannot be composed");

    const int L = geometric_tail_length(z.abs(), 1e-12);
    if (rule.angular_order < 2 * L + 8 || rule.exact_degree < 2 * L)
        throw NumericError("berezin_symbol: rule cannot resolve |k_z|^2 at |z|=" +
                           std::to_string(z.abs()));

    BerezinSymbolResult out;
    Complex direct = 0.0, composed = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const Complex w = rule.nodes[i];
        const Complex kz = normalized_kernel(z, DiskPoint(w));
        direct += rule.weights[i] * u(w) * std::norm(kz);
        composed += rule.weights[i] * u(mobius(z, DiskPoint(w)));
    }
    out.value = direct;
    out.change_of_vars = composed;
    out.discrepancy = std::abs(direct - composed);
    return out;
}

QuadratureRule sweep_norm_rule(int N) {
    return build_rule(N + 32, detail::next_pow2(2 * N + 128));
}

ConditionReport condition_profile(const TruncatedOperator& S, DiskPoint z,
                                  const QuadratureRule& rule, int n_max,
                                  std::span<const int> p_list, SumMode mode) {
    static const int default_ps[] = {2, 4, 6};
    if (p_list.empty()) p_list = default_ps;
    const int N = S.degree;
    if (rule.exact_degree < 2 * N)
        throw NumericError("condition_profile: rule exact_degree below twice the degree");

    ConditionReport rep;
    rep.z = z.value();
    rep.degree = N;

    const Eigen::VectorXcd k = normalized_kernel_coeffs(z, N);
    const double mass = k.squaredNorm();
    rep.kernel_lost_mass = 1.0 - mass;
    if (rep.kernel_lost_mass > kKernelMassReject)
        throw NumericError("condition_profile: kernel mass loss " +
                           std::to_string(rep.kernel_lost_mass) + " at degree " +
                           std::to_string(N));
    const Eigen::VectorXcd khat = k / std::sqrt(mass);
    const Eigen::VectorXcd Sk = S.entries * khat;
    rep.cond_b = Sk.norm();
    rep.cond_c = std::abs(khat.dot(Sk));

    const TruncatedOperator U = mobius_unitary_series(z, N);
    const Eigen::VectorXcd mid = S.entries * U.entries.col(0);
    const Eigen::VectorXcd g = U.entries * mid;
    // U is unitary on the full space, so mass escaping the truncation is
    // visible as the norm drop across the final application
    rep.conjugation_lost_mass = std::max(0.0, mid.squaredNorm() - g.squaredNorm());

    const int d = std::min(n_max, N);
    rep.cond_d.resize(d + 1);
    for (int n = 0; n <= d; ++n) rep.cond_d[n] = std::abs(g[n]);

    const auto vals = evaluate_on_rule(g, rule);
    for (int p : p_list) rep.cond_ef[p] = lp_norm(vals, p, rule, mode);
    return rep;
}

int sweep_degree_for(DiskPoint z, const SweepParams& params) {
    if (params.fixed_degree > 0) return params.fixed_degree;
    const int needed = min_degree_for_kernel(z, params.kernel_tail_eps);
    int tier = 64;
    while (tier < needed && tier < params.degree_cap) tier *= 2;
    return std::min(tier, params.degree_cap);
}

BerezinProfile boundary_sweep(const OperatorFamily& family, const SweepPath& path,
                              const SweepParams& params) {
    if (path.radii.empty() || path.angles.empty())
        throw std::invalid_argument("boundary_sweep: empty path");
    if (!std::is_sorted(path.radii.begin(), path.radii.end()) ||
        std::adjacent_find(path.radii.begin(), path.radii.end()) != path.radii.end())
        throw std::invalid_argument("boundary_sweep: radii must be strictly increasing");
    for (double r : path.radii)
        if (r <= 0.0 || r > params.radius_cap)
            throw NumericError("boundary_sweep: radius " + std::to_string(r) +
                               " beyond feasibility cap " + std::to_string(params.radius_cap));

    BerezinProfile profile;
    profile.description = family.name;
    profile.params = params;

    std::map<int, TruncatedOperator> ops;
    std::map<int, QuadratureRule> rules;
    for (double theta : path.angles) {
        for (double r : path.radii) {
            const DiskPoint z(std::polar(r, theta));
            const int N = sweep_degree_for(z, params);
            auto it = ops.find(N);
            if (it == ops.end()) {
                it = ops.emplace(N, family.build(N)).first;
                rules.emplace(N, sweep_norm_rule(N));
            }
            profile.samples.push_back(condition_profile(it->second, z, rules.at(N),
                                                        params.n_max, params.p_list,
                                                        params.mode));
        }
    }
    return profile;
}

double berezin_conjugation_check(const TruncatedOperator& S, DiskPoint z,
                                 std::span<const Complex> lambda_grid) {
    const TruncatedOperator Sz = conjugate(S, z);
    double worst = 0.0;
    for (const Complex lam : lambda_grid) {
        const DiskPoint l(lam);
        const Complex lhs = berezin_operator(S, DiskPoint(mobius(z, l)));
        const Complex rhs = berezin_operator(Sz, l);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double lemma4_integral(DiskPoint z, const SingularRule& srule) {
    double acc = 0.0;
    for (size_t i = 0; i < srule.nodes.size(); ++i) {
        const Complex lam = srule.nodes[i];
        const double a = std::abs(1.0 - std::conj(z.value()) * lam);
        const double b = 1.0 - std::norm(lam);
        acc += srule.weights[i] / (std::pow(a, 1.2) * std::pow(b, 0.6));
    }
    return acc;
}

SingularRule schur_rule_for(DiskPoint z) {
    const double r = z.abs();
    const int M = detail::next_pow2(std::max(512, static_cast<int>(32.0 / (1.0 - r))));
    return build_singular_rule(2.5, 96, M);
}

SchurAudit schur_audit(const TruncatedOperator& S, DiskPoint z, const SingularRule& srule,
                       const QuadratureRule& norm_rule) {
    SchurAudit audit;
    audit.z = z.value();

    audit.lemma4_value = lemma4_integral(z, srule);
    {
        const SingularRule fine =
            build_singular_rule(srule.grading, 2 * srule.radial_order, 2 * srule.angular_order);
        const double refined = lemma4_integral(z, fine);
        const double rel = std::abs(refined - audit.lemma4_value) /
                           std::max(1e-300, std::abs(refined));
        if (rel > 5e-3)
            throw NumericError("schur_audit: singular quadrature not converged, doubling moved "
                               "lemma4 by rel " + std::to_string(rel));
    }

    const int N = S.degree;
    const Eigen::VectorXcd SKz = S.entries * kernel_coeffs(z, N);
    const auto vals = evaluate_on_rule(SKz, srule);
    double lhs = 0.0;
    for (size_t i = 0; i < vals.size(); ++i)
        lhs += srule.weights[i] * std::abs(vals[i]) / std::sqrt(1.0 - std::norm(srule.nodes[i]));
    audit.lhs = lhs;

    const TruncatedOperator U = mobius_unitary_series(z, N);
    const Eigen::VectorXcd g = conjugate_apply_one(S, U);
    const auto gvals = evaluate_on_rule(g, norm_rule);
    audit.rhs_core = lp_norm(gvals, 6.0, norm_rule) / std::sqrt(1.0 - z.abs2());

    if (audit.rhs_core > 1e-14)
        audit.ratio = audit.lhs / audit.rhs_core;
    else
        audit.ratio = audit.lhs < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
    return audit;
}

CompactnessDiagnostics compactness_score(const OperatorFamily& family,
                                         std::span<const int> degrees, int k) {
    if (degrees.empty()) throw std::invalid_argument("compactness_score: no degrees");
    if (!std::is_sorted(degrees.begin(), degrees.end()))
        throw std::invalid_argument("compactness_score: degrees must be increasing");
    if (k < 1) throw std::invalid_argument("compactness_score: k >= 1");

    CompactnessDiagnostics diag;
    diag.degrees.assign(degrees.begin(), degrees.end());
    diag.k = k;
    diag.sigma = Eigen::MatrixXd::Zero(k, static_cast<int>(degrees.size()));
    for (size_t j = 0; j < degrees.size(); ++j) {
        const Eigen::VectorXd sv = singular_values(family.build(degrees[j]));
        for (int i = 0; i < k; ++i)
            diag.sigma(i, static_cast<int>(j)) = i < sv.size() ? sv[i] : 0.0;
    }
    const int last = static_cast<int>(degrees.size()) - 1;
    const double s1 = diag.sigma(0, last);
    const double sk = diag.sigma(k - 1, last);
    const bool compact = (s1 < 1e-12) || (sk < 1e-3 * s1);
    diag.verdict = compact ? "compact-consistent" : "non-compact-consistent";
    return diag;
}

}  // namespace bergman
