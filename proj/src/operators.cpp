#include "bergman/operators.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "fft_util.hpp"

namespace bergman {

TruncatedOperator TruncatedOperator::identity(int N) {
    return {N, Eigen::MatrixXcd::Identity(N + 1, N + 1)};
}

TruncatedOperator TruncatedOperator::zero(int N) {
    return {N, Eigen::MatrixXcd::Zero(N + 1, N + 1)};
}

TruncatedOperator TruncatedOperator::diagonal(const Eigen::VectorXcd& d) {
    TruncatedOperator S;
    S.degree = static_cast<int>(d.size()) - 1;
    S.entries = d.asDiagonal();
    return S;
}

// ---------------------------------------------------------------------------
// Toeplitz assembly
// ---------------------------------------------------------------------------

namespace {

// sum_q wr_q r_q^p f(q); radial powers evaluated in s = r^2
Complex radial_moment(const QuadratureRule& rule, int p, const std::vector<Complex>& fvals) {
    Complex acc = 0.0;
    for (int q = 0; q < rule.radial_order; ++q) {
        const double rp = (p % 2 == 0) ? std::pow(rule.radial_s[q], p / 2)
                                       : std::pow(rule.radial_s[q], 0.5 * p);
        acc += rule.radial_weights[q] * rp * fvals[q];
    }
    return acc;
}

void require_exactness(const SymbolSpec& u, int N, const QuadratureRule& rule) {
    if (const auto deg = u.poly_degree()) {
        if (rule.exact_degree < 2 * N + *deg)
            throw NumericError("toeplitz: rule exact_degree " +
                               std::to_string(rule.exact_degree) + " below 2N+deg = " +
                               std::to_string(2 * N + *deg));
    }
}

// angular transforms uhat_q(k) = (1/M) sum_t u(q,t) e^{+ik theta_t} for |k| <= kmax
Eigen::MatrixXcd angular_harmonics(const std::vector<Complex>& samples,
                                   const QuadratureRule& rule, int kmax) {
    const int R = rule.radial_order, M = rule.angular_order;
    Eigen::MatrixXcd hat(R, 2 * kmax + 1);  // column j holds k = j - kmax
    if (detail::is_pow2(M)) {
        std::vector<Complex> bins(M);
        for (int q = 0; q < R; ++q) {
            for (int t = 0; t < M; ++t) bins[t] = samples[static_cast<size_t>(q) * M + t];
            detail::fft_radix2(bins, /*inverse=*/true);  // B_j = sum_t u e^{+2 pi i j t / M}
            for (int k = -kmax; k <= kmax; ++k) {
                const int j = ((k % M) + M) % M;
                Complex v = bins[j] / static_cast<double>(M);
                if (rule.angle_offset != 0.0)
                    v *= std::polar(1.0, 2.0 * std::numbers::pi * k * rule.angle_offset / M);
                hat(q, k + kmax) = v;
            }
        }
    } else {
        for (int q = 0; q < R; ++q) {
            for (int k = -kmax; k <= kmax; ++k) {
                Complex acc = 0.0;
                for (int t = 0; t < M; ++t)
                    acc += samples[static_cast<size_t>(q) * M + t] *
                           std::polar(1.0, k * rule.angle(t));
                hat(q, k + kmax) = acc / static_cast<double>(M);
            }
        }
    }
    return hat;
}

}  // namespace

TruncatedOperator toeplitz(const SymbolSpec& u, int N, const QuadratureRule& rule) {
    if (N < 0) throw std::invalid_argument("toeplitz: N >= 0");
    require_exactness(u, N, rule);

    TruncatedOperator S = TruncatedOperator::zero(N);
    const int R = rule.radial_order;

    if (u.is_radial()) {
        std::vector<Complex> uq(R);
        for (int q = 0; q < R; ++q)
            uq[q] = u(Complex(rule.radius(q), 0.0));
        for (int n = 0; n <= N; ++n)
            S.entries(n, n) = (n + 1.0) * radial_moment(rule, 2 * n, uq);
        return S;
    }

    if (const auto* mono = std::get_if<MonomialSymbol>(&u.variant())) {
        const int a = mono->a, b = mono->b;
        std::vector<Complex> ones(R, Complex(1.0));
        for (int m = 0; m <= N; ++m) {
            const int n = m + a - b;
            if (n < 0 || n > N) continue;
            S.entries(n, m) = std::sqrt((n + 1.0) * (m + 1.0)) *
                              radial_moment(rule, n + m + a + b, ones);
        }
        return S;
    }

    // general path: per-harmonic angular transforms of node samples
    const auto samples = sample_symbol(u, rule);
    const Eigen::MatrixXcd hat = angular_harmonics(samples, rule, N);
    for (int m = 0; m <= N; ++m) {
        for (int n = 0; n <= N; ++n) {
            const int k = m - n;
            Complex acc = 0.0;
            for (int q = 0; q < R; ++q) {
                const double rp = std::pow(rule.radial_s[q], 0.5 * (n + m));
                acc += rule.radial_weights[q] * rp * hat(q, k + N);
            }
            S.entries(n, m) = std::sqrt((n + 1.0) * (m + 1.0)) * acc;
        }
    }
    return S;
}

namespace {

// bandwidth contributed by one factor to the product truncation margin;
// nullopt means "unknown, fall back to margin = N"
std::optional<int> factor_bandwidth(const SymbolSpec& u) {
    if (auto deg = u.poly_degree()) return *deg;
    if (u.is_radial()) return 0;
    return std::nullopt;
}

}  // namespace

TruncatedOperator toeplitz_expression(const SumOfProducts& expr, int N,
                                      const QuadratureRule& rule) {
    if (expr.terms.empty()) throw std::invalid_argument("toeplitz_expression: empty expression");

    int margin = 0;
    for (const auto& term : expr.terms) {
        if (term.factors.empty())
            throw std::invalid_argument("toeplitz_expression: term without factors");
        int term_margin = 0;
        for (const auto& f : term.factors) {
            if (auto bw = factor_bandwidth(f)) {
                term_margin += *bw;
            } else {
                term_margin = N;
                break;
            }
        }
        margin = std::max(margin, term_margin);
    }

    const int W = N + margin;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(W + 1, W + 1);
    for (const auto& term : expr.terms) {
        Eigen::MatrixXcd prod = toeplitz(term.factors.front(), W, rule).entries;
        for (size_t i = 1; i < term.factors.size(); ++i)
            prod = (prod * toeplitz(term.factors[i], W, rule).entries).eval();
        acc += term.coef * prod;
    }
    return {N, acc.topLeftCorner(N + 1, N + 1)};
}

// ---------------------------------------------------------------------------
// Mobius unitaries
// ---------------------------------------------------------------------------

namespace {

int geometric_tail_length(double r, double tol) {
    if (r < 1e-6) return 0;
    return static_cast<int>(std::ceil(std::log(tol) / std::log(r)));
}

// rows needed to hold all but ~tol of the mass of U_z e_m, m <= target
int column_span(DiskPoint z, int target, double tol) {
    const double r = z.abs();
    const int band = static_cast<int>(std::ceil(target * (1.0 + r) / (1.0 - r)));
    return band + std::max(64, 2 * geometric_tail_length(r, tol)) + 8;
}

}  // namespace

int unitary_work_degree(DiskPoint z, int target, double tol) {
    return column_span(z, target, tol);
}

QuadratureRule unitary_rule(DiskPoint z, int N, double tol) {
    const int M = detail::next_pow2(column_span(z, N, tol));
    const int R = N / 2 + 16;
    return build_rule(R, M);
}

TruncatedOperator mobius_unitary(DiskPoint z, int N, const QuadratureRule& rule) {
    if (N < 0) throw std::invalid_argument("mobius_unitary: N >= 0");
    const int R = rule.radial_order, M = rule.angular_order;
    if (M < column_span(z, N, 1e-10))
        throw NumericError("mobius_unitary: angular order " + std::to_string(M) +
                           " cannot resolve column spread; need >= " +
                           std::to_string(column_span(z, N, 1e-10)));
    if (2 * R - 1 < N)
        throw NumericError("mobius_unitary: radial order too small for degree");

    TruncatedOperator U = TruncatedOperator::zero(N);

    // psi_m = phi_z^m phi_z' evaluated on the grid, advanced column by column
    std::vector<Complex> phi(rule.nodes.size()), psi(rule.nodes.size());
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const Complex w = rule.nodes[i];
        const Complex d = 1.0 - std::conj(z.value()) * w;
        phi[i] = (z.value() - w) / d;
        psi[i] = (z.abs2() - 1.0) / (d * d);
    }

    std::vector<Complex> bins(M);
    Eigen::VectorXd sqn(N + 1);
    for (int n = 0; n <= N; ++n) sqn[n] = std::sqrt(n + 1.0);

    for (int m = 0; m <= N; ++m) {
        if (m > 0)
            for (size_t i = 0; i < psi.size(); ++i) psi[i] *= phi[i];

        Eigen::VectorXcd col = Eigen::VectorXcd::Zero(N + 1);
        for (int q = 0; q < R; ++q) {
            // harmonic content of psi_m at this radius
            if (detail::is_pow2(M)) {
                for (int t = 0; t < M; ++t) bins[t] = psi[static_cast<size_t>(q) * M + t];
                detail::fft_radix2(bins, /*inverse=*/false);  // bin n = sum_t psi e^{-2 pi i n t/M}
                const double rq = rule.radius(q);
                double rn = rule.radial_weights[q];
                for (int n = 0; n <= N; ++n) {
                    Complex bn = bins[n % M];
                    if (rule.angle_offset != 0.0)
                        bn *= std::polar(1.0, -2.0 * std::numbers::pi * n * rule.angle_offset / M);
                    col[n] += rn * bn / static_cast<double>(M);
                    rn *= rq;
                }
            } else {
                const double rq = rule.radius(q);
                double rn = rule.radial_weights[q];
                for (int n = 0; n <= N; ++n) {
                    Complex acc = 0.0;
                    for (int t = 0; t < M; ++t)
                        acc += psi[static_cast<size_t>(q) * M + t] *
                               std::polar(1.0, -n * rule.angle(t));
                    col[n] += rn * acc / static_cast<double>(M);
                    rn *= rq;
                }
            }
        }
        U.entries.col(m) = std::sqrt(m + 1.0) * col.cwiseProduct(sqn.cast<Complex>());
    }

    // mandatory anchor: column 0 must match (|z|^2 - 1) K_z
    {
        const Eigen::VectorXcd c0 = (z.abs2() - 1.0) * kernel_coeffs(z, N);
        const double err = (U.entries.col(0) - c0).cwiseAbs().maxCoeff();
        if (err > 1e-8)
            throw NumericError("mobius_unitary: column 0 deviates from closed form by " +
                               std::to_string(err));
    }

    // columns whose spread fits inside the truncation must keep their mass
    const double r = z.abs();
    const int lc = std::max(64, 2 * geometric_tail_length(r, 1e-10)) + 8;
    const int m_safe = static_cast<int>(std::floor((N - lc) * (1.0 - r) / (1.0 + r)));
    for (int m = 0; m <= std::min(m_safe, N); ++m) {
        const double mass = U.entries.col(m).squaredNorm();
        if (mass < 1.0 - 1e-6)
            throw NumericError("mobius_unitary: truncated column " + std::to_string(m) +
                               " lost L2 mass " + std::to_string(1.0 - mass));
    }
    return U;
}

TruncatedOperator mobius_unitary_series(DiskPoint z, int N) {
    if (N < 0) throw std::invalid_argument("mobius_unitary_series: N >= 0");
    const double t = z.abs2();
    const Complex zb = std::conj(z.value());
    const int J = N + 1;

    TruncatedOperator U = TruncatedOperator::zero(N);
    Eigen::VectorXcd col(J), h(J);
    Eigen::VectorXd sqn(J);
    for (int n = 0; n < J; ++n) sqn[n] = std::sqrt(n + 1.0);

    // Taylor coefficients of phi_z' = (|z|^2 - 1) sum (k+1) conj(z)^k w^k
    {
        Complex p = 1.0;
        for (int k = 0; k < J; ++k) {
            col[k] = (t - 1.0) * (k + 1.0) * p;
            p *= zb;
        }
    }
    U.entries.col(0) = col.cwiseQuotient(sqn.cast<Complex>());

    for (int m = 1; m < J; ++m) {
        // col <- coefficients of phi_z * col; multiplication by phi_z is causal,
        // so rows <= N stay exact regardless of the truncation
        Complex acc = 0.0;
        h[0] = 0.0;
        for (int j = 1; j < J; ++j) {
            acc = col[j - 1] + zb * acc;
            h[j] = acc;
        }
        col = z.value() * col - (1.0 - t) * h;
        U.entries.col(m) = std::sqrt(m + 1.0) * col.cwiseQuotient(sqn.cast<Complex>());
    }
    return U;
}

TruncatedOperator conjugate(const TruncatedOperator& S, DiskPoint z) {
    const TruncatedOperator U = mobius_unitary_series(z, S.degree);
    return {S.degree, U.entries * S.entries * U.entries};
}

Eigen::VectorXcd conjugate_apply_one(const TruncatedOperator& S, const TruncatedOperator& U) {
    if (S.degree != U.degree) throw std::invalid_argument("conjugate_apply_one: degree mismatch");
    return U.entries * (S.entries * U.entries.col(0)).eval();
}

TruncatedOperator hankel_gram(const SymbolSpec& u, int N, const QuadratureRule& rule) {
    const SymbolSpec ubar = u.conjugated();
    SymbolSpec usq = [&] {
        if (auto sq = u.abs_squared()) return *sq;
        auto vals = sample_symbol(u, rule);
        for (auto& v : vals) v = std::norm(v);
        return SymbolSpec::samples(std::move(vals), u.sup_bound() * u.sup_bound());
    }();

    int margin = N;
    if (auto bw = factor_bandwidth(u)) margin = 2 * *bw;
    const int W = N + margin;
    const Eigen::MatrixXcd G = toeplitz(usq, W, rule).entries -
                               toeplitz(ubar, W, rule).entries * toeplitz(u, W, rule).entries;
    return {N, G.topLeftCorner(N + 1, N + 1)};
}

TruncatedOperator cutoff(const TruncatedOperator& S, double r) {
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error("cutoff: r in (0,1)");
    TruncatedOperator out = S;
    double scale = r * r;  // r^(2m+2) at m = 0
    for (int m = 0; m <= S.degree; ++m) {
        out.entries.col(m) *= scale;
        scale *= r * r;
    }
    return out;
}

TruncatedOperator adjoint(const TruncatedOperator& S) {
    return {S.degree, S.entries.adjoint()};
}

BergmanFunction apply(const TruncatedOperator& S, const BergmanFunction& f) {
    if (f.degree != S.degree) throw std::invalid_argument("apply: degree mismatch");
    BergmanFunction g;
    g.degree = S.degree;
    g.coeffs = S.entries * f.coeffs;
    return g;
}

Eigen::VectorXd singular_values(const TruncatedOperator& S) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(S.entries);
    return svd.singularValues();
}

double operator_norm_lower_bound(const TruncatedOperator& S, int max_iters, double tol) {
    const int n = static_cast<int>(S.entries.rows());
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = Complex(1.0, 1.0 / (i + 2.0));  // fixed start
    v.normalize();
    double sigma2 = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        Eigen::VectorXcd w = S.entries.adjoint() * (S.entries * v).eval();
        const double next = w.norm();
        if (next == 0.0) return 0.0;
        v = w / next;
        if (std::abs(next - sigma2) <= tol * std::max(1.0, next) && it > 4) {
            sigma2 = next;
            break;
        }
        sigma2 = next;
    }
    return std::sqrt(sigma2);
}

QuadratureRule rule_for_toeplitz(int N, int deg, bool discontinuous) {
    const int R = std::max(N + deg / 2 + 2, discontinuous ? 4096 : 0);
    const int M = detail::next_pow2(2 * N + deg + 2);
    return build_rule(R, M);
}

}  // namespace bergman
