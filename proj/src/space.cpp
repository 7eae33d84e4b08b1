#include "bergman/space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft_util.hpp"

namespace bergman {

BergmanFunction BergmanFunction::basis(int n, int degree) {
    if (n < 0 || n > degree) throw std::invalid_argument("basis index outside degree");
    BergmanFunction f;
    f.degree = degree;
    f.coeffs = Eigen::VectorXcd::Zero(degree + 1);
    f.coeffs[n] = 1.0;
    return f;
}

Complex evaluate(const BergmanFunction& f, DiskPoint w) {
    Complex acc = 0.0;
    for (int n = f.degree; n >= 0; --n)
        acc = acc * w.value() + f.coeffs[n] * std::sqrt(n + 1.0);
    return acc;
}

// ---------------------------------------------------------------------------
// SymbolSpec
// ---------------------------------------------------------------------------

SymbolSpec SymbolSpec::constant(Complex c) {
    return SymbolSpec(ConstantSymbol{c}, std::abs(c));
}

SymbolSpec SymbolSpec::monomial(int a, int b) {
    if (a < 0 || b < 0) throw std::invalid_argument("monomial exponents must be >= 0");
    return SymbolSpec(MonomialSymbol{a, b}, 1.0);
}

SymbolSpec SymbolSpec::radial_table(std::vector<double> radii, std::vector<double> values) {
    if (radii.size() != values.size() || radii.empty())
        throw std::invalid_argument("radial_table: radii/values size mismatch");
    if (!std::is_sorted(radii.begin(), radii.end()))
        throw std::invalid_argument("radial_table: radii must be sorted");
    double sup = 0.0;
    for (double v : values) sup = std::max(sup, std::abs(v));
    return SymbolSpec(RadialTableSymbol{std::move(radii), std::move(values)}, sup);
}

SymbolSpec SymbolSpec::indicator_disk(double r) {
    if (r <= 0.0 || r >= 1.0) throw std::invalid_argument("indicator_disk: r in (0,1)");
    return SymbolSpec(IndicatorDiskSymbol{r}, 1.0);
}

SymbolSpec SymbolSpec::indicator_annulus(double r1, double r2) {
    if (!(0.0 <= r1 && r1 < r2 && r2 <= 1.0))
        throw std::invalid_argument("indicator_annulus: need 0 <= r1 < r2 <= 1");
    return SymbolSpec(IndicatorAnnulusSymbol{r1, r2}, 1.0);
}

SymbolSpec SymbolSpec::lacunary(int terms) {
    if (terms < 1) throw std::invalid_argument("lacunary: terms >= 1");
    return SymbolSpec(LacunarySymbol{terms}, static_cast<double>(terms));
}

SymbolSpec SymbolSpec::conj_lacunary(int terms) {
    if (terms < 1) throw std::invalid_argument("conj_lacunary: terms >= 1");
    return SymbolSpec(ConjLacunarySymbol{terms}, static_cast<double>(terms));
}

SymbolSpec SymbolSpec::samples(std::vector<Complex> values, double sup) {
    return SymbolSpec(SampleSymbol{std::move(values), sup}, sup);
}

namespace {

double radial_interp(const RadialTableSymbol& t, double r) {
    if (r <= t.radii.front()) return t.values.front();
    if (r >= t.radii.back()) return t.values.back();
    const auto it = std::upper_bound(t.radii.begin(), t.radii.end(), r);
    const size_t i = static_cast<size_t>(it - t.radii.begin());
    const double r0 = t.radii[i - 1], r1 = t.radii[i];
    const double s = (r1 > r0) ? (r - r0) / (r1 - r0) : 0.0;
    return t.values[i - 1] * (1.0 - s) + t.values[i] * s;
}

Complex lacunary_eval(Complex w, int terms) {
    Complex acc = 0.0, p = w;
    for (int n = 0; n < terms; ++n) {
        acc += p;
        p = p * p;
    }
    return acc;
}

}  // namespace

Complex SymbolSpec::operator()(Complex w) const {
    return std::visit(
        [&](const auto& s) -> Complex {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ConstantSymbol>) {
                return s.c;
            } else if constexpr (std::is_same_v<T, MonomialSymbol>) {
                return std::pow(w, s.a) * std::pow(std::conj(w), s.b);
            } else if constexpr (std::is_same_v<T, RadialTableSymbol>) {
                return radial_interp(s, std::abs(w));
            } else if constexpr (std::is_same_v<T, IndicatorDiskSymbol>) {
                return std::abs(w) < s.r ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, IndicatorAnnulusSymbol>) {
                const double r = std::abs(w);
                return (s.r1 <= r && r < s.r2) ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, LacunarySymbol>) {
                return lacunary_eval(w, s.terms);
            } else if constexpr (std::is_same_v<T, ConjLacunarySymbol>) {
                return std::conj(lacunary_eval(w, s.terms));
            } else {
                throw std::logic_error("sample symbol has no pointwise evaluation");
            }
        },
        v_);
}

bool SymbolSpec::is_radial() const {
    return std::visit(
        [](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ConstantSymbol> ||
                          std::is_same_v<T, RadialTableSymbol> ||
                          std::is_same_v<T, IndicatorDiskSymbol> ||
                          std::is_same_v<T, IndicatorAnnulusSymbol>)
                return true;
            else if constexpr (std::is_same_v<T, MonomialSymbol>)
                return s.a == s.b;
            else
                return false;
        },
        v_);
}

std::optional<int> SymbolSpec::harmonic() const {
    if (const auto* m = std::get_if<MonomialSymbol>(&v_)) return m->a - m->b;
    if (is_radial()) return 0;
    return std::nullopt;
}

std::optional<int> SymbolSpec::poly_degree() const {
    if (const auto* m = std::get_if<MonomialSymbol>(&v_)) return m->a + m->b;
    if (std::holds_alternative<ConstantSymbol>(v_)) return 0;
    return std::nullopt;
}

bool SymbolSpec::is_analytic() const {
    return std::visit(
        [](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ConstantSymbol> || std::is_same_v<T, LacunarySymbol>)
                return true;
            else if constexpr (std::is_same_v<T, MonomialSymbol>)
                return s.b == 0;
            else
                return false;
        },
        v_);
}

SymbolSpec SymbolSpec::conjugated() const {
    return std::visit(
        [&](const auto& s) -> SymbolSpec {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ConstantSymbol>) {
                return constant(std::conj(s.c));
            } else if constexpr (std::is_same_v<T, MonomialSymbol>) {
                return monomial(s.b, s.a);
            } else if constexpr (std::is_same_v<T, LacunarySymbol>) {
                return conj_lacunary(s.terms);
            } else if constexpr (std::is_same_v<T, ConjLacunarySymbol>) {
                return lacunary(s.terms);
            } else if constexpr (std::is_same_v<T, SampleSymbol>) {
                std::vector<Complex> v(s.values.size());
                for (size_t i = 0; i < v.size(); ++i) v[i] = std::conj(s.values[i]);
                return samples(std::move(v), s.sup);
            } else {
                return *this;  // real radial symbols
            }
        },
        v_);
}

std::optional<SymbolSpec> SymbolSpec::abs_squared() const {
    return std::visit(
        [&](const auto& s) -> std::optional<SymbolSpec> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ConstantSymbol>) {
                return constant(std::norm(s.c));
            } else if constexpr (std::is_same_v<T, MonomialSymbol>) {
                return monomial(s.a + s.b, s.a + s.b);
            } else if constexpr (std::is_same_v<T, IndicatorDiskSymbol> ||
                                 std::is_same_v<T, IndicatorAnnulusSymbol>) {
                return *this;
            } else if constexpr (std::is_same_v<T, RadialTableSymbol>) {
                RadialTableSymbol sq = s;
                for (double& v : sq.values) v *= v;
                return radial_table(std::move(sq.radii), std::move(sq.values));
            } else if constexpr (std::is_same_v<T, SampleSymbol>) {
                std::vector<Complex> v(s.values.size());
                for (size_t i = 0; i < v.size(); ++i) v[i] = std::norm(s.values[i]);
                return samples(std::move(v), s.sup * s.sup);
            } else {
                return std::nullopt;  // lacunary cross terms need the sampling route
            }
        },
        v_);
}

std::string SymbolSpec::describe() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ConstantSymbol>)
                os << "constant(" << s.c.real() << (s.c.imag() < 0 ? "-" : "+")
                   << std::abs(s.c.imag()) << "i)";
            else if constexpr (std::is_same_v<T, MonomialSymbol>)
                os << "monomial(" << s.a << "," << s.b << ")";
            else if constexpr (std::is_same_v<T, RadialTableSymbol>)
                os << "radial_table[" << s.radii.size() << "]";
            else if constexpr (std::is_same_v<T, IndicatorDiskSymbol>)
                os << "indicator_disk(" << s.r << ")";
            else if constexpr (std::is_same_v<T, IndicatorAnnulusSymbol>)
                os << "indicator_annulus(" << s.r1 << "," << s.r2 << ")";
            else if constexpr (std::is_same_v<T, LacunarySymbol>)
                os << "lacunary(" << s.terms << ")";
            else if constexpr (std::is_same_v<T, ConjLacunarySymbol>)
                os << "conj_lacunary(" << s.terms << ")";
            else
                os << "samples[" << s.values.size() << "]";
        },
        v_);
    return os.str();
}

// ---------------------------------------------------------------------------
// Projection, norms, kernel truncation
// ---------------------------------------------------------------------------

BergmanFunction bergman_project(std::span<const Complex> samples, const QuadratureRule& rule,
                                int N) {
    if (N < 0) throw std::invalid_argument("bergman_project: N >= 0");
    if (rule.exact_degree < 2 * N)
        throw NumericError("bergman_project: rule exact_degree below 2N, refusing to degrade");
    if (samples.size() != rule.nodes.size())
        throw std::invalid_argument("bergman_project: sample/node count mismatch");

    const int R = rule.radial_order, M = rule.angular_order;
    BergmanFunction f;
    f.degree = N;
    f.coeffs = Eigen::VectorXcd::Zero(N + 1);
    // c_n = sqrt(n+1) sum_q wr_q r_q^n * (1/M) sum_t v(q,t) e^{-i n theta_t}
    std::vector<Complex> harm(static_cast<size_t>(N) + 1);
    for (int q = 0; q < R; ++q) {
        std::fill(harm.begin(), harm.end(), Complex(0.0));
        for (int t = 0; t < M; ++t) {
            const Complex v = samples[static_cast<size_t>(q) * M + t];
            const Complex e1 = std::polar(1.0, -rule.angle(t));
            Complex e = 1.0;
            for (int n = 0; n <= N; ++n) {
                harm[n] += v * e;
                e *= e1;
            }
        }
        const double r = rule.radius(q);
        double rn = 1.0;
        for (int n = 0; n <= N; ++n) {
            f.coeffs[n] += std::sqrt(n + 1.0) * rule.radial_weights[q] * rn * harm[n] /
                           static_cast<double>(M);
            rn *= r;
        }
    }
    return f;
}

double lp_norm(std::span<const Complex> samples, double p, const QuadratureRule& rule,
               SumMode mode) {
    if (p < 1.0) throw std::domain_error("lp_norm: p must be >= 1");
    if (samples.size() != rule.nodes.size())
        throw std::invalid_argument("lp_norm: sample/node count mismatch");
    if (mode == SumMode::Pairwise) {
        std::vector<Complex> pw(samples.size());
        for (size_t i = 0; i < samples.size(); ++i) pw[i] = std::pow(std::abs(samples[i]), p);
        return std::pow(integrate(pw, rule, mode).real(), 1.0 / p);
    }
    double acc = 0.0;
    for (size_t i = 0; i < samples.size(); ++i)
        acc += rule.weights[i] * std::pow(std::abs(samples[i]), p);
    return std::pow(acc, 1.0 / p);
}

int min_degree_for_kernel(DiskPoint z, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("min_degree_for_kernel: eps in (0,1)");
    const double t = z.abs2();
    if (t == 0.0) return 0;
    const double target = eps * eps;
    auto tail = [&](double n) {
        // (1-t)^2 sum_{k>n} (k+1) t^k  =  (n+2) t^(n+1) - (n+1) t^(n+2)
        return (n + 2.0) * std::pow(t, n + 1.0) - (n + 1.0) * std::pow(t, n + 2.0);
    };
    if (tail(0) <= target) return 0;
    // bracket by doubling, then bisect; tail is monotone decreasing in n
    double lo = 0, hi = 1;
    while (tail(hi) > target) {
        lo = hi;
        hi *= 2;
        if (hi > 1e12) throw NumericError("min_degree_for_kernel: degree out of range");
    }
    while (hi - lo > 0.5) {
        const double mid = 0.5 * (lo + hi);
        (tail(mid) > target ? lo : hi) = mid;
    }
    return static_cast<int>(std::ceil(hi));
}

Eigen::VectorXcd kernel_coeffs(DiskPoint z, int N) {
    Eigen::VectorXcd c(N + 1);
    Complex zb = 1.0;
    for (int n = 0; n <= N; ++n) {
        c[n] = std::sqrt(n + 1.0) * zb;
        zb *= std::conj(z.value());
    }
    return c;
}

Eigen::VectorXcd normalized_kernel_coeffs(DiskPoint z, int N) {
    return (1.0 - z.abs2()) * kernel_coeffs(z, N);
}

std::vector<Complex> evaluate_on_rule(const Eigen::VectorXcd& coeffs, const QuadratureRule& rule) {
    const int N = static_cast<int>(coeffs.size()) - 1;
    const int R = rule.radial_order, M = rule.angular_order;
    std::vector<Complex> out(rule.nodes.size());

    Eigen::VectorXcd scaled(N + 1);
    for (int n = 0; n <= N; ++n) scaled[n] = coeffs[n] * std::sqrt(n + 1.0);

    if (detail::is_pow2(M)) {
        std::vector<Complex> bins(M);
        for (int q = 0; q < R; ++q) {
            std::fill(bins.begin(), bins.end(), Complex(0.0));
            const double r = rule.radius(q);
            double rn = 1.0;
            for (int n = 0; n <= N; ++n) {
                Complex term = scaled[n] * rn;
                if (rule.angle_offset != 0.0)
                    term *= std::polar(1.0, 2.0 * std::numbers::pi * n * rule.angle_offset / M);
                bins[n % M] += term;
                rn *= r;
            }
            detail::fft_radix2(bins, /*inverse=*/true);
            for (int t = 0; t < M; ++t) out[static_cast<size_t>(q) * M + t] = bins[t];
        }
    } else {
        for (size_t i = 0; i < out.size(); ++i) {
            Complex acc = 0.0;
            const Complex w = rule.nodes[i];
            for (int n = N; n >= 0; --n) acc = acc * w + scaled[n];
            out[i] = acc;
        }
    }
    return out;
}

std::vector<Complex> sample_symbol(const SymbolSpec& u, const QuadratureRule& rule) {
    if (const auto* s = std::get_if<SampleSymbol>(&u.variant())) {
        if (s->values.size() != rule.nodes.size())
            throw std::invalid_argument("sample symbol was taken on a different rule");
        return s->values;
    }
    std::vector<Complex> out(rule.nodes.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = u(rule.nodes[i]);
    return out;
}

}  // namespace bergman
