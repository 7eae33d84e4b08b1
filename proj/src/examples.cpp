#include "bergman/examples.hpp"

#include <cmath>

namespace bergman {

TruncatedOperator lacunary_projection(int N) {
    if (N < 1) throw std::invalid_argument("lacunary_projection: N >= 1");
    Eigen::VectorXcd d = Eigen::VectorXcd::Zero(N + 1);
    for (long long e = 1; e <= N; e *= 2) d[static_cast<int>(e)] = 1.0;
    return TruncatedOperator::diagonal(d);
}

TruncatedOperator alternating_unitary(int N) {
    if (N < 1) throw std::invalid_argument("alternating_unitary: N >= 1");
    Eigen::VectorXcd d(N + 1);
    for (int n = 0; n <= N; ++n) d[n] = (n % 2 == 0) ? 1.0 : -1.0;
    return TruncatedOperator::diagonal(d);
}

double closed_form_berezin(const ClosedFormBerezin& form, double t) {
    if (!(t >= 0.0 && t < 1.0)) throw std::domain_error("closed_form_berezin: t in [0,1)");
    if (form.kind == ClosedFormKind::AlternatingRational) {
        const double a = (1.0 - t) / (1.0 + t);
        return a * a;
    }
    // positive series, summed with compensation; terms peak near 2^n ~ 1/(1-t)
    double sum = 0.0, comp = 0.0;
    double p = t;          // t^(2^n)
    long long e = 1;       // 2^n
    while (e <= form.term_cap) {
        const double term = (static_cast<double>(e) + 1.0) * p;
        const double y = term - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        if (term < form.tolerance * std::max(sum, 1e-300) &&
            static_cast<double>(e) * (1.0 - t) > 1.0)
            break;
        p *= p;
        e *= 2;
    }
    return (1.0 - t) * (1.0 - t) * sum;
}

namespace {

std::vector<long long> analytic_powers(const SymbolSpec& f) {
    if (const auto* m = std::get_if<MonomialSymbol>(&f.variant())) {
        if (m->b != 0) throw std::invalid_argument("little_bloch_distance: symbol not analytic");
        return m->a == 0 ? std::vector<long long>{} : std::vector<long long>{m->a};
    }
    if (const auto* l = std::get_if<LacunarySymbol>(&f.variant())) {
        std::vector<long long> p;
        long long e = 1;
        for (int n = 0; n < l->terms; ++n, e *= 2) p.push_back(e);
        return p;
    }
    if (std::holds_alternative<ConstantSymbol>(f.variant())) return {};
    throw std::invalid_argument("little_bloch_distance: symbol not analytic");
}

}  // namespace

double little_bloch_distance(const SymbolSpec& f, DiskPoint z, int degree) {
    const auto powers = analytic_powers(f);
    if (powers.empty()) return 0.0;

    const long long top = powers.back();
    int N = degree;
    if (N <= 0)
        N = min_degree_for_kernel(z, 1e-8) + static_cast<int>(top) + 16;

    const Eigen::VectorXcd k = normalized_kernel_coeffs(z, N);
    const double mass = k.squaredNorm();

    // v = T_{|f|^2} k through the bands n - m = a - b, entry sqrt((n+1)(m+1))/(m+a+1)
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(N + 1);
    for (long long a : powers) {
        for (long long b : powers) {
            for (long long m = 0; m <= N; ++m) {
                const long long n = m + a - b;
                if (n < 0 || n > N) continue;
                v[static_cast<int>(n)] += std::sqrt((n + 1.0) * (m + 1.0)) /
                                          static_cast<double>(m + a + 1) * k[static_cast<int>(m)];
            }
        }
    }
    const double berez = std::real(k.dot(v)) / mass;

    Complex fz = 0.0;
    for (long long a : powers) fz += std::pow(z.value(), static_cast<double>(a));
    return std::sqrt(std::max(0.0, berez - std::norm(fz)));
}

double little_bloch_distance_quadrature(const SymbolSpec& f, DiskPoint z,
                                        const QuadratureRule& rule) {
    analytic_powers(f);  // validates analyticity
    const Complex fz = f(z.value());
    std::vector<Complex> g(rule.nodes.size());
    for (size_t i = 0; i < g.size(); ++i)
        g[i] = f(mobius(z, DiskPoint(rule.nodes[i]))) - fz;
    return lp_norm(g, 2.0, rule);
}

// ---------------------------------------------------------------------------
// Test library
// ---------------------------------------------------------------------------

namespace {

SumOfProducts single(const SymbolSpec& u) {
    SumOfProducts e;
    e.terms.push_back({Complex(1.0), {u}});
    return e;
}

OperatorFamily expression_family(std::string name, SumOfProducts expr, int deg,
                                 bool discontinuous) {
    OperatorFamily fam;
    fam.name = std::move(name);
    fam.toeplitz_expression = true;
    fam.build = [expr, deg, discontinuous](int N) {
        return toeplitz_expression(expr, N, rule_for_toeplitz(N, deg, discontinuous));
    };
    return fam;
}

std::vector<LibraryEntry> make_library() {
    std::vector<LibraryEntry> lib;
    const SymbolSpec w = SymbolSpec::monomial(1, 0);
    const SymbolSpec wbar = SymbolSpec::monomial(0, 1);
    const SymbolSpec w2 = SymbolSpec::monomial(1, 1);

    {
        LibraryEntry e;
        e.name = "indicator-half";
        e.expression = single(SymbolSpec::indicator_disk(0.5));
        e.family = expression_family(e.name, *e.expression, 0, true);
        e.compact_expected = true;
        e.score_k = 10;
        e.provenance = "radial symbol supported in 0.5D; Berezin transform decays at the boundary";
        lib.push_back(std::move(e));
    }
    {
        LibraryEntry e;
        e.name = "hankel-wbar";
        SumOfProducts expr;
        expr.terms.push_back({Complex(1.0), {w2}});
        expr.terms.push_back({Complex(-1.0), {w, wbar}});
        e.expression = expr;
        e.family = expression_family(e.name, expr, 2, false);
        e.compact_expected = true;
        e.score_k = 40;  // sigma_k ~ 1/((k+1)(k+2)) crosses 1e-3 sigma_1 near k = 32
        e.provenance = "Gram of the Hankel operator with conjugate-analytic symbol";
        lib.push_back(std::move(e));
    }
    {
        LibraryEntry e;
        e.name = "semi-commutator";
        SumOfProducts expr;
        expr.terms.push_back({Complex(1.0), {w2}});
        expr.terms.push_back({Complex(-1.0), {wbar, w}});
        e.expression = expr;
        e.family = expression_family(e.name, expr, 2, false);
        e.compact_expected = true;
        e.score_k = 10;
        e.provenance = "vanishes identically: multiplication by w maps into analytic functions";
        lib.push_back(std::move(e));
    }
    {
        LibraryEntry e;
        e.name = "identity";
        e.expression = single(SymbolSpec::constant(1.0));
        e.family = expression_family(e.name, *e.expression, 0, false);
        e.compact_expected = false;
        e.score_k = 10;
        e.provenance = "unit symbol; Berezin transform is constant 1";
        lib.push_back(std::move(e));
    }
    {
        LibraryEntry e;
        e.name = "re-w";
        SumOfProducts expr;
        expr.terms.push_back({Complex(0.5), {w}});
        expr.terms.push_back({Complex(0.5), {wbar}});
        e.expression = expr;
        e.family = expression_family(e.name, expr, 1, false);
        e.compact_expected = false;
        e.score_k = 10;
        e.provenance = "harmonic symbol with boundary values; Berezin transform tends to Re z";
        lib.push_back(std::move(e));
    }
    {
        LibraryEntry e;
        e.name = "wbar";
        e.expression = single(wbar);
        e.family = expression_family(e.name, *e.expression, 1, false);
        e.compact_expected = false;
        e.score_k = 10;
        e.provenance = "co-analytic symbol; Berezin transform tends to conj(z)";
        lib.push_back(std::move(e));
    }
    {
        LibraryEntry e;
        e.name = "alternating";
        e.family = {"alternating", [](int N) { return alternating_unitary(N); }, false};
        e.compact_expected = false;
        e.outside_hypothesis = true;
        e.score_k = 10;
        e.provenance = "diagonal unitary; vanishing Berezin transform without compactness";
        lib.push_back(std::move(e));
    }
    {
        LibraryEntry e;
        e.name = "lacunary";
        e.family = {"lacunary", [](int N) { return lacunary_projection(N); }, false};
        e.compact_expected = false;
        e.outside_hypothesis = true;
        e.score_k = 10;
        e.provenance = "projection with infinite-dimensional range onto lacunary coefficients";
        lib.push_back(std::move(e));
    }
    return lib;
}

}  // namespace

std::vector<LibraryEntry> test_library() { return make_library(); }

const LibraryEntry& library_entry(const std::string& name) {
    static const std::vector<LibraryEntry> lib = make_library();
    for (const auto& e : lib)
        if (e.name == name) return e;
    throw ConfigError("unknown preset: " + name);
}

}  // namespace bergman
