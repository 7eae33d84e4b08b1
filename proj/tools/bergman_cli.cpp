#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bergman/io.hpp"
#include "bergman/verify.hpp"

using namespace bergman;

namespace {

constexpr int kExitOk = 0, kExitConfig = 2, kExitNumeric = 3, kExitVerify = 4;

struct RunConfig {
    std::string expr_file;
    std::string preset;
    std::string degree_spec = "auto";
    int radial_order = 0;   // 0 = auto
    int angular_order = 0;  // 0 = auto
    std::string angles = "0,0.7853981633974483,1.5707963267948966";
    std::string radii = "0.1:0.99:0.05";
    std::string plist = "2,4,6";
    std::string out;
    std::string svg;
    bool deterministic = false;

    SumMode mode() const { return SumMode::Serial; }  // both modes are serial today
};

std::vector<double> parse_list_or_range(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        double a, b, step;
        char c1, c2;
        std::istringstream is(s);
        if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
            throw ConfigError("bad range '" + s + "', expected start:stop:step");
        for (double x = a; x <= b + 1e-12; x += step) out.push_back(x);
        return out;
    }
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw ConfigError("empty list '" + s + "'");
    return out;
}

int degree_cap() {
    int cap = 1024;
    if (const char* env = std::getenv("BERGMAN_MAX_DEGREE")) {
        try {
            cap = std::min(cap, std::stoi(env));
        } catch (...) {
            throw ConfigError("BERGMAN_MAX_DEGREE is not an integer");
        }
    }
    if (cap < 1) throw ConfigError("BERGMAN_MAX_DEGREE must be >= 1");
    return cap;
}

int resolve_degree(const RunConfig& cfg, int fallback) {
    const int cap = degree_cap();
    if (cfg.degree_spec == "auto") return std::min(fallback, cap);
    int n;
    try {
        n = std::stoi(cfg.degree_spec);
    } catch (...) {
        throw ConfigError("--degree must be an integer or 'auto'");
    }
    if (n < 1 || n > cap)
        throw ConfigError("--degree out of range [1, " + std::to_string(cap) + "]");
    return n;
}

SweepParams sweep_params(const RunConfig& cfg) {
    SweepParams params;
    params.degree_cap = degree_cap();
    params.mode = cfg.mode();
    if (cfg.degree_spec != "auto") params.fixed_degree = resolve_degree(cfg, 0);
    params.p_list.clear();
    for (double p : parse_list_or_range(cfg.plist)) {
        const int ip = static_cast<int>(p);
        if (ip != 2 && ip != 4 && ip != 6)
            throw ConfigError("--p entries must be drawn from {2, 4, 6}");
        params.p_list.push_back(ip);
    }
    return params;
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

struct ResolvedOperator {
    OperatorFamily family;
    int max_poly_degree = 2;
    bool discontinuous = false;
};

int expression_poly_degree(const SumOfProducts& expr, bool& discont) {
    int deg = 0;
    for (const auto& t : expr.terms)
        for (const auto& f : t.factors) {
            if (auto d = f.poly_degree()) deg = std::max(deg, *d);
            if (std::holds_alternative<IndicatorDiskSymbol>(f.variant()) ||
                std::holds_alternative<IndicatorAnnulusSymbol>(f.variant()))
                discont = true;
        }
    return deg;
}

ResolvedOperator resolve_operator(const RunConfig& cfg) {
    if (!cfg.preset.empty() && !cfg.expr_file.empty())
        throw ConfigError("give either --preset or --expr, not both");
    ResolvedOperator out;
    if (!cfg.preset.empty()) {
        const auto& e = library_entry(cfg.preset);
        out.family = e.family;
        if (e.expression) out.max_poly_degree = expression_poly_degree(*e.expression,
                                                                       out.discontinuous);
        return out;
    }
    if (cfg.expr_file.empty()) throw ConfigError("an operator is required: --preset or --expr");
    const SumOfProducts expr = expression_from_json(load_json(cfg.expr_file));
    out.max_poly_degree = expression_poly_degree(expr, out.discontinuous);
    const int deg = out.max_poly_degree;
    const bool disc = out.discontinuous;
    const RunConfig cfgc = cfg;
    out.family.name = cfg.expr_file;
    out.family.toeplitz_expression = true;
    out.family.build = [expr, deg, disc, cfgc](int N) {
        const QuadratureRule rule =
            (cfgc.radial_order > 0 && cfgc.angular_order > 0)
                ? build_rule(cfgc.radial_order, cfgc.angular_order)
                : rule_for_toeplitz(N, deg, disc);
        return toeplitz_expression(expr, N, rule);
    };
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open output file: " + path);
    return os;
}

// ---------------------------------------------------------------------------

int cmd_build_toeplitz(const RunConfig& cfg) {
    const auto resolved = resolve_operator(cfg);
    const int N = resolve_degree(cfg, 64);
    const auto S = resolved.family.build(N);
    CsvMeta meta{N, cfg.radial_order ? cfg.radial_order : N + 2,
                 cfg.angular_order ? cfg.angular_order : 2 * N + 2};
    if (cfg.out.empty()) {
        write_matrix_csv(std::cout, S, meta);
    } else {
        auto os = open_out(cfg.out);
        write_matrix_csv(os, S, meta);
    }
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
    const auto resolved = resolve_operator(cfg);
    SweepPath path;
    path.angles = parse_list_or_range(cfg.angles);
    path.radii = parse_list_or_range(cfg.radii);
    const SweepParams params = sweep_params(cfg);
    for (double r : path.radii)
        if (r <= 0.0 || r > 0.995)
            throw ConfigError("sweep radii must lie in (0, 0.995]");

    const auto profile = boundary_sweep(resolved.family, path, params);
    const int maxdeg = profile.samples.empty() ? 0 : profile.samples.back().degree;
    CsvMeta meta{maxdeg, maxdeg + 32, 2 * maxdeg + 128};
    if (cfg.out.empty()) {
        write_profile_csv(std::cout, profile, meta);
    } else {
        auto os = open_out(cfg.out);
        write_profile_csv(os, profile, meta);
    }

    if (!cfg.svg.empty()) {
        const size_t nrad = path.radii.size();
        std::vector<SvgSeries> series;
        auto push = [&](const std::string& label, auto get) {
            SvgSeries s;
            s.label = label;
            for (size_t i = 0; i < nrad && i < profile.samples.size(); ++i)
                s.points.emplace_back(path.radii[i], get(profile.samples[i]));
            series.push_back(std::move(s));
        };
        push("cond_b", [](const ConditionReport& r) { return r.cond_b; });
        push("cond_c", [](const ConditionReport& r) { return r.cond_c; });
        for (int p : params.p_list)
            push("p" + std::to_string(p),
                 [p](const ConditionReport& r) { return r.cond_ef.at(p); });
        auto os = open_out(cfg.svg);
        svg_line_chart(os, "boundary sweep: " + resolved.family.name, "r", series);
    }
    return kExitOk;
}

int cmd_counterexample(const std::string& name, const RunConfig& cfg) {
    ClosedFormKind kind;
    TruncatedOperator (*build)(int) = nullptr;
    double default_rmax;
    if (name == "alternating") {
        kind = ClosedFormKind::AlternatingRational;
        build = alternating_unitary;
        default_rmax = 0.80;
    } else if (name == "lacunary") {
        kind = ClosedFormKind::LacunarySeries;
        build = lacunary_projection;
        default_rmax = 0.90;
    } else {
        throw ConfigError("unknown counterexample '" + name +
                          "' (expected alternating | lacunary)");
    }

    const int N = resolve_degree(cfg, name == "alternating" ? 256 : 512);
    std::vector<double> radii = parse_list_or_range(cfg.radii);
    if (cfg.radii == "0.1:0.99:0.05") {  // default grid: stay inside the closed-form regime
        radii.clear();
        for (int i = 1; i <= 20; ++i) radii.push_back(default_rmax * i / 20.0);
    }
    std::vector<double> angles = parse_list_or_range(cfg.angles);

    const auto S = build(N);
    std::ostringstream body;
    double maxdiff = 0.0;
    for (double theta : angles) {
        for (double r : radii) {
            const DiskPoint z(std::polar(r, theta));
            const Complex computed = berezin_operator(S, z);
            const double closed = closed_form_berezin({kind}, r * r);
            const double diff = std::abs(computed - Complex(closed));
            maxdiff = std::max(maxdiff, diff);
            body << format_double(theta) << ',' << format_double(r) << ','
                 << format_double(computed.real()) << ',' << format_double(closed) << ','
                 << format_double(diff) << "\n";
        }
    }

    auto emit = [&](std::ostream& os) {
        os << "# bergman " << kVersion << " degree=" << N << " radial_order=0 angular_order=0\n";
        os << "theta,r,computed,closed_form,abs_diff\n" << body.str();
        os << "# summary max_abs_diff=" << format_double(maxdiff) << "\n";
    };
    if (cfg.out.empty()) {
        emit(std::cout);
    } else {
        auto os = open_out(cfg.out);
        emit(os);
    }
    return kExitOk;
}

int cmd_hankel(const std::string& symbol_arg, const RunConfig& cfg) {
    const nlohmann::json j = symbol_arg.size() && symbol_arg[0] == '{'
                                 ? nlohmann::json::parse(symbol_arg, nullptr, true)
                                 : load_json(symbol_arg);
    const SymbolSpec u = symbol_from_json(j);
    const int N = resolve_degree(cfg, 64);
    const bool disc = std::holds_alternative<IndicatorDiskSymbol>(u.variant()) ||
                      std::holds_alternative<IndicatorAnnulusSymbol>(u.variant());
    const int deg = u.poly_degree().value_or(0);
    const auto rule = (cfg.radial_order > 0 && cfg.angular_order > 0)
                          ? build_rule(cfg.radial_order, cfg.angular_order)
                          : rule_for_toeplitz(N, deg, disc);
    const auto G = hankel_gram(u, N, rule);
    CsvMeta meta{N, rule.radial_order, rule.angular_order};
    if (cfg.out.empty()) {
        write_matrix_csv(std::cout, G, meta);
    } else {
        auto os = open_out(cfg.out);
        write_matrix_csv(os, G, meta);
    }

    // little-Bloch profile for co-analytic symbols u = conj(f)
    const SymbolSpec f = u.conjugated();
    if (f.is_analytic() && !std::holds_alternative<ConstantSymbol>(f.variant())) {
        const std::string path = cfg.svg.empty() ? "" : cfg.svg;
        std::ostringstream prof;
        prof << "# bergman " << kVersion << " degree=" << N << " radial_order="
             << rule.radial_order << " angular_order=" << rule.angular_order << "\n";
        prof << "r,little_bloch_distance\n";
        std::vector<SvgSeries> series(1);
        series[0].label = "||f o phi_z - f(z)||_2";
        for (double r : parse_list_or_range(cfg.radii)) {
            const double d = little_bloch_distance(f, DiskPoint(r, 0.0));
            prof << format_double(r) << ',' << format_double(d) << "\n";
            series[0].points.emplace_back(r, d);
        }
        const std::string bloch_out =
            cfg.out.empty() ? "" : cfg.out + ".bloch.csv";
        if (bloch_out.empty()) {
            std::cout << prof.str();
        } else {
            auto os = open_out(bloch_out);
            os << prof.str();
        }
        if (!path.empty()) {
            auto os = open_out(path);
            svg_line_chart(os, "little-Bloch distance profile", "r", series);
        }
    }
    return kExitOk;
}

int cmd_schur(const std::string& expr_arg, double rcut, const RunConfig& cfg) {
    RunConfig local = cfg;
    if (expr_arg.size() && expr_arg[0] == '{')
        throw ConfigError("schur expects a preset name or an expression file path");
    try {
        library_entry(expr_arg);
        local.preset = expr_arg;
    } catch (const ConfigError&) {
        local.expr_file = expr_arg;
    }
    const auto resolved = resolve_operator(local);
    if (!(rcut > 0.0 && rcut < 1.0)) throw ConfigError("--r must lie in (0,1)");

    SweepParams params;
    params.degree_cap = degree_cap();
    std::vector<DiskPoint> grid;
    for (double r : {0.5, 0.9, 0.99}) grid.emplace_back(r, 0.0);

    std::vector<SchurAudit> audits;
    double chat = 0.0;
    std::map<int, TruncatedOperator> cache;
    std::map<int, QuadratureRule> rules;
    auto op_at = [&](int N) -> const TruncatedOperator& {
        auto it = cache.find(N);
        if (it == cache.end()) it = cache.emplace(N, resolved.family.build(N)).first;
        return it->second;
    };
    auto rule_at = [&](int N) -> const QuadratureRule& {
        auto it = rules.find(N);
        if (it == rules.end()) it = rules.emplace(N, sweep_norm_rule(N)).first;
        return it->second;
    };

    double sup_tail6 = 0.0, sup_adj6 = 0.0;
    for (const auto& z : grid) {
        const int N = sweep_degree_for(z, params);
        const auto audit = schur_audit(op_at(N), z, schur_rule_for(z), rule_at(N));
        audits.push_back(audit);
        if (std::isfinite(audit.ratio)) chat = std::max(chat, audit.ratio);
        const double n6 = audit.rhs_core * std::sqrt(1.0 - z.abs2());
        if (z.abs() >= rcut - 1e-12) sup_tail6 = std::max(sup_tail6, n6);
        const auto adj_audit =
            schur_audit(adjoint(op_at(N)), z, schur_rule_for(z), rule_at(N));
        sup_adj6 = std::max(sup_adj6, adj_audit.rhs_core * std::sqrt(1.0 - z.abs2()));
    }

    const int N = std::min(512, degree_cap());
    const auto& S = op_at(N);
    TruncatedOperator D = S;
    D.entries -= cutoff(S, rcut).entries;
    const double norm = operator_norm_lower_bound(D);
    const double bound = chat * std::sqrt(sup_tail6 * sup_adj6);

    auto emit = [&](std::ostream& os) {
        write_audit_csv(os, audits, CsvMeta{N, 96, 0});
        os << "# cutoff r=" << format_double(rcut) << " norm=" << format_double(norm)
           << " bound=" << format_double(bound)
           << " holds=" << (norm <= bound ? "yes" : "no") << "\n";
    };
    if (cfg.out.empty()) {
        emit(std::cout);
    } else {
        auto os = open_out(cfg.out);
        emit(os);
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
    const auto summary = run_verify_suite(cfg.mode());
    if (cfg.out.empty()) {
        print_verify_table(std::cout, summary);
    } else {
        auto os = open_out(cfg.out);
        print_verify_table(os, summary);
    }
    return summary.all_pass ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bergman-space operator diagnostics: truncated Toeplitz calculus, "
                 "Berezin transforms, boundary sweeps, compactness evidence"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_flag("--deterministic", cfg.deterministic,
                 "pin the summation order (serial) for bit-identical output");

    auto add_common = [&](CLI::App* sub, bool wants_operator) {
        if (wants_operator) {
            sub->add_option("--expr", cfg.expr_file, "expression config (JSON)");
            sub->add_option("--preset", cfg.preset, "library preset name");
        }
        sub->add_option("--degree", cfg.degree_spec, "truncation degree or 'auto'");
        sub->add_option("--radial-order", cfg.radial_order, "radial quadrature order");
        sub->add_option("--angular-order", cfg.angular_order, "angular quadrature order");
        sub->add_option("--angles", cfg.angles, "comma list of ray angles");
        sub->add_option("--radii", cfg.radii, "comma list or start:stop:step");
        sub->add_option("--p", cfg.plist, "p-norm list, subset of 2,4,6");
        sub->add_option("--out", cfg.out, "output CSV path (default stdout)");
        sub->add_option("--svg", cfg.svg, "optional SVG chart path");
    };

    auto* sc_build = app.add_subcommand("build-toeplitz", "emit an operator matrix as CSV");
    add_common(sc_build, true);
    auto* sc_sweep = app.add_subcommand("sweep", "boundary sweep of the condition profile");
    add_common(sc_sweep, true);
    auto* sc_ce = app.add_subcommand("counterexample",
                                     "computed vs closed-form Berezin transform");
    std::string ce_name;
    sc_ce->add_option("name", ce_name, "alternating | lacunary")->required();
    add_common(sc_ce, false);
    auto* sc_hankel = app.add_subcommand("hankel", "Hankel Gram matrix and little-Bloch profile");
    std::string hankel_symbol;
    sc_hankel->add_option("symbol", hankel_symbol, "symbol JSON (inline or file)")->required();
    add_common(sc_hankel, false);
    auto* sc_schur = app.add_subcommand("schur", "kernel-integral audit and cutoff norm bound");
    std::string schur_expr;
    double schur_r = 0.9;
    sc_schur->add_option("expr", schur_expr, "preset name or expression file")->required();
    sc_schur->add_option("--r", schur_r, "cutoff radius");
    add_common(sc_schur, false);
    auto* sc_verify = app.add_subcommand("verify", "run the full invariant suite");
    sc_verify->add_option("--out", cfg.out, "write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error kind=config msg=\"" << e.what() << "\"\n";
        return kExitConfig;
    }

    try {
        if (sc_build->parsed()) return cmd_build_toeplitz(cfg);
        if (sc_sweep->parsed()) return cmd_sweep(cfg);
        if (sc_ce->parsed()) return cmd_counterexample(ce_name, cfg);
        if (sc_hankel->parsed()) return cmd_hankel(hankel_symbol, cfg);
        if (sc_schur->parsed()) return cmd_schur(schur_expr, schur_r, cfg);
        if (sc_verify->parsed()) return cmd_verify(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "error kind=config msg=\"" << e.what() << "\"\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "error kind=config msg=\"" << e.what() << "\"\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error kind=config msg=\"" << e.what() << "\"\n";
        return kExitConfig;
    } catch (const NumericError& e) {
        std::cerr << "error kind=numeric msg=\"" << e.what() << "\"\n";
        return kExitNumeric;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error kind=config msg=\"" << e.what() << "\"\n";
        return kExitConfig;
    }
    return kExitConfig;
}
