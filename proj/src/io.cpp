#include "bergman/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>

#include <nlohmann/json.hpp>

namespace bergman {

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

void write_meta(std::ostream& os, const CsvMeta& meta) {
    os << "# bergman " << kVersion << " degree=" << meta.degree
       << " radial_order=" << meta.radial_order << " angular_order=" << meta.angular_order
       << "\n";
}

}  // namespace

void write_matrix_csv(std::ostream& os, const TruncatedOperator& S, const CsvMeta& meta) {
    write_meta(os, meta);
    os << "n,m,re,im\n";
    for (int n = 0; n <= S.degree; ++n)
        for (int m = 0; m <= S.degree; ++m)
            os << n << ',' << m << ',' << format_double(S.entries(n, m).real()) << ','
               << format_double(S.entries(n, m).imag()) << "\n";
}

void write_profile_csv(std::ostream& os, const BerezinProfile& profile, const CsvMeta& meta) {
    write_meta(os, meta);
    os << "theta,r,cond_b,cond_c,cond_d_max,p2,p4,p6,degree\n";
    for (const auto& rep : profile.samples) {
        const double theta = std::arg(rep.z);
        const double r = std::abs(rep.z);
        const double dmax = rep.cond_d.size() ? rep.cond_d.maxCoeff() : 0.0;
        auto p = [&](int k) {
            const auto it = rep.cond_ef.find(k);
            return it != rep.cond_ef.end() ? it->second : 0.0;
        };
        os << format_double(theta) << ',' << format_double(r) << ','
           << format_double(rep.cond_b) << ',' << format_double(rep.cond_c) << ','
           << format_double(dmax) << ',' << format_double(p(2)) << ',' << format_double(p(4))
           << ',' << format_double(p(6)) << ',' << rep.degree << "\n";
    }
}

void write_audit_csv(std::ostream& os, std::span<const SchurAudit> audits, const CsvMeta& meta) {
    write_meta(os, meta);
    os << "r,theta,lhs,rhs_core,ratio,lemma4\n";
    for (const auto& a : audits)
        os << format_double(std::abs(a.z)) << ',' << format_double(std::arg(a.z)) << ','
           << format_double(a.lhs) << ',' << format_double(a.rhs_core) << ','
           << format_double(a.ratio) << ',' << format_double(a.lemma4_value) << "\n";
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

namespace {

std::string fmt_coord(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

void svg_line_chart(std::ostream& os, const std::string& title, const std::string& x_label,
                    std::span<const SvgSeries> series) {
    const double W = 640, H = 400, ml = 60, mr = 150, mt = 40, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x); xmax = std::max(xmax, x);
            ymin = std::min(ymin, y); ymax = std::max(ymax, y);
        }
    if (xmin > xmax) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
    if (xmax - xmin < 1e-12) { xmax = xmin + 1; }
    if (ymax - ymin < 1e-12) { ymax = ymin + 1; }
    const auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    const auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
       << title << "</text>\n";
    // axes
    os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
       << H - mb << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
       << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 4.0;
        const double fy = ymin + (ymax - ymin) * i / 4.0;
        os << "<text x=\"" << fmt_coord(px(fx)) << "\" y=\"" << H - mb + 18
           << "\" text-anchor=\"middle\" font-size=\"11\">" << format_double(fx) << "</text>\n";
        os << "<text x=\"" << ml - 6 << "\" y=\"" << fmt_coord(py(fy) + 4)
           << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(fy) << "</text>\n";
    }
    os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
       << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";

    int ci = 0;
    for (const auto& s : series) {
        const char* color = kPalette[ci % 8];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : s.points) os << fmt_coord(px(x)) << ',' << fmt_coord(py(y)) << ' ';
        os << "\"/>\n";
        os << "<text x=\"" << W - mr + 10 << "\" y=\"" << mt + 16 * ci + 12
           << "\" font-size=\"12\" fill=\"" << color << "\">" << s.label << "</text>\n";
        ++ci;
    }
    os << "</svg>\n";
}

// ---------------------------------------------------------------------------
// JSON config
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigError(std::string("symbol config missing numeric field '") + key + "'");
    return j[key].get<double>();
}

int require_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw ConfigError(std::string("symbol config missing integer field '") + key + "'");
    return j[key].get<int>();
}

}  // namespace

SymbolSpec symbol_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ConfigError("symbol config must be an object with a string 'type'");
    const std::string type = j["type"].get<std::string>();

    SymbolSpec spec = [&]() -> SymbolSpec {
        try {
            if (type == "constant") {
                const double re = j.value("re", 0.0);
                const double im = j.value("im", 0.0);
                return SymbolSpec::constant(Complex(re, im));
            }
            if (type == "monomial")
                return SymbolSpec::monomial(require_int(j, "a"), require_int(j, "b"));
            if (type == "indicator_disk")
                return SymbolSpec::indicator_disk(require_number(j, "r"));
            if (type == "indicator_annulus")
                return SymbolSpec::indicator_annulus(require_number(j, "r1"),
                                                     require_number(j, "r2"));
            if (type == "lacunary") return SymbolSpec::lacunary(require_int(j, "terms"));
            if (type == "conj_lacunary")
                return SymbolSpec::conj_lacunary(require_int(j, "terms"));
            if (type == "radial_table") {
                if (!j.contains("r") || !j.contains("v"))
                    throw ConfigError("radial_table needs arrays 'r' and 'v'");
                return SymbolSpec::radial_table(j["r"].get<std::vector<double>>(),
                                                j["v"].get<std::vector<double>>());
            }
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("invalid symbol parameters: ") + e.what());
        }
        throw ConfigError("unknown symbol type: " + type);
    }();

    if (j.contains("sup_bound")) {
        if (!j["sup_bound"].is_number() || j["sup_bound"].get<double>() <= 0.0 ||
            !std::isfinite(j["sup_bound"].get<double>()))
            throw ConfigError("sup_bound must be a positive finite number");
        spec.with_sup_bound(j["sup_bound"].get<double>());
    }
    return spec;
}

SumOfProducts expression_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("expression config must be a JSON object");

    if (!j.contains("sum")) {
        SumOfProducts e;
        e.terms.push_back({Complex(1.0), {symbol_from_json(j)}});
        return e;
    }

    std::map<std::string, SymbolSpec> symbols;
    if (j.contains("symbols")) {
        if (!j["symbols"].is_object()) throw ConfigError("'symbols' must be an object");
        for (const auto& [name, js] : j["symbols"].items())
            symbols.emplace(name, symbol_from_json(js));
    }

    if (!j["sum"].is_array() || j["sum"].empty())
        throw ConfigError("'sum' must be a non-empty array of terms");
    SumOfProducts expr;
    for (const auto& jt : j["sum"]) {
        SumOfProducts::Term term;
        if (jt.contains("coef")) {
            const auto& c = jt["coef"];
            if (c.is_number()) {
                term.coef = c.get<double>();
            } else if (c.is_object()) {
                term.coef = Complex(c.value("re", 0.0), c.value("im", 0.0));
            } else {
                throw ConfigError("'coef' must be a number or {re, im}");
            }
        }
        if (!jt.contains("product") || !jt["product"].is_array() || jt["product"].empty())
            throw ConfigError("each term needs a non-empty 'product' array");
        for (const auto& jf : jt["product"]) {
            if (jf.is_string()) {
                const auto it = symbols.find(jf.get<std::string>());
                if (it == symbols.end())
                    throw ConfigError("term references unknown symbol '" +
                                      jf.get<std::string>() + "'");
                term.factors.push_back(it->second);
            } else {
                term.factors.push_back(symbol_from_json(jf));
            }
        }
        expr.terms.push_back(std::move(term));
    }
    return expr;
}

}  // namespace bergman
