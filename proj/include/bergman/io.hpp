#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bergman/berezin.hpp"

#include <nlohmann/json_fwd.hpp>

namespace bergman {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest round-trip decimal representation; used for every CSV number so
/// identical runs produce identical bytes.
std::string format_double(double x);

struct CsvMeta {
    int degree = 0;
    int radial_order = 0;
    int angular_order = 0;
};

/// Rows "n,m,re,im", row-major, preceded by the standard comment line.
void write_matrix_csv(std::ostream& os, const TruncatedOperator& S, const CsvMeta& meta);

/// Columns "theta,r,cond_b,cond_c,cond_d_max,p2,p4,p6,degree".
void write_profile_csv(std::ostream& os, const BerezinProfile& profile, const CsvMeta& meta);

/// Columns "r,theta,lhs,rhs_core,ratio,lemma4".
void write_audit_csv(std::ostream& os, std::span<const SchurAudit> audits, const CsvMeta& meta);

struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

/// Single-panel line chart; axes autoscale to the data.
void svg_line_chart(std::ostream& os, const std::string& title, const std::string& x_label,
                    std::span<const SvgSeries> series);

/// SymbolSpec from {"type": ..., ...} with optional "sup_bound".
SymbolSpec symbol_from_json(const nlohmann::json& j);

/// Expression config: {"symbols": {name: spec}, "sum": [{"coef": {"re", "im"},
/// "product": [name, ...]}]}. A bare symbol spec is accepted as a one-factor
/// expression.
SumOfProducts expression_from_json(const nlohmann::json& j);

}  // namespace bergman
