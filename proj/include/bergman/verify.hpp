#pragma once

#include <iosfwd>

#include "bergman/examples.hpp"

namespace bergman {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifySummary {
    std::vector<CheckResult> checks;
    bool all_pass = false;
};

/// Kernel-integral audits for one operator family over the standard z grid.
struct AuditTable {
    std::vector<std::string> names;  // parallel to rows
    std::vector<SchurAudit> rows;
    double chat = 0.0;  // max finite ratio across the table
};

/// Audits for every library entry at |z| in {0.5, 0.9, 0.99} across the
/// standard angles; `order_scale` multiplies the singular-rule orders for
/// refinement studies.
AuditTable run_audit_table(double order_scale = 1.0);

struct SchurBoundRow {
    std::string entry;
    double r = 0.0;
    double norm = 0.0;   // ||S - S_[r]|| of the truncation
    double bound = 0.0;  // sqrt(c1 c2) from the audited suprema
    bool pass = false;
};

/// ||S - cutoff(S, r)|| <= sqrt(c1 c2) with c1, c2 assembled from the audit
/// table's measured constant and L6 suprema.
std::vector<SchurBoundRow> run_schur_bound_checks(const AuditTable& table,
                                                  std::span<const double> cutoffs);

/// The standard sweep path used by the invariant suite: angles {0, pi/4,
/// pi/2}, radii {0.3, 0.5, 0.7, 0.8} then 0.90..0.99 in steps of 0.01.
SweepPath standard_sweep_path();

/// The full invariant suite; one row per named check.
VerifySummary run_verify_suite(SumMode mode = SumMode::Serial);

void print_verify_table(std::ostream& os, const VerifySummary& summary);

}  // namespace bergman
