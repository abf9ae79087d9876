#pragma once

#include <gmpxx.h>

#include <complex>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pottszero/graph.hpp"
#include "pottszero/polynomial.hpp"
#include "pottszero/potts.hpp"

namespace pottszero {

using Complex = std::complex<double>;

inline constexpr double kResidualThreshold = 1e-8;

struct ZeroReport {
    std::string graph_id;
    int q = 0;
    int degree = 0;
    std::vector<Complex> roots;
    std::vector<double> residuals;  // exact |Z(root)|
    double coefficient_norm = 0;    // max |coefficient|
    double max_residual = 0;
    double max_relative_residual = 0;  // max_residual / coefficient_norm
    double min_dist = std::numeric_limits<double>::infinity();
    bool degree_check = true;     // roots counted with multiplicity equal the degree
    bool residual_check = true;   // every residual below 1e-8 times the coefficient norm
    bool conjugate_check = true;  // roots pair up under conjugation
    bool used_fallback = false;
};

ZeroReport roots_of(const WPolynomial& p, std::string graph_id, int q);
ZeroReport roots_in_w(const PartiallyColoredGraph& g, const EnumerationBudget& budget = {});

nlohmann::json to_json(const ZeroReport& r);

struct ScanSummary {
    int q = 0;
    int delta = 0;
    bool in_regime = true;
    std::vector<ZeroReport> reports;
    double min_dist = std::numeric_limits<double>::infinity();
    std::string argmin;
    double max_residual = 0;
    double max_relative_residual = 0;
    std::size_t degree_failures = 0;
    std::size_t residual_failures = 0;
    std::size_t conjugate_failures = 0;
};

// q >= (2 - eta) delta.
bool in_scan_regime(int q, int delta, double eta = 0.002);

// Reports for every graph of the family recolored with q colors. Out-of-regime
// (q, delta) pairs are scanned anyway and flagged.
ScanSummary zero_free_scan(std::span<const PartiallyColoredGraph> family, int q, int delta, int jobs = 1,
                           double eta = 0.002);

nlohmann::json to_json(const ScanSummary& s, bool include_reports);

// Exact verdict Z_G(wt) != 0.
bool certify_nonvanishing(const PartiallyColoredGraph& g, const GaussianRational& wt,
                          const EnumerationBudget& budget = {});

// eps = eps2 / (3 delta^2), eps1 = delta_for_epsilon(alpha, delta, eps) with alpha from q.
struct InductionParameters {
    double alpha;
    double eps2;
    double eps;
    double eps1;
};
InductionParameters induction_parameters(int q, int delta, double eps2);

struct InductionCheck {
    bool applicable = true;  // in class with stripped degree at most delta - 1
    bool defined = true;     // every log-ratio exists at w and wt
    bool s1 = true;
    bool s2 = true;
    bool s3 = true;
    double margin1 = std::numeric_limits<double>::infinity();  // min of bound - lhs over (i, j)
    double margin2 = std::numeric_limits<double>::infinity();  // min over (i, j, k)
};

// Statements, for all colors i, j, k:
//  (i)   |R_{i,j}(w) - R_{i,j}(wt)| <= ((1-w) deg(v) + 2/3) eps2 / delta on the stripped graph
//  (ii)  P_{G^{+k},w}[v=j] |R_{i,j}(w) - R_{i,j}(wt)| <= eps2 / delta
//  (iii) Z_G(wt) != 0, decided exactly.
InductionCheck induction_statement_check(const RootedGraph& rg, const mpq_class& w, const GaussianRational& wt,
                                         double eps2, int delta);

struct CliqueMarginRow {
    int delta;
    int q;
    double min_dist;
};
struct CliqueMarginTable {
    std::vector<CliqueMarginRow> rows;
    double log_log_slope;  // least-squares slope of log(min_dist) against log(delta)
};
// K_{delta+1} at q = 2 delta.
CliqueMarginTable clique_margin_table(std::span<const int> deltas);

}  // namespace pottszero
