#include "pottszero/zero_scan.hpp"

#include <algorithm>
#include <cmath>

#include "pottszero/bounds.hpp"
#include "pottszero/enumerate.hpp"
#include "pottszero/errors.hpp"
#include "pottszero/parallel.hpp"
#include "pottszero/ratio.hpp"
#include "pottszero/roots.hpp"

namespace pottszero {

namespace {

bool conjugates_pair_up(const std::vector<Complex>& roots) {
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        const double tol = 1e-10 * (1 + std::abs(roots[i]));
        if (std::abs(roots[i].imag()) <= tol) {
            used[i] = true;
            continue;
        }
        std::size_t best = roots.size();
        double best_dist = tol;
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (j == i || used[j]) continue;
            double d = std::abs(roots[j] - std::conj(roots[i]));
            if (d <= best_dist) {
                best = j;
                best_dist = d;
            }
        }
        if (best == roots.size()) return false;
        used[i] = used[best] = true;
    }
    return true;
}

// |log(a)| for a Gaussian rational close to 1, computed without cancellation.
double abs_log(const GaussianRational& a) {
    mpq_class n2 = a.norm2();
    mpq_class excess = n2 - 1;
    double re = std::log1p(excess.get_d()) / 2;
    double im = std::atan2(a.im.get_d(), a.re.get_d());
    return std::hypot(re, im);
}

}  // namespace

ZeroReport roots_of(const WPolynomial& p, std::string graph_id, int q) {
    if (p.is_zero()) throw DomainError("zero polynomial has no finite root set");
    ZeroReport r;
    r.graph_id = std::move(graph_id);
    r.q = q;
    r.degree = p.degree();
    r.coefficient_norm = p.max_abs_coefficient();
    auto found = find_roots(p);
    r.roots = std::move(found.roots);
    r.used_fallback = found.used_fallback;
    r.degree_check = static_cast<int>(r.roots.size()) == r.degree;
    for (Complex z : r.roots) {
        double res = exact_residual(p, z);
        r.residuals.push_back(res);
        r.max_residual = std::max(r.max_residual, res);
        r.min_dist = std::min(r.min_dist, distance_to_unit_interval(z));
    }
    r.max_relative_residual = r.max_residual / r.coefficient_norm;
    r.residual_check = r.max_relative_residual < kResidualThreshold;
    r.conjugate_check = conjugates_pair_up(r.roots);
    return r;
}

ZeroReport roots_in_w(const PartiallyColoredGraph& g, const EnumerationBudget& budget) {
    return roots_of(partition_poly(g, budget), describe(g), g.num_colors());
}

nlohmann::json to_json(const ZeroReport& r) {
    nlohmann::json roots = nlohmann::json::array();
    for (Complex z : r.roots) roots.push_back({z.real(), z.imag()});
    nlohmann::json j = {{"graph", r.graph_id},
                        {"q", r.q},
                        {"degree", r.degree},
                        {"roots", roots},
                        {"residuals", r.residuals},
                        {"coefficient_norm", r.coefficient_norm},
                        {"max_residual", r.max_residual},
                        {"max_relative_residual", r.max_relative_residual},
                        {"degree_check", r.degree_check},
                        {"residual_check", r.residual_check},
                        {"conjugate_check", r.conjugate_check},
                        {"used_fallback", r.used_fallback}};
    if (std::isfinite(r.min_dist))
        j["min_dist"] = r.min_dist;
    else
        j["min_dist"] = "inf";
    return j;
}

bool in_scan_regime(int q, int delta, double eta) { return q >= (2 - eta) * delta - 1e-12; }

ScanSummary zero_free_scan(std::span<const PartiallyColoredGraph> family, int q, int delta, int jobs, double eta) {
    ScanSummary s;
    s.q = q;
    s.delta = delta;
    s.in_regime = in_scan_regime(q, delta, eta);
    s.reports.resize(family.size());
    parallel_for(family.size(), jobs, [&](std::size_t i) {
        const auto& g = family[i];
        s.reports[i] = roots_in_w(g.num_colors() == q ? g : g.with_num_colors(q));
    });
    for (const auto& r : s.reports) {
        if (r.min_dist < s.min_dist) {
            s.min_dist = r.min_dist;
            s.argmin = r.graph_id;
        }
        s.max_residual = std::max(s.max_residual, r.max_residual);
        s.max_relative_residual = std::max(s.max_relative_residual, r.max_relative_residual);
        s.degree_failures += !r.degree_check;
        s.residual_failures += !r.residual_check;
        s.conjugate_failures += !r.conjugate_check;
    }
    return s;
}

nlohmann::json to_json(const ScanSummary& s, bool include_reports) {
    nlohmann::json j = {{"q", s.q},
                        {"delta", s.delta},
                        {"in_regime", s.in_regime},
                        {"graphs", s.reports.size()},
                        {"argmin", s.argmin},
                        {"max_residual", s.max_residual},
                        {"max_relative_residual", s.max_relative_residual},
                        {"degree_failures", s.degree_failures},
                        {"residual_failures", s.residual_failures},
                        {"conjugate_failures", s.conjugate_failures}};
    if (std::isfinite(s.min_dist))
        j["min_dist"] = s.min_dist;
    else
        j["min_dist"] = "inf";
    if (include_reports) {
        j["reports"] = nlohmann::json::array();
        for (const auto& r : s.reports) j["reports"].push_back(to_json(r));
    }
    return j;
}

bool certify_nonvanishing(const PartiallyColoredGraph& g, const GaussianRational& wt,
                          const EnumerationBudget& budget) {
    return !partition_poly(g, budget).evaluate(wt).is_zero();
}

InductionParameters induction_parameters(int q, int delta, double eps2) {
    InductionParameters p;
    p.alpha = regime_alpha(q, delta);
    p.eps2 = eps2;
    p.eps = eps2 / (3.0 * delta * delta);
    p.eps1 = delta_for_epsilon(p.alpha, delta, p.eps);
    return p;
}

InductionCheck induction_statement_check(const RootedGraph& rg, const mpq_class& w, const GaussianRational& wt,
                                         double eps2, int delta) {
    InductionCheck out;
    const int q = rg.num_colors();
    auto bar = strip_pinned_neighbors(rg);
    const int deg_bar = bar.graph().degree(bar.root());
    if (!rg.in_class(delta) || rg.graph().is_pinned(rg.root()) || deg_bar > delta - 1) {
        out.applicable = false;
        return out;
    }

    auto rp = root_partition(rg.graph(), rg.root());
    out.s3 = !rp.total.evaluate(wt).is_zero();

    auto rpb = root_partition(bar.graph(), bar.root());
    std::vector<mpq_class> at_w(q);
    std::vector<GaussianRational> at_wt(q);
    for (Color c = 1; c <= q; ++c) {
        at_w[c - 1] = rpb(c).evaluate(w);
        at_wt[c - 1] = rpb(c).evaluate(wt);
        if (sgn(at_w[c - 1]) == 0 || at_wt[c - 1].is_zero()) out.defined = false;
    }
    if (!out.defined) return out;

    // diff[i][j] = |R_{i,j}(w) - R_{i,j}(wt)| = |log(Z^i(w) Z^j(wt) / (Z^j(w) Z^i(wt)))|.
    std::vector<std::vector<double>> diff(q, std::vector<double>(q, 0.0));
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j) {
            GaussianRational quotient = (GaussianRational(at_w[i]) * at_wt[j]) / (GaussianRational(at_w[j]) * at_wt[i]);
            diff[i][j] = diff[j][i] = abs_log(quotient);
        }

    const double one_minus_w = 1.0 - w.get_d();
    const double bound1 = (one_minus_w * deg_bar + 2.0 / 3) * eps2 / delta;
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) out.margin1 = std::min(out.margin1, bound1 - diff[i][j]);
    out.s1 = out.margin1 >= 0;

    const double bound2 = eps2 / delta;
    for (Color k = 1; k <= q; ++k) {
        std::vector<mpq_class> m;
        try {
            m = marginals(attach_leaf(rp, k), w);
        } catch (const UndefinedMeasureError&) {
            out.defined = false;
            return out;
        }
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) out.margin2 = std::min(out.margin2, bound2 - m[j].get_d() * diff[i][j]);
    }
    out.s2 = out.margin2 >= 0;
    return out;
}

CliqueMarginTable clique_margin_table(std::span<const int> deltas) {
    CliqueMarginTable t;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int d : deltas) {
        auto g = generate_family(FamilyKind::clique, {.n = d + 1, .q = 2 * d});
        auto r = roots_in_w(g);
        t.rows.push_back({d, 2 * d, r.min_dist});
        if (std::isfinite(r.min_dist) && r.min_dist > 0) {
            double x = std::log(d), y = std::log(r.min_dist);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
    }
    const double den = n * sxx - sx * sx;
    t.log_log_slope = (n >= 2 && den != 0) ? (n * sxy - sx * sy) / den : std::nan("");
    return t;
}

}  // namespace pottszero
