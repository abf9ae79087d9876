#include "pottszero/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "pottszero/bounds.hpp"
#include "pottszero/errors.hpp"
#include "pottszero/identities.hpp"
#include "pottszero/parallel.hpp"
#include "pottszero/potts.hpp"
#include "pottszero/ratio.hpp"
#include "pottszero/zero_scan.hpp"

namespace pottszero {

namespace {

constexpr double kGuard = 1e-12;

struct Context {
    int q;
    int delta;
    bool in_regime;
    const VerifyOptions& options;
};

using Checker = std::function<void(const PartiallyColoredGraph&, const Context&, BoundReport&, std::mt19937_64&)>;

struct BoundDef {
    PinPolicy pins;
    std::function<bool(int q, int delta)> regime;
    Checker check;
    bool uses_witness = false;
};

std::string where(const PartiallyColoredGraph& g, Vertex v, Color j, const mpq_class& w) {
    std::ostringstream s;
    s << describe(g) << " root=" << v;
    if (j != kFree) s << " color=" << j;
    s << " w=" << to_string(w);
    return s.str();
}

// slack >= -guard counts as satisfied; scale is the magnitude of the bound.
void record(BoundReport& r, const Context& ctx, double slack, double scale, const std::function<std::string()>& witness) {
    ++r.instances_checked;
    const bool violated = slack < -kGuard * std::max(1.0, std::abs(scale));
    if (violated) {
        if (ctx.in_regime)
            ++r.violations;
        else
            ++r.flagged_violations;
    }
    if (slack < r.worst_slack) {
        r.worst_slack = slack;
        r.witness = witness();
    }
}

void record_exact(BoundReport& r, const Context& ctx, const mpq_class& slack,
                  const std::function<std::string()>& witness) {
    ++r.instances_checked;
    if (sgn(slack) < 0) {
        if (ctx.in_regime)
            ++r.violations;
        else
            ++r.flagged_violations;
    }
    const double s = slack.get_d();
    if (s < r.worst_slack) {
        r.worst_slack = s;
        r.witness = witness();
    }
}

void record_identity(BoundReport& r, const Context& ctx, const IdentityCheck& c,
                     const std::function<std::string()>& witness) {
    if (!c.defined) {
        ++r.undefined;
        return;
    }
    record(r, ctx, c.holds ? 0.0 : -1.0, 1.0, witness);
}

bool color_on_neighbors(const PartiallyColoredGraph& g, Vertex v, Color j) {
    for (Vertex u : g.neighbors(v))
        if (g.pin(u) == j) return true;
    return false;
}

int blocked_colors(const PartiallyColoredGraph& g, Vertex v) {
    std::vector<bool> seen(g.num_colors() + 1, false);
    int b = 0;
    for (Vertex u : g.neighbors(v))
        if (g.is_pinned(u) && !seen[g.pin(u)]) {
            seen[g.pin(u)] = true;
            ++b;
        }
    return b;
}

bool pins_are_leaves(const PartiallyColoredGraph& g) {
    for (const auto& p : g.pins())
        if (g.degree(p.vertex) != 1) return false;
    return true;
}

int induced_edges(const PartiallyColoredGraph& g, Vertex v) {
    auto nb = g.neighbors(v);
    int e = 0;
    for (std::size_t a = 0; a < nb.size(); ++a)
        for (std::size_t b = a + 1; b < nb.size(); ++b) e += g.has_edge(nb[a], nb[b]);
    return e;
}

std::vector<int> pinned_neighbor_counts(const PartiallyColoredGraph& g, Vertex v) {
    std::vector<int> c(g.num_colors(), 0);
    for (Vertex u : g.neighbors(v))
        if (g.is_pinned(u)) ++c[g.pin(u) - 1];
    return c;
}

bool free_alpha_regime(int q, int delta) { return regime_alpha(q, delta) > 0; }

// --- inequalities -----------------------------------------------------------

void check_prob_basic(const PartiallyColoredGraph& g, const Context& ctx, BoundReport& r, std::mt19937_64&) {
    const int q = ctx.q;
    for (Vertex v : g.free_vertices()) {
        auto rp = root_partition(g, v);
        // b counts pinned neighbors with multiplicity, so f + b = d.
        const int d = g.degree(v), f = g.free_degree(v), b = d - f;
        auto c = pinned_neighbor_counts(g, v);
        for (const auto& w : ctx.options.w_grid) {
            std::vector<mpq_class> m;
            try {
                m = marginals(rp, w);
            } catch (const UndefinedMeasureError&) {
                ++r.undefined;
                continue;
            }
            for (Color j = 1; j <= q; ++j) {
                mpq_class s1 = upper_bound_basic(q, f, b, c[j - 1], w) - m[j - 1];
                mpq_class s2 = upper_bound_basic_degree(q, d, c[j - 1], w) - m[j - 1];
                record_exact(r, ctx, std::min(s1, s2), [&] { return where(g, v, j, w); });
            }
        }
    }
}

void check_prob_basic_lower(const PartiallyColoredGraph& g, const Context& ctx, BoundReport& r, std::mt19937_64&) {
    const int q = ctx.q;
    const double alpha = regime_alpha(q, ctx.delta);
    if (!(alpha > 0)) return;
    const double bound = lower_bound_basic(q, ctx.delta, alpha);
    for (Vertex v : g.free_vertices()) {
        auto rp = root_partition(g, v);
        for (const auto& w : ctx.options.w_grid) {
            std::vector<mpq_class> m;
            try {
                m = marginals(rp, w);
            } catch (const UndefinedMeasureError&) {
                ++r.undefined;
                continue;
            }
            for (Color j = 1; j <= q; ++j) {
                if (color_on_neighbors(g, v, j)) continue;
                record(r, ctx, m[j - 1].get_d() - bound, bound, [&] { return where(g, v, j, w); });
            }
        }
    }
}

void check_ratio_envelope(const PartiallyColoredGraph& g, const Context& ctx, BoundReport& r, std::mt19937_64&) {
    const int q = ctx.q;
    const double alpha = regime_alpha(q, ctx.delta);
    if (!(alpha > 0)) return;
    const auto env = ratio_envelope(q, ctx.delta, alpha);
    for (Vertex v : g.free_vertices()) {
        RootedGraph rg(g, v);
        if (!rg.in_class(ctx.delta)) continue;
        auto c = blocked_color_vector(rg);
        auto bar = strip_pinned_neighbors(rg);
        auto rpb = root_partition(bar.graph(), bar.root());
        for (const auto& w : ctx.options.w_grid) {
            std::vector<mpq_class> y;
            try {
                y = ratio_vector(rpb, w, q);
            } catch (const ZeroRatioError&) {
                ++r.undefined;
                continue;
            }
            for (Color j = 1; j < q; ++j) {
                double e = y[j - 1].get_d();
                record(r, ctx, std::min(e - env.lo, env.hi - e), env.hi, [&] { return where(g, v, j, w); });
            }
            mpq_class p = first_leaf_sum_exp<mpq_class>(w, c, y);
            mpq_class l = last_leaf_sum_exp<mpq_class>(w, c, y);
            if (sgn(l) == 0) {
                ++r.undefined;
                continue;
            }
            double ratio = std::abs(mpq_class(p / l).get_d());
            record(r, ctx, std::min(ratio - env.f_lo, env.f_hi - ratio), env.f_hi,
                   [&] { return where(g, v, kFree, w) + " (first/last)"; });
        }
    }
}

void check_few_blocked(const PartiallyColoredGraph& g, const Context& ctx, BoundReport& r, std::mt19937_64&) {
    const int q = ctx.q;
    const double alpha = regime_alpha(q, ctx.delta);
    if (!(alpha > 0)) return;
    for (Vertex v : g.free_vertices()) {
        auto rp = root_partition(g, v);
        const int d = g.degree(v), f = g.free_degree(v);
        for (Color j = 1; j <= q; ++j) {
            if (color_on_neighbors(g, v, j)) continue;
            int blocked = 0;
            for (Vertex u : g.neighbors(v))
                if (!g.is_pinned(u) && color_on_neighbors(g, u, j)) ++blocked;
            const double gamma = f > 0 ? 1.0 - static_cast<double>(blocked) / f : 1.0;
            for (const auto& w : ctx.options.w_grid) {
                mpq_class m;
                try {
                    m = marginals(rp, w)[j - 1];
                } catch (const UndefinedMeasureError&) {
                    ++r.undefined;
                    continue;
                }
                double bound = few_blocked_bound(q, d, f, gamma, alpha, w.get_d());
                record(r, ctx, bound - m.get_d(), bound, [&] { return where(g, v, j, w); });
            }
        }
    }
}

void check_sparse_neighborhood(const PartiallyColoredGraph& g, const Context& ctx, BoundReport& r,
                               std::mt19937_64&) {
    const int q = ctx.q;
    if (!pins_are_leaves(g) || q <= ctx.delta) return;
    for (Vertex v : g.free_vertices()) {
        auto rp = root_partition(g, v);
        const int f = g.free_degree(v);
        const int l_size = q - blocked_colors(g, v);
        const int e_h = induced_edges(g, v);
        for (const auto& w : ctx.options.w_grid) {
            std::vector<mpq_class> m;
            try {
                m = marginals(rp, w);
            } catch (const UndefinedMeasureError&) {
                ++r.undefined;
                continue;
            }
            double bound = sparse_neighborhood_bound(q, ctx.delta, f, l_size, e_h, w.get_d());
            for (Color j = 1; j <= q; ++j) {
                if (color_on_neighbors(g, v, j)) continue;
                record(r, ctx, bound - m[j - 1].get_d(), bound, [&] { return where(g, v, j, w); });
            }
        }
    }
}

void check_replace_by_prob(const PartiallyColoredGraph& g, const Context& ctx, BoundReport& r,
                           std::mt19937_64& rng) {
    const int q = ctx.q;
    std::uniform_int_distribution<int> num(-1000, 1000);
    std::uniform_real_distribution<double> unit(-1, 1);
    for (Vertex v : g.free_vertices()) {
        auto rp = root_partition(g, v);
        for (const auto& w : ctx.options.w_grid) {
            MarginalDifference md;
            try {
                md = marginal_difference(rp, w);
            } catch (const UndefinedMeasureError&) {
                ++r.undefined;
                continue;
            }
            std::vector<std::vector<mpq_class>> xs;
            xs.emplace_back(q - 1, mpq_class(-1));
            std::vector<mpq_class> alt;
            for (int j = 0; j < q - 1; ++j) alt.emplace_back(j == 0 ? -1 : 1);
            xs.push_back(alt);
            for (int s = 0; s < ctx.options.samples; ++s) {
                std::vector<mpq_class> x;
                for (int j = 0; j < q - 1; ++j) x.emplace_back(num(rng), 1000);
                xs.push_back(std::move(x));
            }
            for (const auto& x : xs) {
                auto b = inner_product_bound(md, w, x);
                record_exact(r, ctx, b.rhs - b.lhs, [&] { return where(g, v, kFree, w); });
            }
            for (int s = 0; s < ctx.options.samples; ++s) {
                std::vector<Complex> x;
                for (int j = 0; j < q - 1; ++j) x.emplace_back(unit(rng), unit(rng));
                auto b = inner_product_bound(md, w, x);
                record(r, ctx, b.rhs - b.lhs, b.rhs, [&] { return where(g, v, kFree, w) + " (complex x)"; });
            }
        }
    }
}

void check_sum_lower_bound(const PartiallyColoredGraph& g, const Context& ctx, BoundReport& r,
                           std::mt19937_64& rng) {
    const int q = ctx.q;
    const double alpha = regime_alpha(q, ctx.delta);
    if (!(alpha > 0)) return;
    const ConstantPack pack(alpha);
    const double eps1 = 0.999 * pack.C1 / ctx.delta;
    const double eps2 = 0.999 * std::numbers::pi / 8;
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi), radius(0, 1);
    for (Vertex v : g.free_vertices()) {
        RootedGraph rg(g, v);
        if (!rg.in_class(ctx.delta)) continue;
        auto c = blocked_color_vector(rg);
        auto bar = strip_pinned_neighbors(rg);
        auto rpb = root_partition(bar.graph(), bar.root());
        for (const auto& w : ctx.options.w_grid) {
            const double wd = w.get_d();
            for (Color ell = 1; ell <= q; ++ell) {
                std::vector<double> base;
                try {
                    for (const auto& y : ratio_vector(rpb, w, ell)) base.push_back(std::log(y.get_d()));
                } catch (const ZeroRatioError&) {
                    ++r.undefined;
                    continue;
                }
                // Deterministic extremes: all entries rotated together, or all shrunk, with wt pushed
                // off the axis or toward 0. Then random points of the polydisc.
                std::vector<std::pair<Complex, std::vector<Complex>>> points;
                for (Complex dw : {Complex(0, eps1), Complex(-eps1, 0)})
                    for (Complex dx : {Complex(0, eps2), Complex(-eps2, 0), Complex(0, -eps2)}) {
                        std::vector<Complex> x;
                        for (double b : base) x.push_back(b + dx);
                        points.emplace_back(wd + dw, std::move(x));
                    }
                for (int s = 0; s < ctx.options.samples; ++s) {
                    std::vector<Complex> x;
                    for (double b : base) x.push_back(b + std::polar(eps2 * radius(rng), angle(rng)));
                    points.emplace_back(wd + std::polar(eps1 * radius(rng), angle(rng)), std::move(x));
                }
                for (const auto& [wt, x] : points)
                    for (int tau : {0, 1}) {
                        auto s = sum_lower_bound(wt, c, x, tau, pack, ctx.delta, ell);
                        record(r, ctx, s.lhs - s.rhs, s.rhs, [&] {
                            return where(g, v, ell, w) + " tau=" + std::to_string(tau);
                        });
                    }
            }
        }
    }
}

// --- identities -------------------------------------------------------------

void check_telescoping_identity(const PartiallyColoredGraph& g, const Context& ctx, BoundReport& r,
                                std::mt19937_64& rng) {
    const int q = ctx.q;
    for (Vertex v : g.free_vertices()) {
        RootedGraph rg(g, v);
        std::vector<Vertex> order(g.neighbors(v).begin(), g.neighbors(v).end());
        std::shuffle(order.begin(), order.end(), rng);
        for (const auto& w : ctx.options.w_grid)
            for (Color l1 = 1; l1 <= q; ++l1)
                for (Color l2 = l1 + 1; l2 <= q; ++l2)
                    record_identity(r, ctx, check_telescoping(rg, w, l1, l2, order), [&] {
                        return where(g, v, kFree, w) + " l1=" + std::to_string(l1) + " l2=" + std::to_string(l2);
                    });
    }
}

void check_gradient_identity(const PartiallyColoredGraph& g, const Context& ctx, BoundReport& r, std::mt19937_64&) {
    for (Vertex v : g.free_vertices()) {
        RootedGraph rg(g, v);
        for (const auto& w : ctx.options.w_grid)
            record_identity(r, ctx, check_gradient(rg, w), [&] { return where(g, v, kFree, w); });
    }
}

void check_eion_identity(const PartiallyColoredGraph& g, const Context& ctx, BoundReport& r, std::mt19937_64&) {
    for (Vertex v : g.free_vertices())
        for (const auto& w : ctx.options.w_grid)
            record_identity(r, ctx, check_neighborhood_expectation(g, v, w), [&] { return where(g, v, kFree, w); });
}

void check_pin_to_leaves_identity(const PartiallyColoredGraph& g, const Context& ctx, BoundReport& r,
                                  std::mt19937_64&) {
    record_identity(r, ctx, check_pin_to_leaves(g), [&] { return describe(g); });
}

void check_log_ratio_reconstruction(const PartiallyColoredGraph& g, const Context& ctx, BoundReport& r,
                                    std::mt19937_64&) {
    for (Vertex v : g.free_vertices()) {
        RootedGraph rg(g, v);
        for (const auto& w : ctx.options.w_grid) {
            auto c = check_reconstruction(rg, w);
            if (!c.defined) {
                ++r.undefined;
                continue;
            }
            record(r, ctx, c.holds ? kGuard * 0.5 - c.log_error : -1.0, 1.0, [&] { return where(g, v, kFree, w); });
        }
    }
}

void check_induction_statements(const PartiallyColoredGraph& g, const Context& ctx, BoundReport& r,
                                std::mt19937_64&) {
    const auto params = induction_parameters(ctx.q, ctx.delta, ctx.options.eps2);
    const mpq_class half_eps1 = mpq_class(params.eps1) / 2;
    for (Vertex v : g.free_vertices()) {
        RootedGraph rg(g, v);
        for (const auto& w : ctx.options.w_grid) {
            auto c = induction_statement_check(rg, w, GaussianRational(w + half_eps1), params.eps2, ctx.delta);
            if (!c.applicable) continue;
            if (!c.defined) {
                ++r.undefined;
                continue;
            }
            double slack = std::min(c.margin1, c.margin2);
            if (!c.s3) slack = std::min(slack, -1.0);
            record(r, ctx, slack, params.eps2 / ctx.delta, [&] { return where(g, v, kFree, w); });
        }
    }
}

const std::map<std::string, BoundDef>& registry() {
    static const std::map<std::string, BoundDef> defs = {
        {"prob_basic", {PinPolicy::all, [](int q, int d) { return q > d + 1; }, check_prob_basic, true}},
        {"prob_basic_lower", {PinPolicy::all, free_alpha_regime, check_prob_basic_lower}},
        {"ratio_envelope", {PinPolicy::all, free_alpha_regime, check_ratio_envelope}},
        {"few_blocked", {PinPolicy::all, free_alpha_regime, check_few_blocked}},
        {"sparse_neighborhood", {PinPolicy::all, free_alpha_regime, check_sparse_neighborhood}},
        {"replace_by_prob", {PinPolicy::all, [](int q, int) { return q >= 2; }, check_replace_by_prob}},
        {"sum_lower_bound", {PinPolicy::all, free_alpha_regime, check_sum_lower_bound}},
        {"telescoping_identity", {PinPolicy::all, [](int q, int) { return q >= 2; }, check_telescoping_identity}},
        {"gradient_identity", {PinPolicy::all, [](int q, int) { return q >= 2; }, check_gradient_identity}},
        {"eion_identity", {PinPolicy::all, [](int q, int d) { return q >= d + 1; }, check_eion_identity}},
        {"pin_to_leaves", {PinPolicy::any, [](int q, int) { return q >= 1; }, check_pin_to_leaves_identity}},
        {"log_ratio_reconstruction",
         {PinPolicy::all, [](int q, int) { return q >= 2; }, check_log_ratio_reconstruction}},
        {"induction_statements",
         {PinPolicy::all, [](int q, int d) { return in_scan_regime(q, d) && free_alpha_regime(q, d); },
          check_induction_statements}},
    };
    return defs;
}

const BoundDef& lookup(const std::string& id) {
    auto it = registry().find(id);
    if (it == registry().end()) throw UnknownBoundError("unknown bound: " + id);
    return it->second;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

void BoundReport::merge(const BoundReport& other) {
    instances_checked += other.instances_checked;
    violations += other.violations;
    flagged_violations += other.flagged_violations;
    undefined += other.undefined;
    out_of_regime = out_of_regime || other.out_of_regime;
    if (other.worst_slack < worst_slack) {
        worst_slack = other.worst_slack;
        witness = other.witness;
    }
}

nlohmann::json to_json(const BoundReport& r) {
    nlohmann::json j = {{"bound_id", r.bound_id},
                        {"family", r.family},
                        {"instances_checked", r.instances_checked},
                        {"violations", r.violations},
                        {"flagged_violations", r.flagged_violations},
                        {"undefined", r.undefined},
                        {"witness", r.witness},
                        {"out_of_regime", r.out_of_regime},
                        {"passed", r.passed()}};
    if (std::isfinite(r.worst_slack))
        j["worst_slack"] = r.worst_slack;
    else
        j["worst_slack"] = nullptr;
    return j;
}

std::string csv_header() {
    return "bound_id,family,instances_checked,violations,flagged_violations,undefined,worst_slack,out_of_regime,"
           "witness";
}

std::string to_csv_row(const BoundReport& r) {
    std::ostringstream s;
    s << csv_field(r.bound_id) << ',' << csv_field(r.family) << ',' << r.instances_checked << ',' << r.violations
      << ',' << r.flagged_violations << ',' << r.undefined << ','
      << (std::isfinite(r.worst_slack) ? to_decimal_string(r.worst_slack) : std::string()) << ','
      << (r.out_of_regime ? "true" : "false") << ',' << csv_field(r.witness);
    return s.str();
}

std::string FamilySpec::describe(PinPolicy policy) const {
    std::ostringstream s;
    s << "connected n<=" << n_max << " maxdeg<=" << delta << " q={";
    for (std::size_t i = 0; i < qs.size(); ++i) s << (i ? "," : "") << qs[i];
    s << "} pins=" << to_string(policy);
    return s.str();
}

std::vector<mpq_class> uniform_grid(int points) {
    if (points < 1) throw DomainError("grid needs at least one point");
    std::vector<mpq_class> out;
    if (points == 1) return {mpq_class(0)};
    for (int k = 0; k < points; ++k) {
        mpq_class x(k, points - 1);
        x.canonicalize();
        out.push_back(x);
    }
    return out;
}

const std::vector<std::string>& registered_bounds() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& [id, def] : registry()) v.push_back(id);
        return v;
    }();
    return ids;
}

PinPolicy default_pin_policy(const std::string& bound_id) { return lookup(bound_id).pins; }

PartiallyColoredGraph tightness_witness(int q, int delta, Color j) {
    if (delta < 2) throw DomainError("witness needs delta >= 2");
    if (j < 1 || j > q) throw DomainError("color out of range");
    PartiallyColoredGraph g(1, q);
    std::vector<Vertex> clique;
    for (int i = 0; i < delta - 1; ++i) {
        Vertex u = g.add_vertex();
        g.add_edge(0, u);
        for (Vertex w : clique) g.add_edge(u, w);
        clique.push_back(u);
    }
    for (Vertex u : clique) g.add_edge(u, g.add_vertex(j));
    return g;
}

BoundReport verify_bound(const std::string& bound_id, const VerifyOptions& options) {
    const BoundDef& def = lookup(bound_id);
    const PinPolicy policy = options.family.pins.value_or(def.pins);
    const int delta = options.family.delta;

    BoundReport total;
    total.bound_id = bound_id;
    total.family = options.family.describe(policy);
    if (def.uses_witness && options.include_witness) total.family += " +witness";

    for (int q : options.family.qs) {
        const Context ctx{q, delta, def.regime(q, delta), options};
        auto graphs = enumerate_graphs(options.family.n_max, delta, q, policy);
        if (def.uses_witness && options.include_witness && delta >= 2 && q >= delta)
            graphs.push_back(tightness_witness(q, delta, 1));
        std::vector<BoundReport> parts(graphs.size());
        parallel_for(graphs.size(), options.jobs, [&](std::size_t i) {
            std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ull + i * 7919 + q);
            def.check(graphs[i], ctx, parts[i], rng);
        });
        BoundReport per_q;
        per_q.out_of_regime = !ctx.in_regime;
        for (const auto& p : parts) per_q.merge(p);
        total.merge(per_q);
    }
    return total;
}

}  // namespace pottszero
