#include "pottszero/identities.hpp"

#include <cmath>

#include "pottszero/errors.hpp"
#include "pottszero/ratio.hpp"

namespace pottszero {

IdentityCheck check_telescoping(const RootedGraph& rg, const mpq_class& w, Color l1, Color l2,
                                std::span<const Vertex> order) {
    IdentityCheck out;
    mpq_class num = 1, den = 1;
    for (const auto& t : telescoping_decompose(rg, l1, l2, order)) {
        num *= restricted_partition_poly(t.hat, l1).evaluate(w);
        den *= restricted_partition_poly(t.hat, l2).evaluate(w);
    }
    mpq_class z1 = restricted_partition_poly(rg, l1).evaluate(w);
    mpq_class z2 = restricted_partition_poly(rg, l2).evaluate(w);
    out.defined = sgn(den) != 0 && sgn(z2) != 0;
    out.holds = num * z2 == den * z1;
    return out;
}

IdentityCheck check_gradient(const RootedGraph& rg, const mpq_class& w) {
    IdentityCheck out;
    const int q = rg.num_colors();
    try {
        auto c = blocked_color_vector(rg);
        auto bar = strip_pinned_neighbors(rg);
        auto y = ratio_vector(root_partition(bar.graph(), bar.root()), w, q);
        auto md = marginal_difference(rg, w);
        auto grad = log_ratio_step_gradient_exp<mpq_class>(w, c, y);
        out.holds = grad == md.entries;
    } catch (const UndefinedMeasureError&) {
        out.defined = false;
    } catch (const ZeroRatioError&) {
        out.defined = false;
    } catch (const PoleError&) {
        out.defined = false;
    }
    return out;
}

IdentityCheck check_neighborhood_expectation(const PartiallyColoredGraph& g, Vertex v, const mpq_class& w) {
    IdentityCheck out;
    try {
        auto e = neighborhood_expectations(g, w, v);
        mpq_class sum = 0;
        for (const auto& x : e) sum += x;
        if (sgn(sum) == 0) {
            out.defined = false;
            return out;
        }
        auto m = marginals(root_partition(g, v), w);
        for (std::size_t l = 0; l < e.size(); ++l)
            if (m[l] != e[l] / sum) out.holds = false;
    } catch (const UndefinedMeasureError&) {
        out.defined = false;
    }
    return out;
}

IdentityCheck check_pin_to_leaves(const PartiallyColoredGraph& g) {
    IdentityCheck out;
    out.holds = partition_poly(pin_to_leaves(g)) == partition_poly(g);
    return out;
}

ReconstructionCheck check_reconstruction(const RootedGraph& rg, const mpq_class& w) {
    ReconstructionCheck out;
    const int q = rg.num_colors();
    auto bar = strip_pinned_neighbors(rg);
    auto rp = root_partition(bar.graph(), bar.root());
    mpq_class z1 = rp(1).evaluate(w), zq = rp(q).evaluate(w);
    if (sgn(z1) == 0 || sgn(zq) == 0) {
        out.defined = false;
        return out;
    }
    mpq_class num = 1, den = 1;
    double log_sum = 0;
    bool log_form = true;
    const Complex wt(w.get_d(), 0.0);
    for (const auto& t : telescoping_decompose(bar, 1, q)) {
        RootedGraph gi(t.reduced, t.reduced_root);
        auto c = blocked_color_vector(gi);
        auto bar_i = strip_pinned_neighbors(gi);
        std::vector<mpq_class> y;
        try {
            y = ratio_vector(root_partition(bar_i.graph(), bar_i.root()), w, q);
        } catch (const ZeroRatioError&) {
            out.defined = false;
            return out;
        }
        mpq_class p = first_leaf_sum_exp<mpq_class>(w, c, y);
        mpq_class l = last_leaf_sum_exp<mpq_class>(w, c, y);
        if (sgn(p) == 0 || sgn(l) == 0) {
            out.defined = false;
            return out;
        }
        num *= p;
        den *= l;
        std::vector<Complex> x;
        for (const auto& e : y) {
            if (sgn(e) <= 0) log_form = false;
            x.emplace_back(std::log(e.get_d()), 0.0);
        }
        if (log_form) log_sum += log_ratio_step(wt, c, x).real();
    }
    out.holds = num * zq == den * z1;
    if (log_form) {
        mpq_class ratio = z1 / zq;
        out.log_error = std::fabs(log_sum - std::log(ratio.get_d()));
    }
    return out;
}

}  // namespace pottszero
