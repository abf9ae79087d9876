#include "pottszero/potts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "pottszero/errors.hpp"

namespace pottszero {

namespace {

mpz_class to_mpz(std::uint64_t c) {
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof c, 0, 0, &c);
    return z;
}

void check_budget(int q, int free_count, const EnumerationBudget& budget) {
    double work = std::pow(static_cast<double>(q), free_count);
    if (work > budget.max_colorings || work > 1e18)
        throw BudgetError("enumeration needs " + to_decimal_string(work) + " colorings, budget is " +
                          to_decimal_string(budget.max_colorings));
}

// Free vertices in breadth-first order, one component after another.
std::vector<Vertex> free_order(const PartiallyColoredGraph& g) {
    std::vector<Vertex> order;
    std::vector<char> seen(g.num_vertices(), 0);
    for (Vertex s = 0; s < g.num_vertices(); ++s) {
        if (seen[s] || g.is_pinned(s)) continue;
        seen[s] = 1;
        std::size_t head = order.size();
        order.push_back(s);
        while (head < order.size()) {
            Vertex u = order[head++];
            for (Vertex x : g.neighbors(u))
                if (!seen[x] && !g.is_pinned(x)) {
                    seen[x] = 1;
                    order.push_back(x);
                }
        }
    }
    return order;
}

// Backtracking over free vertices where colors not used by any pin are
// interchangeable: those are enumerated as anonymous classes in first-use
// order and each leaf is weighted by the number of ways to name the classes.
class ColoringEngine {
public:
    explicit ColoringEngine(const PartiallyColoredGraph& g) : q_(g.num_colors()) {
        for (Color c : g.pin_map())
            if (c != kFree && std::find(explicit_.begin(), explicit_.end(), c) == explicit_.end())
                explicit_.push_back(c);
        std::sort(explicit_.begin(), explicit_.end());
        ke_ = static_cast<int>(explicit_.size());
        auto label_of = [&](Color c) {
            return static_cast<int>(std::find(explicit_.begin(), explicit_.end(), c) - explicit_.begin());
        };

        for (const Edge& e : g.edges())
            if (g.is_pinned(e.u) && g.is_pinned(e.v) && g.pin(e.u) == g.pin(e.v)) ++base_m_;

        order_ = free_order(g);
        std::vector<int> position(g.num_vertices(), -1);
        for (std::size_t p = 0; p < order_.size(); ++p) position[order_[p]] = static_cast<int>(p);
        prior_.resize(order_.size());
        pinned_hits_.assign(order_.size(), std::vector<int>(ke_, 0));
        for (std::size_t p = 0; p < order_.size(); ++p)
            for (Vertex x : g.neighbors(order_[p])) {
                if (g.is_pinned(x))
                    ++pinned_hits_[p][label_of(g.pin(x))];
                else if (position[x] < static_cast<int>(p))
                    prior_[p].push_back(position[x]);
            }

        const int anon = q_ - ke_;
        falling_.assign(anon + 1, 1);
        for (int k = 1; k <= anon; ++k) falling_[k] = falling_[k - 1] * static_cast<std::uint64_t>(anon - k + 1);
        counts_.assign(g.num_edges() + 1, 0);
        labels_.assign(order_.size(), -1);
    }

    WPolynomial run() {
        recurse(0, 0, base_m_);
        std::vector<mpz_class> coeffs;
        coeffs.reserve(counts_.size());
        for (std::uint64_t c : counts_) coeffs.push_back(to_mpz(c));
        return WPolynomial(std::move(coeffs));
    }

private:
    void recurse(std::size_t pos, int anon_used, int m) {
        if (pos == order_.size()) {
            counts_[m] += falling_[anon_used];
            return;
        }
        int hits[64] = {0};
        for (int p : prior_[pos]) ++hits[labels_[p]];
        for (int l = 0; l < ke_; ++l) {
            labels_[pos] = l;
            recurse(pos + 1, anon_used, m + hits[l] + pinned_hits_[pos][l]);
        }
        for (int a = 0; a < anon_used; ++a) {
            labels_[pos] = ke_ + a;
            recurse(pos + 1, anon_used, m + hits[ke_ + a]);
        }
        if (anon_used < q_ - ke_) {
            labels_[pos] = ke_ + anon_used;
            recurse(pos + 1, anon_used + 1, m);
        }
    }

    int q_;
    int ke_ = 0;
    int base_m_ = 0;
    std::vector<Color> explicit_;
    std::vector<Vertex> order_;
    std::vector<std::vector<int>> prior_;
    std::vector<std::vector<int>> pinned_hits_;
    std::vector<std::uint64_t> falling_;
    std::vector<std::uint64_t> counts_;
    std::vector<int> labels_;
};

}  // namespace

WPolynomial partition_poly(const PartiallyColoredGraph& g, const EnumerationBudget& budget) {
    check_budget(g.num_colors(), g.num_free(), budget);
    if (g.num_colors() > 63) throw DomainError("at most 63 colors supported");
    return ColoringEngine(g).run();
}

WPolynomial restricted_partition_poly(const RootedGraph& rg, Color j, const EnumerationBudget& budget) {
    return partition_poly(pinned_copy(rg.graph(), rg.root(), j), budget);
}

RootPartition root_partition(const PartiallyColoredGraph& g, Vertex v, const EnumerationBudget& budget) {
    RootPartition rp;
    rp.root = v;
    if (g.is_pinned(v)) {
        // A pinned vertex only carries its own color.
        for (Color j = 1; j <= g.num_colors(); ++j)
            rp.restricted.push_back(j == g.pin(v) ? partition_poly(g, budget) : WPolynomial());
    } else {
        check_budget(g.num_colors(), g.num_free(), budget);
        for (Color j = 1; j <= g.num_colors(); ++j)
            rp.restricted.push_back(partition_poly(pinned_copy(g, v, j), budget));
    }
    for (const auto& p : rp.restricted) rp.total = rp.total + p;
    return rp;
}

mpq_class marginal(const PartiallyColoredGraph& g, const mpq_class& w, Vertex v, Color j) {
    if (j < 1 || j > g.num_colors()) throw DomainError("color out of range");
    return marginals(root_partition(g, v), w)[j - 1];
}

std::vector<mpq_class> marginals(const RootPartition& rp, const mpq_class& w) {
    mpq_class z = rp.total.evaluate(w);
    if (sgn(z) == 0) throw UndefinedMeasureError("partition function vanishes at w = " + to_string(w));
    std::vector<mpq_class> out;
    out.reserve(rp.restricted.size());
    for (const auto& p : rp.restricted) out.push_back(p.evaluate(w) / z);
    return out;
}

LogRatioVector log_ratio_vector(const RootedGraph& rg, std::complex<double> wt, Color ref) {
    return log_ratio_vector(root_partition(rg.graph(), rg.root()), wt, ref);
}

LogRatioVector log_ratio_vector(const RootPartition& rp, std::complex<double> wt, Color ref) {
    const int q = rp.num_colors();
    if (ref < 1 || ref > q) throw DomainError("reference color out of range");
    LogRatioVector out;
    out.reference = ref;
    std::complex<double> zref = rp(ref).evaluate(wt);
    if (zref == 0.0) throw ZeroRatioError("restricted partition function of the reference color vanishes");
    for (Color j = 1; j <= q; ++j) {
        if (j == ref) continue;
        std::complex<double> zj = rp(j).evaluate(wt);
        if (zj == 0.0)
            throw ZeroRatioError("restricted partition function of color " + std::to_string(j) + " vanishes");
        std::complex<double> r = zj / zref;
        if (r.imag() == 0.0 && r.real() < 0.0)
            throw BranchError("ratio for color " + std::to_string(j) + " lies on the negative real axis");
        if (r.real() <= 0.0) out.right_half_plane = false;
        out.colors.push_back(j);
        out.entries.push_back(std::log(r));
    }
    return out;
}

std::vector<mpq_class> ratio_vector(const RootPartition& rp, const mpq_class& w, Color ref) {
    const int q = rp.num_colors();
    if (ref < 1 || ref > q) throw DomainError("reference color out of range");
    mpq_class zref = rp(ref).evaluate(w);
    if (sgn(zref) == 0) throw ZeroRatioError("restricted partition function of the reference color vanishes");
    std::vector<mpq_class> out;
    for (Color j = 1; j <= q; ++j)
        if (j != ref) out.push_back(rp(j).evaluate(w) / zref);
    return out;
}

std::vector<mpq_class> neighborhood_expectations(const PartiallyColoredGraph& g, const mpq_class& w, Vertex v,
                                                 const EnumerationBudget& budget) {
    const int q = g.num_colors();
    auto removal = remove_vertices(g, std::span<const Vertex>(&v, 1));
    const auto& h = removal.graph;
    check_budget(q, h.num_free(), budget);

    std::vector<int> is_nbr(h.num_vertices(), 0);
    std::vector<int> base_hits(q + 1, 0);
    for (Vertex u : g.neighbors(v)) {
        Vertex x = removal.mapping[u];
        if (h.is_pinned(x))
            ++base_hits[h.pin(x)];
        else
            is_nbr[x] = 1;
    }
    int base_m = 0;
    for (const Edge& e : h.edges())
        if (h.is_pinned(e.u) && h.is_pinned(e.v) && h.pin(e.u) == h.pin(e.v)) ++base_m;

    std::vector<Vertex> order = free_order(h);
    std::vector<int> position(h.num_vertices(), -1);
    for (std::size_t p = 0; p < order.size(); ++p) position[order[p]] = static_cast<int>(p);

    const int max_m = h.num_edges();
    const int max_c = g.degree(v);
    // table[ell][m][c]: colorings with m monochromatic edges and c neighbors colored ell.
    std::vector<std::vector<std::vector<std::uint64_t>>> table(
        q + 1, std::vector<std::vector<std::uint64_t>>(max_m + 1, std::vector<std::uint64_t>(max_c + 1, 0)));
    std::vector<Color> colors(h.num_vertices(), kFree);
    for (Vertex x = 0; x < h.num_vertices(); ++x) colors[x] = h.pin(x);
    std::vector<int> hits = base_hits;

    auto recurse = [&](auto&& self, std::size_t pos, int m) -> void {
        if (pos == order.size()) {
            for (Color ell = 1; ell <= q; ++ell) ++table[ell][m][hits[ell]];
            return;
        }
        Vertex x = order[pos];
        for (Color c = 1; c <= q; ++c) {
            int add = 0;
            for (Vertex y : h.neighbors(x))
                if ((h.is_pinned(y) || position[y] < static_cast<int>(pos)) && colors[y] == c) ++add;
            colors[x] = c;
            if (is_nbr[x]) ++hits[c];
            self(self, pos + 1, m + add);
            if (is_nbr[x]) --hits[c];
        }
        colors[x] = kFree;
    };
    recurse(recurse, 0, base_m);

    std::vector<mpq_class> wpow(max_m + max_c + 1);
    wpow[0] = 1;
    for (std::size_t k = 1; k < wpow.size(); ++k) wpow[k] = wpow[k - 1] * w;

    mpq_class z = 0;
    for (int m = 0; m <= max_m; ++m)
        for (int c = 0; c <= max_c; ++c) z += mpq_class(to_mpz(table[1][m][c])) * wpow[m];
    if (sgn(z) == 0) throw UndefinedMeasureError("measure on G - v undefined at w = " + to_string(w));

    std::vector<mpq_class> out;
    for (Color ell = 1; ell <= q; ++ell) {
        mpq_class num = 0;
        for (int m = 0; m <= max_m; ++m)
            for (int c = 0; c <= max_c; ++c)
                if (table[ell][m][c]) num += mpq_class(to_mpz(table[ell][m][c])) * wpow[m + c];
        out.push_back(num / z);
    }
    return out;
}

mpq_class neighborhood_expectation(const PartiallyColoredGraph& g, const mpq_class& w, Vertex v, Color ell,
                                   const EnumerationBudget& budget) {
    if (ell < 1 || ell > g.num_colors()) throw DomainError("color out of range");
    return neighborhood_expectations(g, w, v, budget)[ell - 1];
}

}  // namespace pottszero
