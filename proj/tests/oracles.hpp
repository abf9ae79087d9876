#pragma once

// Independent reference implementations used only by the tests: plain
// enumeration of every coloring, no symmetry tricks.

#include <gmpxx.h>

#include <functional>
#include <vector>

#include "pottszero/graph.hpp"
#include "pottszero/polynomial.hpp"

namespace oracle {

using namespace pottszero;

inline void for_each_coloring(const PartiallyColoredGraph& g, const std::function<void(const std::vector<Color>&)>& fn) {
    const int n = g.num_vertices();
    const int q = g.num_colors();
    std::vector<Color> colors(n);
    std::vector<Vertex> free;
    for (Vertex v = 0; v < n; ++v) {
        colors[v] = g.pin(v);
        if (!g.is_pinned(v)) free.push_back(v);
    }
    for (Vertex v : free) colors[v] = 1;
    while (true) {
        fn(colors);
        std::size_t i = 0;
        while (i < free.size() && colors[free[i]] == q) colors[free[i++]] = 1;
        if (i == free.size()) return;
        ++colors[free[i]];
    }
}

inline int monochromatic(const PartiallyColoredGraph& g, const std::vector<Color>& colors) {
    int m = 0;
    for (const Edge& e : g.edges())
        if (colors[e.u] == colors[e.v]) ++m;
    return m;
}

inline WPolynomial brute_poly(const PartiallyColoredGraph& g, Vertex v = -1, Color j = 0) {
    std::vector<mpz_class> coeffs(g.num_edges() + 1, 0);
    for_each_coloring(g, [&](const std::vector<Color>& c) {
        if (v >= 0 && c[v] != j) return;
        coeffs[monochromatic(g, c)] += 1;
    });
    return WPolynomial(coeffs);
}

// Marginal of color j at v from the weights of individual colorings.
inline mpq_class brute_marginal(const PartiallyColoredGraph& g, const mpq_class& w, Vertex v, Color j) {
    mpq_class num = 0, den = 0;
    for_each_coloring(g, [&](const std::vector<Color>& c) {
        mpq_class weight = int_pow(w, monochromatic(g, c));
        den += weight;
        if (c[v] == j) num += weight;
    });
    return num / den;
}

// Number of proper colorings agreeing with the pins.
inline long brute_proper_count(const PartiallyColoredGraph& g) {
    long count = 0;
    for_each_coloring(g, [&](const std::vector<Color>& c) {
        if (monochromatic(g, c) == 0) ++count;
    });
    return count;
}

}  // namespace oracle
