#pragma once

#include <gmpxx.h>

#include <complex>
#include <vector>

#include "pottszero/graph.hpp"
#include "pottszero/polynomial.hpp"

namespace pottszero {

struct EnumerationBudget {
    // Upper limit on q^(number of free vertices).
    double max_colorings = 1e8;
};

// Coefficient k counts colorings that agree with the pins and have exactly k
// monochromatic edges (edges between two pins included).
WPolynomial partition_poly(const PartiallyColoredGraph& g, const EnumerationBudget& budget = {});
WPolynomial restricted_partition_poly(const RootedGraph& rg, Color j, const EnumerationBudget& budget = {});

// All restricted polynomials at one vertex plus their sum.
struct RootPartition {
    Vertex root = 0;
    std::vector<WPolynomial> restricted;  // index j-1
    WPolynomial total;

    const WPolynomial& operator()(Color j) const { return restricted.at(j - 1); }
    int num_colors() const { return static_cast<int>(restricted.size()); }
};

RootPartition root_partition(const PartiallyColoredGraph& g, Vertex v, const EnumerationBudget& budget = {});

// Z^j/Z at w. Throws UndefinedMeasureError when Z(w) = 0.
mpq_class marginal(const PartiallyColoredGraph& g, const mpq_class& w, Vertex v, Color j);
std::vector<mpq_class> marginals(const RootPartition& rp, const mpq_class& w);

struct LogRatioVector {
    Color reference = 0;
    std::vector<Color> colors;  // the colors other than the reference, ascending
    std::vector<std::complex<double>> entries;
    // Every underlying ratio had positive real part.
    bool right_half_plane = true;
};

// Entry j is the principal log of Z^j/Z^ref at wt. Throws ZeroRatioError if a
// restricted function vanishes and BranchError if a ratio is a negative real.
LogRatioVector log_ratio_vector(const RootedGraph& rg, std::complex<double> wt, Color ref);
LogRatioVector log_ratio_vector(const RootPartition& rp, std::complex<double> wt, Color ref);

// Exact Z^j(w)/Z^ref(w) for j != ref in ascending order. Throws ZeroRatioError if Z^ref(w) = 0.
std::vector<mpq_class> ratio_vector(const RootPartition& rp, const mpq_class& w, Color ref);

// E over the measure on G - v of w^(number of neighbors of v colored ell).
// Computed by a separate plain enumeration of G - v.
mpq_class neighborhood_expectation(const PartiallyColoredGraph& g, const mpq_class& w, Vertex v, Color ell,
                                   const EnumerationBudget& budget = {});
std::vector<mpq_class> neighborhood_expectations(const PartiallyColoredGraph& g, const mpq_class& w, Vertex v,
                                                 const EnumerationBudget& budget = {});

}  // namespace pottszero
