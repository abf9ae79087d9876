#pragma once

#include <gmpxx.h>

#include <complex>
#include <span>
#include <vector>

#include "pottszero/errors.hpp"
#include "pottszero/graph.hpp"
#include "pottszero/polynomial.hpp"
#include "pottszero/potts.hpp"

namespace pottszero {

using Complex = std::complex<double>;

// The recursion for a root's log-ratio vector is written in terms of y_j = e^{x_j}
// (j = 1..q-1). With y_j = Z^j/Z^q of the stripped graph the "first" sum equals
// Z(H^{+1})/Z^q and the "last" sum equals Z(H^{+q})/Z^q. The *_exp forms take y
// directly, which keeps everything rational when y is rational.

namespace detail {

template <class S>
S blocked_sum(const S& w, const BlockedColorVector& c, std::span<const S> y, int extra_first, int extra_last) {
    const int q = c.num_colors();
    if (static_cast<int>(y.size()) != q - 1) throw DomainError("vector length must be q-1");
    S s = int_pow(w, c(q) + extra_last);
    for (int j = 1; j < q; ++j) s += int_pow(w, c(j) + (j == 1 ? extra_first : 0)) * y[j - 1];
    return s;
}

template <class S>
bool is_zero(const S& x) {
    if constexpr (std::is_same_v<S, mpq_class>)
        return sgn(x) == 0;
    else
        return x == S(0);
}

}  // namespace detail

template <class S>
S first_leaf_sum_exp(const S& w, const BlockedColorVector& c, std::span<const S> y) {
    return detail::blocked_sum(w, c, y, 1, 0);
}

template <class S>
S last_leaf_sum_exp(const S& w, const BlockedColorVector& c, std::span<const S> y) {
    return detail::blocked_sum(w, c, y, 0, 1);
}

// Gradient of log(first/last) with respect to x, at x = log y.
template <class S>
std::vector<S> log_ratio_step_gradient_exp(const S& w, const BlockedColorVector& c, std::span<const S> y) {
    S p = first_leaf_sum_exp(w, c, y);
    S q_sum = last_leaf_sum_exp(w, c, y);
    if (detail::is_zero(p) || detail::is_zero(q_sum)) throw PoleError("leaf sum vanishes");
    const int q = c.num_colors();
    std::vector<S> grad;
    grad.reserve(q - 1);
    for (int j = 1; j < q; ++j) {
        S term = int_pow(w, c(j)) * y[j - 1];
        S g = term / p - term / q_sum;
        if (j == 1) g += (w - S(1)) * term / p;
        grad.push_back(g);
    }
    return grad;
}

Complex first_leaf_sum(Complex wt, const BlockedColorVector& c, std::span<const Complex> x);
Complex last_leaf_sum(Complex wt, const BlockedColorVector& c, std::span<const Complex> x);
// Principal log of first/last. PoleError if either vanishes, BranchError on the negative axis.
Complex log_ratio_step(Complex wt, const BlockedColorVector& c, std::span<const Complex> x);
std::vector<Complex> log_ratio_step_gradient(Complex wt, const BlockedColorVector& c, std::span<const Complex> x);

// <grad F_{w,c}(t a + (1-t) b), a - b> with the bilinear product.
Complex gradient_path_integrand(Complex w, const BlockedColorVector& c, std::span<const Complex> a,
                                std::span<const Complex> b, double t);

// Root partition of H^{+k} derived from that of H: color k picks up one factor w.
RootPartition attach_leaf(const RootPartition& rp, Color k);

struct MarginalDifference {
    std::vector<mpq_class> entries;      // P_{G^{+1}}[v=j] - P_{G^{+q}}[v=j], j = 1..q-1
    std::vector<mpq_class> hat_entries;  // entry 1 replaced by the same difference at color q
    mpq_class root_first;                // P_G[v=1]
    mpq_class root_last;                 // P_G[v=q]
    mpq_class plus_first_last;           // P_{G^{+1}}[v=q]
    mpq_class plus_last_first;           // P_{G^{+q}}[v=1]
};

// Throws UndefinedMeasureError when G, G^{+1} or G^{+q} has no weight at w.
MarginalDifference marginal_difference(const RootedGraph& rg, const mpq_class& w);
MarginalDifference marginal_difference(const RootPartition& rp, const mpq_class& w);

template <class S>
std::vector<S> hat_transform(std::span<const S> x) {
    std::vector<S> out;
    if (x.empty()) return out;
    out.reserve(x.size());
    out.push_back(-x[0]);
    for (std::size_t j = 1; j < x.size(); ++j) out.push_back(x[j] - x[0]);
    return out;
}

enum class InnerProductCase { first_at_most_last, first_above_last };

struct InnerProductBound {
    double lhs = 0;
    double rhs = 0;
    InnerProductCase side = InnerProductCase::first_at_most_last;
};

struct ExactInnerProductBound {
    mpq_class lhs;
    mpq_class rhs;
    InnerProductCase side = InnerProductCase::first_at_most_last;
};

// lhs = |<P, x>|. rhs = (1-w) P_{G^{+1}}[v=q] |x|_inf when P_G[v=1] <= P_G[v=q],
// else (1-w) P_{G^{+q}}[v=1] |hat x|_inf. Complex x is rotated so the product is real.
InnerProductBound inner_product_bound(const RootedGraph& rg, const mpq_class& w, std::span<const Complex> x);
InnerProductBound inner_product_bound(const MarginalDifference& md, const mpq_class& w, std::span<const Complex> x);
ExactInnerProductBound inner_product_bound(const MarginalDifference& md, const mpq_class& w,
                                           std::span<const mpq_class> x);

}  // namespace pottszero
