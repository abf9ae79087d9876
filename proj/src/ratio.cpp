#include "pottszero/ratio.hpp"

#include <algorithm>
#include <cmath>

namespace pottszero {

namespace {

std::vector<Complex> exponentiate(std::span<const Complex> x) {
    std::vector<Complex> y;
    y.reserve(x.size());
    for (Complex v : x) y.push_back(std::exp(v));
    return y;
}

}  // namespace

Complex first_leaf_sum(Complex wt, const BlockedColorVector& c, std::span<const Complex> x) {
    auto y = exponentiate(x);
    return first_leaf_sum_exp<Complex>(wt, c, y);
}

Complex last_leaf_sum(Complex wt, const BlockedColorVector& c, std::span<const Complex> x) {
    auto y = exponentiate(x);
    return last_leaf_sum_exp<Complex>(wt, c, y);
}

Complex log_ratio_step(Complex wt, const BlockedColorVector& c, std::span<const Complex> x) {
    auto y = exponentiate(x);
    Complex p = first_leaf_sum_exp<Complex>(wt, c, y);
    Complex q = last_leaf_sum_exp<Complex>(wt, c, y);
    if (p == 0.0 || q == 0.0) throw PoleError("leaf sum vanishes");
    Complex r = p / q;
    if (r.imag() == 0.0 && r.real() < 0.0) throw BranchError("leaf-sum ratio on the negative real axis");
    return std::log(r);
}

std::vector<Complex> log_ratio_step_gradient(Complex wt, const BlockedColorVector& c, std::span<const Complex> x) {
    auto y = exponentiate(x);
    return log_ratio_step_gradient_exp<Complex>(wt, c, y);
}

Complex gradient_path_integrand(Complex w, const BlockedColorVector& c, std::span<const Complex> a,
                                std::span<const Complex> b, double t) {
    if (a.size() != b.size()) throw DomainError("vector lengths differ");
    std::vector<Complex> point(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) point[j] = t * a[j] + (1.0 - t) * b[j];
    auto grad = log_ratio_step_gradient(w, c, point);
    Complex s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += grad[j] * (a[j] - b[j]);
    return s;
}

RootPartition attach_leaf(const RootPartition& rp, Color k) {
    if (k < 1 || k > rp.num_colors()) throw DomainError("color out of range");
    RootPartition out = rp;
    out.restricted[k - 1] = rp.restricted[k - 1].shifted(1);
    out.total = rp.total - rp.restricted[k - 1] + out.restricted[k - 1];
    return out;
}

MarginalDifference marginal_difference(const RootedGraph& rg, const mpq_class& w) {
    return marginal_difference(root_partition(rg.graph(), rg.root()), w);
}

MarginalDifference marginal_difference(const RootPartition& rp, const mpq_class& w) {
    const int q = rp.num_colors();
    if (q < 2) throw DomainError("need at least two colors");
    auto base = marginals(rp, w);
    auto first = marginals(attach_leaf(rp, 1), w);
    auto last = marginals(attach_leaf(rp, q), w);
    MarginalDifference md;
    for (int j = 0; j < q - 1; ++j) md.entries.push_back(first[j] - last[j]);
    md.hat_entries = md.entries;
    md.hat_entries[0] = first[q - 1] - last[q - 1];
    md.root_first = base[0];
    md.root_last = base[q - 1];
    md.plus_first_last = first[q - 1];
    md.plus_last_first = last[0];
    return md;
}

InnerProductBound inner_product_bound(const RootedGraph& rg, const mpq_class& w, std::span<const Complex> x) {
    return inner_product_bound(marginal_difference(rg, w), w, x);
}

InnerProductBound inner_product_bound(const MarginalDifference& md, const mpq_class& w, std::span<const Complex> x) {
    if (x.size() != md.entries.size()) throw DomainError("vector length must be q-1");
    Complex s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += md.entries[j].get_d() * x[j];
    // Rotate x so the product becomes a nonnegative real.
    Complex rot = std::abs(s) > 0 ? std::conj(s) / std::abs(s) : Complex(1);
    double lhs = 0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += md.entries[j].get_d() * (rot * x[j]).real();

    InnerProductBound out;
    out.lhs = std::abs(lhs);
    const double one_minus_w = 1.0 - w.get_d();
    if (md.root_first <= md.root_last) {
        double norm = 0;
        for (Complex v : x) norm = std::max(norm, std::abs(v));
        out.side = InnerProductCase::first_at_most_last;
        out.rhs = one_minus_w * md.plus_first_last.get_d() * norm;
    } else {
        auto xh = hat_transform<Complex>(x);
        double norm = 0;
        for (Complex v : xh) norm = std::max(norm, std::abs(v));
        out.side = InnerProductCase::first_above_last;
        out.rhs = one_minus_w * md.plus_last_first.get_d() * norm;
    }
    return out;
}

ExactInnerProductBound inner_product_bound(const MarginalDifference& md, const mpq_class& w,
                                           std::span<const mpq_class> x) {
    if (x.size() != md.entries.size()) throw DomainError("vector length must be q-1");
    ExactInnerProductBound out;
    mpq_class s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += md.entries[j] * x[j];
    out.lhs = abs(s);
    auto max_abs = [](std::span<const mpq_class> v) {
        mpq_class m = 0;
        for (const auto& e : v) m = std::max<mpq_class>(m, abs(e));
        return m;
    };
    if (md.root_first <= md.root_last) {
        out.side = InnerProductCase::first_at_most_last;
        out.rhs = (1 - w) * md.plus_first_last * max_abs(x);
    } else {
        auto xh = hat_transform<mpq_class>(x);
        out.side = InnerProductCase::first_above_last;
        out.rhs = (1 - w) * md.plus_last_first * max_abs(xh);
    }
    return out;
}

}  // namespace pottszero
