#include "pottszero/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pottszero/errors.hpp"
#include "pottszero/polynomial.hpp"

namespace pottszero {

namespace {

constexpr double kRegimeGuard = 1e-12;

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

void require_alpha_regime(int q, int delta, double alpha) {
    require(alpha > 0, "alpha must be positive");
    require(delta >= 1, "delta must be positive");
    require(in_alpha_regime(q, delta, alpha), "q below (1+alpha)delta+1");
}

double sparse_bound(int q, int delta, int f, int l_size, double two_e_h, double w) {
    require(l_size >= 1, "|L| must be at least 1");
    require(q > delta, "q must exceed delta");
    require(f >= 0 && two_e_h >= 0, "negative count");
    require(w >= 0 && w <= 1, "w outside [0,1]");
    const double L = l_size;
    const double base1 = 1.0 - (1.0 - w) / (q - delta + 1.0 - w);
    const double base2 = 1.0 - w / (q - delta + 1.0);
    const double e1 = ((q - delta) * static_cast<double>(f) + two_e_h + f) / L;
    const double e2 = static_cast<double>(f) * q / L;
    return 1.0 / (L * std::pow(base1, e1) * std::pow(base2, e2));
}

}  // namespace

ConstantPack::ConstantPack(double a) : alpha(a) {
    require(a > 0 && std::isfinite(a), "alpha must be positive");
    const double e = std::exp(1.0 / a);
    M = (1 + a) * e / a;
    f = a * a / (3 * (1 + a) * e);
    g = 22 * e * (1 + a) / a;
    C = f / 2;
    C1 = f / (2 * g);
    C2 = a * a * a / (16 * std::pow(1 + a, 3) * e * e);
}

double regime_alpha(int q, int delta) {
    require(delta >= 1, "delta must be positive");
    return static_cast<double>(q - 1) / delta - 1.0;
}

bool in_alpha_regime(int q, int delta, double alpha) {
    return alpha > 0 && q >= (1 + alpha) * delta + 1 - kRegimeGuard;
}

double upper_bound_basic(int q, int f, int b, int cj, double w) {
    return upper_bound_basic_degree(q, f + b, cj, w);
}

mpq_class upper_bound_basic(int q, int f, int b, int cj, const mpq_class& w) {
    return upper_bound_basic_degree(q, f + b, cj, w);
}

double upper_bound_basic_degree(int q, int d, int cj, double w) {
    require(cj >= 0 && d >= 0, "negative count");
    const double den = q - d + d * w;
    require(den > 0, "nonpositive denominator: q too small");
    return std::pow(w, cj) / den;
}

mpq_class upper_bound_basic_degree(int q, int d, int cj, const mpq_class& w) {
    require(cj >= 0 && d >= 0, "negative count");
    mpq_class den = q - d + d * w;
    require(sgn(den) > 0, "nonpositive denominator: q too small");
    mpq_class out = int_pow(w, cj) / den;
    return out;
}

double lower_bound_basic(int q, int delta, double alpha) {
    require_alpha_regime(q, delta, alpha);
    return 1.0 / (std::exp(1.0 / alpha) * q);
}

RatioEnvelope ratio_envelope(int q, int delta, double alpha) {
    require_alpha_regime(q, delta, alpha);
    const double e = std::exp(1.0 / alpha);
    RatioEnvelope out;
    out.lo = (q - delta) / (q * e);
    out.hi = q * e / (q - delta);
    out.f_lo = std::pow(out.lo, 3) * e;
    out.f_hi = 1.0 / out.f_lo;
    return out;
}

LowerBoundCheck sum_lower_bound(Complex wt, const BlockedColorVector& c, std::span<const Complex> x, int tau,
                                const ConstantPack& pack, int delta, Color ell) {
    const int q = c.num_colors();
    require(ell >= 1 && ell <= q, "reference color out of range");
    require(static_cast<int>(x.size()) == q - 1, "vector length must be q-1");
    require(tau == 0 || tau == 1, "tau must be 0 or 1");
    Complex s = int_pow(wt, c(ell) + tau);
    std::size_t k = 0;
    for (Color j = 1; j <= q; ++j) {
        if (j == ell) continue;
        s += int_pow(wt, c(j)) * std::exp(x[k++]);
    }
    return {std::abs(s), pack.C * delta};
}

LowerBoundCheck barvinok_cone_check(std::span<const Complex> us, double phi) {
    require(phi >= 0 && phi < 2 * std::numbers::pi / 3, "phi outside [0, 2pi/3)");
    for (Complex u : us) require(u != 0.0, "zero vector");
    for (std::size_t i = 0; i < us.size(); ++i)
        for (std::size_t j = i + 1; j < us.size(); ++j) {
            double angle = std::abs(std::arg(us[i] / us[j]));
            require(angle <= phi + 1e-12, "vectors not within the cone angle");
        }
    Complex sum = 0;
    double norms = 0;
    for (Complex u : us) {
        sum += u;
        norms += std::abs(u);
    }
    return {std::abs(sum), std::cos(phi / 2) * norms};
}

double few_blocked_bound(int q, int d, int f, double gamma, double alpha, double w) {
    require(alpha > 0, "alpha must be positive");
    require(gamma >= 0 && gamma <= 1, "gamma outside [0,1]");
    require(f >= 0 && f <= d, "free degree must lie in [0, d]");
    require(w >= 0 && w <= 1, "w outside [0,1]");
    const double den = q - d + d * w;
    require(den > 0, "nonpositive denominator: q too small");
    const double decay = std::exp(-gamma * f / (q * std::exp(1.0 / alpha)));
    return ((1 - w) * decay + w) / den;
}

FewBlockedCorollary corollary_thresholds(int q, int delta, int f, double gamma, double eta) {
    require(delta >= 500, "delta must be at least 500");
    require(eta >= 0 && eta <= 0.002, "eta outside [0, 0.002]");
    require(q >= (2 - eta) * delta - kRegimeGuard, "q below (2-eta)delta");
    require(f >= 0 && f <= delta - 1, "free degree outside [0, delta-1]");
    require(gamma >= 0.02 && gamma <= 1, "gamma outside [0.02, 1]");
    FewBlockedCorollary out;
    out.intermediate = std::exp(-0.998 * gamma / (1.998 * std::exp(1000.0 / 996.0))) / 0.998;
    out.chain = (f + 1) * few_blocked_bound(q, delta, f, gamma, 0.996, 0.0);
    const bool strong = gamma >= 0.14;
    out.multiplier = strong ? 0.977 : 1.0;
    if (!(out.intermediate < out.multiplier) || !(out.chain <= out.intermediate * (1 + kRegimeGuard)))
        throw Error("few-blocked corollary chain not confirmed");
    return out;
}

double sparse_neighborhood_bound(int q, int delta, int f, int l_size, int e_h, double w) {
    return sparse_bound(q, delta, f, l_size, 2.0 * e_h, w);
}

SparseCorollary corollary_sparse(int q, int delta, int f, double dbar, double eta, double w) {
    require(delta >= 500, "delta must be at least 500");
    require(eta >= 0 && eta <= 0.002, "eta outside [0, 0.002]");
    require(q >= (2 - eta) * delta - kRegimeGuard, "q below (2-eta)delta");
    require(f >= (1 - eta) * delta - 2.0 / 3 - kRegimeGuard && f <= delta, "free degree too small");
    require(w >= 0 && w <= 0.002, "w outside [0, 0.002]");
    require(dbar >= 0 && dbar <= 0.36 * f, "average degree above 0.36 f");
    const double shrink = 2 - eta - 1.0 / delta;
    const double base = (1 - eta) * delta;
    SparseCorollary out;
    out.factor1 = std::pow(1 - (1 - w) / base, ((1 - eta) * delta + 0.36 * delta) / shrink);
    out.factor2 = std::pow(1 - w / base, (2 - eta) * delta / shrink);
    out.multiplier = 1.0 / (0.504 * shrink);
    out.chain = (f + 1) * sparse_bound(q, delta, f, q - delta + f, dbar * f, w);
    if (!(out.factor1 >= 0.5053) || !(out.factor2 >= 0.9979) || !(out.multiplier < 1) ||
        !(out.chain <= out.multiplier))
        throw Error("sparse-neighborhood corollary chain not confirmed");
    return out;
}

std::array<double, 4> delta_terms(double alpha, int delta_deg, double eps) {
    require(eps > 0 && eps < 1, "eps outside (0,1)");
    require(delta_deg >= 1, "delta must be positive");
    ConstantPack pack(alpha);
    return {std::numbers::pi / 8, pack.C1 / delta_deg, pack.C2 * eps, eps / (8 * pack.C2)};
}

double delta_for_epsilon(double alpha, int delta_deg, double eps) {
    auto t = delta_terms(alpha, delta_deg, eps);
    return *std::min_element(t.begin(), t.end());
}

}  // namespace pottszero
