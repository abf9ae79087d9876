#pragma once

#include <gmpxx.h>

#include <array>
#include <complex>
#include <span>

#include "pottszero/graph.hpp"

namespace pottszero {

using Complex = std::complex<double>;

// Constants of the zero-freeness argument for a given alpha > 0.
struct ConstantPack {
    double alpha;
    double M;   // (1+a) e^{1/a} / a
    double f;   // a^2 / (3 (1+a) e^{1/a})
    double g;   // 22 e^{1/a} (1+a) / a
    double C;   // f / 2
    double C1;  // f / (2 g)
    double C2;  // a^3 / (16 (1+a)^3 e^{2/a})

    explicit ConstantPack(double alpha);
};

// Largest alpha with q >= (1+alpha) delta + 1.
double regime_alpha(int q, int delta);
bool in_alpha_regime(int q, int delta, double alpha);

// w^{c_j} / (q - (f+b) + (f+b) w), where b counts pinned neighbors (with multiplicity)
// and f is the free degree, so f + b is the degree.
double upper_bound_basic(int q, int f, int b, int cj, double w);
mpq_class upper_bound_basic(int q, int f, int b, int cj, const mpq_class& w);
// w^{c_j} / (q - d + d w).
double upper_bound_basic_degree(int q, int d, int cj, double w);
mpq_class upper_bound_basic_degree(int q, int d, int cj, const mpq_class& w);

// 1 / (e^{1/alpha} q) for colors absent from the neighborhood. Requires q >= (1+alpha) delta + 1.
double lower_bound_basic(int q, int delta, double alpha);

struct RatioEnvelope {
    double lo, hi;      // for exp(R_j)
    double f_lo, f_hi;  // for |first/last|
};
RatioEnvelope ratio_envelope(int q, int delta, double alpha);

struct LowerBoundCheck {
    double lhs;
    double rhs;
};

// lhs = |sum_{j != ell} wt^{c_j} e^{x_j} + wt^{c_ell + tau}|, rhs = C(alpha) delta.
// x lists the entries for j != ell in ascending color order.
LowerBoundCheck sum_lower_bound(Complex wt, const BlockedColorVector& c, std::span<const Complex> x, int tau,
                                const ConstantPack& pack, int delta, Color ell);

// lhs = |sum u|, rhs = cos(phi/2) sum |u|. Throws DomainError when some pair of
// vectors is more than phi apart, phi is outside [0, 2pi/3), or a vector is zero.
LowerBoundCheck barvinok_cone_check(std::span<const Complex> us, double phi);

// ((1-w) exp(-gamma f / (q e^{1/alpha})) + w) / (q - d + d w).
double few_blocked_bound(int q, int d, int f, double gamma, double alpha, double w);

struct FewBlockedCorollary {
    double multiplier;    // 1 or 0.977
    double intermediate;  // exp(-0.998 gamma / (1.998 e^{1000/996})) / 0.998
    double chain;         // (f+1) times the few-blocked bound at w = 0, d = delta, alpha = 0.996
};
// Throws DomainError outside delta >= 500, q >= (2-eta) delta, 0 <= eta <= 0.002,
// f <= delta - 1, gamma in [0.02, 1].
FewBlockedCorollary corollary_thresholds(int q, int delta, int f, double gamma, double eta);

// 1 / (|L| (1 - (1-w)/(q-delta+1-w))^{((q-delta) f + 2 e(H) + f)/|L|} (1 - w/(q-delta+1))^{f q/|L|}).
double sparse_neighborhood_bound(int q, int delta, int f, int l_size, int e_h, double w);

struct SparseCorollary {
    double factor1;     // (1 - (1-w)/((1-eta) delta))^{((1-eta) delta + 0.36 delta)/(2-eta-1/delta)}
    double factor2;     // (1 - w/((1-eta) delta))^{(2-eta) delta/(2-eta-1/delta)}
    double multiplier;  // 1 / (0.504 (2 - eta - 1/delta))
    double chain;       // (f+1) times the sparse bound with |L| = q - delta + f and 2e(H) = dbar f
};
// Throws DomainError outside delta >= 500, q >= (2-eta) delta, 0 <= eta <= 0.002,
// f >= (1-eta) delta - 2/3, f <= delta, w in [0, 0.002], 0 <= dbar <= 0.36 f.
SparseCorollary corollary_sparse(int q, int delta, int f, double dbar, double eta, double w);

// The four candidates pi/8, C1/delta, C2 eps, eps/(8 C2).
std::array<double, 4> delta_terms(double alpha, int delta_deg, double eps);
// Their minimum. Requires eps in (0,1) and alpha > 0.
double delta_for_epsilon(double alpha, int delta_deg, double eps);

}  // namespace pottszero
