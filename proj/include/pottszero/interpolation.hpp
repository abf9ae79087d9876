#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <vector>

#include <json.hpp>

#include "pottszero/graph.hpp"
#include "pottszero/polynomial.hpp"
#include "pottszero/potts.hpp"
#include "pottszero/zero_scan.hpp"

namespace pottszero {

// Coefficients l_1..l_m of log p(w0 + h) = log p(w0) + sum_k l_k h^k.
// Throws PoleError when p(w0) = 0.
std::vector<mpq_class> log_taylor_coefficients(const WPolynomial& p, const mpq_class& w0, int m);

// Derivatives of log p at w0 of orders 1..m.
std::vector<mpq_class> log_derivatives_at(const WPolynomial& p, const mpq_class& w0, int m);
std::vector<Complex> log_derivatives_at(const WPolynomial& p, Complex w0, int m);

// sum_{j>m} x^j / j for 0 <= x < 1, rounded upward.
double log_series_tail(double x, int m);

struct TaylorStep {
    Complex delta_log;  // estimate of log p(w_b) - log p(w_a)
    double error_bound = 0;
};

// m-term expansion at w_a. radius is a lower bound on the distance from w_a to
// every root of p; throws StepTooLargeError unless |w_b - w_a| < radius.
TaylorStep taylor_step(const WPolynomial& p, const mpq_class& w_a, const mpq_class& w_b, int m, double radius);
// Same with the radius taken from the computed roots of p.
TaylorStep taylor_step(const WPolynomial& p, const mpq_class& w_a, const mpq_class& w_b, int m);

// Relative shrink applied to distances measured from numerically computed roots.
inline constexpr double kRootSafety = 1e-9;

struct StepPlan {
    std::vector<mpq_class> anchors;  // anchors.front() = 1, anchors.back() = target
    std::vector<int> orders;         // Taylor order of step k (anchors[k] -> anchors[k+1])
    std::vector<double> radii;       // distance from anchors[k] to the nearest root
    std::vector<double> tails;       // truncation bound of step k
    double rho = 0.5;
    int degree = 0;

    int steps() const { return static_cast<int>(orders.size()); }
    double total_tail() const;
    int max_order() const;
};

// Uniform steps of length <= rho * (distance from [target, 1] to the roots), with
// the smallest order per step such that the summed truncation bound is <= eps.
// Throws CannotInterpolateError when a root lies on [target, 1].
StepPlan choose_plan(const ZeroReport& report, double eps, const mpq_class& target = 0, double rho = 0.5);

struct CountEstimate {
    mpq_class target;
    double xi = 0;
    double log_xi = 0;
    double eps_target = 0;
    double eps_achieved = 0;
    int steps = 0;
    int max_order = 0;
    bool exact_zero = false;  // Z(target) = 0, read off the constant coefficient
    std::optional<mpz_class> exact_value;

    // |log xi - log exact| when an exact value is attached and positive.
    std::optional<double> log_error() const;
};

nlohmann::json to_json(const CountEstimate& e);

// Estimate of Z_G(q; target) for target in [0, 1], starting from Z(1) = q^free.
CountEstimate approx_partition_function(const PartiallyColoredGraph& g, const mpq_class& target, double eps,
                                        const EnumerationBudget& budget = {});
// target = 0: the number of proper colorings extending the pins.
CountEstimate approx_count_colorings(const PartiallyColoredGraph& g, int q, double eps,
                                     const EnumerationBudget& budget = {});

// Proper q-colorings extending the pins, by deletion-contraction. Independent of
// the enumeration engine. Throws BudgetError past max_calls recursive calls.
mpz_class exact_count_oracle(const PartiallyColoredGraph& g, int q, long max_calls = 100'000'000);

}  // namespace pottszero
