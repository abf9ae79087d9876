#include <doctest.h>

#include <cmath>
#include <random>

#include "pottszero/enumerate.hpp"
#include "pottszero/errors.hpp"
#include "pottszero/interpolation.hpp"

using namespace pottszero;

namespace {

WPolynomial poly(std::initializer_list<long> c) {
    std::vector<mpz_class> v;
    for (long x : c) v.emplace_back(x);
    return WPolynomial(v);
}

double log_abs(const WPolynomial& p, double w) { return std::log(std::abs(p.evaluate(w))); }

}  // namespace

TEST_CASE("log derivatives") {
    for (auto d : log_derivatives_at(poly({7}), mpq_class(1, 3), 4)) CHECK(d == 0);

    auto l = log_derivatives_at(poly({6, 3}), mpq_class(1), 2);
    CHECK(l[0] == mpq_class(1, 3));
    CHECK(l[1] == mpq_class(-1, 9));

    // (w+2)^3 at 0: 3/(w+2), -3/(w+2)^2, 6/(w+2)^3.
    auto c = log_derivatives_at(poly({8, 12, 6, 1}), mpq_class(0), 3);
    CHECK(c[0] == mpq_class(3, 2));
    CHECK(c[1] == mpq_class(-3, 4));
    CHECK(c[2] == mpq_class(3, 4));

    CHECK_THROWS_AS(log_derivatives_at(poly({0, 1}), mpq_class(0), 2), PoleError);
    CHECK_THROWS_AS(log_derivatives_at(poly({0, 1}), Complex(0), 2), PoleError);
}

TEST_CASE("log derivatives match finite differences") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> coef(1, 30);
    std::uniform_int_distribution<int> deg(1, 8);
    const double h = 2e-4;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<mpz_class> v(deg(rng) + 1);
        for (auto& x : v) x = coef(rng);
        WPolynomial p(v);
        mpq_class w0(static_cast<long>(rng() % 9), 8);
        const double x = w0.get_d();
        auto exact = log_derivatives_at(p, w0, 2);
        // Five-point stencils.
        const double f2 = log_abs(p, x + 2 * h), f1 = log_abs(p, x + h), f0 = log_abs(p, x);
        const double g1 = log_abs(p, x - h), g2 = log_abs(p, x - 2 * h);
        const double d1 = (-f2 + 8 * f1 - 8 * g1 + g2) / (12 * h);
        const double d2 = (-f2 + 16 * f1 - 30 * f0 + 16 * g1 - g2) / (12 * h * h);
        CHECK(std::abs(exact[0].get_d() - d1) < 1e-8 * (1 + std::abs(d1)));
        CHECK(std::abs(exact[1].get_d() - d2) < 1e-5 * (1 + std::abs(d2)));

        auto floating = log_derivatives_at(p, Complex(x, 0), 4);
        auto exact4 = log_derivatives_at(p, w0, 4);
        for (int k = 0; k < 4; ++k) {
            CHECK(std::abs(floating[k].imag()) == 0);
            CHECK(std::abs(floating[k].real() - exact4[k].get_d()) < 1e-9 * (1 + std::abs(exact4[k].get_d())));
        }
    }
}

TEST_CASE("series tail") {
    CHECK(log_series_tail(0, 3) == 0);
    // sum_{j>=1} x^j/j = -log(1-x)
    CHECK(log_series_tail(0.5, 0) == doctest::Approx(std::log(2.0)).epsilon(1e-13));
    CHECK(log_series_tail(0.5, 0) >= std::log(2.0));
    CHECK(log_series_tail(0.5, 1) == doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-12));
    for (double x : {0.1, 0.3, 0.5})
        for (int m = 0; m < 40; ++m) CHECK(log_series_tail(x, m + 1) <= 0.5 * log_series_tail(x, m));
    CHECK_THROWS_AS(log_series_tail(1, 2), DomainError);
}

TEST_CASE("Taylor steps") {
    auto p = poly({6, 3});
    auto same = taylor_step(p, mpq_class(1, 2), mpq_class(1, 2), 5);
    CHECK(same.delta_log == Complex(0));
    CHECK(same.error_bound == 0);

    auto s = taylor_step(p, mpq_class(1), mpq_class(1, 2), 20);
    const double truth = std::log(7.5 / 9);
    CHECK(s.error_bound < 1e-10);
    CHECK(std::abs(s.delta_log.real() - truth) <= s.error_bound + 1e-16);
    CHECK(std::abs(s.delta_log.real() - truth) < 1e-10);
    CHECK(s.delta_log.imag() == 0);

    // Root at -2 is 3 away from 1.
    CHECK_THROWS_AS(taylor_step(p, mpq_class(1), mpq_class(-3), 5), StepTooLargeError);
    CHECK_THROWS_AS(taylor_step(p, mpq_class(1), mpq_class(0), 5, 0.5), StepTooLargeError);

    // Error bound halves with each extra term at ratio 1/2.
    auto k3 = partition_poly(generate_family(FamilyKind::clique, {.n = 3, .q = 6}));
    double prev = taylor_step(k3, mpq_class(1), mpq_class(0), 0, 2).error_bound;
    for (int m = 1; m < 15; ++m) {
        auto t = taylor_step(k3, mpq_class(1), mpq_class(0), m, 2);
        CHECK(t.error_bound <= 0.5 * prev);
        prev = t.error_bound;
        const double actual = std::log(120.0 / 216.0);
        CHECK(std::abs(t.delta_log.real() - actual) <= t.error_bound);
    }
}

TEST_CASE("step plans") {
    ZeroReport constant;
    auto single = choose_plan(constant, 0.01);
    CHECK(single.steps() == 1);
    CHECK(single.orders[0] == 0);
    CHECK(single.total_tail() == 0);
    CHECK(single.anchors.back() == 0);

    ZeroReport r;
    r.degree = 3;
    r.roots = {Complex(-0.2, 0), Complex(0.5, 0.2), Complex(0.5, -0.2)};
    r.min_dist = 0.2;
    auto plan = choose_plan(r, 0.01);
    CHECK(plan.steps() == 10);
    CHECK(plan.total_tail() <= 0.01);
    for (int k = 0; k < plan.steps(); ++k) {
        const double step = mpq_class(plan.anchors[k] - plan.anchors[k + 1]).get_d();
        CHECK(step <= plan.rho * plan.radii[k] * (1 + 1e-8));
        CHECK(plan.radii[k] >= 0.2 * (1 - 1e-8));
        // Minimal order: one fewer term would exceed the per-step share.
        if (plan.orders[k] > 0)
            CHECK(3 * log_series_tail(step / plan.radii[k], plan.orders[k] - 1) > 0.01 / plan.steps());
    }
    for (double eps : {1e-4, 1e-3, 1e-2, 1e-1}) {
        auto a = choose_plan(r, eps), b = choose_plan(r, 2 * eps);
        CHECK(b.steps() <= a.steps());
        CHECK(b.max_order() <= a.max_order());
    }

    ZeroReport touching;
    touching.degree = 1;
    touching.roots = {Complex(0.25, 0)};
    touching.min_dist = 0;
    CHECK_THROWS_AS(choose_plan(touching, 0.01), CannotInterpolateError);
    // The segment [1/2, 1] avoids the root.
    CHECK_NOTHROW(choose_plan(touching, 0.01, mpq_class(1, 2)));
    CHECK_THROWS_AS(choose_plan(r, 0), DomainError);
}

TEST_CASE("exact count oracle") {
    CHECK(exact_count_oracle(generate_family(FamilyKind::clique, {.n = 3, .q = 6}), 6) == 120);
    CHECK(exact_count_oracle(generate_family(FamilyKind::cycle, {.n = 4, .q = 3}), 3) == 18);
    CHECK(exact_count_oracle(generate_family(FamilyKind::path, {.n = 2, .q = 1}), 1) == 0);
    CHECK(exact_count_oracle(PartiallyColoredGraph(3, 5), 5) == 125);
    CHECK(exact_count_oracle(generate_family(FamilyKind::petersen, {.q = 6}), 6) == 3868080);
    CHECK(exact_count_oracle(generate_family(FamilyKind::petersen, {.q = 3}), 3) == 120);

    PartiallyColoredGraph pinned(2, 3);
    pinned.add_edge(0, 1);
    pinned.set_pin(0, 2);
    CHECK(exact_count_oracle(pinned, 3) == 2);
    pinned.set_pin(1, 2);
    CHECK(exact_count_oracle(pinned, 3) == 0);
    pinned.set_pin(1, 1);
    CHECK(exact_count_oracle(pinned, 3) == 1);

    for (int q : {3, 4})
        for (const auto& g : enumerate_graphs(5, 3, q, PinPolicy::all))
            CHECK(exact_count_oracle(g, q) == partition_poly(g).coefficient(0));

    CHECK_THROWS_AS(exact_count_oracle(generate_family(FamilyKind::petersen, {.q = 6}), 6, 10), BudgetError);
}

TEST_CASE("approximate counting") {
    auto empty = approx_count_colorings(PartiallyColoredGraph(4, 2), 3, 0.01);
    CHECK(empty.xi == 81);
    CHECK(empty.eps_achieved == 0);

    auto k3 = approx_count_colorings(generate_family(FamilyKind::clique, {.n = 3, .q = 2}), 6, 0.01);
    CHECK(std::abs(std::log(k3.xi / 120)) <= k3.eps_achieved);
    CHECK(k3.eps_achieved <= 0.01);

    auto petersen = generate_family(FamilyKind::petersen, {.q = 6});
    auto e = approx_count_colorings(petersen, 6, 0.01);
    e.exact_value = exact_count_oracle(petersen, 6);
    REQUIRE(e.log_error());
    CHECK(*e.log_error() <= e.eps_achieved);
    CHECK(e.eps_achieved <= 0.01);
    auto again = approx_count_colorings(petersen, 6, 0.01);
    CHECK(again.xi == e.xi);

    auto k4 = approx_count_colorings(generate_family(FamilyKind::clique, {.n = 4, .q = 3}), 3, 0.01);
    CHECK(k4.exact_zero);
    CHECK(k4.xi == 0);
    CHECK(to_json(k4)["xi"] == "0");

    // Arbitrary target in [0, 1].
    auto cyc = generate_family(FamilyKind::cycle, {.n = 5, .q = 4});
    auto half = approx_partition_function(cyc, mpq_class(1, 2), 1e-6);
    const double truth = partition_poly(cyc).evaluate(0.5);
    CHECK(std::abs(std::log(half.xi / truth)) <= half.eps_achieved);

    auto j = to_json(e);
    CHECK(j["exact_value"] == "3868080");
    CHECK(j["steps"] == e.steps);
    CHECK(j["m"] == e.max_order);
    CHECK(j["xi"].is_string());
}
