#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pottszero/bounds.hpp"
#include "pottszero/errors.hpp"

using namespace pottszero;

namespace {
// Reference values computed with 30-digit mpmath.
constexpr double kC23 = 0.0099168960065968812;
constexpr double kC1_23 = 4.02319744386779337e-5;
constexpr double kC2_23 = 1.99148273471455772e-4;
}  // namespace

TEST_CASE("constant pack") {
    ConstantPack p(2.0 / 3);
    CHECK(p.C == doctest::Approx(kC23).epsilon(1e-13));
    CHECK(p.C1 == doctest::Approx(kC1_23).epsilon(1e-13));
    CHECK(p.C2 == doctest::Approx(kC2_23).epsilon(1e-13));
    CHECK(p.C2 == doctest::Approx(1 / (250 * std::exp(3.0))).epsilon(1e-14));
    for (double a : {0.01, 1.0 / 3, 2.0 / 3, 0.996, 1.0, 2.5, 40.0}) {
        ConstantPack c(a);
        CHECK(c.M > 0);
        CHECK(c.f > 0);
        CHECK(c.g > 0);
        CHECK(c.C > 0);
        CHECK(c.C1 > 0);
        CHECK(c.C2 > 0);
        CHECK(c.C == c.f / 2);
        CHECK(c.C1 == c.f / (2 * c.g));
        if (a <= 2.5) CHECK(c.C < 1);
    }
    CHECK_THROWS_AS(ConstantPack(0), DomainError);
    CHECK_THROWS_AS(ConstantPack(-1), DomainError);
    CHECK(regime_alpha(6, 3) == doctest::Approx(2.0 / 3));
    CHECK(regime_alpha(7, 3) == 1.0);
    CHECK(in_alpha_regime(6, 3, 2.0 / 3));
    CHECK_FALSE(in_alpha_regime(6, 3, 0.7));
    CHECK_FALSE(in_alpha_regime(4, 3, regime_alpha(4, 3)));
}

TEST_CASE("basic upper bound") {
    for (int q : {5, 6, 7})
        for (int d = 0; d <= 3; ++d) {
            CHECK(upper_bound_basic_degree(q, d, 0, 1.0) == doctest::Approx(1.0 / q));
            CHECK(upper_bound_basic(q, d, 3 - d, 2, 1.0) == doctest::Approx(1.0 / q));
            CHECK(upper_bound_basic_degree(q, d, 1, 0.0) == 0.0);
            CHECK(upper_bound_basic_degree(q, d, 0, mpq_class(1)) == mpq_class(1, q));
            CHECK(upper_bound_basic(q, 1, 1, 1, mpq_class(0)) == 0);
        }
    CHECK(upper_bound_basic_degree(6, 2, 0, mpq_class(0)) == mpq_class(1, 4));
    CHECK(upper_bound_basic(6, 1, 1, 1, mpq_class(1, 2)) == mpq_class(1, 10));
    CHECK_THROWS_AS(upper_bound_basic_degree(3, 3, 0, 0.0), DomainError);
    CHECK_THROWS_AS(upper_bound_basic_degree(3, 3, 0, mpq_class(0)), DomainError);
}

TEST_CASE("basic lower bound and envelope") {
    CHECK(lower_bound_basic(7, 3, 1.0) == doctest::Approx(1 / (std::exp(1.0) * 7)));
    CHECK(lower_bound_basic(7, 3, 1.0) == doctest::Approx(0.0526).epsilon(1e-3));
    CHECK(lower_bound_basic(100002, 1, 1e5) == doctest::Approx(1e-5).epsilon(1e-4));
    CHECK_THROWS_AS(lower_bound_basic(6, 3, 1.0), DomainError);
    CHECK_THROWS_AS(lower_bound_basic(7, 3, 0), DomainError);

    auto env = ratio_envelope(7, 3, 1.0);
    CHECK(env.lo == doctest::Approx(4 / (7 * std::exp(1.0))));
    CHECK(env.hi == doctest::Approx(7 * std::exp(1.0) / 4));
    CHECK(env.f_lo == doctest::Approx(64 / (343 * std::exp(2.0))));
    CHECK(env.f_hi * env.f_lo == doctest::Approx(1.0));
    for (int q = 5; q <= 12; ++q) {
        auto e = ratio_envelope(q, 3, regime_alpha(q, 3));
        CHECK(e.lo < 1);
        CHECK(e.hi > 1);
        CHECK(e.f_lo < e.lo);
    }
    CHECK_THROWS_AS(ratio_envelope(4, 3, 0.5), DomainError);
}

TEST_CASE("sum lower bound") {
    ConstantPack pack(2.0 / 3);
    for (int q : {6, 7, 9}) {
        BlockedColorVector c(std::vector<int>(q, 0));
        std::vector<Complex> x(q - 1, 0.0);
        auto r = sum_lower_bound(1.0, c, x, 0, pack, 3, q);
        CHECK(r.lhs == doctest::Approx(q));
        CHECK(r.rhs == doctest::Approx(kC23 * 3).epsilon(1e-12));
        CHECK(r.lhs >= r.rhs);
    }
    // Base case: sum of wt^{c_j} with one leaf per color on a degree-3 root.
    BlockedColorVector c({1, 1, 1, 0, 0, 0});
    std::vector<Complex> zero(5, 0.0);
    Complex wt(1e-5, 1e-5);
    auto r = sum_lower_bound(wt, c, zero, 0, pack, 3, 6);
    CHECK(r.lhs == doctest::Approx(std::abs(3.0 + 3.0 * wt)));
    auto r1 = sum_lower_bound(wt, c, zero, 1, pack, 3, 1);
    CHECK(r1.lhs == doctest::Approx(std::abs(3.0 + 2.0 * wt + wt * wt)));
    CHECK_THROWS_AS(sum_lower_bound(wt, c, zero, 2, pack, 3, 1), DomainError);
    CHECK_THROWS_AS(sum_lower_bound(wt, c, zero, 0, pack, 3, 7), DomainError);
}

TEST_CASE("Barvinok cone inequality") {
    std::vector<Complex> same(4, Complex(1, 2));
    auto s = barvinok_cone_check(same, 0.0);
    CHECK(s.lhs == doctest::Approx(4 * std::abs(Complex(1, 2))));
    CHECK(s.lhs >= s.rhs - 1e-12);
    for (double phi : {0.1, 0.5, 1.0, 2.0}) {
        std::vector<Complex> two{std::polar(1.0, 0.3), std::polar(1.0, 0.3 + phi)};
        auto t = barvinok_cone_check(two, phi);
        CHECK(t.lhs == doctest::Approx(2 * std::cos(phi / 2)));
        CHECK(t.lhs == doctest::Approx(t.rhs));
    }
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ang(0, 0.5), rad(0.01, 5), rot(-std::numbers::pi, std::numbers::pi);
    std::uniform_int_distribution<int> count(1, 8);
    int failures = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        double base = rot(rng);
        std::vector<Complex> us(count(rng));
        for (auto& u : us) u = std::polar(rad(rng), base + ang(rng));
        auto r = barvinok_cone_check(us, 0.5);
        if (r.lhs < r.rhs - 1e-12 * r.rhs) ++failures;
    }
    CHECK(failures == 0);
    std::vector<Complex> wide{1.0, Complex(0, 1)};
    CHECK_THROWS_AS(barvinok_cone_check(wide, 1.0), DomainError);
    CHECK_THROWS_AS(barvinok_cone_check(wide, 2.2), DomainError);
    std::vector<Complex> with_zero{1.0, 0.0};
    CHECK_THROWS_AS(barvinok_cone_check(with_zero, 0.5), DomainError);
}

TEST_CASE("few-blocked bound") {
    for (int d = 1; d <= 3; ++d)
        for (int f = 0; f <= d; ++f)
            for (double w : {0.0, 0.3, 0.9}) {
                CHECK(few_blocked_bound(6, d, f, 0.0, 2.0 / 3, w) ==
                      doctest::Approx(upper_bound_basic_degree(6, d, 0, w)));
                CHECK(few_blocked_bound(6, d, f, 0.7, 2.0 / 3, 1.0) == doctest::Approx(1.0 / 6));
            }
    CHECK_THROWS_AS(few_blocked_bound(6, 3, 2, 1.5, 2.0 / 3, 0.5), DomainError);
    CHECK_THROWS_AS(few_blocked_bound(6, 2, 3, 0.5, 2.0 / 3, 0.5), DomainError);

    // Decreasing in gamma, alpha and w; increasing in d.
    const int delta = 600;
    const int q = 1199;
    for (int f = 0; f < delta; f += 37)
        for (int gi = 0; gi < 20; ++gi)
            for (int wi = 0; wi < 10; ++wi) {
                const double g = gi * 0.05, w = wi * 0.1;
                double b = few_blocked_bound(q, delta, f, g, 0.996, w);
                CHECK(few_blocked_bound(q, delta, f, g + 0.05, 0.996, w) <= b);
                CHECK(few_blocked_bound(q, delta, f, g, 1.2, w) <= b);
                CHECK(few_blocked_bound(q, delta, f, g, 0.996, w + 0.1) <= b);
                if (f < delta - 1) CHECK(few_blocked_bound(q, delta - 1, f, g, 0.996, w) <= b);
            }
}

TEST_CASE("few-blocked corollary") {
    auto weak = corollary_thresholds(1000, 500, 499, 0.02, 0.002);
    CHECK(weak.multiplier == 1.0);
    CHECK(weak.intermediate == doctest::Approx(0.99834299497488450).epsilon(1e-14));
    CHECK(weak.intermediate < 1);
    CHECK(weak.chain <= weak.intermediate);
    auto strong = corollary_thresholds(1000, 500, 499, 0.14, 0.002);
    CHECK(strong.multiplier == 0.977);
    CHECK(strong.intermediate == doctest::Approx(0.97665611284474117).epsilon(1e-14));
    CHECK(strong.intermediate < 0.977);
    auto full = corollary_thresholds(1000, 500, 499, 1.0, 0.002);
    CHECK(full.intermediate < strong.intermediate);
    for (int delta : {500, 800, 2000})
        for (int f : {0, delta / 2, delta - 1})
            for (double g : {0.02, 0.1, 0.14, 0.5, 1.0}) {
                int q = static_cast<int>(std::ceil(1.998 * delta));
                auto c = corollary_thresholds(q, delta, f, g, 0.002);
                CHECK(c.chain <= c.intermediate * (1 + 1e-12));
                CHECK(c.intermediate < c.multiplier);
            }
    CHECK_THROWS_AS(corollary_thresholds(1000, 499, 100, 0.02, 0.002), DomainError);
    CHECK_THROWS_AS(corollary_thresholds(998, 500, 100, 0.02, 0.002), DomainError);
    CHECK_THROWS_AS(corollary_thresholds(1000, 500, 500, 0.02, 0.002), DomainError);
    CHECK_THROWS_AS(corollary_thresholds(1000, 500, 100, 0.01, 0.002), DomainError);
    CHECK_THROWS_AS(corollary_thresholds(1000, 500, 100, 0.02, 0.003), DomainError);
}

TEST_CASE("sparse-neighborhood bound") {
    for (int l = 1; l <= 6; ++l)
        for (int f = 0; f <= 3; ++f)
            CHECK(sparse_neighborhood_bound(6, 3, f, l, f, 0.0) ==
                  doctest::Approx(1.0 / (l * std::pow(1 - 1.0 / 4, (3.0 * f + 2.0 * f + f) / l))));
    CHECK(sparse_neighborhood_bound(6, 3, 0, 4, 0, 0.7) == doctest::Approx(0.25));
    CHECK(sparse_neighborhood_bound(6, 3, 0, 1, 0, 0.2) == doctest::Approx(1.0));
    CHECK_THROWS_AS(sparse_neighborhood_bound(6, 3, 2, 0, 0, 0.5), DomainError);
    CHECK_THROWS_AS(sparse_neighborhood_bound(3, 3, 2, 1, 0, 0.5), DomainError);
}

TEST_CASE("sparse-neighborhood corollary") {
    auto c = corollary_sparse(999, 500, 499, 0.36 * 499, 0.002, 0.0);
    CHECK(c.factor1 >= 0.5053);
    CHECK(c.factor1 == doctest::Approx(0.50539843827036384).epsilon(1e-13));
    CHECK(c.factor2 == 1.0);
    CHECK(c.multiplier == doctest::Approx(0.99405159525400006).epsilon(1e-14));
    CHECK(c.multiplier < 1);
    auto d = corollary_sparse(999, 500, 499, 0.36 * 499, 0.002, 0.002);
    CHECK(d.factor2 >= 0.9979);
    CHECK(d.factor2 == doctest::Approx(0.99799599065332646).epsilon(1e-13));
    CHECK(d.chain <= d.multiplier);
    for (int delta : {500, 700, 1500})
        for (double w : {0.0, 0.001, 0.002}) {
            int q = static_cast<int>(std::ceil(1.998 * delta));
            int fmin = static_cast<int>(std::ceil(0.998 * delta - 2.0 / 3));
            for (int f : {fmin, delta - 1, delta})
                for (double dbar : {0.0, 0.2 * f, 0.36 * f}) {
                    auto s = corollary_sparse(q, delta, f, dbar, 0.002, w);
                    CHECK(s.chain <= s.multiplier);
                }
        }
    CHECK_THROWS_AS(corollary_sparse(999, 500, 499, 0.37 * 499, 0.002, 0.0), DomainError);
    CHECK_THROWS_AS(corollary_sparse(999, 500, 400, 0.0, 0.002, 0.0), DomainError);
    CHECK_THROWS_AS(corollary_sparse(999, 500, 499, 0.0, 0.002, 0.01), DomainError);
}

TEST_CASE("delta for epsilon") {
    const double eps = (std::numbers::pi / 16) / 27;
    auto t = delta_terms(2.0 / 3, 3, eps);
    for (double v : t) CHECK(v > 0);
    double d = delta_for_epsilon(2.0 / 3, 3, eps);
    CHECK(d == doctest::Approx(kC2_23 * eps).epsilon(1e-13));
    CHECK(d == doctest::Approx(1.4479e-6).epsilon(1e-3));
    for (double e = 1e-6; e < 1e-3; e *= 3)
        CHECK(delta_for_epsilon(1.0, 3, e) == doctest::Approx(ConstantPack(1.0).C2 * e));
    CHECK(delta_for_epsilon(1.0, 100000, 0.5) == doctest::Approx(ConstantPack(1.0).C1 / 100000));
    for (double a : {1.0 / 3, 2.0 / 3, 1.0, 3.0})
        for (int delta = 1; delta <= 64; delta *= 2)
            for (double e = 1e-5; e < 0.99; e *= 1.7) {
                double base = delta_for_epsilon(a, delta, e);
                CHECK(delta_for_epsilon(a, delta, std::min(0.999, e * 1.7)) >= base);
                CHECK(delta_for_epsilon(a, delta * 2, e) <= base);
            }
    CHECK_THROWS_AS(delta_for_epsilon(1.0, 3, 0.0), DomainError);
    CHECK_THROWS_AS(delta_for_epsilon(1.0, 3, 1.0), DomainError);
    CHECK_THROWS_AS(delta_for_epsilon(0.0, 3, 0.5), DomainError);
}
