#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "pottszero/enumerate.hpp"
#include "pottszero/errors.hpp"
#include "pottszero/potts.hpp"

using namespace pottszero;

namespace {

WPolynomial poly(std::vector<long> c) {
    std::vector<mpz_class> z;
    for (long x : c) z.emplace_back(x);
    return WPolynomial(z);
}

PartiallyColoredGraph pinned_edge(int q, Color c) {
    PartiallyColoredGraph g(2, q);
    g.add_edge(0, 1);
    g.set_pin(0, c);
    return g;
}

}  // namespace

TEST_CASE("partition polynomials of small graphs") {
    auto edge = generate_family(FamilyKind::path, {.n = 2, .q = 3});
    CHECK(partition_poly(edge) == poly({6, 3}));
    for (int q = 1; q <= 7; ++q) {
        auto k3 = generate_family(FamilyKind::clique, {.n = 3, .q = q});
        CHECK(partition_poly(k3) == poly({q * (q - 1) * (q - 2), 3 * q * (q - 1), 0, q}));
    }
    auto k3 = generate_family(FamilyKind::clique, {.n = 3, .q = 5});
    CHECK(partition_poly(k3).evaluate(mpq_class(1)) == 125);
    CHECK(partition_poly(PartiallyColoredGraph(4, 3)) == poly({81}));
}

TEST_CASE("engine matches plain enumeration on pinned families") {
    for (int q : {2, 3, 4}) {
        for (const auto& base : enumerate_connected_graphs(5, 3, q))
            for (const auto& g : decorate_pins(base, PinPolicy::any)) {
                CHECK(partition_poly(g) == oracle::brute_poly(g));
                CHECK(partition_poly(g).evaluate(mpq_class(1)) ==
                      int_pow(mpq_class(q), g.num_free()));
            }
    }
}

TEST_CASE("restricted polynomials") {
    CHECK(restricted_partition_poly(RootedGraph(PartiallyColoredGraph(1, 4), 0), 2) == poly({1}));
    auto g = pinned_edge(3, 1);
    CHECK(restricted_partition_poly(RootedGraph(g, 1), 1) == poly({0, 1}));
    CHECK(restricted_partition_poly(RootedGraph(g, 1), 2) == poly({1}));

    auto petersen = generate_family(FamilyKind::petersen, {.q = 4});
    auto rp = root_partition(petersen, 3);
    for (Color j = 2; j <= 4; ++j) CHECK(rp(j) == rp(1));
    CHECK(rp.total == partition_poly(petersen));

    for (const auto& base : enumerate_connected_graphs(4, 3, 3))
        for (const auto& h : decorate_pins(base, PinPolicy::all))
            for (Vertex v : h.free_vertices())
                for (Color j = 1; j <= 3; ++j)
                    CHECK(restricted_partition_poly(RootedGraph(h, v), j) == oracle::brute_poly(h, v, j));
}

TEST_CASE("evaluation") {
    auto p = poly({6, 3});
    CHECK(p.evaluate(mpq_class(0)) == 6);
    CHECK(p.evaluate(std::complex<double>(0, 1)) == std::complex<double>(6, 3));
    GaussianRational i(0, 1);
    CHECK(p.evaluate(i) == GaussianRational(6, 3));
    CHECK(p.evaluate(0.5) == doctest::Approx(7.5));
    CHECK(WPolynomial::from_json(p.to_json()) == p);
    CHECK(p.to_json().dump() == R"(["6","3"])");
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("1/3") == mpq_class(1, 3));
    CHECK(parse_rational("0.125") == mpq_class(1, 8));
    CHECK(parse_rational("-2.5e-1") == mpq_class(-1, 4));
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("1e2") == 100);
    CHECK_THROWS_AS(parse_rational("abc"), DomainError);
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
}

TEST_CASE("marginals") {
    for (Color j = 1; j <= 5; ++j) CHECK(marginal(PartiallyColoredGraph(1, 5), mpq_class(1, 3), 0, j) == mpq_class(1, 5));
    auto g = pinned_edge(3, 1);
    CHECK(marginal(g, 0, 1, 1) == 0);
    CHECK(marginal(g, 0, 1, 2) == mpq_class(1, 2));
    CHECK(marginal(g, 0, 1, 3) == mpq_class(1, 2));
    CHECK(marginal(g, mpq_class(1, 2), 1, 1) == mpq_class(1, 5));

    auto k3 = generate_family(FamilyKind::clique, {.n = 3, .q = 2});
    CHECK_THROWS_AS(marginal(k3, 0, 0, 1), UndefinedMeasureError);

    for (const auto& base : enumerate_connected_graphs(4, 3, 3))
        for (const auto& h : decorate_pins(base, PinPolicy::all))
            for (Vertex v : h.free_vertices())
                for (mpq_class w : {mpq_class(0), mpq_class(1, 3), mpq_class(1)}) {
                    auto rp = root_partition(h, v);
                    std::vector<mpq_class> m;
                    try {
                        m = marginals(rp, w);
                    } catch (const UndefinedMeasureError&) {
                        CHECK(oracle::brute_proper_count(h) == 0);
                        continue;
                    }
                    CHECK(std::accumulate(m.begin(), m.end(), mpq_class(0)) == 1);
                    for (Color j = 1; j <= 3; ++j) CHECK(m[j - 1] == oracle::brute_marginal(h, w, v, j));
                }
}

TEST_CASE("color relabeling permutes restricted polynomials") {
    auto g = generate_family(FamilyKind::cycle, {.n = 5, .q = 4});
    g.set_pin(1, 1);
    g.set_pin(3, 2);
    auto swapped = g;
    swapped.set_pin(1, 2);
    swapped.set_pin(3, 1);
    auto a = root_partition(g, 0);
    auto b = root_partition(swapped, 0);
    CHECK(a.total == b.total);
    CHECK(a(1) == b(2));
    CHECK(a(2) == b(1));
    CHECK(a(3) == b(3));
}

TEST_CASE("log-ratio vectors") {
    auto zero = log_ratio_vector(RootedGraph(PartiallyColoredGraph(1, 4), 0), {0.3, 0.1}, 4);
    CHECK(zero.entries.size() == 3);
    for (auto z : zero.entries) CHECK(std::abs(z) == 0.0);

    auto g = pinned_edge(3, 1);
    auto r = log_ratio_vector(RootedGraph(g, 1), 0.5, 3);
    REQUIRE(r.entries.size() == 2);
    CHECK(r.entries[0].real() == doctest::Approx(std::log(0.5)));
    CHECK(r.entries[0].imag() == 0.0);
    CHECK(std::abs(r.entries[1]) == 0.0);
    CHECK(r.colors == std::vector<Color>{1, 2});
    CHECK_THROWS_AS(log_ratio_vector(RootedGraph(g, 1), 0.0, 3), ZeroRatioError);
    CHECK_THROWS_AS(log_ratio_vector(RootedGraph(g, 1), -0.5, 3), BranchError);

    auto free_graph = generate_family(FamilyKind::cycle, {.n = 5, .q = 3});
    auto sym = log_ratio_vector(RootedGraph(free_graph, 2), {0.4, 0.7}, 3);
    for (auto z : sym.entries) CHECK(std::abs(z) < 1e-15);

    // Real w in (0,1]: entries are real and equal the log of the exact ratio.
    auto h = generate_family(FamilyKind::star, {.n = 3, .q = 4});
    h.set_pin(1, 2);
    auto rp = root_partition(h, 2);
    for (mpq_class w : {mpq_class(1, 10), mpq_class(1, 2), mpq_class(1)}) {
        auto exact = ratio_vector(rp, w, 4);
        auto lr = log_ratio_vector(rp, w.get_d(), 4);
        for (std::size_t k = 0; k < exact.size(); ++k) {
            CHECK(lr.entries[k].imag() == 0.0);
            CHECK(lr.entries[k].real() == doctest::Approx(std::log(exact[k].get_d())).epsilon(1e-14));
        }
    }
}

TEST_CASE("neighborhood expectation") {
    for (Color ell = 1; ell <= 3; ++ell)
        CHECK(neighborhood_expectation(PartiallyColoredGraph(1, 3), mpq_class(1, 2), 0, ell) == 1);
    auto star = generate_family(FamilyKind::star, {.n = 2, .q = 3});
    CHECK(neighborhood_expectation(star, 0, 0, 1) == mpq_class(4, 9));
}

TEST_CASE("stripping pinned neighbors scales restricted polynomials") {
    for (const auto& base : enumerate_connected_graphs(6, 3, 4))
        for (const auto& g : decorate_pins(base, PinPolicy::all))
            for (Vertex v : g.free_vertices()) {
                RootedGraph rg(g, v);
                auto bar = strip_pinned_neighbors(rg);
                auto c = blocked_color_vector(rg);
                for (Color j = 1; j <= 4; ++j)
                    CHECK(restricted_partition_poly(rg, j) == restricted_partition_poly(bar, j).shifted(c(j)));
            }
}

TEST_CASE("telescoping identity for both default and shuffled orders") {
    std::mt19937 rng(3);
    const int q = 4;
    const mpq_class w(1, 2);
    for (const auto& base : enumerate_connected_graphs(6, 3, q))
        for (const auto& g : decorate_pins(base, PinPolicy::distinct))
            for (Vertex v : g.free_vertices()) {
                RootedGraph rg(g, v);
                std::vector<Vertex> order(g.neighbors(v).begin(), g.neighbors(v).end());
                std::shuffle(order.begin(), order.end(), rng);
                for (const auto& terms : {telescoping_decompose(rg, 1, q), telescoping_decompose(rg, 1, q, order)}) {
                    mpq_class product = 1;
                    for (const auto& t : terms)
                        product *= restricted_partition_poly(t.hat, 1).evaluate(w) /
                                   restricted_partition_poly(t.hat, q).evaluate(w);
                    CHECK(product == restricted_partition_poly(rg, 1).evaluate(w) /
                                         restricted_partition_poly(rg, q).evaluate(w));
                }
            }
}

TEST_CASE("pin_to_leaves preserves the partition polynomial") {
    auto path = generate_family(FamilyKind::path, {.n = 3, .q = 3});
    path.set_pin(1, 2);
    CHECK(partition_poly(pin_to_leaves(path)).evaluate(mpq_class(1, 2)) ==
          oracle::brute_poly(path).evaluate(mpq_class(1, 2)));
    for (const auto& base : enumerate_connected_graphs(5, 3, 3))
        for (const auto& g : decorate_pins(base, PinPolicy::any)) {
            auto h = pin_to_leaves(g);
            CHECK(partition_poly(h) == partition_poly(g));
            for (Vertex v = 0; v < h.num_vertices(); ++v)
                if (h.is_pinned(v)) CHECK(h.degree(v) <= 1);
        }
}

TEST_CASE("budget errors") {
    auto g = generate_family(FamilyKind::path, {.n = 12, .q = 6});
    CHECK_THROWS_AS(partition_poly(g, {.max_colorings = 1e6}), BudgetError);
    CHECK_NOTHROW(partition_poly(generate_family(FamilyKind::path, {.n = 7, .q = 6}), {.max_colorings = 1e6}));
}
