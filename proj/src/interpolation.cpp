#include "pottszero/interpolation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "pottszero/errors.hpp"
#include "pottszero/roots.hpp"

namespace pottszero {

namespace {

constexpr int kMaxOrder = 10000;

// Coefficients of p(w0 + h) in h.
template <class T>
std::vector<T> taylor_shift(const WPolynomial& p, const T& w0) {
    std::vector<T> a;
    for (const auto& c : p.coefficients()) a.push_back(T(c));
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t k = n - 1; k > i; --k) a[k - 1] += w0 * a[k];
    return a;
}

// From p = sum a_k h^k: k a_k = sum_{j=1..k} j l_j a_{k-j}.
template <class T>
std::vector<T> log_coefficients(const std::vector<T>& a, int m) {
    auto at = [&](int k) { return k < static_cast<int>(a.size()) ? a[k] : T(0); };
    std::vector<T> l(m + 1, T(0));
    for (int k = 1; k <= m; ++k) {
        T s = T(k) * at(k);
        for (int j = 1; j < k; ++j) s -= T(j) * l[j] * at(k - j);
        l[k] = s / (T(k) * a[0]);
    }
    l.erase(l.begin());
    return l;
}

double distance_to_segment(Complex z, double lo, double hi) {
    const double x = std::clamp(z.real(), lo, hi);
    return std::hypot(z.real() - x, z.imag());
}

double nearest_root(const std::vector<Complex>& roots, Complex w) {
    double r = std::numeric_limits<double>::infinity();
    for (Complex z : roots) r = std::min(r, std::abs(w - z));
    return r * (1 - kRootSafety);
}

}  // namespace

std::vector<mpq_class> log_taylor_coefficients(const WPolynomial& p, const mpq_class& w0, int m) {
    if (m < 0) throw DomainError("negative order");
    auto a = taylor_shift(p, w0);
    if (sgn(a[0]) == 0) throw PoleError("log p has a pole: p(w0) = 0");
    return log_coefficients(a, m);
}

std::vector<mpq_class> log_derivatives_at(const WPolynomial& p, const mpq_class& w0, int m) {
    auto l = log_taylor_coefficients(p, w0, m);
    mpz_class fact = 1;
    for (int k = 1; k <= m; ++k) {
        fact *= k;
        l[k - 1] *= fact;
    }
    return l;
}

std::vector<Complex> log_derivatives_at(const WPolynomial& p, Complex w0, int m) {
    if (m < 0) throw DomainError("negative order");
    std::vector<Complex> a;
    {
        std::vector<Complex> c;
        for (const auto& x : p.coefficients()) c.emplace_back(x.get_d());
        const std::size_t n = c.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t k = n - 1; k > i; --k) c[k - 1] += w0 * c[k];
        a = std::move(c);
    }
    if (a[0] == 0.0) throw PoleError("log p has a pole: p(w0) = 0");
    auto l = log_coefficients(a, m);
    double fact = 1;
    for (int k = 1; k <= m; ++k) {
        fact *= k;
        l[k - 1] *= fact;
    }
    return l;
}

double log_series_tail(double x, int m) {
    if (!(x >= 0 && x < 1)) throw DomainError("tail needs 0 <= x < 1");
    if (x == 0) return 0;
    double sum = 0;
    double power = std::pow(x, m + 1);
    int j = m + 1;
    // Sum terms until they stop mattering, then bound the rest by a geometric series.
    for (; j < m + 2000; ++j) {
        const double term = power / j;
        sum += term;
        power *= x;
        if (term < sum * 1e-17) break;
    }
    const double rest = power / ((j + 1) * (1 - x));
    return (sum + rest) * (1 + 1e-14);
}

TaylorStep taylor_step(const WPolynomial& p, const mpq_class& w_a, const mpq_class& w_b, int m, double radius) {
    if (w_a == w_b) return {};
    const mpq_class h = w_b - w_a;
    const double step = std::abs(h.get_d());
    if (!(step < radius)) throw StepTooLargeError("step exceeds the distance to the nearest root");
    auto l = log_taylor_coefficients(p, w_a, m);
    mpq_class sum = 0, power = 1;
    for (int k = 0; k < m; ++k) {
        power *= h;
        sum += l[k] * power;
    }
    TaylorStep out;
    out.delta_log = Complex(sum.get_d(), 0);
    // Plus one rounding of the exact sum to double.
    out.error_bound = p.degree() * log_series_tail(step / radius, m) +
                      std::abs(out.delta_log.real()) * std::numeric_limits<double>::epsilon();
    return out;
}

TaylorStep taylor_step(const WPolynomial& p, const mpq_class& w_a, const mpq_class& w_b, int m) {
    auto roots = find_roots(p).roots;
    return taylor_step(p, w_a, w_b, m, nearest_root(roots, Complex(w_a.get_d(), 0)));
}

double StepPlan::total_tail() const {
    double s = 0;
    for (double t : tails) s += t;
    return s;
}

int StepPlan::max_order() const { return orders.empty() ? 0 : *std::max_element(orders.begin(), orders.end()); }

StepPlan choose_plan(const ZeroReport& report, double eps, const mpq_class& target, double rho) {
    if (!(eps > 0)) throw DomainError("eps must be positive");
    if (!(rho > 0 && rho < 1)) throw DomainError("rho must lie in (0, 1)");
    if (target < 0 || target > 1) throw DomainError("target must lie in [0, 1]");
    StepPlan plan;
    plan.rho = rho;
    plan.degree = report.degree;
    plan.anchors.push_back(mpq_class(1));
    if (target == 1) return plan;

    if (report.roots.empty()) {
        if (report.degree > 0) throw CannotInterpolateError("no roots reported for a nonconstant polynomial");
        plan.anchors.push_back(target);
        plan.orders.push_back(0);
        plan.radii.push_back(std::numeric_limits<double>::infinity());
        plan.tails.push_back(0);
        return plan;
    }
    double margin = std::numeric_limits<double>::infinity();
    for (Complex z : report.roots) margin = std::min(margin, distance_to_segment(z, target.get_d(), 1));
    if (!(margin > 0))
        throw CannotInterpolateError("a root lies on the interpolation segment");

    const mpq_class length = 1 - target;
    const int T = std::max(1, static_cast<int>(std::ceil(length.get_d() / (rho * margin))));
    const double share = eps / T;
    for (int k = 1; k <= T; ++k) {
        mpq_class next = 1 - length * mpq_class(k, T);
        next.canonicalize();
        const mpq_class& here = plan.anchors.back();
        const double r = nearest_root(report.roots, Complex(here.get_d(), 0));
        const double x = mpq_class(here - next).get_d() / r;
        if (!(x <= rho * (1 + 1e-6) && x < 1)) throw CannotInterpolateError("step ratio exceeds the contraction factor");
        int m = 0;
        double tail = report.degree * log_series_tail(x, 0);
        while (tail > share) {
            if (++m > kMaxOrder) throw CannotInterpolateError("Taylor order limit reached");
            tail = report.degree * log_series_tail(x, m);
        }
        plan.anchors.push_back(next);
        plan.orders.push_back(m);
        plan.radii.push_back(r);
        plan.tails.push_back(tail);
    }
    return plan;
}

std::optional<double> CountEstimate::log_error() const {
    if (!exact_value || sgn(*exact_value) <= 0 || exact_zero) return std::nullopt;
    // log of a big integer via its top bits.
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, exact_value->get_mpz_t());
    const double log_exact = std::log(mant) + exp2 * std::log(2.0);
    return std::abs(log_xi - log_exact);
}

nlohmann::json to_json(const CountEstimate& e) {
    nlohmann::json j = {{"target", to_string(e.target)},
                        {"xi", e.exact_zero ? std::string("0") : to_decimal_string(e.xi)},
                        {"log_xi", e.exact_zero ? nlohmann::json(nullptr) : nlohmann::json(e.log_xi)},
                        {"eps_target", e.eps_target},
                        {"eps_achieved", e.eps_achieved},
                        {"steps", e.steps},
                        {"m", e.max_order},
                        {"exact_zero", e.exact_zero}};
    if (e.exact_value) {
        j["exact_value"] = e.exact_value->get_str();
        if (auto err = e.log_error()) j["log_error"] = *err;
    }
    return j;
}

CountEstimate approx_partition_function(const PartiallyColoredGraph& g, const mpq_class& target, double eps,
                                        const EnumerationBudget& budget) {
    if (!(eps > 0)) throw DomainError("eps must be positive");
    if (target < 0 || target > 1) throw DomainError("target must lie in [0, 1]");
    CountEstimate out;
    out.target = target;
    out.eps_target = eps;
    const WPolynomial p = partition_poly(g, budget);
    if (sgn(p.evaluate(target)) == 0) {
        // Only possible at w = 0: no coloring avoids monochromatic edges.
        out.exact_zero = true;
        return out;
    }
    if (p.degree() == 0) {
        out.xi = p.evaluate(target).get_d();
        out.log_xi = std::log(out.xi);
        return out;
    }
    const double log_anchor = g.num_free() * std::log(static_cast<double>(g.num_colors()));
    const ZeroReport report = roots_of(p, describe(g), g.num_colors());
    const StepPlan plan = choose_plan(report, eps, target);
    double total = 0;
    for (int k = 0; k < plan.steps(); ++k) {
        auto step = taylor_step(p, plan.anchors[k], plan.anchors[k + 1], plan.orders[k], plan.radii[k]);
        total += step.delta_log.real();
        out.eps_achieved += step.error_bound;
    }
    out.log_xi = log_anchor + total;
    out.eps_achieved += 4 * std::numeric_limits<double>::epsilon() * (std::abs(log_anchor) + std::abs(total));
    out.xi = std::exp(out.log_xi);
    out.steps = plan.steps();
    out.max_order = plan.max_order();
    return out;
}

CountEstimate approx_count_colorings(const PartiallyColoredGraph& g, int q, double eps,
                                     const EnumerationBudget& budget) {
    return approx_partition_function(g.with_num_colors(q), 0, eps, budget);
}

namespace {

struct Contraction {
    int q;
    long max_calls;
    long calls = 0;

    // adj as bit masks over at most 64 vertices; alive marks vertices still present.
    mpz_class count(std::vector<std::uint64_t> adj, std::vector<Color> pin, std::uint64_t alive) {
        if (++calls > max_calls) throw BudgetError("deletion-contraction call budget exceeded");
        mpz_class factor = 1;
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::uint64_t rest = alive; rest; rest &= rest - 1) {
                const int v = std::countr_zero(rest);
                // Edges between pins are either impossible or irrelevant.
                if (pin[v] != kFree)
                    for (std::uint64_t nb = adj[v]; nb; nb &= nb - 1) {
                        const int u = std::countr_zero(nb);
                        if (pin[u] == kFree) continue;
                        if (pin[u] == pin[v]) return 0;
                        adj[v] &= ~(1ull << u);
                        adj[u] &= ~(1ull << v);
                        changed = true;
                    }
                const int d = std::popcount(adj[v]);
                if (d == 0) {
                    if (pin[v] == kFree) factor *= q;
                    alive &= ~(1ull << v);
                    changed = true;
                } else if (d == 1 && pin[v] == kFree) {
                    if (q < 1) return 0;
                    factor *= q - 1;
                    const int u = std::countr_zero(adj[v]);
                    adj[u] &= ~(1ull << v);
                    adj[v] = 0;
                    alive &= ~(1ull << v);
                    changed = true;
                }
            }
        }
        if (alive == 0) return factor;
        if (sgn(factor) == 0) return 0;
        // Branch on an edge at a vertex of maximum degree.
        int u = -1;
        for (std::uint64_t rest = alive; rest; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            if (u < 0 || std::popcount(adj[v]) > std::popcount(adj[u])) u = v;
        }
        const int v = std::countr_zero(adj[u]);

        auto del = adj;
        del[u] &= ~(1ull << v);
        del[v] &= ~(1ull << u);
        mpz_class without = count(del, pin, alive);

        // Contract v into u.
        mpz_class same = 0;
        if (!(pin[u] != kFree && pin[v] != kFree && pin[u] != pin[v])) {
            auto con = del;
            auto cpin = pin;
            if (cpin[u] == kFree) cpin[u] = cpin[v];
            con[u] |= con[v];
            for (std::uint64_t nb = con[v]; nb; nb &= nb - 1) {
                const int x = std::countr_zero(nb);
                con[x] = (con[x] & ~(1ull << v)) | (1ull << u);
            }
            con[v] = 0;
            con[u] &= ~(1ull << u);
            same = count(con, cpin, alive & ~(1ull << v));
        }
        return factor * (without - same);
    }
};

}  // namespace

mpz_class exact_count_oracle(const PartiallyColoredGraph& g, int q, long max_calls) {
    if (q < 0) throw DomainError("negative number of colors");
    const int n = g.num_vertices();
    if (n > 64) throw BudgetError("oracle supports at most 64 vertices");
    std::vector<std::uint64_t> adj(n, 0);
    std::vector<Color> pin(n);
    std::uint64_t alive = 0;
    for (Vertex v = 0; v < n; ++v) {
        pin[v] = g.pin(v);
        if (pin[v] > q) return 0;
        alive |= 1ull << v;
        for (Vertex u : g.neighbors(v)) adj[v] |= 1ull << u;
    }
    if (n == 0) return 1;
    Contraction c{q, max_calls};
    return c.count(std::move(adj), std::move(pin), alive);
}

}  // namespace pottszero
