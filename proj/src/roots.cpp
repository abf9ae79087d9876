#include "pottszero/roots.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pottszero/errors.hpp"

namespace pottszero {

namespace {

struct Eval {
    Complex p, dp;
};

Eval horner(std::span<const double> a, Complex z) {
    Complex p = a.back(), dp = 0;
    for (std::size_t k = a.size() - 1; k-- > 0;) {
        dp = dp * z + p;
        p = p * z + a[k];
    }
    return {p, dp};
}

bool aberth(std::span<const double> a, std::vector<Complex>& z, const RootOptions& opt, int& iterations) {
    const int n = static_cast<int>(a.size()) - 1;
    // Initial guesses on a circle of radius |a0/an|^{1/n}, rotated off the real axis.
    const double radius = std::pow(std::abs(a.front() / a.back()), 1.0 / n);
    z.resize(n);
    for (int k = 0; k < n; ++k) z[k] = std::polar(radius, 2 * std::numbers::pi * k / n + 0.4);
    for (iterations = 1; iterations <= opt.max_iterations; ++iterations) {
        double worst = 0;
        for (int k = 0; k < n; ++k) {
            auto [p, dp] = horner(a, z[k]);
            if (p == 0.0) continue;
            Complex ratio = p / dp;
            Complex repulsion = 0;
            for (int j = 0; j < n; ++j)
                if (j != k) repulsion += 1.0 / (z[k] - z[j]);
            Complex step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return false;
            z[k] -= step;
            worst = std::max(worst, std::abs(step) / (1 + std::abs(z[k])));
        }
        if (worst < opt.tolerance) return true;
    }
    return false;
}

std::vector<Complex> companion_roots(std::span<const double> a) {
    const int n = static_cast<int>(a.size()) - 1;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) c(i, i - 1) = 1;
    for (int i = 0; i < n; ++i) c(i, n - 1) = -a[i] / a[n];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(c, false);
    if (solver.info() != Eigen::Success) throw Error("companion eigenvalue solver failed");
    std::vector<Complex> out(n);
    for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()[i];
    // A few Newton steps, kept only when they reduce |p|.
    for (auto& r : out)
        for (int it = 0; it < 5; ++it) {
            auto [p, dp] = horner(a, r);
            if (dp == 0.0) break;
            Complex next = r - p / dp;
            if (std::abs(horner(a, next).p) < std::abs(p))
                r = next;
            else
                break;
        }
    return out;
}

using QPoly = std::vector<mpq_class>;

void trim(QPoly& a) {
    while (a.size() > 1 && sgn(a.back()) == 0) a.pop_back();
}

bool is_constant(const QPoly& a) { return a.size() <= 1; }

QPoly derivative(const QPoly& a) {
    QPoly d;
    for (std::size_t k = 1; k < a.size(); ++k) d.push_back(a[k] * static_cast<long>(k));
    if (d.empty()) d.push_back(0);
    return d;
}

QPoly subtract(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
    trim(a);
    return a;
}

// Quotient and remainder of a by a nonzero b.
std::pair<QPoly, QPoly> divide(QPoly a, const QPoly& b) {
    trim(a);
    if (a.size() < b.size()) return {QPoly{0}, a};
    QPoly quot(a.size() - b.size() + 1, 0);
    for (std::size_t k = quot.size(); k-- > 0;) {
        mpq_class c = a[k + b.size() - 1] / b.back();
        quot[k] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
    }
    a.resize(b.size() - 1);
    if (a.empty()) a.push_back(0);
    trim(a);
    return {quot, a};
}

QPoly monic(QPoly a) {
    mpq_class lead = a.back();
    for (auto& c : a) c /= lead;
    return a;
}

QPoly gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!(b.size() == 1 && sgn(b[0]) == 0)) {
        auto r = divide(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

// Yun's algorithm: f = prod a_i^i with each a_i square-free.
std::vector<std::pair<QPoly, int>> squarefree_parts(const QPoly& f) {
    std::vector<std::pair<QPoly, int>> out;
    QPoly fp = derivative(f);
    QPoly a0 = gcd(f, fp);
    QPoly b = divide(f, a0).first;
    QPoly c = divide(fp, a0).first;
    QPoly d = subtract(c, derivative(b));
    for (int i = 1; !is_constant(b); ++i) {
        QPoly a = gcd(b, d);
        b = divide(b, a).first;
        c = divide(d, a).first;
        d = subtract(c, derivative(b));
        if (!is_constant(a)) out.emplace_back(std::move(a), i);
    }
    return out;
}

}  // namespace

RootFinderResult find_roots(std::span<const double> coeffs, const RootOptions& options) {
    std::size_t top = coeffs.size();
    while (top > 0 && coeffs[top - 1] == 0.0) --top;
    RootFinderResult out;
    if (top <= 1) return out;
    std::size_t low = 0;
    while (coeffs[low] == 0.0) ++low;
    out.roots.assign(low, Complex(0));
    std::span<const double> a = coeffs.subspan(low, top - low);
    const std::size_t n = a.size() - 1;
    if (n == 0) return out;
    if (n == 1) {
        out.roots.emplace_back(-a[0] / a[1]);
        return out;
    }
    std::vector<Complex> z;
    if (!aberth(a, z, options, out.iterations)) {
        z = companion_roots(a);
        out.used_fallback = true;
    }
    out.roots.insert(out.roots.end(), z.begin(), z.end());
    return out;
}

RootFinderResult find_roots(const WPolynomial& p, const RootOptions& options) {
    RootFinderResult out;
    if (p.degree() < 1) return out;
    const auto& coeffs = p.coefficients();
    std::size_t low = 0;
    while (sgn(coeffs[low]) == 0) ++low;
    out.roots.assign(low, Complex(0));
    QPoly f(coeffs.begin() + low, coeffs.end());
    if (is_constant(f)) return out;
    for (const auto& [part, mult] : squarefree_parts(f)) {
        std::vector<double> a;
        for (const auto& c : part) a.push_back(c.get_d());
        auto found = find_roots(a, options);
        out.used_fallback = out.used_fallback || found.used_fallback;
        out.iterations = std::max(out.iterations, found.iterations);
        for (Complex z : found.roots) out.roots.insert(out.roots.end(), mult, z);
    }
    return out;
}

double exact_residual(const WPolynomial& p, Complex z) {
    GaussianRational value = p.evaluate(GaussianRational::from_complex(z));
    return std::sqrt(value.norm2().get_d());
}

double distance_to_unit_interval(Complex z) {
    const double x = std::clamp(z.real(), 0.0, 1.0);
    return std::hypot(z.real() - x, z.imag());
}

}  // namespace pottszero
