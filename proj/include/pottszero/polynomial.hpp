#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace pottszero {

struct GaussianRational {
    mpq_class re;
    mpq_class im;

    GaussianRational() = default;
    GaussianRational(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}

    // Exact binary value of the double components.
    static GaussianRational from_complex(std::complex<double> z);
    // Nearest point with both parts in (1/denominator)Z.
    static GaussianRational round_to(std::complex<double> z, long denominator);

    mpq_class norm2() const { return re * re + im * im; }
    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
    GaussianRational conj() const { return {re, -im}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    // Throws PoleError on division by zero.
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

// Integer-coefficient polynomial in w, index = power. The zero polynomial is {0}.
class WPolynomial {
public:
    WPolynomial() : coeffs_{0} {}
    explicit WPolynomial(std::vector<mpz_class> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<mpz_class>& coefficients() const { return coeffs_; }
    mpz_class coefficient(int k) const;
    bool is_zero() const { return coeffs_.size() == 1 && sgn(coeffs_[0]) == 0; }

    mpq_class evaluate(const mpq_class& w) const;
    GaussianRational evaluate(const GaussianRational& w) const;
    std::complex<double> evaluate(std::complex<double> w) const;
    double evaluate(double w) const;

    WPolynomial derivative() const;
    // Multiply by w^k.
    WPolynomial shifted(int k) const;
    double max_abs_coefficient() const;

    friend WPolynomial operator+(const WPolynomial& a, const WPolynomial& b);
    friend WPolynomial operator-(const WPolynomial& a, const WPolynomial& b);
    friend WPolynomial operator*(const WPolynomial& a, const WPolynomial& b);
    friend bool operator==(const WPolynomial& a, const WPolynomial& b) { return a.coeffs_ == b.coeffs_; }

    nlohmann::json to_json() const;
    static WPolynomial from_json(const nlohmann::json& j);

private:
    void trim();
    std::vector<mpz_class> coeffs_;
};

template <class Scalar>
Scalar evaluate(const WPolynomial& p, const Scalar& w) {
    return p.evaluate(w);
}

// Integer power by repeated multiplication; pow(x, 0) is 1 even for x = 0.
template <class Scalar>
Scalar int_pow(const Scalar& x, int k) {
    Scalar r(1);
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

// Accepts "3", "-2/7", "0.125", "1e-3", "2.5e2".
mpq_class parse_rational(std::string_view text);
std::string to_string(const mpq_class& x);
std::string to_decimal_string(double x);

}  // namespace pottszero
