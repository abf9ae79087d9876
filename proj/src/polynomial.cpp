#include "pottszero/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

#include "pottszero/errors.hpp"

namespace pottszero {

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    mpq_class d = b.norm2();
    if (sgn(d) == 0) throw PoleError("division by zero Gaussian rational");
    GaussianRational n = a * b.conj();
    return {n.re / d, n.im / d};
}

GaussianRational GaussianRational::from_complex(std::complex<double> z) {
    return {mpq_class(z.real()), mpq_class(z.imag())};
}

GaussianRational GaussianRational::round_to(std::complex<double> z, long denominator) {
    auto part = [denominator](double x) {
        return mpq_class(mpz_class(static_cast<long>(std::llround(x * denominator))), mpz_class(denominator));
    };
    mpq_class re = part(z.real()), im = part(z.imag());
    re.canonicalize();
    im.canonicalize();
    return {re, im};
}

WPolynomial::WPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void WPolynomial::trim() {
    while (coeffs_.size() > 1 && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0);
}

mpz_class WPolynomial::coefficient(int k) const {
    if (k < 0 || k > degree()) return 0;
    return coeffs_[k];
}

mpq_class WPolynomial::evaluate(const mpq_class& w) const {
    mpq_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= w;
        acc += *it;
    }
    return acc;
}

GaussianRational WPolynomial::evaluate(const GaussianRational& w) const {
    GaussianRational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * w;
        acc.re += *it;
    }
    return acc;
}

std::complex<double> WPolynomial::evaluate(std::complex<double> w) const {
    std::complex<double> acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * w + it->get_d();
    return acc;
}

double WPolynomial::evaluate(double w) const {
    double acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * w + it->get_d();
    return acc;
}

WPolynomial WPolynomial::derivative() const {
    std::vector<mpz_class> out;
    for (int k = 1; k <= degree(); ++k) out.push_back(coeffs_[k] * k);
    return WPolynomial(std::move(out));
}

WPolynomial WPolynomial::shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<mpz_class> out(k, 0);
    out.insert(out.end(), coeffs_.begin(), coeffs_.end());
    return WPolynomial(std::move(out));
}

double WPolynomial::max_abs_coefficient() const {
    double m = 0;
    for (const auto& c : coeffs_) m = std::max(m, std::fabs(c.get_d()));
    return m;
}

WPolynomial operator+(const WPolynomial& a, const WPolynomial& b) {
    std::vector<mpz_class> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return WPolynomial(std::move(out));
}

WPolynomial operator-(const WPolynomial& a, const WPolynomial& b) {
    std::vector<mpz_class> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] -= b.coeffs_[i];
    return WPolynomial(std::move(out));
}

WPolynomial operator*(const WPolynomial& a, const WPolynomial& b) {
    std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return WPolynomial(std::move(out));
}

nlohmann::json WPolynomial::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : coeffs_) arr.push_back(c.get_str());
    return arr;
}

WPolynomial WPolynomial::from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw DomainError("polynomial JSON must be an array");
    std::vector<mpz_class> coeffs;
    for (const auto& item : j) {
        if (!item.is_string()) throw DomainError("polynomial coefficients must be decimal strings");
        mpz_class c;
        if (c.set_str(item.get<std::string>(), 10) != 0) throw DomainError("bad coefficient");
        coeffs.push_back(c);
    }
    return WPolynomial(std::move(coeffs));
}

mpq_class parse_rational(std::string_view text) {
    std::string s(text);
    auto bad = [&]() { return DomainError("cannot parse rational '" + s + "'"); };
    if (s.empty()) throw bad();
    if (auto slash = s.find('/'); slash != std::string::npos) {
        mpz_class num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0) throw bad();
        if (sgn(den) == 0) throw bad();
        mpq_class r(num, den);
        r.canonicalize();
        return r;
    }
    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
    std::string digits;
    long scale = 0;
    bool seen_digit = false, seen_point = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) --scale;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw bad();
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') throw bad();
        try {
            std::size_t used = 0;
            long e = std::stol(s.substr(i + 1), &used);
            if (i + 1 + used != s.size()) throw bad();
            scale += e;
        } catch (const std::logic_error&) {
            throw bad();
        }
    }
    mpz_class mant(digits, 10);
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
    mpq_class r = scale >= 0 ? mpq_class(mant * ten_pow) : mpq_class(mant, ten_pow);
    r.canonicalize();
    return negative ? mpq_class(-r) : r;
}

std::string to_string(const mpq_class& x) { return x.get_str(); }

std::string to_decimal_string(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace pottszero
