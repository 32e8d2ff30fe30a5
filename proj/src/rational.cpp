#include "rational.hpp"

#include "base.hpp"

#include <numeric>

namespace eqol {

Rational::Rational(long long n, long long d) {
    if (d == 0) throw model_error("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(num * o.num, den * o.den);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) throw model_error("rational division by zero");
    return Rational(num * o.den, den * o.num);
}

bool Rational::operator<(const Rational& o) const {
    return num * o.den < o.num * den;
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational parse_rational(const std::string& text) {
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(std::stoll(text));
        long long n = std::stoll(text.substr(0, slash));
        long long d = std::stoll(text.substr(slash + 1));
        return Rational(n, d);
    } catch (const model_error&) {
        throw parse_error("bad rational literal '" + text + "'", 0);
    } catch (const std::exception&) {
        throw parse_error("bad rational literal '" + text + "'", 0);
    }
}

} // namespace eqol
