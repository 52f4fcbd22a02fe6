#include "heb/rational.hpp"

#include "heb/error.hpp"

#include <cctype>
#include <cmath>

namespace heb {

std::string to_string(const Rational& r) {
    Rational c(r);
    c.canonicalize();
    return c.get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw Error("empty rational literal");
    bool negative = false;
    std::size_t pos = 0;
    if (s[0] == '-' || s[0] == '+') {
        negative = s[0] == '-';
        pos = 1;
    }
    std::string body = s.substr(pos);
    auto all_digits = [](const std::string& t) {
        if (t.empty()) return false;
        for (char c : t)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    Rational value;
    if (auto slash = body.find('/'); slash != std::string::npos) {
        std::string num = body.substr(0, slash), den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw Error("malformed rational literal '" + s + "'");
        Integer d(den, 10);
        if (d == 0) throw Error("zero denominator in '" + s + "'");
        value = Rational(Integer(num, 10), d);
    } else if (auto dot = body.find('.'); dot != std::string::npos) {
        std::string whole = body.substr(0, dot), frac = body.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
            throw Error("malformed decimal literal '" + s + "'");
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        value = Rational(Integer(whole + frac, 10), scale);
    } else {
        if (!all_digits(body)) throw Error("malformed integer literal '" + s + "'");
        value = Rational(Integer(body, 10));
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw Error("cannot convert a non-finite double to a rational");
    Rational r(v);
    r.canonicalize();
    return r;
}

Rational approximate(double v, long max_den) {
    if (!std::isfinite(v)) throw Error("cannot approximate a non-finite double");
    if (max_den < 1) throw Error("approximate: max_den must be positive");
    // Continued-fraction convergents of the exact binary value of v.
    Rational x = rational_from_double(v);
    Integer num = x.get_num(), den = x.get_den();
    Integer h2 = 0, h1 = 1, k2 = 1, k1 = 0;
    while (den != 0) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        Integer h = a * h1 + h2;
        Integer k = a * k1 + k2;
        if (k > max_den) break;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
        Integer rem = num - a * den;
        num = den;
        den = rem;
    }
    Rational best(h1, k1);
    best.canonicalize();
    return best;
}

std::vector<double> to_doubles(const std::vector<Rational>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& r : v) out.push_back(r.get_d());
    return out;
}

std::vector<Integer> primitive_integer(const std::vector<Rational>& v) {
    Integer lcm = 1;
    for (const auto& r : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.get_den_mpz_t());
    std::vector<Integer> out;
    out.reserve(v.size());
    Integer g = 0;
    for (const auto& r : v) {
        Integer z = r.get_num() * (lcm / r.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
        out.push_back(z);
    }
    if (g > 1)
        for (auto& z : out) z /= g;
    return out;
}

}  // namespace heb
