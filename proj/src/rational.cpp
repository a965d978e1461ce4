#include "psint/rational.hpp"

#include <cctype>

namespace psint {

namespace {

// Parses one signed decimal or integer literal starting at i, returns the
// exact rational value.  Grammar: [+-] digits [ '.' digits ] [ (e|E) [+-] digits ]
std::optional<Rational> parse_number(const std::string& s, size_t& i) {
    size_t n = s.size();
    size_t start = i;
    bool neg = false;
    if (i < n && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    BigInt mant = 0;
    long frac_digits = 0;
    bool any = false;
    while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) {
        mant = mant * 10 + (s[i] - '0');
        any = true;
        ++i;
    }
    if (i < n && s[i] == '.') {
        ++i;
        while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) {
            mant = mant * 10 + (s[i] - '0');
            ++frac_digits;
            any = true;
            ++i;
        }
    }
    if (!any) {
        i = start;
        return std::nullopt;
    }
    long exp10 = 0;
    if (i < n && (s[i] == 'e' || s[i] == 'E')) {
        size_t save = i;
        ++i;
        bool eneg = false;
        if (i < n && (s[i] == '+' || s[i] == '-')) {
            eneg = s[i] == '-';
            ++i;
        }
        if (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) {
            long e = 0;
            while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) {
                e = e * 10 + (s[i] - '0');
                if (e > 100000) return std::nullopt;
                ++i;
            }
            exp10 = eneg ? -e : e;
        } else {
            i = save;  // trailing 'e' is not part of the number
        }
    }
    BigInt num = neg ? BigInt(-mant) : mant;
    BigInt den = 1;
    long shift = exp10 - frac_digits;
    BigInt ten = 10;
    for (long k = 0; k < (shift > 0 ? shift : -shift); ++k) {
        if (shift > 0)
            num *= ten;
        else
            den *= ten;
    }
    return Rational(num, den);
}

}  // namespace

std::optional<Rational> parse_rational_prefix(const std::string& s, size_t& i) {
    auto a = parse_number(s, i);
    if (!a) return std::nullopt;
    if (i < s.size() && s[i] == '/') {
        size_t save = i;
        ++i;
        auto b = parse_number(s, i);
        if (!b || *b == 0) {
            i = save;
            return a;
        }
        *a /= *b;
    }
    return a;
}

std::optional<Rational> try_parse_rational(const std::string& text) {
    size_t i = 0;
    size_t n = text.size();
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    auto a = parse_number(text, i);
    if (!a) return std::nullopt;
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < n && text[i] == '/') {
        ++i;
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        auto b = parse_number(text, i);
        if (!b || *b == 0) return std::nullopt;
        *a /= *b;
    }
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i != n) return std::nullopt;
    return a;
}

Rational parse_rational(const std::string& text) {
    auto r = try_parse_rational(text);
    if (!r) throw std::invalid_argument("not a rational: '" + text + "'");
    return *r;
}

std::string format_rational(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (q * b > a) --q;
    return q;
}

BigInt isqrt(const BigInt& n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    return boost::multiprecision::sqrt(n);
}

std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    BigInt n = numerator(r), d = denominator(r);
    BigInt sn = isqrt(n), sd = isqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rational(sn, sd);
}

}  // namespace psint
