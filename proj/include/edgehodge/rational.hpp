#pragma once

// Exact rational scalars. Everything that feeds a rank, a perversity or a
// truncation inequality goes through this type.

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace edgehodge {

using Rational = mpq_class;
using Integer = mpz_class;

/// Thrown for malformed textual input (rationals, config, model files).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Accepts "p", "p/q" and finite decimals such as "-0.25" or "1e-4"; the
/// decimal forms are converted exactly.
inline Rational parse_rational(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s.push_back(c);
        }
    }
    if (s.empty()) {
        throw ParseError("empty rational");
    }
    if (s.find('/') != std::string::npos) {
        Rational r;
        if (r.set_str(s, 10) != 0) {
            throw ParseError("malformed rational '" + s + "'");
        }
        if (r.get_den() == 0) {
            throw ParseError("zero denominator in '" + s + "'");
        }
        r.canonicalize();
        return r;
    }

    // integer or decimal with optional exponent
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = s[pos] == '-';
        ++pos;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            any_digit = true;
            if (seen_point) {
                ++frac_digits;
            }
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) {
        throw ParseError("malformed rational '" + s + "'");
    }
    long exponent = 0;
    if (pos < s.size()) {
        if (s[pos] != 'e' && s[pos] != 'E') {
            throw ParseError("malformed rational '" + s + "'");
        }
        ++pos;
        std::string exp_text = s.substr(pos);
        if (exp_text.empty()) {
            throw ParseError("malformed exponent in '" + s + "'");
        }
        std::size_t used = 0;
        try {
            exponent = std::stol(exp_text, &used);
        } catch (const std::exception&) {
            throw ParseError("malformed exponent in '" + s + "'");
        }
        if (used != exp_text.size()) {
            throw ParseError("malformed exponent in '" + s + "'");
        }
    }
    Integer mantissa(digits, 10);
    if (negative) {
        mantissa = -mantissa;
    }
    long scale = exponent - frac_digits;
    Integer ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Rational r = scale >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
    r.canonicalize();
    return r;
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline Integer floor(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Integer ceil(const Rational& r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Narrowing that refuses to wrap.
inline long to_long(const Integer& z) {
    if (!z.fits_slong_p()) {
        throw std::overflow_error("integer does not fit in long");
    }
    return z.get_si();
}

inline double to_double(const Rational& r) { return r.get_d(); }

/// Exact square root when both numerator and denominator are perfect squares.
inline bool exact_sqrt(const Rational& r, Rational& out) {
    if (sgn(r) < 0) {
        return false;
    }
    if (mpz_perfect_square_p(r.get_num_mpz_t()) == 0 || mpz_perfect_square_p(r.get_den_mpz_t()) == 0) {
        return false;
    }
    Integer num;
    Integer den;
    mpz_sqrt(num.get_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), r.get_den_mpz_t());
    out = Rational(num, den);
    out.canonicalize();
    return true;
}

} // namespace edgehodge
