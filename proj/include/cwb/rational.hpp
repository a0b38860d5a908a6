#pragma once

// Exact rational helpers on top of GMP. All "exact" quantities in the
// workbench (embeddings, probabilities, series terms, omega bounds) are
// mpq_class values; doubles appear only in presentation and in the
// state-vector amplitudes.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cwb {

// Parses "3", "-3/4", "0.25", or "1/137.03597" (decimal parts are scaled
// to an exact fraction). Throws std::invalid_argument on malformed input.
inline mpq_class parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");

    auto parse_part = [](const std::string& part) -> mpq_class {
        if (part.empty()) throw std::invalid_argument("empty rational component");
        std::string digits;
        std::size_t frac_digits = 0;
        bool seen_point = false;
        std::size_t i = 0;
        if (part[0] == '+' || part[0] == '-') {
            if (part[0] == '-') digits += '-';
            i = 1;
        }
        bool any = false;
        for (; i < part.size(); ++i) {
            char c = part[i];
            if (c == '.') {
                if (seen_point) throw std::invalid_argument("two decimal points in " + part);
                seen_point = true;
            } else if (c >= '0' && c <= '9') {
                digits += c;
                any = true;
                if (seen_point) ++frac_digits;
            } else {
                throw std::invalid_argument("bad character in rational literal: " + part);
            }
        }
        if (!any) throw std::invalid_argument("no digits in rational literal: " + part);
        mpz_class num(digits, 10);
        mpz_class den = 1;
        for (std::size_t k = 0; k < frac_digits; ++k) den *= 10;
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    };

    auto slash = text.find('/');
    if (slash == std::string::npos) return parse_part(text);
    mpq_class num = parse_part(text.substr(0, slash));
    mpq_class den = parse_part(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    mpq_class q = num / den;
    q.canonicalize();
    return q;
}

inline std::string to_fraction_string(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Decimal approximation with the given number of digits after the point.
// Presentation only; truncates toward zero.
inline std::string to_decimal_string(const mpq_class& q, unsigned digits = 12) {
    mpz_class num = q.get_num();
    bool neg = num < 0;
    if (neg) num = -num;
    mpz_class den = q.get_den();
    mpz_class scale = 1;
    for (unsigned k = 0; k < digits; ++k) scale *= 10;
    mpz_class scaled = num * scale / den;
    mpz_class whole = scaled / scale;
    mpz_class frac = scaled % scale;
    std::string f = frac.get_str();
    f.insert(0, digits - f.size(), '0');
    // trim trailing zeros but keep at least one digit
    while (f.size() > 1 && f.back() == '0') f.pop_back();
    std::string out = (neg ? "-" : "") + whole.get_str();
    if (digits > 0) out += "." + f;
    return out;
}

inline mpq_class rational_pow(const mpq_class& base, unsigned long e) {
    mpq_class out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
    out.canonicalize();
    return out;
}

}  // namespace cwb
