#pragma once

// The diagonal g(i) = f_i(i) over the primitive-recursive tower
// f1(x) = x+x, f2(x) = x*x, f3(x) = x^x, f4(x) = x^x^...^x (x times),
// continued with the iterated-exponentiation (up-arrow) ladder for
// larger i. Results are exact; anything whose decimal digit count would
// exceed the budget comes back as TooLarge without being materialized.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace cwb {

struct HyperResult {
    bool too_large = false;
    mpz_class value;  // meaningful only when !too_large

    static HyperResult of(mpz_class v) { return {false, std::move(v)}; }
    static HyperResult big() { return {true, 0}; }
};

namespace detail {

inline std::size_t decimal_digits(const mpz_class& v) {
    return mpz_sizeinbase(v.get_mpz_t(), 10);
}

// x^e with an early bail-out once the digit count must exceed the budget.
inline HyperResult guarded_pow(const mpz_class& base, const mpz_class& exponent,
                               std::size_t digit_budget) {
    if (base == 0) return HyperResult::of(exponent == 0 ? 1 : 0);
    if (base == 1) return HyperResult::of(1);
    if (!exponent.fits_ulong_p()) return HyperResult::big();
    unsigned long e = exponent.get_ui();
    // digits(base^e) >= e * (digits(base) - 1) + 1
    double digit_lb = static_cast<double>(e) * (static_cast<double>(decimal_digits(base)) - 1.0);
    if (digit_lb > static_cast<double>(digit_budget)) return HyperResult::big();
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    if (decimal_digits(out) > digit_budget) return HyperResult::big();
    return HyperResult::of(out);
}

// level 3 = exponentiation, level 4 = tetration, ... (Knuth arrows
// shifted so the level matches the f_i index).
inline HyperResult hyper(int level, const mpz_class& x, const mpz_class& n,
                         std::size_t digit_budget) {
    if (level == 3) return guarded_pow(x, n, digit_budget);
    if (x == 1) return HyperResult::of(1);
    if (n == 0) return HyperResult::of(1);  // empty tower
    if (!n.fits_ulong_p()) return HyperResult::big();
    unsigned long count = n.get_ui();
    HyperResult acc = HyperResult::of(x);
    for (unsigned long i = 1; i < count; ++i) {
        acc = hyper(level - 1, x, acc.value, digit_budget);
        if (acc.too_large) return acc;
    }
    return acc;
}

}  // namespace detail

inline HyperResult hyper_diagonal(unsigned int i, std::size_t digit_budget) {
    if (i < 1) throw std::invalid_argument("diagonal index must be >= 1");
    mpz_class x = i;
    if (i == 1) return HyperResult::of(x + x);
    if (i == 2) return HyperResult::of(x * x);
    return detail::hyper(static_cast<int>(i), x, x, digit_budget);
}

}  // namespace cwb
