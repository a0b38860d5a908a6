#pragma once

// Divergent-series phenomenology: partial sums of power series whose
// coefficients may grow factorially, and the optimal-truncation point
// where the "corrections" stop shrinking. Everything is exact rational;
// decimal output is presentation only.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace cwb {

class AsymptoticSeries {
public:
    // |c_n| rule plus a positive coupling.
    static AsymptoticSeries factorial(mpq_class alpha) {
        return AsymptoticSeries(std::move(alpha), [](std::uint64_t n) {
            mpz_class f;
            mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
            return mpq_class(f);
        });
    }

    // |c_n| = n! * k^n
    static AsymptoticSeries factorial_times_pow(mpq_class alpha, const mpq_class& k) {
        return AsymptoticSeries(std::move(alpha), [k](std::uint64_t n) {
            mpz_class f;
            mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
            mpq_class out = mpq_class(f) * rational_pow(k, static_cast<unsigned long>(n));
            out.canonicalize();
            return out;
        });
    }

    static AsymptoticSeries constant(mpq_class alpha) {
        return AsymptoticSeries(std::move(alpha), [](std::uint64_t) { return mpq_class(1); });
    }

    static AsymptoticSeries from_table(mpq_class alpha, std::vector<mpq_class> coefficients) {
        return AsymptoticSeries(std::move(alpha), [c = std::move(coefficients)](std::uint64_t n) {
            return c.at(n);
        });
    }

    AsymptoticSeries(mpq_class alpha, std::function<mpq_class(std::uint64_t)> coefficient)
        : alpha_(std::move(alpha)), coefficient_(std::move(coefficient)) {
        if (alpha_ <= 0) throw std::invalid_argument("coupling must be positive");
    }

    const mpq_class& alpha() const { return alpha_; }

    mpq_class coefficient(std::uint64_t n) const {
        mpq_class c = coefficient_(n);
        if (c < 0) throw std::invalid_argument("coefficient magnitudes must be non-negative");
        return c;
    }

    // |c_n| * alpha^n
    mpq_class term(std::uint64_t n) const {
        mpq_class t = coefficient(n) * rational_pow(alpha_, static_cast<unsigned long>(n));
        t.canonicalize();
        return t;
    }

private:
    mpq_class alpha_;
    std::function<mpq_class(std::uint64_t)> coefficient_;
};

inline std::vector<mpq_class> partial_sums(const AsymptoticSeries& s, std::uint64_t count) {
    if (count < 1) throw std::invalid_argument("need at least one partial sum");
    std::vector<mpq_class> out;
    mpq_class acc = 0;
    for (std::uint64_t n = 0; n < count; ++n) {
        acc += s.term(n);
        acc.canonicalize();
        out.push_back(acc);
    }
    return out;
}

struct MinimalTerm {
    std::uint64_t index = 0;     // n*: first n with t_{n+1}/t_n >= 1
    mpq_class term_value;
    std::vector<mpq_class> ratios;  // t_{n+1}/t_n for n = 0..index
};

// The optimal truncation point, located as the first ratio crossing.
// Returns nullopt (NotYetDivergent) when the terms are still shrinking
// at n_max.
inline std::optional<MinimalTerm> minimal_term_index(const AsymptoticSeries& s,
                                                     std::uint64_t n_max) {
    MinimalTerm out;
    mpq_class prev = s.term(0);
    for (std::uint64_t n = 0; n < n_max; ++n) {
        mpq_class next = s.term(n + 1);
        if (prev == 0) throw std::invalid_argument("zero term: ratio test undefined");
        mpq_class ratio = next / prev;
        ratio.canonicalize();
        out.ratios.push_back(ratio);
        if (ratio >= 1) {
            out.index = n;
            out.term_value = prev;
            return out;
        }
        prev = next;
    }
    return std::nullopt;
}

// Documentation fixtures, not computed claims: diagram counts reported
// for the perturbation orders of the electron moment calculation.
inline constexpr unsigned kThirdOrderDiagramCount = 70;    // "about 70"
inline constexpr unsigned kFourthOrderDiagramCount = 900;  // "over 900" eight-coupling

}  // namespace cwb
