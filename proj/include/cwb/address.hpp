#pragma once

// Two-sided binary addresses for the horseshoe's invariant Cantor set.
// ExactForm holds an eventually periodic stream on each side of the
// point (so visitation and embedding questions are decidable and exact);
// WindowForm models an observer who has only been shown finitely many
// bits and refuses to guess past them.
//
// Index convention: right index 0 is the first bit right of the point
// (a0); left index -1 is the first bit left of it. The shift map moves
// the point one symbol rightward: new bit at k = old bit at k+1.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rational.hpp"
#include "turing.hpp"  // BitWord, bits_from_string

namespace cwb {

struct WindowExhausted : std::runtime_error {
    WindowExhausted() : std::runtime_error("window form does not cover the requested bits") {}
};

struct NotComparable : std::runtime_error {
    NotComparable() : std::runtime_error("addresses agree on the full right stream") {}
};

// One side of an address: preperiod then a repeating non-empty period,
// indexed outward from the point starting at 0.
struct Stream {
    BitWord pre;
    BitWord period;

    Stream() : period{0} {}
    Stream(BitWord pre_, BitWord period_) : pre(std::move(pre_)), period(std::move(period_)) {
        if (period.empty()) throw std::invalid_argument("period must be non-empty");
    }

    std::uint8_t bit(std::uint64_t k) const {
        if (k < pre.size()) return pre[k];
        return period[(k - pre.size()) % period.size()];
    }

    // Drop the bit nearest the point.
    void pop_front() {
        if (!pre.empty()) {
            pre.erase(pre.begin());
        } else {
            std::rotate(period.begin(), period.begin() + 1, period.end());
        }
    }

    void push_front(std::uint8_t b) { pre.insert(pre.begin(), b); }

    // Make index k part of the explicit preperiod (unrolling the period),
    // so it can be overwritten.
    void materialize(std::uint64_t k) {
        while (pre.size() <= k) pre.push_back(bit(pre.size()));
    }

    void set_bit(std::uint64_t k, std::uint8_t b) {
        materialize(k);
        pre[k] = b;
    }
};

struct ExactAddress {
    Stream left;   // left.bit(j) is the bit at index -(j+1)
    Stream right;  // right.bit(j) is the bit at index j

    std::uint8_t bit(std::int64_t k) const {
        return k >= 0 ? right.bit(static_cast<std::uint64_t>(k))
                      : left.bit(static_cast<std::uint64_t>(-k - 1));
    }

    void set_bit(std::int64_t k, std::uint8_t b) {
        if (k >= 0) right.set_bit(static_cast<std::uint64_t>(k), b);
        else left.set_bit(static_cast<std::uint64_t>(-k - 1), b);
    }
};

struct WindowAddress {
    std::vector<std::uint8_t> bits;  // indices lo .. lo+bits.size()-1
    std::int64_t lo = 0;

    std::int64_t hi() const { return lo + static_cast<std::int64_t>(bits.size()); }  // exclusive

    bool covers(std::int64_t k) const { return k >= lo && k < hi(); }

    std::uint8_t bit(std::int64_t k) const {
        if (!covers(k)) throw WindowExhausted();
        return bits[static_cast<std::size_t>(k - lo)];
    }

    void set_bit(std::int64_t k, std::uint8_t b) {
        if (!covers(k)) throw WindowExhausted();
        bits[static_cast<std::size_t>(k - lo)] = b;
    }
};

using Address = std::variant<ExactAddress, WindowAddress>;

// ---- shift --------------------------------------------------------------

inline ExactAddress shift(ExactAddress a) {
    std::uint8_t a0 = a.right.bit(0);
    a.right.pop_front();
    a.left.push_front(a0);
    return a;
}

// Inverse shift: new bit at k = old bit at k-1.
inline ExactAddress unshift(ExactAddress a) {
    std::uint8_t am1 = a.left.bit(0);
    a.left.pop_front();
    a.right.push_front(am1);
    return a;
}

inline WindowAddress shift(WindowAddress a) {
    a.lo -= 1;
    return a;  // same bits, indices renumbered: known range slides left
}

inline Address shift(const Address& a) {
    return std::visit([](const auto& v) -> Address { return shift(v); }, a);
}

inline ExactAddress iterate_shift(ExactAddress a, std::uint64_t n) {
    for (std::uint64_t i = 0; i < n; ++i) a = shift(std::move(a));
    return a;
}

inline WindowAddress iterate_shift(WindowAddress a, std::uint64_t n) {
    if (static_cast<std::int64_t>(n) > a.hi()) throw WindowExhausted();
    a.lo -= static_cast<std::int64_t>(n);
    return a;
}

inline Address iterate_shift(const Address& a, std::uint64_t n) {
    return std::visit([&](const auto& v) -> Address { return iterate_shift(v, n); }, a);
}

// ---- fast forward -------------------------------------------------------

struct FastForwardResult {
    std::vector<std::uint8_t> bits;  // window [lo, hi)
    std::int64_t lo = 0;
    std::uint64_t operations = 0;  // index-arithmetic steps actually performed
};

// Bits that iterate_shift(a, t) would expose on [lo, hi), computed by
// index arithmetic modulo the period lengths. Cost is independent of t
// beyond its bit length.
inline FastForwardResult fast_forward(const ExactAddress& a, std::uint64_t t, std::int64_t lo,
                                      std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("empty window must have lo <= hi");
    FastForwardResult out;
    out.lo = lo;
    for (std::int64_t k = lo; k < hi; ++k) {
        // bit at index k after t shifts = original bit at k + t
        ++out.operations;
        __int128 src = static_cast<__int128>(k) + static_cast<__int128>(t);
        const Stream& s = src >= 0 ? a.right : a.left;
        std::uint64_t j = src >= 0 ? static_cast<std::uint64_t>(src)
                                   : static_cast<std::uint64_t>(-src - 1);
        if (j >= s.pre.size()) {
            j = s.pre.size() + (j - s.pre.size()) % s.period.size();
            ++out.operations;
        }
        out.bits.push_back(s.bit(j));
    }
    return out;
}

// ---- embedding ----------------------------------------------------------

enum class EmbedBase { Dyadic, Ternary };

namespace detail {

// Value of 0.d0 d1 d2... in base b where d_k = digit(bit at k).
inline mpq_class stream_value(const Stream& s, EmbedBase base) {
    const unsigned b = base == EmbedBase::Ternary ? 3 : 2;
    const unsigned digit_scale = base == EmbedBase::Ternary ? 2 : 1;
    mpz_class pre_int = 0;
    for (std::uint8_t bit : s.pre) pre_int = pre_int * b + digit_scale * bit;
    mpz_class per_int = 0;
    for (std::uint8_t bit : s.period) per_int = per_int * b + digit_scale * bit;
    mpz_class bm, bp;
    mpz_ui_pow_ui(bm.get_mpz_t(), b, s.pre.size());
    mpz_ui_pow_ui(bp.get_mpz_t(), b, s.period.size());
    mpq_class v = mpq_class(pre_int, bm) + mpq_class(per_int, bm * (bp - 1));
    v.canonicalize();
    return v;
}

}  // namespace detail

// (x, y) in the unit square: x encodes the left stream, y the right.
inline std::pair<mpq_class, mpq_class> embed(const ExactAddress& a, EmbedBase base) {
    return {detail::stream_value(a.left, base), detail::stream_value(a.right, base)};
}

// ---- divergence ---------------------------------------------------------

// First right index where a and b differ, if any, searched up to the
// eventual-periodicity bound.
inline std::optional<std::uint64_t> first_right_disagreement(const ExactAddress& a,
                                                             const ExactAddress& b) {
    std::uint64_t pre = std::max(a.right.pre.size(), b.right.pre.size());
    std::uint64_t l = std::lcm(a.right.period.size(), b.right.period.size());
    for (std::uint64_t k = 0; k < pre + l; ++k)
        if (a.right.bit(k) != b.right.bit(k)) return k;
    return std::nullopt;
}

// |y_k(a) - y_k(b)| for k = 0..n under k-fold shifting; exact rationals.
inline std::vector<mpq_class> divergence(const ExactAddress& a, const ExactAddress& b,
                                         std::uint64_t n, EmbedBase base) {
    auto m = first_right_disagreement(a, b);
    if (!m) throw NotComparable();
    if (n > *m)
        throw std::invalid_argument("divergence horizon exceeds the agreement prefix");
    std::vector<mpq_class> out;
    ExactAddress ca = a, cb = b;
    for (std::uint64_t k = 0;; ++k) {
        mpq_class d = abs(embed(ca, base).second - embed(cb, base).second);
        out.push_back(d);
        if (k == n) break;
        ca = shift(std::move(ca));
        cb = shift(std::move(cb));
    }
    return out;
}

// ---- visitation ---------------------------------------------------------

// Whether some forward iterate matches `pattern` on right indices
// 0..|pattern|-1. Eventual periodicity bounds the search.
inline bool reaches_region(const ExactAddress& a, const BitWord& pattern) {
    if (pattern.empty()) throw std::invalid_argument("pattern must be non-empty");
    std::uint64_t bound = a.right.pre.size() + a.right.period.size() + pattern.size();
    for (std::uint64_t t = 0; t <= bound; ++t) {
        bool match = true;
        for (std::size_t i = 0; i < pattern.size() && match; ++i)
            match = a.right.bit(t + i) == pattern[i];
        if (match) return true;
    }
    return false;
}

// Semantic equality: same bits on both sides out to the periodicity bound.
inline bool addresses_equal(const ExactAddress& a, const ExactAddress& b) {
    auto side_equal = [](const Stream& s, const Stream& t) {
        std::uint64_t bound = std::max(s.pre.size(), t.pre.size()) +
                              std::lcm(s.period.size(), t.period.size());
        for (std::uint64_t k = 0; k < bound; ++k)
            if (s.bit(k) != t.bit(k)) return false;
        return true;
    };
    return side_equal(a.left, b.left) && side_equal(a.right, b.right);
}

// ---- serialization ------------------------------------------------------
//
//   left: pre=101; per=01 | right: pre=; per=0

inline std::string address_to_text(const ExactAddress& a) {
    return "left: pre=" + bits_to_string(a.left.pre) + "; per=" + bits_to_string(a.left.period) +
           " | right: pre=" + bits_to_string(a.right.pre) +
           "; per=" + bits_to_string(a.right.period);
}

inline ExactAddress address_from_text(const std::string& text) {
    auto field = [&](const std::string& side, const std::string& key) -> std::string {
        auto side_at = text.find(side + ":");
        if (side_at == std::string::npos)
            throw std::invalid_argument("address text missing side " + side);
        auto key_at = text.find(key + "=", side_at);
        if (key_at == std::string::npos)
            throw std::invalid_argument("address text missing " + key + " for " + side);
        auto start = key_at + key.size() + 1;
        auto end = text.find_first_of(";|", start);
        std::string raw = text.substr(start, end == std::string::npos ? end : end - start);
        std::string bits;
        for (char c : raw)
            if (c == '0' || c == '1') bits += c;
        return bits;
    };
    ExactAddress a;
    BitWord lper = bits_from_string(field("left", "per"));
    BitWord rper = bits_from_string(field("right", "per"));
    a.left = Stream(bits_from_string(field("left", "pre")), lper.empty() ? BitWord{0} : lper);
    a.right = Stream(bits_from_string(field("right", "pre")), rper.empty() ? BitWord{0} : rper);
    return a;
}

}  // namespace cwb
