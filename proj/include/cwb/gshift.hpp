#pragma once

// Moore-style generalized shifts: a shift map that may first rewrite a
// finite block of bits around the point. gshift_from_tm builds the table
// that is conjugate to one Turing-machine step under encode_address.
//
// Encoding (one faithful choice; the construction fixes no layout):
// right stream = state code (LSB-first, width w) || scanned bit || tape
// right of the head, then zeros; left stream = tape left of the head,
// then zeros. w = ceil(log2(states + 1)), so at least one code value is
// reserved as invalid.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "address.hpp"
#include "turing.hpp"

namespace cwb {

struct DecodeError : std::runtime_error {
    explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

struct GeneralizedShift {
    std::int64_t lo = 0;  // domain of effect: indices lo..hi inclusive
    std::int64_t hi = 0;

    struct Entry {
        std::vector<std::uint8_t> replacement;  // width hi-lo+1, position order
        int shift = 0;
    };
    std::vector<Entry> table;  // indexed by the block read LSB-at-lo

    int width() const { return static_cast<int>(hi - lo + 1); }
};

inline int tm_code_width(const TuringMachine& tm) {
    int w = 1;
    while ((1 << w) < tm.num_states() + 1) ++w;
    return w;
}

inline ExactAddress encode_address(const TapeConfiguration& c, const TuringMachine& tm) {
    const int w = tm_code_width(tm);
    BitWord right;
    for (int j = 0; j < w; ++j) right.push_back((c.state >> j) & 1);
    right.push_back(c.scanned());
    for (std::size_t i = 1; i < c.right.size(); ++i) right.push_back(c.right[i]);
    ExactAddress a;
    a.right = Stream(std::move(right), {0});
    a.left = Stream(c.left, {0});
    return a;
}

inline TapeConfiguration decode_address(const ExactAddress& a, const TuringMachine& tm) {
    auto all_zero = [](const BitWord& w) {
        for (auto b : w)
            if (b) return false;
        return true;
    };
    if (!all_zero(a.left.period) || !all_zero(a.right.period))
        throw DecodeError("address tail is not eventually zero");
    const int w = tm_code_width(tm);
    int state = 0;
    for (int j = 0; j < w; ++j) state |= int(a.right.bit(j)) << j;
    if (state >= tm.num_states()) throw DecodeError("invalid state code");
    TapeConfiguration c;
    c.state = state;
    c.right.push_back(a.right.bit(w));
    for (std::uint64_t i = w + 1; i < a.right.pre.size(); ++i) c.right.push_back(a.right.bit(i));
    c.left = a.left.pre;
    trim_word(c.left);
    trim_word(c.right);
    return c;
}

inline GeneralizedShift gshift_from_tm(const TuringMachine& tm) {
    const int w = tm_code_width(tm);
    GeneralizedShift g;
    g.lo = -1;
    g.hi = w;  // block: a_-1, code bits 0..w-1, scanned bit at index w
    const int width = g.width();
    g.table.resize(std::size_t(1) << width);
    for (std::size_t block = 0; block < g.table.size(); ++block) {
        auto bit_of = [&](int pos) { return static_cast<std::uint8_t>((block >> pos) & 1); };
        std::uint8_t left_bit = bit_of(0);  // index -1
        int state = 0;
        for (int j = 0; j < w; ++j) state |= int(bit_of(1 + j)) << j;
        std::uint8_t scanned = bit_of(1 + w);  // index w

        GeneralizedShift::Entry e;
        e.replacement.resize(width);
        for (int p = 0; p < width; ++p) e.replacement[p] = bit_of(p);
        e.shift = 0;  // invalid codes and halting states are fixed points
        if (state < tm.num_states() && !tm.is_halting(state)) {
            const TmTransition& t = tm.transition(state, scanned);
            BitWord code(w);
            for (int j = 0; j < w; ++j) code[j] = (t.next_state >> j) & 1;
            if (t.move == Move::Right) {
                // (x_-1, x_0, x_1..x_w) = (a_-1, written, code'); shift +1
                e.replacement[0] = left_bit;
                e.replacement[1] = t.write;
                for (int j = 0; j < w; ++j) e.replacement[2 + j] = code[j];
                e.shift = 1;
            } else {
                // (x_-1..x_{w-2}, x_{w-1}, x_w) = (code', a_-1, written); shift -1
                for (int j = 0; j < w; ++j) e.replacement[j] = code[j];
                e.replacement[w] = left_bit;
                e.replacement[w + 1] = t.write;
                e.shift = -1;
            }
        }
        g.table[block] = e;
    }
    return g;
}

inline ExactAddress gshift_step(const GeneralizedShift& g, ExactAddress a) {
    std::size_t block = 0;
    for (int p = 0; p < g.width(); ++p)
        block |= std::size_t(a.bit(g.lo + p)) << p;
    const auto& e = g.table[block];
    for (int p = 0; p < g.width(); ++p) a.set_bit(g.lo + p, e.replacement[p]);
    for (int s = 0; s < e.shift; ++s) a = shift(std::move(a));
    for (int s = 0; s > e.shift; --s) a = unshift(std::move(a));
    return a;
}

inline WindowAddress gshift_step(const GeneralizedShift& g, WindowAddress a) {
    if (!a.covers(g.lo) || !a.covers(g.hi)) throw WindowExhausted();
    std::size_t block = 0;
    for (int p = 0; p < g.width(); ++p)
        block |= std::size_t(a.bit(g.lo + p)) << p;
    const auto& e = g.table[block];
    for (int p = 0; p < g.width(); ++p) a.set_bit(g.lo + p, e.replacement[p]);
    a.lo -= e.shift;
    return a;
}

inline Address gshift_step(const GeneralizedShift& g, const Address& a) {
    return std::visit([&](const auto& v) -> Address { return gshift_step(g, v); }, a);
}

}  // namespace cwb
