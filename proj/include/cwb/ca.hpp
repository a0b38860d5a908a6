#pragma once

// The mod-2 cellular automaton: each cell becomes the XOR of its two
// neighbors. The rule is linear over GF(2), so T^(2^k) applied to a row
// is x_{i-2^k} XOR x_{i+2^k}; fast-forwarding walks the binary expansion
// of t instead of stepping t times.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cwb {

struct CaRow {
    std::vector<std::uint8_t> cells;  // cell i sits at absolute position origin + i
    std::int64_t origin = 0;

    std::size_t width() const { return cells.size(); }

    std::uint8_t at(std::int64_t pos) const {
        std::int64_t i = pos - origin;
        if (i < 0 || i >= static_cast<std::int64_t>(cells.size())) return 0;
        return cells[static_cast<std::size_t>(i)];
    }

    // Canonical form: no zero cells on either edge; the empty row has origin 0.
    void trim() {
        std::size_t lead = 0;
        while (lead < cells.size() && cells[lead] == 0) ++lead;
        if (lead == cells.size()) {
            cells.clear();
            origin = 0;
            return;
        }
        std::size_t tail = cells.size();
        while (tail > 0 && cells[tail - 1] == 0) --tail;
        cells = std::vector<std::uint8_t>(cells.begin() + lead, cells.begin() + tail);
        origin += static_cast<std::int64_t>(lead);
    }

    bool operator==(const CaRow& o) const { return cells == o.cells && origin == o.origin; }
};

namespace detail {

// One application of x_i <- x_{i-s} XOR x_{i+s}.
inline CaRow ca_power_step(const CaRow& row, std::int64_t s) {
    CaRow out;
    if (row.cells.empty()) return out;
    out.origin = row.origin - s;
    out.cells.assign(row.width() + 2 * static_cast<std::size_t>(s), 0);
    for (std::size_t i = 0; i < out.cells.size(); ++i) {
        std::int64_t pos = out.origin + static_cast<std::int64_t>(i);
        out.cells[i] = row.at(pos - s) ^ row.at(pos + s);
    }
    out.trim();
    return out;
}

}  // namespace detail

inline CaRow ca_step(const CaRow& row) { return detail::ca_power_step(row, 1); }

struct CaFastForwardResult {
    CaRow row;
    std::uint64_t cell_operations = 0;  // cells written across all passes
};

inline CaFastForwardResult ca_fast_forward(CaRow row, std::uint64_t t) {
    CaFastForwardResult out;
    row.trim();
    for (int k = 0; k < 64 && t >> k; ++k) {
        if (!((t >> k) & 1)) continue;
        row = detail::ca_power_step(row, std::int64_t(1) << k);
        out.cell_operations += row.width();
    }
    out.row = std::move(row);
    return out;
}

inline CaRow ca_row_from_string(const std::string& s, std::int64_t origin = 0) {
    CaRow r;
    r.origin = origin;
    for (char c : s) {
        if (c == '0') r.cells.push_back(0);
        else if (c == '1') r.cells.push_back(1);
        else throw std::invalid_argument("bad cell character in row: " + s);
    }
    return r;
}

inline std::string ca_row_to_string(const CaRow& r) {
    std::string s;
    for (auto c : r.cells) s += c ? '1' : '0';
    return s;
}

inline CaRow ca_xor(const CaRow& a, const CaRow& b) {
    if (a.cells.empty()) return b;
    if (b.cells.empty()) return a;
    std::int64_t lo = std::min(a.origin, b.origin);
    std::int64_t hi = std::max(a.origin + static_cast<std::int64_t>(a.width()),
                               b.origin + static_cast<std::int64_t>(b.width()));
    CaRow out;
    out.origin = lo;
    out.cells.assign(static_cast<std::size_t>(hi - lo), 0);
    for (std::size_t i = 0; i < out.cells.size(); ++i) {
        std::int64_t pos = lo + static_cast<std::int64_t>(i);
        out.cells[i] = a.at(pos) ^ b.at(pos);
    }
    out.trim();
    return out;
}

}  // namespace cwb
