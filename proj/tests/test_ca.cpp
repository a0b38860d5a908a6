#include <doctest.h>

#include "cwb/ca.hpp"
#include "cwb/rng.hpp"

using namespace cwb;

namespace {

CaRow brute_force(CaRow row, std::uint64_t t) {
    for (std::uint64_t i = 0; i < t; ++i) row = ca_step(row);
    return row;
}

CaRow random_row(Rng& rng, std::size_t width) {
    CaRow r;
    for (std::size_t i = 0; i < width; ++i)
        r.cells.push_back(static_cast<std::uint8_t>(rng.below(2)));
    r.trim();
    return r;
}

}  // namespace

TEST_CASE("one step of a single 1 yields two 1s at distance 2 apart") {
    CaRow r = ca_step(ca_row_from_string("1"));
    CHECK(ca_row_to_string(r) == "101");
    CHECK(r.origin == -1);
}

TEST_CASE("all-zero rows stay all-zero") {
    CaRow z;
    CHECK(ca_step(z).cells.empty());
    CHECK(ca_fast_forward(z, 12345).row.cells.empty());
    CaRow z2 = ca_row_from_string("000");
    CHECK(ca_fast_forward(z2, 7).row.cells.empty());
}

TEST_CASE("single 1 at t = 2^k gives exactly two 1s at offsets +-2^k") {
    for (int k = 0; k <= 12; ++k) {
        std::uint64_t t = std::uint64_t(1) << k;
        CaRow got = ca_fast_forward(ca_row_from_string("1"), t).row;
        REQUIRE(got.cells.size() == 2 * t + 1);
        CHECK(got.origin == -static_cast<std::int64_t>(t));
        CHECK(got.at(-static_cast<std::int64_t>(t)) == 1);
        CHECK(got.at(static_cast<std::int64_t>(t)) == 1);
        int ones = 0;
        for (auto c : got.cells) ones += c;
        CHECK(ones == 2);
        if (k <= 8) CHECK(got == brute_force(ca_row_from_string("1"), t));
    }
}

TEST_CASE("fast-forward equals brute force for random rows and times") {
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t width = 1 + rng.below(512);
        CaRow row = random_row(rng, width);
        std::uint64_t t = rng.below(1 + (std::uint64_t(1) << 12));
        // brute force is O(t * width): keep the heavy cases rarer
        if (width > 64) t = rng.below(256);
        CaRow fast = ca_fast_forward(row, t).row;
        CaRow slow = brute_force(row, t);
        CHECK(fast == slow);
    }
}

TEST_CASE("fast-forward is exact at t = 2^12 for a wide row") {
    Rng rng(6);
    CaRow row = random_row(rng, 512);
    std::uint64_t t = std::uint64_t(1) << 12;
    CHECK(ca_fast_forward(row, t).row == brute_force(row, t));
}

TEST_CASE("the rule is linear over GF(2)") {
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        CaRow a = random_row(rng, 1 + rng.below(64));
        CaRow b = random_row(rng, 1 + rng.below(64));
        CHECK(ca_step(ca_xor(a, b)) == ca_xor(ca_step(a), ca_step(b)));
    }
}

TEST_CASE("fast-forward work scales with row width, not with t") {
    CaFastForwardResult r = ca_fast_forward(ca_row_from_string("1"), (1u << 12));
    // one pass for the single set bit of t
    CHECK(r.cell_operations <= 2 * (1u << 12) + 1);
}
