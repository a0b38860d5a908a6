#include <doctest.h>

#include "corpus.hpp"
#include "cwb/gshift.hpp"
#include "cwb/rng.hpp"

using namespace cwb;

TEST_CASE("encode then decode is the identity on 500 random configurations") {
    Rng rng(3);
    int checked = 0;
    auto machines = corpus::full_corpus();
    while (checked < 500) {
        const auto& tm = machines[rng.below(machines.size())];
        TapeConfiguration c = corpus::random_config(tm, rng);
        ExactAddress a = encode_address(c, tm);
        TapeConfiguration back = decode_address(a, tm);
        CHECK(back == c);
        ++checked;
    }
}

TEST_CASE("encoded blank start begins with the start-state code") {
    TuringMachine tm = corpus::bb2();
    const int w = tm_code_width(tm);
    TapeConfiguration c = tm_initial_config(tm, {});
    ExactAddress a = encode_address(c, tm);
    for (int j = 0; j < w; ++j) CHECK(a.bit(j) == ((tm.start() >> j) & 1));
    for (int k = w; k < w + 10; ++k) CHECK(a.bit(k) == 0);
}

TEST_CASE("decoding an invalid state code is a DecodeError") {
    TuringMachine tm = corpus::bb2();  // 3 states, code width 2, code 3 spare
    ExactAddress a;
    a.right = Stream({1, 1, 0}, {0});  // code value 3 = reserved invalid
    CHECK_THROWS_AS(decode_address(a, tm), DecodeError);

    // non-zero tail is also undecodable
    ExactAddress b = encode_address(tm_initial_config(tm, {}), tm);
    b.right = Stream(b.right.pre, {1});
    CHECK_THROWS_AS(decode_address(b, tm), DecodeError);
}

TEST_CASE("identity table with shift 1 is the plain shift map") {
    GeneralizedShift g;
    g.lo = 0;
    g.hi = 0;
    g.table.resize(2);
    for (std::size_t b = 0; b < 2; ++b)
        g.table[b] = {{static_cast<std::uint8_t>(b)}, 1};
    ExactAddress a;
    a.right = Stream({1, 0, 1, 1}, {0});
    a.left = Stream({1}, {0});
    CHECK(addresses_equal(gshift_step(g, a), shift(a)));
}

TEST_CASE("gshift step is conjugate to tm_step on 1000 random configurations") {
    Rng rng(17);
    int checked = 0;
    auto machines = corpus::full_corpus();
    while (checked < 1000) {
        const auto& tm = machines[rng.below(machines.size())];
        GeneralizedShift g = gshift_from_tm(tm);
        TapeConfiguration c = corpus::random_config(tm, rng);
        if (tm.is_halting(c.state)) continue;
        ExactAddress stepped = gshift_step(g, encode_address(c, tm));
        TapeConfiguration want = tm_step(tm, c);
        TapeConfiguration got = decode_address(stepped, tm);
        CHECK(got == want);
        ++checked;
    }
}

TEST_CASE("halting configurations are exact fixed points") {
    Rng rng(23);
    for (const auto& tm : corpus::full_corpus()) {
        GeneralizedShift g = gshift_from_tm(tm);
        for (int h : tm.halting_states()) {
            TapeConfiguration c = corpus::random_config(tm, rng);
            c.state = h;
            ExactAddress a = encode_address(c, tm);
            ExactAddress once = gshift_step(g, a);
            CHECK(addresses_equal(once, a));
            CHECK(addresses_equal(gshift_step(g, once), a));
        }
    }
}

TEST_CASE("write-1 machine: one gshift application then fixed") {
    TuringMachine tm = corpus::write1();
    GeneralizedShift g = gshift_from_tm(tm);
    ExactAddress a = encode_address(tm_initial_config(tm, {}), tm);
    ExactAddress s1 = gshift_step(g, a);
    TapeConfiguration c1 = decode_address(s1, tm);
    CHECK(tm.is_halting(c1.state));
    CHECK(addresses_equal(gshift_step(g, s1), s1));
}

TEST_CASE("busy beaver reaches its fixed point in exactly 6 gshift steps") {
    TuringMachine tm = corpus::bb2();
    GeneralizedShift g = gshift_from_tm(tm);
    ExactAddress a = encode_address(tm_initial_config(tm, {}), tm);
    int steps = 0;
    while (!addresses_equal(gshift_step(g, a), a)) {
        a = gshift_step(g, a);
        ++steps;
        REQUIRE(steps <= 100);
    }
    CHECK(steps == 6);
    TapeConfiguration final_cfg = decode_address(a, tm);
    CHECK(tm.is_halting(final_cfg.state));
}

TEST_CASE("non-halting writer never reaches a fixed point in 1000 steps") {
    TuringMachine tm = corpus::drifter();
    GeneralizedShift g = gshift_from_tm(tm);
    ExactAddress a = encode_address(tm_initial_config(tm, {}), tm);
    for (int i = 0; i < 1000; ++i) {
        ExactAddress next = gshift_step(g, a);
        CHECK_FALSE(addresses_equal(next, a));
        a = std::move(next);
    }
}

TEST_CASE("window form must cover the domain of effect") {
    TuringMachine tm = corpus::write1();
    GeneralizedShift g = gshift_from_tm(tm);
    WindowAddress too_small;
    too_small.lo = 0;  // misses index -1
    too_small.bits = {0, 0, 0, 0};
    CHECK_THROWS_AS(gshift_step(g, too_small), WindowExhausted);

    // a covering window agrees with the exact step
    TapeConfiguration c = tm_initial_config(tm, {});
    ExactAddress exact = encode_address(c, tm);
    WindowAddress win;
    win.lo = -4;
    for (std::int64_t k = -4; k < 8; ++k) win.bits.push_back(exact.bit(k));
    WindowAddress stepped = gshift_step(g, win);
    ExactAddress want = gshift_step(g, exact);
    for (std::int64_t k = stepped.lo; k < stepped.hi(); ++k)
        CHECK(stepped.bit(k) == want.bit(k));
}
