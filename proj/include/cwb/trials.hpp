#pragma once

// Seed-deterministic Monte-Carlo trial runner. Trials are cut into
// fixed-size blocks; block k always uses substream k of the master seed
// and blocks may be executed by any number of workers. Counts add up, so
// the total is identical for every worker count.

#include <cstdint>
#include <functional>
#include <future>
#include <vector>

#include "rng.hpp"

namespace cwb {

inline std::uint64_t run_trials(std::uint64_t seed, std::uint64_t trials,
                                const std::function<bool(Rng&)>& trial, unsigned workers = 1) {
    const std::uint64_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
    auto run_block = [&](std::uint64_t b) {
        Rng rng = Rng::substream(seed, b);
        std::uint64_t in_block = std::min(kTrialBlock, trials - b * kTrialBlock);
        std::uint64_t hits = 0;
        for (std::uint64_t i = 0; i < in_block; ++i)
            if (trial(rng)) ++hits;
        return hits;
    };
    if (workers <= 1) {
        std::uint64_t total = 0;
        for (std::uint64_t b = 0; b < blocks; ++b) total += run_block(b);
        return total;
    }
    std::uint64_t total = 0;
    for (std::uint64_t base = 0; base < blocks; base += workers) {
        std::vector<std::future<std::uint64_t>> fs;
        for (std::uint64_t b = base; b < std::min(blocks, base + workers); ++b)
            fs.push_back(std::async(std::launch::async, run_block, b));
        for (auto& f : fs) total += f.get();
    }
    return total;
}

}  // namespace cwb
