#pragma once

// Desk-scale halting-probability machinery. Programs are bit strings
// decoded instruction-by-instruction into the 2-register fragment of the
// counter-machine instruction set; decoding ends exactly at the Halt
// opcode, which makes the program set prefix-free by construction. The
// Omega lower bound sums 2^(-length) over programs that halt within the
// given fuel. This Omega is machine-relative, as every Omega is.
//
// Encoding (fixed width fields, first bit = most significant):
//   opcode 3 bits: 000 halt | 001 inc | 010 dec | 011 jz | 100 jmp
//   inc/dec: 1 register bit
//   jz:      1 register bit + 4-bit target
//   jmp:     4-bit target
// Targets must land inside the decoded program or the string is invalid.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "counter.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace cwb {

using Bits = std::vector<std::uint8_t>;

struct PrefixFreeProgram {
    Bits bits;
    CounterMachine machine;  // register_count = 2
};

// Returns nullopt for strings that end mid-instruction, use an undefined
// opcode, carry bits past the Halt, or jump outside the program.
inline std::optional<PrefixFreeProgram> decode_program(const Bits& bits) {
    std::size_t at = 0;
    auto take = [&](int width) -> std::optional<std::uint32_t> {
        if (at + width > bits.size()) return std::nullopt;
        std::uint32_t v = 0;
        for (int i = 0; i < width; ++i) v = (v << 1) | bits[at++];
        return v;
    };
    std::vector<CmInstruction> program;
    bool halted = false;
    while (!halted) {
        auto op = take(3);
        if (!op) return std::nullopt;
        CmInstruction ins;
        switch (*op) {
            case 0:
                ins.op = CmOp::Halt;
                halted = true;
                break;
            case 1:
            case 2: {
                auto r = take(1);
                if (!r) return std::nullopt;
                ins.op = *op == 1 ? CmOp::Inc : CmOp::Dec;
                ins.reg = static_cast<int>(*r);
                break;
            }
            case 3: {
                auto r = take(1);
                auto tgt = take(4);
                if (!r || !tgt) return std::nullopt;
                ins.op = CmOp::JumpIfZero;
                ins.reg = static_cast<int>(*r);
                ins.target = static_cast<int>(*tgt);
                break;
            }
            case 4: {
                auto tgt = take(4);
                if (!tgt) return std::nullopt;
                ins.op = CmOp::Jump;
                ins.target = static_cast<int>(*tgt);
                break;
            }
            default:
                return std::nullopt;
        }
        program.push_back(ins);
    }
    if (at != bits.size()) return std::nullopt;  // trailing bits: not a minimal program
    const int n = static_cast<int>(program.size());
    for (const auto& ins : program)
        if ((ins.op == CmOp::Jump || ins.op == CmOp::JumpIfZero) && ins.target >= n)
            return std::nullopt;
    PrefixFreeProgram p;
    p.bits = bits;
    p.machine.program = std::move(program);
    p.machine.register_count = 2;
    return p;
}

// Enumerates every valid program of bit length <= max_len by extending
// instruction encodings; the visitor sees each program once, in
// lexicographic order of its bit string.
inline void enumerate_programs(std::size_t max_len,
                               const std::function<void(const PrefixFreeProgram&)>& visit) {
    Bits bits;
    std::vector<CmInstruction> program;

    auto append_bits = [&](std::uint32_t v, int width) {
        for (int i = width - 1; i >= 0; --i) bits.push_back((v >> i) & 1);
    };

    std::function<void()> rec = [&]() {
        // Option 1: terminate with Halt.
        if (bits.size() + 3 <= max_len) {
            const int n = static_cast<int>(program.size()) + 1;
            bool targets_ok = true;
            for (const auto& ins : program)
                if ((ins.op == CmOp::Jump || ins.op == CmOp::JumpIfZero) && ins.target >= n)
                    targets_ok = false;
            if (targets_ok) {
                Bits full = bits;
                full.push_back(0);
                full.push_back(0);
                full.push_back(0);
                PrefixFreeProgram p;
                p.bits = std::move(full);
                p.machine.program = program;
                p.machine.program.push_back({CmOp::Halt, 0, 0});
                p.machine.register_count = 2;
                visit(p);
            }
        }
        // Option 2: extend with a non-halt instruction.
        struct Choice { CmOp op; std::uint32_t opcode; int extra; };
        for (const Choice c : {Choice{CmOp::Inc, 1, 1}, Choice{CmOp::Dec, 2, 1},
                               Choice{CmOp::JumpIfZero, 3, 5}, Choice{CmOp::Jump, 4, 4}}) {
            if (bits.size() + 3 + c.extra + 3 > max_len) continue;  // must still fit a Halt
            const int regs = (c.op == CmOp::Jump) ? 1 : 2;
            const int targets = (c.op == CmOp::Inc || c.op == CmOp::Dec) ? 1 : 16;
            for (int r = 0; r < regs; ++r) {
                for (int t = 0; t < targets; ++t) {
                    std::size_t mark = bits.size();
                    append_bits(c.opcode, 3);
                    if (c.op != CmOp::Jump) append_bits(static_cast<std::uint32_t>(r), 1);
                    if (c.op == CmOp::Jump || c.op == CmOp::JumpIfZero)
                        append_bits(static_cast<std::uint32_t>(t), 4);
                    program.push_back({c.op, r, t});
                    rec();
                    program.pop_back();
                    bits.resize(mark);
                }
            }
        }
    };
    rec();
}

struct OmegaBound {
    mpq_class value;
    std::uint64_t fuel = 0;
    std::size_t max_len = 0;
    std::uint64_t contributing = 0;  // programs that halted within fuel
    std::uint64_t valid_programs = 0;
};

inline OmegaBound omega_lower_bound(std::uint64_t fuel, std::size_t max_len) {
    if (fuel < 1 || max_len < 1) throw std::invalid_argument("fuel and max_len must be >= 1");
    OmegaBound out;
    out.fuel = fuel;
    out.max_len = max_len;
    out.value = 0;
    enumerate_programs(max_len, [&](const PrefixFreeProgram& p) {
        ++out.valid_programs;
        CmRunResult r = cm_run(p.machine, RegisterState(2), fuel);
        if (r.halted) {
            ++out.contributing;
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 2, p.bits.size());
            out.value += mpq_class(mpz_class(1), den);
        }
    });
    out.value.canonicalize();
    return out;
}

// Kraft sum over all valid programs of length <= max_len.
inline mpq_class kraft_sum(std::size_t max_len) {
    mpq_class sum = 0;
    enumerate_programs(max_len, [&](const PrefixFreeProgram& p) {
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 2, p.bits.size());
        sum += mpq_class(mpz_class(1), den);
    });
    sum.canonicalize();
    return sum;
}

// ---- probability-bit estimation -----------------------------------------

struct TrialBudgetOverflow : std::runtime_error {
    TrialBudgetOverflow() : std::runtime_error("trial count exceeds the configured cap") {}
};

struct BitEstimate {
    std::uint8_t bit = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
};

// Runs ceil(2^(c1*n + c2)) Bernoulli trials and reads off the n-th
// binary digit of the empirical frequency. The defaults match the
// perform-2^(2.1n+10)-trials rule; tests scale them down and recompute
// the binomial-tail error bound for the scaled counts.
inline BitEstimate estimate_probability_bit(const std::function<bool(Rng&)>& sampler,
                                            unsigned n, Rng& rng, double c1 = 2.1,
                                            double c2 = 10.0,
                                            std::uint64_t trial_cap = std::uint64_t(1) << 32) {
    if (n < 1) throw std::invalid_argument("bit index must be >= 1");
    double exponent = c1 * n + c2;
    if (exponent > 62) throw TrialBudgetOverflow();
    std::uint64_t trials = static_cast<std::uint64_t>(std::ceil(std::exp2(exponent)));
    if (trials > trial_cap) throw TrialBudgetOverflow();
    std::uint64_t successes = 0;
    for (std::uint64_t i = 0; i < trials; ++i)
        if (sampler(rng)) ++successes;
    // n-th digit after the point of successes/trials
    mpz_class scaled = mpz_class(static_cast<unsigned long>(successes));
    mpz_class shifted = scaled << n;
    mpz_class digit_int = shifted / mpz_class(static_cast<unsigned long>(trials));
    BitEstimate out;
    out.bit = static_cast<std::uint8_t>(mpz_class(digit_int % 2).get_ui());
    out.trials = trials;
    out.successes = successes;
    return out;
}

}  // namespace cwb
