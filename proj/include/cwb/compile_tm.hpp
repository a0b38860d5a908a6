#pragma once

// Compiles a binary-alphabet Turing machine into a 3-counter machine.
// Registers 0 and 1 hold the left and right tape words decoded from
// binary to unary (nearest-to-head bit least significant; the scanned
// bit is register 1's parity); register 2 is the only scratch. Each TM
// step becomes one macro: halve register 1 while branching on parity,
// then rebuild both tape registers with doubling/transfer loops.
//
// Every TM state has a marked entry instruction, so a "macro step" (run
// until the pc is back at an entry) can be compared against tm_step
// directly.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "counter.hpp"
#include "turing.hpp"

namespace cwb {

inline mpz_class word_to_unary(const BitWord& w) {
    mpz_class v = 0;
    for (std::size_t i = w.size(); i-- > 0;) v = 2 * v + w[i];
    return v;
}

inline BitWord unary_to_word(mpz_class v) {
    BitWord w;
    while (v > 0) {
        w.push_back(static_cast<std::uint8_t>(mpz_class(v % 2).get_ui()));
        v /= 2;
    }
    return w;
}

inline RegisterState encode_config(const TapeConfiguration& c) {
    RegisterState s(3);
    s.registers[0] = word_to_unary(c.left);
    s.registers[1] = word_to_unary(c.right);
    s.registers[2] = 0;
    return s;
}

struct CompiledTm {
    CounterMachine cm;
    std::vector<int> state_entry;  // entry pc per TM state (halting states share halt_pc)
    int halt_pc = 0;

    bool is_entry(int pc) const {
        if (pc == halt_pc) return true;
        for (int e : state_entry)
            if (e == pc) return true;
        return false;
    }

    int state_at(int pc) const {
        for (std::size_t q = 0; q < state_entry.size(); ++q)
            if (state_entry[q] == pc) return static_cast<int>(q);
        throw std::invalid_argument("pc is not a state entry");
    }
};

namespace detail {

class CmAssembler {
public:
    int here() const { return static_cast<int>(prog_.size()); }

    void label(const std::string& name) { labels_[name] = here(); }

    void inc(int r) { prog_.push_back({CmOp::Inc, r, 0}); }
    void dec(int r) { prog_.push_back({CmOp::Dec, r, 0}); }
    void jz(int r, const std::string& l) {
        fixups_.push_back({here(), l});
        prog_.push_back({CmOp::JumpIfZero, r, 0});
    }
    void jmp(const std::string& l) {
        fixups_.push_back({here(), l});
        prog_.push_back({CmOp::Jump, 0, 0});
    }
    void halt() { prog_.push_back({CmOp::Halt, 0, 0}); }

    // dst += src; src = 0. Scratch-free.
    void transfer(int src, int dst, const std::string& tag) {
        label(tag + "_loop");
        jz(src, tag + "_end");
        dec(src);
        inc(dst);
        jmp(tag + "_loop");
        label(tag + "_end");
    }

    // r *= 2 using scratch (which must be 0 and is 0 afterwards).
    void dbl(int r, int scratch, const std::string& tag) {
        label(tag + "_loop");
        jz(r, tag + "_back");
        dec(r);
        inc(scratch);
        inc(scratch);
        jmp(tag + "_loop");
        label(tag + "_back");
        transfer(scratch, r, tag + "_xfer");
    }

    CounterMachine finish(int register_count) {
        CounterMachine cm;
        cm.program = prog_;
        cm.register_count = register_count;
        for (const auto& [at, name] : fixups_) cm.program[at].target = labels_.at(name);
        cm.validate();
        return cm;
    }

    int resolved(const std::string& name) const { return labels_.at(name); }

private:
    std::vector<CmInstruction> prog_;
    std::map<std::string, int> labels_;
    std::vector<std::pair<int, std::string>> fixups_;
};

}  // namespace detail

inline CompiledTm compile_tm_to_cm(const TuringMachine& tm) {
    detail::CmAssembler as;
    auto entry_label = [&](int q) { return "state" + std::to_string(q); };

    // Block order: start state first so a fresh run (pc = 0) begins there.
    std::vector<int> order;
    if (tm.is_halting(tm.start())) as.jmp("haltpc");
    else order.push_back(tm.start());
    for (int q = 0; q < tm.num_states(); ++q)
        if (q != tm.start() && !tm.is_halting(q)) order.push_back(q);

    for (int q : order) {
        const std::string lq = entry_label(q);
        // Entry marker: a lone jump, so the halve loop below never
        // re-visits the entry pc mid-macro.
        as.label(lq);
        as.jmp(lq + "_halve");

        // Halve register 1 into register 2, branching on parity.
        as.label(lq + "_halve");
        as.jz(1, lq + "_b0");
        as.dec(1);
        as.jz(1, lq + "_b1");
        as.dec(1);
        as.inc(2);
        as.jmp(lq + "_halve");

        for (int bit = 0; bit < 2; ++bit) {
            // At this point: r1 = 0, r2 = floor(old r1 / 2), parity known.
            as.label(lq + "_b" + std::to_string(bit));
            const TmTransition& t = tm.transition(q, bit);
            const std::string tag = lq + "_b" + std::to_string(bit);
            if (t.move == Move::Right) {
                // left' = 2*left + written bit; right' = halved right.
                as.transfer(2, 1, tag + "_restore");
                as.dbl(0, 2, tag + "_dblL");
                if (t.write) as.inc(0);
            } else {
                // right' = 4*halved + 2*written + (left mod 2); left' = left/2.
                as.transfer(2, 1, tag + "_restore");
                as.dbl(1, 2, tag + "_dblR1");
                if (t.write) as.inc(1);
                as.dbl(1, 2, tag + "_dblR2");
                as.label(tag + "_halveL");
                as.jz(0, tag + "_leven");
                as.dec(0);
                as.jz(0, tag + "_lodd");
                as.dec(0);
                as.inc(2);
                as.jmp(tag + "_halveL");
                as.label(tag + "_lodd");
                as.inc(1);
                as.label(tag + "_leven");
                as.transfer(2, 0, tag + "_restL");
            }
            as.jmp(tm.is_halting(t.next_state) ? "haltpc" : entry_label(t.next_state));
        }
    }
    as.label("haltpc");
    as.halt();

    CompiledTm out;
    out.cm = as.finish(3);
    out.halt_pc = as.resolved("haltpc");
    out.state_entry.assign(tm.num_states(), out.halt_pc);
    for (int q = 0; q < tm.num_states(); ++q)
        if (!tm.is_halting(q)) out.state_entry[q] = as.resolved(entry_label(q));
    return out;
}

// Runs the compiled machine from one state entry until the pc reaches
// another entry (or the halt instruction). One macro step == one TM step.
inline RegisterState cm_macro_step(const CompiledTm& ct, RegisterState s,
                                   std::uint64_t step_fuel = 1u << 30) {
    if (!ct.is_entry(s.pc)) throw std::invalid_argument("macro step must start at an entry");
    if (s.pc == ct.halt_pc) return s;
    for (std::uint64_t i = 0; i < step_fuel; ++i) {
        cm_step(ct.cm, s);
        if (ct.is_entry(s.pc)) return s;
    }
    throw std::runtime_error("macro step exceeded its internal fuel");
}

struct SlowdownRow {
    BitWord input;
    std::uint64_t tm_steps = 0;
    mpz_class cm_unit_cost;
    mpz_class cm_distance_cost;
};

// Runs each input on the TM and on the compiled machine and tabulates
// the cost blowup from the continual binary/unary decoding.
inline std::vector<SlowdownRow> slowdown_profile(const TuringMachine& tm,
                                                 std::vector<BitWord> inputs,
                                                 std::uint64_t tm_fuel,
                                                 std::uint64_t cm_fuel) {
    std::sort(inputs.begin(), inputs.end());
    CompiledTm ct = compile_tm_to_cm(tm);
    std::vector<SlowdownRow> rows;
    for (const auto& input : inputs) {
        TmRunResult tr = tm_run(tm, input, tm_fuel);
        if (tr.outcome != RunOutcome::Halted)
            throw std::runtime_error("slowdown_profile input did not halt within fuel");
        RegisterState init = encode_config(tm_initial_config(tm, input));
        CmRunResult cr = cm_run(ct.cm, std::move(init), cm_fuel);
        if (!cr.halted) throw std::runtime_error("compiled machine did not halt within fuel");
        rows.push_back({input, tr.config.steps, cr.state.unit_cost, cr.state.distance_cost});
    }
    return rows;
}

}  // namespace cwb
