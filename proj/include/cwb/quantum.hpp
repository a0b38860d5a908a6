#pragma once

// Small-n state-vector simulator over reversible and interference gates,
// plus the parallel-computation experiments built on it: the two-point
// xor extraction, the N-fold success-probability model, the four-point
// xor cascade, the tautology check, and the fault-tolerance comparison.
// Amplitudes are doubles; every analytic probability is an exact rational.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"
#include "rng.hpp"
#include "trials.hpp"

namespace cwb {

using Amplitude = std::complex<double>;

struct WireMismatch : std::invalid_argument {
    explicit WireMismatch(const std::string& what) : std::invalid_argument(what) {}
};

class StateVector {
public:
    explicit StateVector(int num_elements)
        : n_(num_elements), amps_(std::size_t(1) << num_elements, Amplitude(0, 0)) {
        if (num_elements < 1 || num_elements > 24)
            throw std::invalid_argument("element count out of supported range");
        amps_[0] = 1.0;
    }

    static StateVector basis(int num_elements, std::uint64_t index) {
        StateVector s(num_elements);
        s.amps_[0] = 0.0;
        s.amps_.at(index) = 1.0;
        return s;
    }

    int num_elements() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    Amplitude amplitude(std::uint64_t index) const { return amps_.at(index); }
    Amplitude& amplitude_ref(std::uint64_t index) { return amps_.at(index); }

    double norm_sq() const {
        double s = 0;
        for (const auto& a : amps_) s += std::norm(a);
        return s;
    }

private:
    int n_;
    std::vector<Amplitude> amps_;
};

enum class GateKind { Not, ControlledNot, Toffoli, Fredkin, Hadamard, PhaseFlip };

struct Gate {
    GateKind kind;
    std::vector<int> wires;

    static Gate X(int w) { return {GateKind::Not, {w}}; }
    static Gate CX(int c, int t) { return {GateKind::ControlledNot, {c, t}}; }
    static Gate CCX(int c1, int c2, int t) { return {GateKind::Toffoli, {c1, c2, t}}; }
    static Gate Fredkin(int c, int a, int b) { return {GateKind::Fredkin, {c, a, b}}; }
    static Gate H(int w) { return {GateKind::Hadamard, {w}}; }
    static Gate Z(int w) { return {GateKind::PhaseFlip, {w}}; }
};

inline int gate_arity(GateKind k) {
    switch (k) {
        case GateKind::Not:
        case GateKind::Hadamard:
        case GateKind::PhaseFlip: return 1;
        case GateKind::ControlledNot: return 2;
        case GateKind::Toffoli:
        case GateKind::Fredkin: return 3;
    }
    return 0;
}

inline StateVector apply_gate(StateVector s, const Gate& g) {
    const int n = s.num_elements();
    if (static_cast<int>(g.wires.size()) != gate_arity(g.kind))
        throw WireMismatch("wrong wire count for gate");
    for (std::size_t i = 0; i < g.wires.size(); ++i) {
        if (g.wires[i] < 0 || g.wires[i] >= n) throw WireMismatch("wire index out of range");
        for (std::size_t j = i + 1; j < g.wires.size(); ++j)
            if (g.wires[i] == g.wires[j]) throw WireMismatch("duplicate wire index");
    }
    const std::size_t dim = s.dim();
    auto bit = [](std::uint64_t idx, int w) { return (idx >> w) & 1u; };

    switch (g.kind) {
        case GateKind::Not: {
            const std::uint64_t mask = std::uint64_t(1) << g.wires[0];
            StateVector out = s;
            for (std::uint64_t i = 0; i < dim; ++i) out.amplitude_ref(i ^ mask) = s.amplitude(i);
            return out;
        }
        case GateKind::ControlledNot: {
            const std::uint64_t tmask = std::uint64_t(1) << g.wires[1];
            StateVector out = s;
            for (std::uint64_t i = 0; i < dim; ++i)
                out.amplitude_ref(bit(i, g.wires[0]) ? (i ^ tmask) : i) = s.amplitude(i);
            return out;
        }
        case GateKind::Toffoli: {
            const std::uint64_t tmask = std::uint64_t(1) << g.wires[2];
            StateVector out = s;
            for (std::uint64_t i = 0; i < dim; ++i) {
                bool on = bit(i, g.wires[0]) && bit(i, g.wires[1]);
                out.amplitude_ref(on ? (i ^ tmask) : i) = s.amplitude(i);
            }
            return out;
        }
        case GateKind::Fredkin: {
            StateVector out = s;
            for (std::uint64_t i = 0; i < dim; ++i) {
                std::uint64_t j = i;
                if (bit(i, g.wires[0]) && bit(i, g.wires[1]) != bit(i, g.wires[2]))
                    j = i ^ (std::uint64_t(1) << g.wires[1]) ^ (std::uint64_t(1) << g.wires[2]);
                out.amplitude_ref(j) = s.amplitude(i);
            }
            return out;
        }
        case GateKind::Hadamard: {
            const std::uint64_t mask = std::uint64_t(1) << g.wires[0];
            const double r = 1.0 / std::sqrt(2.0);
            StateVector out = s;
            for (std::uint64_t i = 0; i < dim; ++i) {
                if (i & mask) continue;
                Amplitude a0 = s.amplitude(i), a1 = s.amplitude(i | mask);
                out.amplitude_ref(i) = r * (a0 + a1);
                out.amplitude_ref(i | mask) = r * (a0 - a1);
            }
            return out;
        }
        case GateKind::PhaseFlip: {
            const std::uint64_t mask = std::uint64_t(1) << g.wires[0];
            StateVector out = s;
            for (std::uint64_t i = 0; i < dim; ++i)
                if (i & mask) out.amplitude_ref(i) = -s.amplitude(i);
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

struct Circuit {
    int num_elements = 0;
    std::vector<Gate> gates;

    void validate() const {
        for (const auto& g : gates)
            for (int w : g.wires)
                if (w < 0 || w >= num_elements) throw WireMismatch("circuit wire out of range");
    }
};

inline StateVector apply_circuit(StateVector s, const Circuit& c) {
    c.validate();
    if (s.num_elements() != c.num_elements)
        throw WireMismatch("state size does not match circuit");
    for (const auto& g : c.gates) s = apply_gate(std::move(s), g);
    return s;
}

// ---- Boolean oracles ----------------------------------------------------

struct BooleanOracle {
    int arity_bits = 0;                // domain size 2^arity_bits
    std::vector<std::uint8_t> table;   // table[x] = f(x)

    std::uint8_t operator()(std::uint64_t x) const { return table.at(x); }

    static BooleanOracle from_bits(int arity_bits, std::uint64_t packed) {
        BooleanOracle f;
        f.arity_bits = arity_bits;
        f.table.resize(std::size_t(1) << arity_bits);
        for (std::size_t x = 0; x < f.table.size(); ++x) f.table[x] = (packed >> x) & 1;
        return f;
    }
};

// Reversible circuit for |x, b> -> |x, b XOR f(x)> on wires 0..k-1 (x,
// wire j = bit j) and wire k (b). Domains wider than two bits get
// k-2 ancilla wires above b; ancillas start and end at 0.
inline Circuit oracle_circuit(const BooleanOracle& f) {
    const int k = f.arity_bits;
    if (static_cast<std::size_t>(1) << k != f.table.size())
        throw std::invalid_argument("oracle table size does not match arity");
    const int out = k;
    const int ancillas = k > 2 ? k - 2 : 0;
    Circuit c;
    c.num_elements = k + 1 + ancillas;

    auto flip_on_pattern = [&](std::uint64_t x) {
        // Surround with X so the pattern looks like all-ones, then chain
        // Toffolis through the ancillas.
        std::vector<Gate> pre;
        for (int j = 0; j < k; ++j)
            if (!((x >> j) & 1)) pre.push_back(Gate::X(j));
        for (const auto& g : pre) c.gates.push_back(g);
        if (k == 0) {
            c.gates.push_back(Gate::X(out));
        } else if (k == 1) {
            c.gates.push_back(Gate::CX(0, out));
        } else if (k == 2) {
            c.gates.push_back(Gate::CCX(0, 1, out));
        } else {
            std::vector<Gate> build;
            int anc = out + 1;
            build.push_back(Gate::CCX(0, 1, anc));
            for (int j = 2; j < k - 1; ++j) {
                build.push_back(Gate::CCX(anc, j, anc + 1));
                ++anc;
            }
            for (const auto& g : build) c.gates.push_back(g);
            c.gates.push_back(Gate::CCX(anc, k - 1, out));
            for (auto it = build.rbegin(); it != build.rend(); ++it) c.gates.push_back(*it);
        }
        for (const auto& g : pre) c.gates.push_back(g);
    };

    for (std::uint64_t x = 0; x < f.table.size(); ++x)
        if (f.table[x]) flip_on_pattern(x);
    return c;
}

// ---- measurement --------------------------------------------------------

struct ZeroNorm : std::runtime_error {
    ZeroNorm() : std::runtime_error("measurement hit a zero-probability branch") {}
};

struct MeasureResult {
    std::uint64_t outcome = 0;  // bit i of outcome = reading of elements[i]
    StateVector state;
};

inline MeasureResult measure(const StateVector& s, const std::vector<int>& elements, Rng& rng) {
    for (int e : elements)
        if (e < 0 || e >= s.num_elements()) throw WireMismatch("measured element out of range");
    const std::size_t outcomes = std::size_t(1) << elements.size();
    std::vector<double> probs(outcomes, 0.0);
    auto outcome_of = [&](std::uint64_t idx) {
        std::uint64_t o = 0;
        for (std::size_t i = 0; i < elements.size(); ++i)
            o |= ((idx >> elements[i]) & 1u) << i;
        return o;
    };
    for (std::uint64_t i = 0; i < s.dim(); ++i) probs[outcome_of(i)] += std::norm(s.amplitude(i));

    double u = rng.next_unit();
    std::uint64_t picked = outcomes - 1;
    double acc = 0;
    for (std::uint64_t o = 0; o < outcomes; ++o) {
        acc += probs[o];
        if (u < acc) {
            picked = o;
            break;
        }
    }
    if (probs[picked] <= 0.0) throw ZeroNorm();

    MeasureResult r{picked, s};
    const double scale = 1.0 / std::sqrt(probs[picked]);
    for (std::uint64_t i = 0; i < s.dim(); ++i)
        r.state.amplitude_ref(i) =
            outcome_of(i) == picked ? s.amplitude(i) * scale : Amplitude(0, 0);
    return r;
}

// ---- the two-point xor experiment ---------------------------------------

struct DeutschOutcome {
    bool fail = true;
    std::uint8_t answer = 0;       // valid only when !fail
    std::uint64_t raw_basis = 0;   // measured basis index (element 0 = index wire)
};

// Prepare (|0>+|1>)/sqrt2 (x) |0>, apply the oracle, Hadamard both wires,
// measure. Output wire 1 reading 1 means the run passed and the index
// wire carries f(0) XOR f(1); reading 0 means Fail. The wrong-answer
// amplitude is exactly zero by interference.
inline StateVector deutsch_xor2_state(const BooleanOracle& f) {
    if (f.arity_bits != 1) throw std::invalid_argument("xor2 needs a 1-bit-domain oracle");
    StateVector s(2);
    s = apply_gate(std::move(s), Gate::H(0));
    s = apply_circuit(std::move(s), oracle_circuit(f));
    s = apply_gate(std::move(s), Gate::H(0));
    s = apply_gate(std::move(s), Gate::H(1));
    return s;
}

inline DeutschOutcome deutsch_xor2(const BooleanOracle& f, Rng& rng) {
    StateVector s = deutsch_xor2_state(f);
    MeasureResult m = measure(s, {0, 1}, rng);
    DeutschOutcome out;
    out.raw_basis = m.outcome;
    out.fail = ((m.outcome >> 1) & 1u) == 0;
    out.answer = static_cast<std::uint8_t>(m.outcome & 1u);
    return out;
}

// ---- N-fold parallelism -------------------------------------------------

inline mpq_class parallel_success_probability(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("N must be >= 1");
    mpz_class nn(static_cast<unsigned long>(n));
    mpq_class q(mpz_class(1), nn * nn - 2 * nn + 2);
    q.canonicalize();
    return q;
}

enum class ParallelMode { Semantic, Circuit };

struct UnsupportedCircuit : std::invalid_argument {
    UnsupportedCircuit() : std::invalid_argument("circuit mode exists only for N=2") {}
};

struct ParallelOutcome {
    bool fail = true;
    std::uint64_t answer = 0;
};

// One parallel attempt: all N branch values are combined into one answer
// that surfaces with probability 1/(N^2-2N+2); a produced answer is
// always correct.
inline ParallelOutcome parallel_run(const std::vector<std::uint64_t>& branch_values,
                                    const std::function<std::uint64_t(const std::vector<std::uint64_t>&)>& combine,
                                    Rng& rng, ParallelMode mode) {
    const std::uint64_t n = branch_values.size();
    if (n < 1) throw std::invalid_argument("need at least one branch");
    if (mode == ParallelMode::Circuit) {
        if (n != 2) throw UnsupportedCircuit();
        BooleanOracle f;
        f.arity_bits = 1;
        f.table = {static_cast<std::uint8_t>(branch_values[0] & 1),
                   static_cast<std::uint8_t>(branch_values[1] & 1)};
        DeutschOutcome d = deutsch_xor2(f, rng);
        return {d.fail, d.answer};
    }
    double q = parallel_success_probability(n).get_d();
    if (rng.bernoulli(q)) return {false, combine(branch_values)};
    return {true, 0};
}

// ---- the four-point xor cascade -----------------------------------------

// Three two-branch interference stages: xor of f(0),f(1); xor of
// f(2),f(3); then xor of the two stage answers. Each stage passes
// independently with probability 1/2, so an answer appears 1/8 of the
// time and is always the four-way xor.
inline ParallelOutcome xor4_parallel(const BooleanOracle& f, Rng& rng) {
    if (f.arity_bits != 2) throw std::invalid_argument("xor4 needs a 2-bit-domain oracle");
    BooleanOracle lo{1, {f.table[0], f.table[1]}};
    BooleanOracle hi{1, {f.table[2], f.table[3]}};
    DeutschOutcome a = deutsch_xor2(lo, rng);
    if (a.fail) return {true, 0};
    DeutschOutcome b = deutsch_xor2(hi, rng);
    if (b.fail) return {true, 0};
    BooleanOracle top{1, {a.answer, b.answer}};
    DeutschOutcome c = deutsch_xor2(top, rng);
    if (c.fail) return {true, 0};
    return {false, c.answer};
}

// ---- coNP demonstration -------------------------------------------------

struct ConpResult {
    ParallelOutcome outcome;
    std::uint64_t branch_count = 0;      // N = 2^n assignments
    mpq_class success_probability;       // 1/(N^2-2N+2)
    mpq_class expected_time_ratio;       // (N^2-2N+2)/N vs serial
};

// Evaluates the formula on all 2^n assignments in superposition and
// extracts the AND of the truth values.
inline ConpResult conp_parallel_and(const std::function<bool(std::uint64_t)>& formula,
                                    int num_variables, Rng& rng) {
    if (num_variables < 0 || num_variables > 20)
        throw std::invalid_argument("variable count out of desk-scale range");
    const std::uint64_t n = std::uint64_t(1) << num_variables;
    std::vector<std::uint64_t> values(n);
    for (std::uint64_t x = 0; x < n; ++x) values[x] = formula(x) ? 1 : 0;
    auto combine = [](const std::vector<std::uint64_t>& vs) {
        for (auto v : vs)
            if (!v) return std::uint64_t(0);
        return std::uint64_t(1);
    };
    ConpResult r;
    r.branch_count = n;
    r.success_probability = parallel_success_probability(n);
    r.expected_time_ratio = mpq_class(1) / r.success_probability / mpq_class(static_cast<unsigned long>(n));
    r.expected_time_ratio.canonicalize();
    r.outcome = parallel_run(values, combine, rng, ParallelMode::Semantic);
    return r;
}

// ---- fault tolerance ----------------------------------------------------

struct FaultToleranceResult {
    mpq_class classical_success;  // (1-p^R)^N : R spares per subtask
    mpq_class quantum_success;   // 1-(1-(1-p)q)^(NR) : all NR processors try everything
};

inline FaultToleranceResult fault_tolerance(std::uint64_t n, std::uint64_t r, const mpq_class& p) {
    if (n < 1 || r < 1) throw std::invalid_argument("N and R must be positive");
    if (p < 0 || p > 1) throw std::invalid_argument("p must lie in [0,1]");
    FaultToleranceResult out;
    mpq_class pr = rational_pow(p, static_cast<unsigned long>(r));
    out.classical_success = rational_pow(mpq_class(1) - pr, static_cast<unsigned long>(n));
    mpq_class q = parallel_success_probability(n);
    mpq_class per_proc_fail = mpq_class(1) - (mpq_class(1) - p) * q;
    out.quantum_success =
        mpq_class(1) - rational_pow(per_proc_fail, static_cast<unsigned long>(n * r));
    out.classical_success.canonicalize();
    out.quantum_success.canonicalize();
    return out;
}

struct FaultToleranceMonteCarlo {
    std::uint64_t trials = 0;
    std::uint64_t classical_hits = 0;
    std::uint64_t quantum_hits = 0;
};

// Circuit-backed simulation for N=2: each of the 2R processors either
// breaks (probability p) or runs the two-branch xor circuit; the quantum
// computation succeeds when any processor produces an answer. The
// classical arm assigns R processors to each of the two subtasks.
inline FaultToleranceMonteCarlo fault_tolerance_monte_carlo(std::uint64_t r, double p,
                                                            std::uint64_t trials,
                                                            std::uint64_t seed,
                                                            unsigned workers = 1) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const BooleanOracle f{1, {0, 1}};  // any fixed two-point oracle works
    FaultToleranceMonteCarlo out;
    out.trials = trials;
    out.quantum_hits = run_trials(seed, trials, [&](Rng& rng) {
        bool any = false;
        for (std::uint64_t i = 0; i < 2 * r; ++i) {
            bool hw_fail = rng.bernoulli(p);
            DeutschOutcome d = deutsch_xor2(f, rng);  // always drawn: fixed RNG layout
            if (!hw_fail && !d.fail) any = true;
        }
        return any;
    }, workers);
    out.classical_hits = run_trials(seed ^ 0x9e3779b97f4a7c15ULL, trials, [&](Rng& rng) {
        // subtask succeeds when at least one of its R processors works
        for (int task = 0; task < 2; ++task) {
            bool ok = false;
            for (std::uint64_t i = 0; i < r; ++i)
                if (!rng.bernoulli(p)) ok = true;
            if (!ok) return false;
        }
        return true;
    }, workers);
    return out;
}

}  // namespace cwb
