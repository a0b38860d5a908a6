#pragma once

// Counter machines: finite programs over non-negative integer registers
// with increment, saturating decrement, and zero-test. Two cost models
// are metered on every run: unit cost (one per instruction) and distance
// cost, where touching a register holding v costs v+1 (a test particle
// has to travel to a particle v units away and back; the round trip is
// never free).

#include <gmpxx.h>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cwb {

enum class CmOp : std::uint8_t { Inc, Dec, JumpIfZero, Jump, Halt };

struct CmInstruction {
    CmOp op = CmOp::Halt;
    int reg = 0;     // Inc/Dec/JumpIfZero
    int target = 0;  // JumpIfZero/Jump
};

struct CounterMachine {
    std::vector<CmInstruction> program;
    int register_count = 3;

    void validate() const {
        if (register_count < 1) throw std::invalid_argument("register_count must be positive");
        const int n = static_cast<int>(program.size());
        for (const auto& ins : program) {
            switch (ins.op) {
                case CmOp::Inc:
                case CmOp::Dec:
                    if (ins.reg < 0 || ins.reg >= register_count)
                        throw std::invalid_argument("register index out of range");
                    break;
                case CmOp::JumpIfZero:
                    if (ins.reg < 0 || ins.reg >= register_count)
                        throw std::invalid_argument("register index out of range");
                    [[fallthrough]];
                case CmOp::Jump:
                    if (ins.target < 0 || ins.target >= n)
                        throw std::invalid_argument("jump target out of range");
                    break;
                case CmOp::Halt:
                    break;
            }
        }
    }
};

struct RegisterState {
    std::vector<mpz_class> registers;
    int pc = 0;
    mpz_class unit_cost = 0;
    mpz_class distance_cost = 0;

    explicit RegisterState(int register_count = 3)
        : registers(static_cast<std::size_t>(register_count), mpz_class(0)) {}
};

enum class CostModel { Unit, Distance };

struct InvalidProgram : std::runtime_error {
    explicit InvalidProgram(int pc)
        : std::runtime_error("pc " + std::to_string(pc) + " escaped the program") {}
};

struct CmRunResult {
    bool halted = false;
    RegisterState state;
    std::uint64_t executed = 0;  // instructions actually executed
};

// Executes one instruction, updating both cost accumulators.
// Returns true if the instruction was Halt.
inline bool cm_step(const CounterMachine& cm, RegisterState& s) {
    if (s.pc < 0 || s.pc >= static_cast<int>(cm.program.size())) throw InvalidProgram(s.pc);
    const CmInstruction& ins = cm.program[s.pc];
    s.unit_cost += 1;
    switch (ins.op) {
        case CmOp::Inc:
            s.distance_cost += s.registers[ins.reg] + 1;
            s.registers[ins.reg] += 1;
            ++s.pc;
            return false;
        case CmOp::Dec:
            s.distance_cost += s.registers[ins.reg] + 1;
            if (s.registers[ins.reg] > 0) s.registers[ins.reg] -= 1;
            ++s.pc;
            return false;
        case CmOp::JumpIfZero:
            s.distance_cost += s.registers[ins.reg] + 1;
            s.pc = (s.registers[ins.reg] == 0) ? ins.target : s.pc + 1;
            return false;
        case CmOp::Jump:
            s.distance_cost += 1;
            s.pc = ins.target;
            return false;
        case CmOp::Halt:
            s.distance_cost += 1;
            return true;
    }
    throw std::logic_error("unreachable");
}

inline CmRunResult cm_run(const CounterMachine& cm, RegisterState init, std::uint64_t fuel) {
    if (fuel < 1) throw std::invalid_argument("fuel must be >= 1");
    cm.validate();
    if (static_cast<int>(init.registers.size()) != cm.register_count)
        throw std::invalid_argument("register state does not match machine");
    CmRunResult r;
    r.state = std::move(init);
    while (r.executed < fuel) {
        bool halted = cm_step(cm, r.state);
        ++r.executed;
        if (halted) {
            r.halted = true;
            break;
        }
    }
    return r;
}

// ---- serialization: numbered instruction listing ------------------------

inline std::string cm_to_listing(const CounterMachine& cm) {
    std::ostringstream out;
    out << "registers " << cm.register_count << "\n";
    for (std::size_t i = 0; i < cm.program.size(); ++i) {
        const auto& ins = cm.program[i];
        out << i << ": ";
        switch (ins.op) {
            case CmOp::Inc: out << "inc " << ins.reg; break;
            case CmOp::Dec: out << "dec " << ins.reg; break;
            case CmOp::JumpIfZero: out << "jz " << ins.reg << " " << ins.target; break;
            case CmOp::Jump: out << "jmp " << ins.target; break;
            case CmOp::Halt: out << "halt"; break;
        }
        out << "\n";
    }
    return out.str();
}

inline CounterMachine cm_from_listing(const std::string& text) {
    CounterMachine cm;
    cm.program.clear();
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        if (tok == "registers") {
            ls >> cm.register_count;
            continue;
        }
        // numbered lines: "<idx>: op ..."
        std::string op;
        if (tok.back() == ':') {
            if (!(ls >> op)) throw std::invalid_argument("bad listing line: " + line);
        } else {
            op = tok;
        }
        CmInstruction ins;
        if (op == "inc") { ins.op = CmOp::Inc; ls >> ins.reg; }
        else if (op == "dec") { ins.op = CmOp::Dec; ls >> ins.reg; }
        else if (op == "jz") { ins.op = CmOp::JumpIfZero; ls >> ins.reg >> ins.target; }
        else if (op == "jmp") { ins.op = CmOp::Jump; ls >> ins.target; }
        else if (op == "halt") { ins.op = CmOp::Halt; }
        else throw std::invalid_argument("unknown opcode: " + op);
        cm.program.push_back(ins);
    }
    cm.validate();
    return cm;
}

}  // namespace cwb
