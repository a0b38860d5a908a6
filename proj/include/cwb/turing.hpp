#pragma once

// Binary-alphabet Turing machines and their two-word tape representation:
// the tape is split into the word to the left of the head and the word
// from the head rightward, each stored nearest-to-head first with no
// trailing zeros past the outermost 1.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace cwb {

enum class Move : std::uint8_t { Left, Right };

struct TmTransition {
    int next_state = 0;
    std::uint8_t write = 0;
    Move move = Move::Right;
};

class TuringMachine {
public:
    TuringMachine(std::vector<std::string> state_names, int start,
                  std::vector<int> halting,
                  std::map<std::pair<int, int>, TmTransition> delta)
        : names_(std::move(state_names)), start_(start), halting_(names_.size(), false) {
        for (int h : halting) {
            if (h < 0 || h >= num_states()) throw std::invalid_argument("halting state out of range");
            halting_[h] = true;
        }
        if (start_ < 0 || start_ >= num_states()) throw std::invalid_argument("start state out of range");
        delta_.assign(names_.size() * 2, std::nullopt);
        for (const auto& [key, t] : delta) {
            auto [q, b] = key;
            if (q < 0 || q >= num_states() || b < 0 || b > 1)
                throw std::invalid_argument("transition key out of range");
            if (halting_[q]) throw std::invalid_argument("halting state has outgoing transition");
            if (t.next_state < 0 || t.next_state >= num_states())
                throw std::invalid_argument("transition target out of range");
            if (t.write > 1) throw std::invalid_argument("write symbol not a bit");
            delta_[2 * q + b] = t;
        }
        for (int q = 0; q < num_states(); ++q) {
            if (halting_[q]) continue;
            for (int b = 0; b < 2; ++b)
                if (!delta_[2 * q + b])
                    throw std::invalid_argument("delta not total at (" + names_[q] + "," +
                                                std::to_string(b) + ")");
        }
    }

    int num_states() const { return static_cast<int>(names_.size()); }
    int start() const { return start_; }
    bool is_halting(int q) const { return halting_[q]; }
    const std::string& name(int q) const { return names_.at(q); }
    const TmTransition& transition(int q, int bit) const {
        const auto& t = delta_.at(2 * q + bit);
        if (!t) throw std::logic_error("no transition from halting state");
        return *t;
    }
    int state_index(const std::string& name) const {
        for (int q = 0; q < num_states(); ++q)
            if (names_[q] == name) return q;
        throw std::invalid_argument("unknown state: " + name);
    }

    std::vector<int> halting_states() const {
        std::vector<int> out;
        for (int q = 0; q < num_states(); ++q)
            if (halting_[q]) out.push_back(q);
        return out;
    }

private:
    std::vector<std::string> names_;
    int start_;
    std::vector<bool> halting_;
    std::vector<std::optional<TmTransition>> delta_;
};

using BitWord = std::vector<std::uint8_t>;

inline void trim_word(BitWord& w) {
    while (!w.empty() && w.back() == 0) w.pop_back();
}

struct TapeConfiguration {
    BitWord left;    // nearest-to-head first
    BitWord right;   // element 0 is the scanned bit
    int state = 0;
    std::uint64_t steps = 0;

    std::uint8_t scanned() const { return right.empty() ? 0 : right[0]; }

    bool operator==(const TapeConfiguration& o) const {
        return left == o.left && right == o.right && state == o.state;
    }
};

struct AlreadyHalted : std::runtime_error {
    AlreadyHalted() : std::runtime_error("configuration state is halting") {}
};

inline TapeConfiguration tm_step(const TuringMachine& tm, const TapeConfiguration& c) {
    if (tm.is_halting(c.state)) throw AlreadyHalted();
    const TmTransition& t = tm.transition(c.state, c.scanned());
    TapeConfiguration n = c;
    n.state = t.next_state;
    n.steps = c.steps + 1;
    if (n.right.empty()) n.right.push_back(0);
    n.right[0] = t.write;
    if (t.move == Move::Right) {
        n.left.insert(n.left.begin(), n.right[0]);
        n.right.erase(n.right.begin());
    } else {
        std::uint8_t from_left = n.left.empty() ? 0 : n.left[0];
        if (!n.left.empty()) n.left.erase(n.left.begin());
        n.right.insert(n.right.begin(), from_left);
    }
    trim_word(n.left);
    trim_word(n.right);
    return n;
}

enum class RunOutcome { Halted, FuelExhausted };

struct TmRunResult {
    RunOutcome outcome;
    TapeConfiguration config;
};

inline TapeConfiguration tm_initial_config(const TuringMachine& tm, const BitWord& input) {
    TapeConfiguration c;
    c.right = input;
    trim_word(c.right);
    c.state = tm.start();
    return c;
}

inline TmRunResult tm_run(const TuringMachine& tm, const BitWord& input, std::uint64_t fuel) {
    if (fuel < 1) throw std::invalid_argument("fuel must be >= 1");
    TapeConfiguration c = tm_initial_config(tm, input);
    for (std::uint64_t i = 0; i < fuel && !tm.is_halting(c.state); ++i) c = tm_step(tm, c);
    return {tm.is_halting(c.state) ? RunOutcome::Halted : RunOutcome::FuelExhausted, c};
}

// ---- serialization ------------------------------------------------------
//
// Text format, one transition per line:
//     state symbol -> state symbol L|R
// plus "start <state>" and "halt <state> [state...]" directives.
// JSON carries the same fields under {states, start, halting, delta}.

inline TuringMachine tm_from_text(const std::string& text) {
    std::vector<std::string> names;
    auto intern = [&](const std::string& s) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == s) return static_cast<int>(i);
        names.push_back(s);
        return static_cast<int>(names.size() - 1);
    };
    std::optional<int> start;
    std::vector<int> halting;
    std::map<std::pair<int, int>, TmTransition> delta;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        if (tok == "start") {
            std::string s;
            ls >> s;
            start = intern(s);
        } else if (tok == "halt") {
            std::string s;
            while (ls >> s) halting.push_back(intern(s));
        } else {
            std::string sym, arrow, to, wsym, mv;
            if (!(ls >> sym >> arrow >> to >> wsym >> mv) || arrow != "->")
                throw std::invalid_argument("bad transition line: " + line);
            TmTransition t;
            t.next_state = intern(to);
            t.write = static_cast<std::uint8_t>(std::stoi(wsym));
            if (mv == "L") t.move = Move::Left;
            else if (mv == "R") t.move = Move::Right;
            else throw std::invalid_argument("bad move in line: " + line);
            delta[{intern(tok), std::stoi(sym)}] = t;
        }
    }
    if (!start) throw std::invalid_argument("missing start directive");
    return TuringMachine(std::move(names), *start, std::move(halting), std::move(delta));
}

inline std::string tm_to_text(const TuringMachine& tm) {
    std::ostringstream out;
    out << "start " << tm.name(tm.start()) << "\n";
    auto halts = tm.halting_states();
    if (!halts.empty()) {
        out << "halt";
        for (int h : halts) out << " " << tm.name(h);
        out << "\n";
    }
    for (int q = 0; q < tm.num_states(); ++q) {
        if (tm.is_halting(q)) continue;
        for (int b = 0; b < 2; ++b) {
            const auto& t = tm.transition(q, b);
            out << tm.name(q) << " " << b << " -> " << tm.name(t.next_state) << " "
                << int(t.write) << " " << (t.move == Move::Left ? "L" : "R") << "\n";
        }
    }
    return out.str();
}

inline nlohmann::json tm_to_json(const TuringMachine& tm) {
    nlohmann::json j;
    for (int q = 0; q < tm.num_states(); ++q) j["states"].push_back(tm.name(q));
    j["start"] = tm.name(tm.start());
    j["halting"] = nlohmann::json::array();
    for (int h : tm.halting_states()) j["halting"].push_back(tm.name(h));
    j["delta"] = nlohmann::json::array();
    for (int q = 0; q < tm.num_states(); ++q) {
        if (tm.is_halting(q)) continue;
        for (int b = 0; b < 2; ++b) {
            const auto& t = tm.transition(q, b);
            j["delta"].push_back({{"from", tm.name(q)},
                                  {"read", b},
                                  {"to", tm.name(t.next_state)},
                                  {"write", int(t.write)},
                                  {"move", t.move == Move::Left ? "L" : "R"}});
        }
    }
    return j;
}

inline TuringMachine tm_from_json(const nlohmann::json& j) {
    std::vector<std::string> names = j.at("states").get<std::vector<std::string>>();
    auto index = [&](const std::string& s) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == s) return static_cast<int>(i);
        throw std::invalid_argument("unknown state in machine file: " + s);
    };
    int start = index(j.at("start").get<std::string>());
    std::vector<int> halting;
    for (const auto& h : j.at("halting")) halting.push_back(index(h.get<std::string>()));
    std::map<std::pair<int, int>, TmTransition> delta;
    for (const auto& d : j.at("delta")) {
        TmTransition t;
        t.next_state = index(d.at("to").get<std::string>());
        t.write = static_cast<std::uint8_t>(d.at("write").get<int>());
        std::string mv = d.at("move").get<std::string>();
        t.move = mv == "L" ? Move::Left : Move::Right;
        delta[{index(d.at("from").get<std::string>()), d.at("read").get<int>()}] = t;
    }
    return TuringMachine(std::move(names), start, std::move(halting), std::move(delta));
}

inline BitWord bits_from_string(const std::string& s) {
    BitWord w;
    for (char c : s) {
        if (c == '0') w.push_back(0);
        else if (c == '1') w.push_back(1);
        else if (c == ' ' || c == ',') continue;
        else throw std::invalid_argument("bad bit character in: " + s);
    }
    return w;
}

inline std::string bits_to_string(const BitWord& w) {
    std::string s;
    for (auto b : w) s += b ? '1' : '0';
    return s;
}

}  // namespace cwb
