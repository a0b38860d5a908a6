// Command-line workbench: every experiment behind one binary, with
// explicit seeds, fuel caps, and machine-readable output. Exit status
// reflects tool failure only; experiment-level outcomes (fuel exhausted,
// not-yet-divergent, ...) are data.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "cwb/address.hpp"
#include "cwb/ca.hpp"
#include "cwb/compile_tm.hpp"
#include "cwb/counter.hpp"
#include "cwb/gshift.hpp"
#include "cwb/hyper.hpp"
#include "cwb/omega.hpp"
#include "cwb/quantum.hpp"
#include "cwb/rational.hpp"
#include "cwb/series.hpp"
#include "cwb/trials.hpp"
#include "cwb/turing.hpp"

using nlohmann::json;
using namespace cwb;

namespace {

constexpr const char* kVersion = "0.1.0";

json fraction_json(const mpq_class& q) {
    return json{{"fraction", to_fraction_string(q)}, {"decimal", to_decimal_string(q)}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TuringMachine load_tm(const std::string& path) {
    std::string text = read_file(path);
    // JSON machine files start with '{'; anything else is the text format.
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return tm_from_json(json::parse(text));
    return tm_from_text(text);
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

json base_doc(const std::string& experiment) {
    return json{{"experiment", experiment}, {"version", kVersion}};
}

json config_json(const TapeConfiguration& c, const TuringMachine& tm) {
    return json{{"state", tm.name(c.state)},
                {"left", bits_to_string(c.left)},
                {"right", bits_to_string(c.right)},
                {"steps", c.steps}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computability workbench"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    std::uint64_t fuel = 100000;
    std::uint64_t trials = 100000;
    unsigned jobs = 1;
    std::string format = "json";
    app.add_option("--seed", seed, "RNG seed (recorded in output)")->capture_default_str();
    app.add_option("--fuel", fuel, "step budget for machine runs")->capture_default_str();
    app.add_option("--trials", trials, "Monte-Carlo trial count")->capture_default_str();
    app.add_option("--jobs", jobs, "worker count for trial loops")->capture_default_str();
    app.add_option("--format", format, "output format: json|csv")->capture_default_str();

    // ---- tm -------------------------------------------------------------
    auto* tm_cmd = app.add_subcommand("tm", "Turing machines");
    std::string tm_file, tm_input;
    auto* tm_run_cmd = tm_cmd->add_subcommand("run", "run a machine on an input tape");
    tm_run_cmd->add_option("--machine", tm_file, "machine file (text or JSON)")->required();
    tm_run_cmd->add_option("--input", tm_input, "initial right tape bits");
    tm_run_cmd->callback([&] {
        TuringMachine tm = load_tm(tm_file);
        TmRunResult r = tm_run(tm, bits_from_string(tm_input), fuel);
        json doc = base_doc("tm_run");
        doc["machine"] = tm_file;
        doc["input"] = tm_input;
        doc["fuel"] = fuel;
        doc["outcome"] = r.outcome == RunOutcome::Halted ? "halted" : "fuel_exhausted";
        doc["config"] = config_json(r.config, tm);
        emit(doc);
    });
    auto* tm_compile_cmd = tm_cmd->add_subcommand("compile", "compile to a 3-counter machine");
    tm_compile_cmd->add_option("--machine", tm_file, "machine file")->required();
    tm_compile_cmd->callback([&] {
        TuringMachine tm = load_tm(tm_file);
        CompiledTm ct = compile_tm_to_cm(tm);
        if (format == "csv") {
            std::cout << cm_to_listing(ct.cm);
            return;
        }
        json doc = base_doc("tm_compile");
        doc["machine"] = tm_file;
        doc["instructions"] = ct.cm.program.size();
        doc["listing"] = cm_to_listing(ct.cm);
        doc["halt_pc"] = ct.halt_pc;
        for (int q = 0; q < tm.num_states(); ++q)
            doc["state_entry"][tm.name(q)] = ct.state_entry[q];
        emit(doc);
    });
    auto* tm_diag_cmd = tm_cmd->add_subcommand("diagonal", "the g(i) = f_i(i) diagonal");
    unsigned diag_i = 1;
    std::uint64_t digit_budget = 1000000;
    tm_diag_cmd->add_option("--i", diag_i, "diagonal index")->required();
    tm_diag_cmd->add_option("--digit-budget", digit_budget, "max decimal digits")
        ->capture_default_str();
    tm_diag_cmd->callback([&] {
        HyperResult r = hyper_diagonal(diag_i, digit_budget);
        json doc = base_doc("hyper_diagonal");
        doc["i"] = diag_i;
        doc["digit_budget"] = digit_budget;
        if (r.too_large) doc["outcome"] = "too_large";
        else {
            doc["outcome"] = "value";
            doc["value"] = r.value.get_str();
        }
        emit(doc);
    });

    // ---- cm -------------------------------------------------------------
    auto* cm_cmd = app.add_subcommand("cm", "counter machines");
    std::string cm_file, cm_regs = "0,0,0", cost_model = "unit";
    auto* cm_run_cmd = cm_cmd->add_subcommand("run", "run a counter-machine listing");
    cm_run_cmd->add_option("--program", cm_file, "listing file")->required();
    cm_run_cmd->add_option("--registers", cm_regs, "initial registers, comma separated")
        ->capture_default_str();
    cm_run_cmd->add_option("--cost-model", cost_model, "unit|distance (headline cost)")
        ->capture_default_str();
    cm_run_cmd->callback([&] {
        CounterMachine cm = cm_from_listing(read_file(cm_file));
        RegisterState init(cm.register_count);
        std::stringstream rs(cm_regs);
        std::string item;
        std::size_t i = 0;
        while (std::getline(rs, item, ',') && i < init.registers.size())
            init.registers[i++] = mpz_class(item);
        CmRunResult r = cm_run(cm, std::move(init), fuel);
        json doc = base_doc("cm_run");
        doc["program"] = cm_file;
        doc["fuel"] = fuel;
        doc["cost_model"] = cost_model;
        doc["outcome"] = r.halted ? "halted" : "fuel_exhausted";
        doc["executed"] = r.executed;
        for (const auto& reg : r.state.registers) doc["registers"].push_back(reg.get_str());
        doc["unit_cost"] = r.state.unit_cost.get_str();
        doc["distance_cost"] = r.state.distance_cost.get_str();
        doc["cost"] = (cost_model == "distance" ? r.state.distance_cost : r.state.unit_cost).get_str();
        emit(doc);
    });
    auto* cm_slow_cmd = cm_cmd->add_subcommand("slowdown", "TM vs compiled-CM cost profile");
    std::string slow_machine;
    std::vector<std::string> slow_inputs;
    cm_slow_cmd->add_option("--machine", slow_machine, "machine file")->required();
    cm_slow_cmd->add_option("--input", slow_inputs, "input tapes (repeatable)");
    cm_slow_cmd->callback([&] {
        TuringMachine tm = load_tm(slow_machine);
        std::vector<BitWord> inputs;
        for (const auto& s : slow_inputs) inputs.push_back(bits_from_string(s));
        auto rows = slowdown_profile(tm, inputs, fuel, std::uint64_t(1) << 40);
        if (format == "csv") {
            std::cout << "input,tm_steps,cm_unit_cost,cm_distance_cost\n";
            for (const auto& r : rows)
                std::cout << bits_to_string(r.input) << "," << r.tm_steps << ","
                          << r.cm_unit_cost.get_str() << "," << r.cm_distance_cost.get_str()
                          << "\n";
            return;
        }
        json doc = base_doc("slowdown_profile");
        doc["machine"] = slow_machine;
        doc["rows"] = json::array();
        for (const auto& r : rows)
            doc["rows"].push_back({{"input", bits_to_string(r.input)},
                                   {"tm_steps", r.tm_steps},
                                   {"cm_unit_cost", r.cm_unit_cost.get_str()},
                                   {"cm_distance_cost", r.cm_distance_cost.get_str()}});
        emit(doc);
    });

    // ---- dyn ------------------------------------------------------------
    auto* dyn_cmd = app.add_subcommand("dyn", "symbolic dynamics on addresses");
    std::string addr_text, addr_text_b, window = "-8:8", base_name = "ternary", pattern;
    std::uint64_t dyn_t = 0, dyn_n = 0;
    auto parse_base = [&]() {
        if (base_name == "ternary") return EmbedBase::Ternary;
        if (base_name == "dyadic") return EmbedBase::Dyadic;
        throw CLI::ValidationError("--base must be ternary or dyadic");
    };
    auto* dyn_shift_cmd = dyn_cmd->add_subcommand("shift", "apply the shift map n times");
    dyn_shift_cmd->add_option("--address", addr_text, "address text")->required();
    dyn_shift_cmd->add_option("--n", dyn_n, "iterations")->capture_default_str();
    dyn_shift_cmd->callback([&] {
        ExactAddress a = iterate_shift(address_from_text(addr_text), dyn_n);
        json doc = base_doc("shift");
        doc["n"] = dyn_n;
        doc["address"] = address_to_text(a);
        emit(doc);
    });
    auto* dyn_ff_cmd = dyn_cmd->add_subcommand("ff", "fast-forward to time t");
    dyn_ff_cmd->add_option("--address", addr_text, "address text")->required();
    dyn_ff_cmd->add_option("--t", dyn_t, "time")->required();
    dyn_ff_cmd->add_option("--window", window, "index window lo:hi")->capture_default_str();
    dyn_ff_cmd->callback([&] {
        auto colon = window.find(':');
        if (colon == std::string::npos) throw CLI::ValidationError("--window must be lo:hi");
        std::int64_t lo = std::stoll(window.substr(0, colon));
        std::int64_t hi = std::stoll(window.substr(colon + 1));
        FastForwardResult r = fast_forward(address_from_text(addr_text), dyn_t, lo, hi);
        json doc = base_doc("fast_forward");
        doc["t"] = dyn_t;
        doc["window"] = window;
        doc["bits"] = bits_to_string(r.bits);
        doc["operations"] = r.operations;
        emit(doc);
    });
    auto* dyn_embed_cmd = dyn_cmd->add_subcommand("embed", "Cantor-set embedding");
    dyn_embed_cmd->add_option("--address", addr_text, "address text")->required();
    dyn_embed_cmd->add_option("--base", base_name, "ternary|dyadic")->capture_default_str();
    dyn_embed_cmd->callback([&] {
        auto [x, y] = embed(address_from_text(addr_text), parse_base());
        json doc = base_doc("embed");
        doc["base"] = base_name;
        doc["x"] = fraction_json(x);
        doc["y"] = fraction_json(y);
        emit(doc);
    });
    auto* dyn_div_cmd = dyn_cmd->add_subcommand("diverge", "exact divergence sequence");
    dyn_div_cmd->add_option("--address-a", addr_text, "first address")->required();
    dyn_div_cmd->add_option("--address-b", addr_text_b, "second address")->required();
    dyn_div_cmd->add_option("--n", dyn_n, "steps")->capture_default_str();
    dyn_div_cmd->add_option("--base", base_name, "ternary|dyadic")->capture_default_str();
    dyn_div_cmd->callback([&] {
        auto d = divergence(address_from_text(addr_text), address_from_text(addr_text_b), dyn_n,
                            parse_base());
        if (format == "csv") {
            std::cout << "step,numerator,denominator,decimal\n";
            for (std::size_t k = 0; k < d.size(); ++k)
                std::cout << k << "," << d[k].get_num().get_str() << ","
                          << d[k].get_den().get_str() << "," << to_decimal_string(d[k]) << "\n";
            return;
        }
        json doc = base_doc("divergence");
        doc["base"] = base_name;
        doc["distances"] = json::array();
        for (const auto& q : d) doc["distances"].push_back(fraction_json(q));
        emit(doc);
    });
    auto* dyn_reach_cmd = dyn_cmd->add_subcommand("reach", "is the region ever visited?");
    dyn_reach_cmd->add_option("--address", addr_text, "address text")->required();
    dyn_reach_cmd->add_option("--pattern", pattern, "bit pattern anchored at the point")
        ->required();
    dyn_reach_cmd->callback([&] {
        bool hit = reaches_region(address_from_text(addr_text), bits_from_string(pattern));
        json doc = base_doc("reaches_region");
        doc["pattern"] = pattern;
        doc["reached"] = hit;
        emit(doc);
    });

    // ---- gshift ---------------------------------------------------------
    auto* gs_cmd = app.add_subcommand("gshift", "generalized shifts from machines");
    std::string gs_machine, gs_input;
    std::uint64_t gs_steps = 1;
    auto* gs_run_cmd = gs_cmd->add_subcommand("run", "iterate the conjugate shift");
    gs_run_cmd->add_option("--machine", gs_machine, "machine file")->required();
    gs_run_cmd->add_option("--input", gs_input, "initial right tape bits");
    gs_run_cmd->add_option("--steps", gs_steps, "generalized-shift steps")->capture_default_str();
    gs_run_cmd->callback([&] {
        TuringMachine tm = load_tm(gs_machine);
        GeneralizedShift g = gshift_from_tm(tm);
        TapeConfiguration c0 = tm_initial_config(tm, bits_from_string(gs_input));
        ExactAddress a = encode_address(c0, tm);
        for (std::uint64_t i = 0; i < gs_steps; ++i) a = gshift_step(g, std::move(a));
        json doc = base_doc("gshift_run");
        doc["machine"] = gs_machine;
        doc["steps"] = gs_steps;
        doc["address"] = address_to_text(a);
        TapeConfiguration c = decode_address(a, tm);
        doc["decoded"] = config_json(c, tm);
        emit(doc);
    });

    // ---- ca -------------------------------------------------------------
    auto* ca_cmd = app.add_subcommand("ca", "the mod-2 cellular automaton");
    std::string ca_row;
    std::uint64_t ca_t = 1;
    auto* ca_step_cmd = ca_cmd->add_subcommand("step", "iterate the rule t times");
    ca_step_cmd->add_option("--row", ca_row, "0/1 cell string")->required();
    ca_step_cmd->add_option("--t", ca_t, "steps")->capture_default_str();
    ca_step_cmd->callback([&] {
        CaRow r = ca_row_from_string(ca_row);
        for (std::uint64_t i = 0; i < ca_t; ++i) r = ca_step(r);
        json doc = base_doc("ca_step");
        doc["t"] = ca_t;
        doc["row"] = ca_row_to_string(r);
        doc["origin"] = r.origin;
        emit(doc);
    });
    auto* ca_ff_cmd = ca_cmd->add_subcommand("ff", "logarithmic fast-forward");
    ca_ff_cmd->add_option("--row", ca_row, "0/1 cell string")->required();
    ca_ff_cmd->add_option("--t", ca_t, "steps")->required();
    ca_ff_cmd->callback([&] {
        CaFastForwardResult r = ca_fast_forward(ca_row_from_string(ca_row), ca_t);
        json doc = base_doc("ca_fast_forward");
        doc["t"] = ca_t;
        doc["row"] = ca_row_to_string(r.row);
        doc["origin"] = r.row.origin;
        doc["cell_operations"] = r.cell_operations;
        emit(doc);
    });

    // ---- q --------------------------------------------------------------
    auto* q_cmd = app.add_subcommand("q", "quantum parallelism experiments");
    std::uint64_t q_n = 2, q_r = 2;
    std::string q_p = "1/2", q_table = "01";
    auto* q_fault_cmd = q_cmd->add_subcommand("fault", "classical vs quantum fault tolerance");
    q_fault_cmd->add_option("--N", q_n, "parallelizable width")->capture_default_str();
    q_fault_cmd->add_option("--R", q_r, "redundancy")->capture_default_str();
    q_fault_cmd->add_option("--p", q_p, "hardware failure probability (rational)")
        ->capture_default_str();
    q_fault_cmd->callback([&] {
        FaultToleranceResult r = fault_tolerance(q_n, q_r, parse_rational(q_p));
        json doc = base_doc("fault_tolerance");
        doc["N"] = q_n;
        doc["R"] = q_r;
        doc["p"] = q_p;
        doc["classical_success"] = fraction_json(r.classical_success);
        doc["quantum_success"] = fraction_json(r.quantum_success);
        mpq_class diff = r.quantum_success - r.classical_success;
        diff.canonicalize();
        doc["difference"] = fraction_json(diff);
        emit(doc);
    });
    auto* q_faultmc_cmd = q_cmd->add_subcommand("faultmc", "fault tolerance, circuit-backed");
    q_faultmc_cmd->add_option("--R", q_r, "redundancy")->capture_default_str();
    q_faultmc_cmd->add_option("--p", q_p, "hardware failure probability")->capture_default_str();
    q_faultmc_cmd->callback([&] {
        mpq_class p = parse_rational(q_p);
        FaultToleranceMonteCarlo mc =
            fault_tolerance_monte_carlo(q_r, p.get_d(), trials, seed, jobs);
        FaultToleranceResult analytic = fault_tolerance(2, q_r, p);
        json doc = base_doc("fault_tolerance_monte_carlo");
        doc["N"] = 2;
        doc["R"] = q_r;
        doc["p"] = q_p;
        doc["seed"] = seed;
        doc["trials"] = trials;
        doc["analytic"] = {{"classical", fraction_json(analytic.classical_success)},
                           {"quantum", fraction_json(analytic.quantum_success)}};
        doc["empirical"] = {
            {"classical", static_cast<double>(mc.classical_hits) / double(trials)},
            {"quantum", static_cast<double>(mc.quantum_hits) / double(trials)}};
        emit(doc);
    });
    auto* q_xor2_cmd = q_cmd->add_subcommand("xor2", "two-point xor extraction");
    q_xor2_cmd->add_option("--table", q_table, "truth table bits f(0)f(1)")->capture_default_str();
    q_xor2_cmd->callback([&] {
        BitWord t = bits_from_string(q_table);
        if (t.size() != 2) throw CLI::ValidationError("--table needs exactly 2 bits");
        BooleanOracle f{1, {t[0], t[1]}};
        std::uint64_t fails = run_trials(seed, trials, [&](Rng& rng) {
            return deutsch_xor2(f, rng).fail;
        }, jobs);
        json doc = base_doc("deutsch_xor2");
        doc["table"] = q_table;
        doc["seed"] = seed;
        doc["trials"] = trials;
        doc["analytic"] = {{"fail", fraction_json(mpq_class(1, 2))}};
        doc["empirical"] = {{"fail", static_cast<double>(fails) / double(trials)}};
        doc["xor"] = int(t[0] ^ t[1]);
        emit(doc);
    });
    auto* q_speed_cmd = q_cmd->add_subcommand("speedup", "N-fold success probability");
    q_speed_cmd->add_option("--N", q_n, "parallel width")->required();
    q_speed_cmd->callback([&] {
        mpq_class q = parallel_success_probability(q_n);
        json doc = base_doc("parallel_success_probability");
        doc["N"] = q_n;
        doc["probability"] = fraction_json(q);
        mpq_class expected = mpq_class(1) / q;
        expected.canonicalize();
        doc["expected_retries"] = fraction_json(expected);
        emit(doc);
    });
    auto* q_par_cmd = q_cmd->add_subcommand("parallel", "semantic N-fold trials");
    q_par_cmd->add_option("--N", q_n, "parallel width")->required();
    q_par_cmd->callback([&] {
        std::vector<std::uint64_t> values(q_n, 1);
        auto combine = [](const std::vector<std::uint64_t>& v) {
            std::uint64_t x = 0;
            for (auto b : v) x ^= b;
            return x;
        };
        std::uint64_t hits = run_trials(seed, trials, [&](Rng& rng) {
            return !parallel_run(values, combine, rng, ParallelMode::Semantic).fail;
        }, jobs);
        json doc = base_doc("parallel_run");
        doc["N"] = q_n;
        doc["seed"] = seed;
        doc["trials"] = trials;
        doc["analytic"] = {{"answer", fraction_json(parallel_success_probability(q_n))}};
        doc["empirical"] = {{"answer", static_cast<double>(hits) / double(trials)}};
        emit(doc);
    });
    auto* q_xor4_cmd = q_cmd->add_subcommand("xor4", "four-point xor cascade");
    q_xor4_cmd->add_option("--table", q_table, "truth table bits f(0)..f(3)")
        ->capture_default_str();
    q_xor4_cmd->callback([&] {
        BitWord t = bits_from_string(q_table);
        if (t.size() != 4) throw CLI::ValidationError("--table needs exactly 4 bits");
        BooleanOracle f{2, {t[0], t[1], t[2], t[3]}};
        std::uint64_t hits = run_trials(seed, trials, [&](Rng& rng) {
            return !xor4_parallel(f, rng).fail;
        }, jobs);
        json doc = base_doc("xor4_parallel");
        doc["table"] = q_table;
        doc["seed"] = seed;
        doc["trials"] = trials;
        doc["analytic"] = {{"answer", fraction_json(mpq_class(1, 8))}};
        doc["empirical"] = {{"answer", static_cast<double>(hits) / double(trials)}};
        doc["xor"] = int(t[0] ^ t[1] ^ t[2] ^ t[3]);
        emit(doc);
    });
    auto* q_conp_cmd = q_cmd->add_subcommand("conp", "tautology check by parallel AND");
    std::string conp_table = "11";
    q_conp_cmd->add_option("--table", conp_table, "formula truth values over all assignments")
        ->capture_default_str();
    q_conp_cmd->callback([&] {
        BitWord t = bits_from_string(conp_table);
        int vars = 0;
        while ((std::size_t(1) << vars) < t.size()) ++vars;
        if ((std::size_t(1) << vars) != t.size())
            throw CLI::ValidationError("--table length must be a power of two");
        Rng rng(seed);
        ConpResult r = conp_parallel_and([&](std::uint64_t x) { return t[x] != 0; }, vars, rng);
        json doc = base_doc("conp_parallel_and");
        doc["table"] = conp_table;
        doc["variables"] = vars;
        doc["N"] = r.branch_count;
        doc["seed"] = seed;
        doc["success_probability"] = fraction_json(r.success_probability);
        doc["expected_time_ratio"] = fraction_json(r.expected_time_ratio);
        doc["outcome"] = r.outcome.fail ? "fail" : (r.outcome.answer ? "tautology" : "refuted");
        emit(doc);
    });

    // ---- omega ----------------------------------------------------------
    auto* om_cmd = app.add_subcommand("omega", "halting-probability machinery");
    std::size_t max_len = 12;
    auto* om_bound_cmd = om_cmd->add_subcommand("bound", "fuel-limited lower bound");
    om_bound_cmd->add_option("--max-len", max_len, "max program bit length")
        ->capture_default_str();
    om_bound_cmd->callback([&] {
        OmegaBound b = omega_lower_bound(fuel, max_len);
        json doc = base_doc("omega_lower_bound");
        doc["fuel"] = b.fuel;
        doc["max_len"] = b.max_len;
        doc["value"] = fraction_json(b.value);
        doc["contributors"] = b.contributing;
        doc["valid_programs"] = b.valid_programs;
        emit(doc);
    });
    auto* om_bit_cmd = om_cmd->add_subcommand("bitest", "sample-based probability bits");
    std::string bit_p = "1/3";
    unsigned bit_n = 1;
    double c1 = 2.1, c2 = 10.0;
    om_bit_cmd->add_option("--p", bit_p, "Bernoulli parameter (rational)")->capture_default_str();
    om_bit_cmd->add_option("--n", bit_n, "bit index (1 = first after the point)")
        ->capture_default_str();
    om_bit_cmd->add_option("--c1", c1, "trial rule multiplier")->capture_default_str();
    om_bit_cmd->add_option("--c2", c2, "trial rule offset")->capture_default_str();
    om_bit_cmd->callback([&] {
        double p = parse_rational(bit_p).get_d();
        Rng rng(seed);
        BitEstimate e = estimate_probability_bit(
            [&](Rng& r) { return r.bernoulli(p); }, bit_n, rng, c1, c2);
        json doc = base_doc("estimate_probability_bit");
        doc["p"] = bit_p;
        doc["n"] = bit_n;
        doc["c1"] = c1;
        doc["c2"] = c2;
        doc["seed"] = seed;
        doc["trials"] = e.trials;
        doc["successes"] = e.successes;
        doc["bit"] = int(e.bit);
        emit(doc);
    });

    // ---- series ---------------------------------------------------------
    auto* se_cmd = app.add_subcommand("series", "divergent series truncation");
    std::string rule = "factorial", alpha = "1/137.03597", factor = "1";
    std::uint64_t nmax = 300;
    auto* se_trunc_cmd = se_cmd->add_subcommand("truncate", "locate the minimal term");
    se_trunc_cmd->add_option("--rule", rule, "factorial|factorial-k|constant")
        ->capture_default_str();
    se_trunc_cmd->add_option("--alpha", alpha, "coupling (rational)")->capture_default_str();
    se_trunc_cmd->add_option("--k", factor, "growth factor for factorial-k")
        ->capture_default_str();
    se_trunc_cmd->add_option("--nmax", nmax, "ratio-test horizon")->capture_default_str();
    se_trunc_cmd->callback([&] {
        mpq_class a = parse_rational(alpha);
        AsymptoticSeries s = rule == "factorial" ? AsymptoticSeries::factorial(a)
                             : rule == "factorial-k"
                                 ? AsymptoticSeries::factorial_times_pow(a, parse_rational(factor))
                                 : AsymptoticSeries::constant(a);
        auto mt = minimal_term_index(s, nmax);
        if (format == "csv") {
            std::cout << "n,term_numerator,term_denominator,decimal,ratio\n";
            std::uint64_t rows = mt ? mt->index + 1 : nmax;
            for (std::uint64_t n = 0; n <= rows; ++n) {
                mpq_class t = s.term(n);
                mpq_class ratio = s.term(n + 1) / t;
                ratio.canonicalize();
                std::cout << n << "," << t.get_num().get_str() << "," << t.get_den().get_str()
                          << "," << to_decimal_string(t) << "," << to_decimal_string(ratio)
                          << "\n";
            }
            return;
        }
        json doc = base_doc("series_truncate");
        doc["rule"] = rule;
        doc["alpha"] = alpha;
        doc["nmax"] = nmax;
        if (mt) {
            doc["outcome"] = "minimal_term";
            doc["n_star"] = mt->index;
            doc["term"] = fraction_json(mt->term_value);
        } else {
            doc["outcome"] = "not_yet_divergent";
        }
        emit(doc);
    });

    // Let global flags appear after the subcommand as well as before it.
    std::function<void(CLI::App*)> allow_global_flags = [&](CLI::App* a) {
        for (CLI::App* sub : a->get_subcommands(nullptr)) {
            sub->fallthrough();
            allow_global_flags(sub);
        }
    };
    allow_global_flags(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
