// gpgate: simulate the four-site lattice dynamics, verify the built-in NOR
// parameter set, synthesize new gate parameters, and run the pairwise
// elimination search demo.
//
// Exit codes: 0 success, 1 numerical/verification failure, 2 configuration
// error, 3 search budget exhausted.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpgate/gate.hpp"
#include "gpgate/integrator.hpp"
#include "gpgate/lattice.hpp"
#include "gpgate/report_json.hpp"
#include "gpgate/search.hpp"
#include "gpgate/synth.hpp"

namespace {

using nlohmann::json;
using namespace gpgate;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// 12 significant digits, locale-independent.
std::string format_sig12(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x,
                                   std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("bad JSON in " + path + ": " + e.what());
    }
    return doc;
}

void reject_unknown_keys(const json& doc, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& item : doc.items()) {
        bool known = false;
        for (const char* k : allowed) {
            if (item.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) throw ConfigError("unknown key \"" + item.key() + "\" in " + where);
    }
}

double require_number(const json& doc, const char* key, double fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc[key].is_number()) throw ConfigError(std::string(key) + " must be a number");
    return doc[key].get<double>();
}

long require_integer(const json& doc, const char* key, long fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc[key].is_number_integer()) {
        throw ConfigError(std::string(key) + " must be an integer");
    }
    return doc[key].get<long>();
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
    } else {
        write_text_file(out_path, text);
    }
}

// --- simulate ---------------------------------------------------------------

struct SimulateOptions {
    std::string config_path;
    std::string out_path;
    int gate_case = 1;  // 1..4
    std::optional<double> alpha, tau_final, dtau;
    std::optional<std::string> scheme;
};

struct SimulateConfig {
    SystemParams params;
    EvolutionParams evo;
    SplittingScheme scheme = SplittingScheme::strang_diagonal_first;
    StateVector initial;
};

SimulateConfig build_simulate_config(const SimulateOptions& opt) {
    const ReferenceParams& ref = reference_nor_params();
    SimulateConfig cfg;
    cfg.params = ref.system();
    cfg.evo = ref.evolution();

    bool initial_from_config = false;
    if (!opt.config_path.empty()) {
        const json doc = load_json_file(opt.config_path);
        reject_unknown_keys(doc,
                            {"alpha", "potential", "dtau", "tau_final", "sample_stride",
                             "scheme", "case", "initial"},
                            "simulate config");
        cfg.params.alpha = require_number(doc, "alpha", cfg.params.alpha);
        if (doc.contains("potential")) {
            const json& p = doc["potential"];
            reject_unknown_keys(p, {"v00", "v01", "v10", "v11"}, "potential");
            cfg.params.potential[0] = require_number(p, "v00", cfg.params.potential[0]);
            cfg.params.potential[1] = require_number(p, "v01", cfg.params.potential[1]);
            cfg.params.potential[2] = require_number(p, "v10", cfg.params.potential[2]);
            cfg.params.potential[3] = require_number(p, "v11", cfg.params.potential[3]);
        }
        cfg.evo.dtau = require_number(doc, "dtau", cfg.evo.dtau);
        cfg.evo.tau_final = require_number(doc, "tau_final", cfg.evo.tau_final);
        cfg.evo.sample_stride = require_integer(doc, "sample_stride", cfg.evo.sample_stride);
        if (doc.contains("scheme")) {
            cfg.scheme = scheme_from_string(doc["scheme"].get<std::string>());
        }
        if (doc.contains("initial")) {
            const json& init = doc["initial"];
            reject_unknown_keys(init, {"re", "im"}, "initial");
            if (!init.contains("re") || !init.contains("im") || init["re"].size() != 4 ||
                init["im"].size() != 4) {
                throw ConfigError("initial must hold four-element re/im arrays");
            }
            for (int i = 0; i < kSiteCount; ++i) {
                cfg.initial.amp[i] =
                    Complex{init["re"][i].get<double>(), init["im"][i].get<double>()};
            }
            if (std::abs(norm(cfg.initial) - 1.0) > 1e-12) {
                throw ConfigError("initial state is not normalized");
            }
            initial_from_config = true;
        }
        if (doc.contains("case")) {
            const int c = doc["case"].get<int>();
            if (c < 1 || c > 4) throw ConfigError("case must be in 1..4");
            const_cast<SimulateOptions&>(opt).gate_case = c;
        }
    }

    if (opt.alpha) cfg.params.alpha = *opt.alpha;
    if (opt.tau_final) cfg.evo.tau_final = *opt.tau_final;
    if (opt.dtau) cfg.evo.dtau = *opt.dtau;
    if (opt.scheme) cfg.scheme = scheme_from_string(*opt.scheme);

    if (!initial_from_config) {
        if (opt.gate_case < 1 || opt.gate_case > 4) throw ConfigError("case must be in 1..4");
        cfg.initial = initial_state(GateSpec::nor().cases[opt.gate_case - 1]);
    }

    try {
        cfg.params.validate();
        cfg.evo.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

int cmd_simulate(const SimulateOptions& opt) {
    const SimulateConfig cfg = build_simulate_config(opt);
    Trajectory traj;
    try {
        traj = evolve(cfg.initial, cfg.params, cfg.evo, cfg.scheme);
    } catch (const NonFiniteStateError& e) {
        std::cerr << "simulate: " << e.what() << "\n";
        return kExitNumerical;
    }

    std::ostringstream csv;
    csv << "tau,p00,p01,p10,p11,norm\n";
    for (const TrajectorySample& row : traj.samples) {
        csv << format_sig12(row.tau);
        for (double p : row.occupation) csv << ',' << format_sig12(p);
        csv << ',' << format_sig12(row.norm) << '\n';
    }
    emit(opt.out_path, csv.str());
    return kExitOk;
}

// --- verify ------------------------------------------------------------------

int cmd_verify(const std::string& out_path, double relaxed_bound) {
    const VerificationReport report = verify_reference_parameters(relaxed_bound);
    emit(out_path, to_json(report).dump(2));
    return report.pass ? kExitOk : kExitNumerical;
}

// --- synthesize ---------------------------------------------------------------

struct SynthesizeOptions {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
};

int cmd_synthesize(const SynthesizeOptions& opt) {
    SearchSpace space = SearchSpace::defaults();
    SynthesisConfig config;
    GateSpec spec = GateSpec::nor();

    if (!opt.config_path.empty()) {
        const json doc = load_json_file(opt.config_path);
        reject_unknown_keys(doc,
                            {"bounds", "restarts", "max_evaluations", "target_error",
                             "seed", "coarse_dtau", "fine_dtau", "scheme", "targets"},
                            "synthesize config");
        if (doc.contains("bounds")) {
            const json& b = doc["bounds"];
            reject_unknown_keys(b, {"alpha", "tau_final", "v00", "v01", "v10"}, "bounds");
            const char* names[kSynthDims] = {"alpha", "tau_final", "v00", "v01", "v10"};
            for (int i = 0; i < kSynthDims; ++i) {
                if (!b.contains(names[i])) continue;
                const json& iv = b[names[i]];
                if (!iv.is_array() || iv.size() != 2) {
                    throw ConfigError(std::string("bounds.") + names[i] +
                                      " must be [lo, hi]");
                }
                space.bounds[i] = Interval{iv[0].get<double>(), iv[1].get<double>()};
            }
        }
        config.restarts = static_cast<int>(require_integer(doc, "restarts", config.restarts));
        config.max_evaluations =
            require_integer(doc, "max_evaluations", config.max_evaluations);
        config.target_error = require_number(doc, "target_error", config.target_error);
        config.rng_seed = static_cast<std::uint64_t>(
            require_integer(doc, "seed", static_cast<long>(config.rng_seed)));
        config.coarse_dtau = require_number(doc, "coarse_dtau", config.coarse_dtau);
        config.fine_dtau = require_number(doc, "fine_dtau", config.fine_dtau);
        if (doc.contains("scheme")) {
            config.scheme = scheme_from_string(doc["scheme"].get<std::string>());
        }
        if (doc.contains("targets")) {
            const json& t = doc["targets"];
            if (!t.is_array() || t.size() != 4) throw ConfigError("targets must be 4 bits");
            for (int i = 0; i < 4; ++i) spec.cases[i].target = t[i].get<int>();
        }
    }
    if (opt.seed) config.rng_seed = *opt.seed;

    SynthesisResult result;
    try {
        result = synthesize(spec, space, config);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    emit(opt.out_path, to_json(result).dump(2));
    return result.target_met ? kExitOk : kExitBudget;
}

// --- search demo ---------------------------------------------------------------

struct SearchOptions {
    int n = 4;
    std::string rule = "min";  // nor | min | max
    std::string mode = "ideal";  // ideal | physical
    std::string oracle_path;
    std::uint64_t oracle_seed = 7;
    std::string out_path;
};

std::string key_to_bits(std::uint32_t key, int n) {
    std::string s(n, '0');
    for (int i = 0; i < n; ++i) {
        if (key & (1u << (n - 1 - i))) s[i] = '1';
    }
    return s;
}

Oracle load_oracle(const SearchOptions& opt) {
    Oracle oracle;
    oracle.kind = opt.rule == "nor" ? Oracle::Kind::legality : Oracle::Kind::cost;
    if (!opt.oracle_path.empty()) {
        json doc;
        try {
            doc = load_json_file(opt.oracle_path);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("oracle file: ") + e.what());
        }
        const std::uint32_t size = 1u << opt.n;
        auto table = std::make_shared<std::vector<std::int64_t>>(size);
        for (std::uint32_t k = 0; k < size; ++k) {
            const std::string bits = key_to_bits(k, opt.n);
            if (!doc.contains(bits) || !doc[bits].is_number_integer()) {
                throw ConfigError("oracle file must map every " + std::to_string(opt.n) +
                                  "-bit string to an integer; missing \"" + bits + "\"");
            }
            (*table)[k] = doc[bits].get<std::int64_t>();
        }
        oracle.fn = [table](std::uint32_t k) { return (*table)[k]; };
    } else {
        // built-in deterministic random oracle
        const std::uint64_t seed = opt.oracle_seed;
        const bool legality = oracle.kind == Oracle::Kind::legality;
        oracle.fn = [seed, legality](std::uint32_t k) {
            std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (k + 1);
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            z ^= z >> 31;
            return static_cast<std::int64_t>(legality ? (z & 1u) : (z % 1000));
        };
    }
    return oracle;
}

int cmd_search(const SearchOptions& opt) {
    if (opt.rule != "nor" && opt.rule != "min" && opt.rule != "max") {
        throw ConfigError("rule must be nor, min, or max");
    }
    if (opt.mode != "ideal" && opt.mode != "physical") {
        throw ConfigError("mode must be ideal or physical");
    }
    if (opt.mode == "physical" && opt.rule != "nor") {
        throw ConfigError("physical mode implements the NOR combiner only");
    }
    const int max_bits = opt.mode == "physical" ? 6 : kMaxOptimizeBits;
    if (opt.n < 1 || opt.n > max_bits) {
        throw ConfigError("n must be in 1.." + std::to_string(max_bits) + " for mode " +
                          opt.mode);
    }

    CandidateSpace space{opt.n, load_oracle(opt)};
    try {
        space.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    CombinerFn combiner = nullptr;
    if (opt.mode == "physical") {
        // every pair reduction runs a full gate evolution and thresholds the
        // readout occupation at 0.5
        const ReferenceParams& ref = reference_nor_params();
        combiner = [&ref](int f0, int f1) {
            const Trajectory traj =
                evolve(initial_state(GateCase{f0, f1, 0}), ref.system(), ref.evolution(),
                       SplittingScheme::strang_diagonal_first);
            return readout(traj.final_state, SiteIndex{1, 1}) > 0.5 ? 1 : 0;
        };
    }

    const ReductionRule rule = opt.rule == "nor"
                                   ? ReductionRule::nor_combiner()
                                   : ReductionRule::preference(opt.rule == "min");

    json out;
    out["n"] = opt.n;
    out["rule"] = opt.rule;
    out["mode"] = opt.mode;

    bool check_ok = false;
    OptimumResult result;
    try {
        result = determine_optimum(space, rule, combiner);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    if (rule.kind == ReductionRule::Kind::boolean_combiner) {
        // layer-by-layer cascade record
        json layers = json::array();
        CandidateSet set = apply_oracle(uniform_superposition(space), space);
        while (set.n_bits > 0) {
            ReduceOutcome r = reduce_pairs(set, rule, combiner);
            json layer = json::array();
            for (const Entry& e : r.reduced.entries) layer.push_back(e.f);
            layers.push_back(layer);
            set = std::move(r.reduced);
        }
        out["layers"] = layers;
        out["reduced_value"] = result.best_f;
        const int direct = direct_boolean_value(space, ReductionRule::nor_combiner());
        out["direct_value"] = direct;
        check_ok = static_cast<int>(result.best_f) == direct;
    } else {
        out["result_bitstring"] = key_to_bits(result.bitstring, opt.n);
        out["best_f"] = result.best_f;
        const std::uint32_t brute = brute_force_optimum(space, rule.minimize);
        out["brute_force_bitstring"] = key_to_bits(brute, opt.n);
        check_ok = brute == result.bitstring;

        json trace = json::array();
        for (const RoundTrace& t : result.trace) {
            trace.push_back(json{{"round", t.round},
                                 {"bit", t.bit},
                                 {"value", t.value},
                                 {"operations", t.operations}});
        }
        out["trace"] = trace;
    }

    out["total_operations"] = result.total_operations;
    // literal iteration count vs the advertised quadratic scaling
    const long n_states = 1L << opt.n;
    out["candidate_count"] = n_states;
    out["candidate_count_squared"] = n_states * n_states;
    out["check_ok"] = check_ok;

    emit(opt.out_path, out.dump(2));
    return check_ok ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"four-site nonlinear lattice gate simulator"};
    app.require_subcommand(1);

    SimulateOptions sim;
    CLI::App* simulate = app.add_subcommand("simulate", "evolve one initial condition and write a CSV trajectory");
    simulate->add_option("--config", sim.config_path, "JSON config file");
    simulate->add_option("--case", sim.gate_case, "gate case 1..4 (initial condition)");
    simulate->add_option("--alpha", sim.alpha, "override nonlinearity");
    simulate->add_option("--tau-final", sim.tau_final, "override final time");
    simulate->add_option("--dtau", sim.dtau, "override step size");
    simulate->add_option("--scheme", sim.scheme,
                         "strang_diagonal_first | strang_kinetic_first | lie");
    simulate->add_option("--out", sim.out_path, "output CSV path (default stdout)");

    std::string verify_out;
    double verify_bound = 0.10;
    CLI::App* verify = app.add_subcommand("verify", "score the built-in NOR parameter set and write a JSON report");
    verify->add_option("--out", verify_out, "output JSON path (default stdout)");
    verify->add_option("--bound", verify_bound, "relaxed per-case deviation bound");

    SynthesizeOptions syn;
    CLI::App* synthesize = app.add_subcommand("synthesize", "search for gate parameters realizing a truth table");
    synthesize->add_option("--config", syn.config_path, "JSON config file");
    synthesize->add_option("--seed", syn.seed, "override RNG seed");
    synthesize->add_option("--out", syn.out_path, "output JSON path (default stdout)");

    SearchOptions sea;
    CLI::App* search = app.add_subcommand("search", "run the pairwise elimination demo");
    search->add_option("--n", sea.n, "candidate bit count");
    search->add_option("--rule", sea.rule, "nor | min | max");
    search->add_option("--mode", sea.mode, "ideal | physical");
    search->add_option("--oracle", sea.oracle_path, "JSON oracle table {bitstring: value}");
    search->add_option("--oracle-seed", sea.oracle_seed, "seed for the built-in oracle");
    search->add_option("--out", sea.out_path, "output JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim);
        if (verify->parsed()) return cmd_verify(verify_out, verify_bound);
        if (synthesize->parsed()) return cmd_synthesize(syn);
        if (search->parsed()) return cmd_search(sea);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NonFiniteStateError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
