#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "gpgate/gate.hpp"

// Derivative-free search over (alpha, tau_final, V(0,0), V(0,1), V(1,0)) for
// parameter sets realizing a target truth table. V(1,1) stays pinned at the
// zero reference. Nelder-Mead descents from seeded random restarts; the
// restarts are independent and run on the worker pool, merged by
// (error, restart index) so the outcome does not depend on the worker count.

namespace gpgate {

inline constexpr int kSynthDims = 5;  // alpha, tau_final, v00, v01, v10

using ParamVector = std::array<double, kSynthDims>;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct SearchSpace {
    std::array<Interval, kSynthDims> bounds{};

    // Defaults wide enough to contain the reference NOR solution with margin.
    static SearchSpace defaults();
    void validate() const;
};

struct SynthesisConfig {
    int restarts = 8;
    long max_evaluations = 50000;  // global budget, split evenly across restarts
    double target_error = 0.05;
    std::uint64_t rng_seed = 1;

    // simplex coefficients (standard Nelder-Mead ranges)
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    double spread_tolerance = 1e-7;

    double coarse_dtau = 5e-3;     // step size during search
    double fine_dtau = 7.665e-4;   // step size for the final verification
    SplittingScheme scheme = SplittingScheme::strang_diagonal_first;

    void validate() const;
};

struct RestartRecord {
    int restart = 0;
    double best_error = 0.0;  // running best across restarts 0..restart
};

struct SynthesisResult {
    ParamVector best_vector{};
    SystemParams best_params;     // alpha + potentials (v11 = 0)
    double best_tau_final = 0.0;
    double best_coarse_error = 0.0;  // objective value at the search step size
    GateReport best_report;          // re-evaluated at fine_dtau
    long evaluations_used = 0;
    std::vector<RestartRecord> history;
    bool target_met = false;  // false means the budget was exhausted
};

SystemParams params_from_vector(const ParamVector& v);

// Scores a candidate: gate_error max deviation at the given step size, with
// out-of-bounds coordinates clamped and penalized by the clamp distance.
// Candidates that blow up score 1.
double objective(const ParamVector& candidate, const GateSpec& spec, double evo_dtau,
                 SplittingScheme scheme, const SearchSpace& space);

struct NelderMeadOutcome {
    ParamVector best{};
    double value = 0.0;
    long evaluations = 0;
};

// Standard simplex descent; deterministic for a fixed seed (the seed only
// jitters the initial simplex). Stops on simplex spread < tolerance, on
// value < target_error, or on the evaluation budget.
NelderMeadOutcome nelder_mead(const std::function<double(const ParamVector&)>& fn,
                              const ParamVector& start, const SynthesisConfig& config,
                              const SearchSpace& space, long eval_budget,
                              std::uint64_t seed);

SynthesisResult synthesize(const GateSpec& spec, const SearchSpace& space,
                           const SynthesisConfig& config);

}  // namespace gpgate
