#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gpgate/lattice.hpp"

// Time evolution by operator splitting with exact sub-flows, plus an
// independent fixed-step RK4 integrator used for cross-validation and a
// convergence-order measurement harness.

namespace gpgate {

enum class SplittingScheme {
    strang_diagonal_first,  // D(h/2) K(h) D(h/2), globally second order
    strang_kinetic_first,   // K(h/2) D(h) K(h/2)
    lie,                    // K(h) then D(h), first order
};

const char* to_string(SplittingScheme scheme);
SplittingScheme scheme_from_string(const std::string& name);  // throws std::invalid_argument

struct NonFiniteStateError : std::runtime_error {
    explicit NonFiniteStateError(const std::string& what) : std::runtime_error(what) {}
};

struct NormDriftError : std::runtime_error {
    explicit NormDriftError(const std::string& what) : std::runtime_error(what) {}
};

struct TrajectorySample {
    double tau = 0.0;
    std::array<double, kSiteCount> occupation{};  // |psi_s|^2, linear order
    double norm = 0.0;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    StateVector final_state;
    double max_norm_deviation = 0.0;  // max |norm - 1| seen over all steps
};

// Site-local phase flow under [V_s + alpha |psi_s|^2]; exact for any h since
// occupations are constants of this sub-flow.
StateVector diagonal_flow(StateVector state, const SystemParams& params, double h);

// Hopping flow exp(-i h K), applied per axis through the closed form
// exp(-i h K_axis) = e^{-ih} (cos h * I + i sin h * X); exactly unitary.
StateVector kinetic_flow(StateVector state, double h);

StateVector step(StateVector state, const SystemParams& params, double h,
                 SplittingScheme scheme);

// Runs step_count = round(tau_final/dtau) steps, sampling occupations every
// sample_stride steps plus the final step. Throws NonFiniteStateError if an
// amplitude blows up.
Trajectory evolve(const StateVector& initial, const SystemParams& params,
                  const EvolutionParams& evo, SplittingScheme scheme);

// Classical RK4 on the full nonlinear right-hand side. Independent of the
// split-operator path; throws NormDriftError if |norm - 1| exceeds 1e-6.
Trajectory rk4_evolve(const StateVector& initial, const SystemParams& params,
                      const EvolutionParams& evo);

struct ConvergenceResult {
    double slope = 0.0;           // fitted log-log order
    bool roundoff_floor = false;  // all errors at the noise floor, slope meaningless
    std::vector<double> step_sizes;
    std::vector<double> errors;  // L2 final-state error vs RK4 reference
};

// Error-vs-h study against an RK4 reference at min(h_list)/100.
// h_list must contain at least three decreasing step sizes.
ConvergenceResult measure_order(const SystemParams& params, const StateVector& initial,
                                SplittingScheme scheme, double tau_final,
                                const std::vector<double>& h_list);

}  // namespace gpgate
