#include <doctest.h>

#include <cmath>

#include "gpgate/gate.hpp"
#include "gpgate/integrator.hpp"
#include "oracles.hpp"

using namespace gpgate;

namespace {
const SystemParams kLinearParams{0.0, {-0.4, 1.1, 0.7, 0.0}};
const SystemParams kNonlinearParams{2.35, {-0.003554, 2.124, 2.352, 0.0}};
}  // namespace

TEST_CASE("diagonal flow: identity at h=0, full revolution, occupations fixed") {
    const StateVector basis = StateVector::basis(SiteIndex{0, 0});
    SystemParams params{2.0, {0, 0, 0, 0}};

    StateVector same = diagonal_flow(basis, params, 0.0);
    CHECK(oracles::state_distance(same, basis) == 0.0);

    // phase = (V + alpha|psi|^2) h = 2*pi: a full revolution
    StateVector spun = diagonal_flow(basis, params, std::acos(-1.0));
    CHECK(std::abs(spun.amp[0] - Complex{1.0, 0.0}) < 1e-14);

    oracles::Rng rng(5);
    for (int trial = 0; trial < 32; ++trial) {
        const StateVector s = oracles::random_state(rng);
        const double h = rng.uniform(-3.0, 3.0);
        const StateVector t = diagonal_flow(s, kNonlinearParams, h);
        for (int i = 0; i < kSiteCount; ++i) {
            CHECK(std::abs(std::norm(t.amp[i]) - std::norm(s.amp[i])) < 1e-15);
        }
    }
}

TEST_CASE("kinetic flow: closed form against the eigendecomposition oracle") {
    const StateVector basis = StateVector::basis(SiteIndex{0, 0});
    CHECK(oracles::state_distance(kinetic_flow(basis, 0.0), basis) == 0.0);

    // all amplitude reaches the opposite corner at h = pi/2; |psi11|^2 = sin^4 h
    const double half_pi = 0.5 * std::acos(-1.0);
    StateVector crossed = kinetic_flow(basis, half_pi);
    CHECK(std::norm(crossed.amp[3]) == doctest::Approx(1.0).epsilon(1e-13));

    oracles::Rng rng(17);
    const auto kmat = oracles::kinetic_matrix();
    for (int trial = 0; trial < 48; ++trial) {
        const StateVector s = oracles::random_state(rng);
        const double h = rng.uniform(-2.0, 2.0);
        const StateVector got = kinetic_flow(s, h);
        const oracles::Vector4c want = oracles::propagator(kmat, h) * oracles::to_eigen(s);
        CHECK(oracles::state_distance(got, oracles::from_eigen(want)) < 1e-13);
        if (trial < 8) {
            const StateVector hop = kinetic_flow(basis, h);
            CHECK(std::norm(hop.amp[3]) ==
                  doctest::Approx(std::pow(std::sin(h), 4)).epsilon(1e-12));
        }
    }

    // the uniform state is a zero-eigenvalue eigenstate
    const StateVector flat = StateVector::uniform();
    CHECK(oracles::state_distance(kinetic_flow(flat, 1.3), flat) < 1e-15);
}

TEST_CASE("kinetic flow preserves norm exactly") {
    oracles::Rng rng(29);
    for (int trial = 0; trial < 64; ++trial) {
        const StateVector s = oracles::random_state(rng);
        CHECK(std::abs(norm(kinetic_flow(s, rng.uniform(-4.0, 4.0))) - 1.0) < 1e-14);
    }
}

TEST_CASE("step: h=0 is the identity") {
    oracles::Rng rng(31);
    const StateVector s = oracles::random_state(rng);
    for (auto scheme : {SplittingScheme::strang_diagonal_first,
                        SplittingScheme::strang_kinetic_first, SplittingScheme::lie}) {
        CHECK(oracles::state_distance(step(s, kNonlinearParams, 0.0, scheme), s) < 1e-15);
    }
}

TEST_CASE("step at alpha=0 converges to the dense propagator at second order") {
    const StateVector s0 = StateVector::equal_pair(SiteIndex{0, 0}, SiteIndex{1, 0});
    const auto h = oracles::linear_hamiltonian(kLinearParams);
    const double tau = 1.0;

    double prev_err = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double dt = 0.02 / (1 << k);
        EvolutionParams evo{dt, tau, 1L << 40};
        const StateVector fin = evolve(s0, kLinearParams, evo, //
                                       SplittingScheme::strang_diagonal_first)
                                    .final_state;
        const oracles::Vector4c exact = oracles::propagator(h, tau) * oracles::to_eigen(s0);
        const double err = oracles::state_distance(fin, oracles::from_eigen(exact));
        if (k > 0) {
            // halving h should cut the error by about four
            CHECK(prev_err / err == doctest::Approx(4.0).epsilon(0.25));
        }
        prev_err = err;
    }
}

TEST_CASE("one strang step vs two half steps differs at third order") {
    oracles::Rng rng(37);
    const StateVector s = oracles::random_state(rng);
    auto local_diff = [&](double h) {
        const StateVector whole = step(s, kNonlinearParams, h, //
                                       SplittingScheme::strang_diagonal_first);
        StateVector halves = step(s, kNonlinearParams, 0.5 * h,
                                  SplittingScheme::strang_diagonal_first);
        halves = step(halves, kNonlinearParams, 0.5 * h,
                      SplittingScheme::strang_diagonal_first);
        return oracles::state_distance(whole, halves);
    };
    const double d1 = local_diff(0.1);
    const double d2 = local_diff(0.05);
    const double d3 = local_diff(0.025);
    CHECK(d1 / d2 == doctest::Approx(8.0).epsilon(0.2));
    CHECK(d2 / d3 == doctest::Approx(8.0).epsilon(0.2));
}

TEST_CASE("free evolution from a corner follows sin^4 tau") {
    SystemParams free_params{0.0, {0, 0, 0, 0}};
    EvolutionParams evo{1e-3, 2.0, 100};
    const Trajectory traj =
        evolve(StateVector::basis(SiteIndex{0, 0}), free_params, evo,
               SplittingScheme::strang_diagonal_first);
    for (const TrajectorySample& row : traj.samples) {
        const double want = std::pow(std::sin(row.tau), 4);
        CHECK(row.occupation[3] == doctest::Approx(want).epsilon(1e-10));
    }

    // cross-check the closed form against the independent RK4 integrator
    const Trajectory rk = rk4_evolve(StateVector::basis(SiteIndex{0, 0}), free_params, evo);
    CHECK(oracles::state_distance(rk.final_state, traj.final_state) < 1e-9);
}

TEST_CASE("uniform state with uniform potential is stationary") {
    SystemParams params{1.9, {0.7, 0.7, 0.7, 0.7}};
    EvolutionParams evo{1e-3, 1.5, 250};
    const Trajectory traj =
        evolve(StateVector::uniform(), params, evo, SplittingScheme::strang_diagonal_first);
    for (const TrajectorySample& row : traj.samples) {
        for (double p : row.occupation) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("trajectory sampling layout") {
    EvolutionParams evo{1e-3, 1.0, 100};
    const Trajectory traj = evolve(StateVector::uniform(), kNonlinearParams, evo,
                                   SplittingScheme::strang_diagonal_first);
    CHECK(traj.samples.size() == 1000 / 100 + 1);
    CHECK(traj.samples.front().tau == 0.0);
    CHECK(traj.samples.back().tau == doctest::Approx(1.0).epsilon(1e-12));
    for (size_t i = 1; i < traj.samples.size(); ++i) {
        CHECK(traj.samples[i].tau > traj.samples[i - 1].tau);
    }
    for (const TrajectorySample& row : traj.samples) {
        double sum = 0.0;
        for (double p : row.occupation) sum += p;
        CHECK(sum == doctest::Approx(row.norm).epsilon(1e-12));
        CHECK(std::abs(row.norm - 1.0) < 1e-12);
    }

    // tau_final = 0: a single sample, occupations untouched
    EvolutionParams still{1e-3, 0.0, 10};
    const Trajectory one = evolve(StateVector::uniform(), kNonlinearParams, still,
                                  SplittingScheme::strang_diagonal_first);
    CHECK(one.samples.size() == 1);
    CHECK(one.samples[0].occupation[0] == doctest::Approx(0.25));
}

TEST_CASE("norm is preserved to 1e-12 over long nonlinear runs") {
    EvolutionParams evo{7.665e-4, 7.665, 1000};
    for (auto scheme : {SplittingScheme::strang_diagonal_first, SplittingScheme::lie}) {
        const Trajectory traj = evolve(StateVector::equal_pair(SiteIndex{0, 0}, SiteIndex{1, 0}),
                                       kNonlinearParams, evo, scheme);
        CHECK(traj.max_norm_deviation <= 1e-12);
    }
}

TEST_CASE("time reversal: conjugate final state and evolve back") {
    EvolutionParams evo{7.665e-4, 7.665, 1L << 40};
    const StateVector s0 = initial_state(GateCase{0, 1, 0});
    for (auto scheme :
         {SplittingScheme::strang_diagonal_first, SplittingScheme::strang_kinetic_first}) {
        const StateVector fin = evolve(s0, kNonlinearParams, evo, scheme).final_state;
        const StateVector back =
            evolve(fin.conjugated(), kNonlinearParams, evo, scheme).final_state;
        for (int i = 0; i < kSiteCount; ++i) {
            CHECK(std::abs(std::norm(back.amp[i]) - std::norm(s0.amp[i])) < 1e-8);
        }
    }
}

TEST_CASE("rk4 matches the dense propagator on a linear problem") {
    const StateVector s0 = StateVector::equal_pair(SiteIndex{0, 0}, SiteIndex{0, 1});
    EvolutionParams evo{1e-3, 7.665, 1L << 40};
    const StateVector fin = rk4_evolve(s0, kLinearParams, evo).final_state;
    const oracles::Vector4c exact =
        oracles::propagator(oracles::linear_hamiltonian(kLinearParams), 7.665) *
        oracles::to_eigen(s0);
    CHECK(oracles::state_distance(fin, oracles::from_eigen(exact)) < 1e-8);
}

TEST_CASE("rk4 is fourth order") {
    const StateVector s0 = initial_state(GateCase{0, 0, 1});
    auto err_at = [&](double dt) {
        EvolutionParams evo{dt, 1.0, 1L << 40};
        EvolutionParams ref_evo{dt / 16.0, 1.0, 1L << 40};
        const StateVector fin = rk4_evolve(s0, kNonlinearParams, evo).final_state;
        const StateVector ref = rk4_evolve(s0, kNonlinearParams, ref_evo).final_state;
        return oracles::state_distance(fin, ref);
    };
    const double e1 = err_at(0.02);
    const double e2 = err_at(0.01);
    CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.25));
}

TEST_CASE("split and rk4 agree on the reference nonlinear run") {
    const ReferenceParams& ref = reference_nor_params();
    const EvolutionParams evo = ref.evolution(1L << 40);
    const StateVector s0 = initial_state(GateCase{0, 0, 1});
    const StateVector split =
        evolve(s0, ref.system(), evo, SplittingScheme::strang_diagonal_first).final_state;
    const StateVector rk = rk4_evolve(s0, ref.system(), evo).final_state;
    for (int i = 0; i < kSiteCount; ++i) {
        CHECK(std::abs(std::norm(split.amp[i]) - std::norm(rk.amp[i])) < 1e-4);
    }
}

TEST_CASE("measure_order: strang is second order, lie is first") {
    const StateVector s0 = initial_state(GateCase{0, 0, 1});
    const std::vector<double> hs{0.02, 0.01, 0.005, 0.0025};

    const ConvergenceResult strang = measure_order(
        kNonlinearParams, s0, SplittingScheme::strang_diagonal_first, 1.0, hs);
    CHECK_FALSE(strang.roundoff_floor);
    CHECK(strang.slope > 1.9);
    CHECK(strang.slope < 2.1);

    const ConvergenceResult lie =
        measure_order(kNonlinearParams, s0, SplittingScheme::lie, 1.0, hs);
    CHECK_FALSE(lie.roundoff_floor);
    CHECK(lie.slope > 0.9);
    CHECK(lie.slope < 1.1);
}

TEST_CASE("measure_order detects the roundoff floor when the split is exact") {
    SystemParams free_params{0.0, {0, 0, 0, 0}};
    const ConvergenceResult res =
        measure_order(free_params, StateVector::basis(SiteIndex{0, 0}),
                      SplittingScheme::strang_diagonal_first, 1.0, {0.02, 0.01, 0.005});
    CHECK(res.roundoff_floor);
}

TEST_CASE("evolve rejects unnormalized input and bad step lists") {
    StateVector bad;
    bad.amp[0] = Complex{0.5, 0.0};
    EvolutionParams evo{1e-3, 1.0, 10};
    CHECK_THROWS_AS(evolve(bad, kLinearParams, evo, SplittingScheme::lie),
                    std::invalid_argument);
    CHECK_THROWS_AS(measure_order(kLinearParams, StateVector::uniform(),
                                  SplittingScheme::lie, 1.0, {0.01, 0.02, 0.03}),
                    std::invalid_argument);
    CHECK_THROWS_AS(measure_order(kLinearParams, StateVector::uniform(),
                                  SplittingScheme::lie, 1.0, {0.01, 0.005}),
                    std::invalid_argument);
}
