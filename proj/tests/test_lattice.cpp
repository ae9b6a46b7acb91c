#include <doctest.h>

#include "gpgate/gate.hpp"
#include "gpgate/lattice.hpp"
#include "oracles.hpp"

using namespace gpgate;

TEST_CASE("site index linearization is the fixed bijection") {
    CHECK(SiteIndex{0, 0}.linear() == 0);
    CHECK(SiteIndex{0, 1}.linear() == 1);
    CHECK(SiteIndex{1, 0}.linear() == 2);
    CHECK(SiteIndex{1, 1}.linear() == 3);
    for (int i = 0; i < kSiteCount; ++i) {
        CHECK(SiteIndex::from_linear(i).linear() == i);
    }
}

TEST_CASE("norm of construction helpers") {
    CHECK(norm(StateVector::uniform()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norm(StateVector::basis(SiteIndex{0, 0})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norm(StateVector::equal_pair(SiteIndex{0, 0}, SiteIndex{1, 0})) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(StateVector::equal_pair(SiteIndex{1, 1}, SiteIndex{1, 1}),
                    std::invalid_argument);
}

TEST_CASE("gp_energy on hand-evaluated states") {
    SystemParams zero{0.0, {0, 0, 0, 0}};
    CHECK(gp_energy(StateVector::uniform(), zero) == doctest::Approx(0.0).epsilon(1e-14));

    // single occupied site: kinetic diagonal 2 plus nonlinear alpha/2
    SystemParams nl{2.0, {0, 0, 0, 0}};
    CHECK(gp_energy(StateVector::basis(SiteIndex{0, 0}), nl) == doctest::Approx(3.0));
}

TEST_CASE("gp_energy of the first gate case at tau=0 (frozen)") {
    const ReferenceParams& ref = reference_nor_params();
    const StateVector s = initial_state(GateCase{0, 0, 1});
    // <K> = 1, potential (v00+v10)/2, nonlinear (alpha/2)(1/4+1/4)
    const double expected =
        1.0 + 0.5 * (ref.potential[0] + ref.potential[2]) + 0.5 * ref.alpha * 0.5;
    CHECK(expected == doctest::Approx(2.761723).epsilon(1e-12));
    CHECK(gp_energy(s, ref.system()) == doctest::Approx(2.761723).epsilon(1e-12));
}

TEST_CASE("gp_energy is invariant under a global phase") {
    oracles::Rng rng(11);
    const SystemParams params{1.7, {0.3, -1.2, 2.0, 0.0}};
    for (int trial = 0; trial < 32; ++trial) {
        const StateVector s = oracles::random_state(rng);
        StateVector rotated = s;
        const Complex phase = std::polar(1.0, rng.uniform(0.0, 6.28));
        for (auto& a : rotated.amp) a *= phase;
        CHECK(gp_energy(rotated, params) ==
              doctest::Approx(gp_energy(s, params)).epsilon(1e-13));
    }
}

TEST_CASE("rhs on hand-evaluated states") {
    SystemParams zero{0.0, {0, 0, 0, 0}};
    const Amplitudes flat = rhs(StateVector::uniform(), zero);
    for (const Complex& a : flat) CHECK(std::abs(a) < 1e-15);

    const Amplitudes hop = rhs(StateVector::basis(SiteIndex{0, 0}), zero);
    CHECK(hop[0] == Complex{0.0, -2.0});
    CHECK(hop[1] == Complex{0.0, 1.0});
    CHECK(hop[2] == Complex{0.0, 1.0});
    CHECK(hop[3] == Complex{0.0, 0.0});
}

TEST_CASE("rhs at alpha=0 equals -iH psi for the dense Hamiltonian") {
    oracles::Rng rng(23);
    const SystemParams params{0.0, {-0.4, 1.1, 0.7, 0.0}};
    const auto h = oracles::linear_hamiltonian(params);
    for (int trial = 0; trial < 64; ++trial) {
        const StateVector s = oracles::random_state(rng);
        const Amplitudes got = rhs(s, params);
        const oracles::Vector4c want = Complex{0.0, -1.0} * (h * oracles::to_eigen(s));
        for (int i = 0; i < kSiteCount; ++i) {
            CHECK(std::abs(got[i] - want(i)) < 1e-14);
        }
    }
}

TEST_CASE("params validation") {
    SystemParams bad{std::nan(""), {0, 0, 0, 0}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    SystemParams shifted{1.0, {0.0, 0.0, 0.0, 0.5}};
    CHECK_FALSE(shifted.reference_site_is_zero());
    CHECK_NOTHROW(shifted.validate());

    EvolutionParams evo{1e-3, 1.0, 10};
    CHECK(evo.step_count() == 1000);
    CHECK_NOTHROW(evo.validate());
    CHECK_THROWS_AS((EvolutionParams{-1e-3, 1.0, 10}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((EvolutionParams{1e-3, 1.0, 0}).validate(), std::invalid_argument);
    // tau_final > 0 must give at least one step
    CHECK_THROWS_AS((EvolutionParams{1e-3, 4e-4, 10}).validate(), std::invalid_argument);
    // rounding keeps |steps*dtau - tau_final| <= dtau/2
    EvolutionParams round{7.665e-4, 7.665, 10};
    CHECK(round.step_count() == 10000);
    CHECK(std::abs(round.step_count() * round.dtau - round.tau_final) <= round.dtau / 2);
}
