#pragma once

#include <array>
#include <complex>
#include <stdexcept>

// Core types for the 2x2 lattice: a wavefunction over four sites indexed by
// two bits, and the system parameters of the discrete nonlinear Schroedinger
// dynamics
//
//   i dpsi/dtau = -[psi(~q0,q1) + psi(q0,~q1) - 2 psi] + [V + alpha |psi|^2] psi
//
// Everything is dimensionless: energies are in units of the hopping scale and
// tau is the matching unitless time (hbar = 1 throughout). The linear site
// index is 2*q0 + q1, fixed once here and used by every file format and report.

namespace gpgate {

using Complex = std::complex<double>;

inline constexpr int kSiteCount = 4;

struct SiteIndex {
    int q0 = 0;
    int q1 = 0;

    constexpr int linear() const { return 2 * q0 + q1; }

    static constexpr SiteIndex from_linear(int idx) {
        return SiteIndex{(idx >> 1) & 1, idx & 1};
    }

    constexpr bool valid() const {
        return (q0 == 0 || q0 == 1) && (q1 == 0 || q1 == 1);
    }
    friend constexpr bool operator==(SiteIndex a, SiteIndex b) {
        return a.q0 == b.q0 && a.q1 == b.q1;
    }
};

using Amplitudes = std::array<Complex, kSiteCount>;

struct StateVector {
    Amplitudes amp{};  // linear index order (0,0),(0,1),(1,0),(1,1)

    Complex& operator[](SiteIndex s) { return amp[s.linear()]; }
    const Complex& operator[](SiteIndex s) const { return amp[s.linear()]; }

    // Construction helpers; each returns an exactly normalized state.
    static StateVector basis(SiteIndex s);
    static StateVector uniform();
    static StateVector equal_pair(SiteIndex a, SiteIndex b);

    StateVector conjugated() const;
    bool finite() const;
};

double norm(const StateVector& state);

// Dimensionless Hamiltonian parameters. potential[3] (site (1,1)) is the
// conventional zero reference; other conventions are allowed but reported.
struct SystemParams {
    double alpha = 0.0;
    std::array<double, kSiteCount> potential{};

    bool finite() const;
    bool reference_site_is_zero() const { return potential[3] == 0.0; }
    void validate() const;  // throws std::invalid_argument
};

struct EvolutionParams {
    double dtau = 1e-3;
    double tau_final = 0.0;
    long sample_stride = 10;

    long step_count() const;
    void validate() const;  // throws std::invalid_argument
};

// Sum of site norms; 1 for any properly constructed state.
double norm(const StateVector& state);

// Conserved energy functional of the lattice equation, in hopping units:
//   E = <psi|K|psi> + sum_s V_s |psi_s|^2 + (alpha/2) sum_s |psi_s|^4.
double gp_energy(const StateVector& state, const SystemParams& params);

// Right-hand side dpsi/dtau of the equation of motion, for all four sites.
Amplitudes rhs(const StateVector& state, const SystemParams& params);

}  // namespace gpgate
