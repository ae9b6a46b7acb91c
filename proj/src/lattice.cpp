#include "gpgate/lattice.hpp"

#include <cmath>

namespace gpgate {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

StateVector StateVector::basis(SiteIndex s) {
    StateVector v;
    v[s] = Complex{1.0, 0.0};
    return v;
}

StateVector StateVector::uniform() {
    StateVector v;
    v.amp.fill(Complex{0.5, 0.0});
    return v;
}

StateVector StateVector::equal_pair(SiteIndex a, SiteIndex b) {
    if (a == b) throw std::invalid_argument("equal_pair: sites must differ");
    StateVector v;
    v[a] = Complex{kInvSqrt2, 0.0};
    v[b] = Complex{kInvSqrt2, 0.0};
    return v;
}

StateVector StateVector::conjugated() const {
    StateVector v;
    for (int i = 0; i < kSiteCount; ++i) v.amp[i] = std::conj(amp[i]);
    return v;
}

bool StateVector::finite() const {
    for (const Complex& a : amp)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
    return true;
}

double norm(const StateVector& state) {
    double n = 0.0;
    for (const Complex& a : state.amp) n += std::norm(a);
    return n;
}

bool SystemParams::finite() const {
    if (!std::isfinite(alpha)) return false;
    for (double v : potential)
        if (!std::isfinite(v)) return false;
    return true;
}

void SystemParams::validate() const {
    if (!finite()) throw std::invalid_argument("SystemParams: non-finite field");
}

long EvolutionParams::step_count() const {
    return std::lround(tau_final / dtau);
}

void EvolutionParams::validate() const {
    if (!(dtau > 0.0) || !std::isfinite(dtau))
        throw std::invalid_argument("EvolutionParams: dtau must be positive");
    if (!(tau_final >= 0.0) || !std::isfinite(tau_final))
        throw std::invalid_argument("EvolutionParams: tau_final must be >= 0");
    if (sample_stride < 1)
        throw std::invalid_argument("EvolutionParams: sample_stride must be >= 1");
    if (tau_final > 0.0 && step_count() < 1)
        throw std::invalid_argument("EvolutionParams: tau_final below dtau/2");
}

namespace {

// Hopping part K psi = -[psi(~q0,q1) + psi(q0,~q1) - 2 psi].
Amplitudes apply_kinetic(const Amplitudes& a) {
    Amplitudes out;
    for (int s = 0; s < kSiteCount; ++s) {
        const int flip0 = s ^ 2;  // ~q0
        const int flip1 = s ^ 1;  // ~q1
        out[s] = 2.0 * a[s] - a[flip0] - a[flip1];
    }
    return out;
}

}  // namespace

double gp_energy(const StateVector& state, const SystemParams& params) {
    const Amplitudes k = apply_kinetic(state.amp);
    double e = 0.0;
    for (int s = 0; s < kSiteCount; ++s) {
        const double occ = std::norm(state.amp[s]);
        e += std::real(std::conj(state.amp[s]) * k[s]);
        e += params.potential[s] * occ + 0.5 * params.alpha * occ * occ;
    }
    return e;
}

Amplitudes rhs(const StateVector& state, const SystemParams& params) {
    Amplitudes k = apply_kinetic(state.amp);
    for (int s = 0; s < kSiteCount; ++s) {
        const double diag = params.potential[s] + params.alpha * std::norm(state.amp[s]);
        k[s] = Complex{0.0, -1.0} * (k[s] + diag * state.amp[s]);
    }
    return k;
}

}  // namespace gpgate
