#include "gpgate/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gpgate/parallel.hpp"

namespace gpgate {

namespace {

// splitmix64; used for all synthesis randomness so results do not depend on
// the standard library's distribution implementations.
std::uint64_t mix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
    return static_cast<double>(mix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace

SearchSpace SearchSpace::defaults() {
    SearchSpace s;
    s.bounds[0] = {0.0, 5.0};   // alpha
    s.bounds[1] = {1.0, 12.0};  // tau_final
    s.bounds[2] = {-3.0, 3.0};  // v00
    s.bounds[3] = {-3.0, 3.0};  // v01
    s.bounds[4] = {-3.0, 3.0};  // v10
    return s;
}

void SearchSpace::validate() const {
    for (const Interval& b : bounds) {
        if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo <= b.hi)) {
            throw std::invalid_argument("SearchSpace: invalid interval");
        }
    }
    if (!(bounds[1].lo > 0.0)) {
        throw std::invalid_argument("SearchSpace: tau_final lower bound must be > 0");
    }
}

void SynthesisConfig::validate() const {
    if (restarts < 1) throw std::invalid_argument("SynthesisConfig: restarts must be >= 1");
    if (max_evaluations < restarts * (kSynthDims + 2)) {
        throw std::invalid_argument("SynthesisConfig: evaluation budget too small");
    }
    if (!(target_error > 0.0 && target_error <= 1.0)) {
        throw std::invalid_argument("SynthesisConfig: target_error must be in (0,1]");
    }
    if (!(reflection > 0.0) || !(expansion > 1.0) || !(contraction > 0.0) ||
        !(contraction < 1.0) || !(shrink > 0.0) || !(shrink < 1.0)) {
        throw std::invalid_argument("SynthesisConfig: simplex coefficients out of range");
    }
    if (!(spread_tolerance > 0.0)) {
        throw std::invalid_argument("SynthesisConfig: spread_tolerance must be > 0");
    }
    if (!(coarse_dtau > 0.0) || !(fine_dtau > 0.0)) {
        throw std::invalid_argument("SynthesisConfig: step sizes must be > 0");
    }
}

SystemParams params_from_vector(const ParamVector& v) {
    return SystemParams{v[0], {v[2], v[3], v[4], 0.0}};
}

double objective(const ParamVector& candidate, const GateSpec& spec, double evo_dtau,
                 SplittingScheme scheme, const SearchSpace& space) {
    ParamVector clamped = candidate;
    double penalty = 0.0;
    for (int i = 0; i < kSynthDims; ++i) {
        if (!std::isfinite(clamped[i])) return 1.0 + 1e3;
        const Interval& b = space.bounds[i];
        if (clamped[i] < b.lo) {
            penalty += b.lo - clamped[i];
            clamped[i] = b.lo;
        } else if (clamped[i] > b.hi) {
            penalty += clamped[i] - b.hi;
            clamped[i] = b.hi;
        }
    }
    const EvolutionParams evo{evo_dtau, clamped[1], 1L << 60};
    const GateReport report =
        gate_error(params_from_vector(clamped), evo, spec, scheme, /*threshold=*/1.0);
    return report.max_deviation + penalty;
}

NelderMeadOutcome nelder_mead(const std::function<double(const ParamVector&)>& fn,
                              const ParamVector& start, const SynthesisConfig& config,
                              const SearchSpace& space, long eval_budget,
                              std::uint64_t seed) {
    struct Vertex {
        ParamVector x;
        double f;
    };

    long evals = 0;
    auto eval = [&](const ParamVector& x) {
        ++evals;
        return fn(x);
    };

    // initial simplex: start plus one jittered step per coordinate
    std::uint64_t rng = seed;
    std::vector<Vertex> simplex;
    simplex.push_back({start, eval(start)});
    for (int i = 0; i < kSynthDims; ++i) {
        ParamVector x = start;
        const Interval& b = space.bounds[i];
        const double span = std::max(b.hi - b.lo, 1e-3);
        double stepsize = 0.10 * span * (0.8 + 0.4 * uniform01(rng));
        if (x[i] + stepsize > b.hi) stepsize = -stepsize;
        x[i] += stepsize;
        simplex.push_back({x, eval(x)});
    }

    auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

    while (true) {
        std::stable_sort(simplex.begin(), simplex.end(), by_value);
        const Vertex& best = simplex.front();
        Vertex& worst = simplex.back();

        if (best.f < config.target_error || evals >= eval_budget) break;
        double spread = 0.0;
        for (const Vertex& v : simplex) {
            for (int i = 0; i < kSynthDims; ++i) {
                spread = std::max(spread, std::abs(v.x[i] - best.x[i]));
            }
        }
        if (spread < config.spread_tolerance) break;

        ParamVector centroid{};
        for (size_t v = 0; v + 1 < simplex.size(); ++v) {
            for (int i = 0; i < kSynthDims; ++i) centroid[i] += simplex[v].x[i];
        }
        for (int i = 0; i < kSynthDims; ++i) centroid[i] /= kSynthDims;

        auto along = [&](double t) {
            ParamVector x;
            for (int i = 0; i < kSynthDims; ++i) x[i] = centroid[i] + t * (centroid[i] - worst.x[i]);
            return x;
        };

        const ParamVector xr = along(config.reflection);
        const double fr = eval(xr);
        if (fr < best.f) {
            const ParamVector xe = along(config.reflection * config.expansion);
            const double fe = eval(xe);
            if (fe < fr) {
                worst = {xe, fe};
            } else {
                worst = {xr, fr};
            }
            continue;
        }
        if (fr < simplex[simplex.size() - 2].f) {
            worst = {xr, fr};
            continue;
        }
        if (fr < worst.f) {
            const ParamVector xc = along(config.reflection * config.contraction);
            const double fc = eval(xc);
            if (fc <= fr) {
                worst = {xc, fc};
                continue;
            }
        } else {
            const ParamVector xc = along(-config.contraction);
            const double fc = eval(xc);
            if (fc < worst.f) {
                worst = {xc, fc};
                continue;
            }
        }
        // shrink toward the best vertex
        for (size_t v = 1; v < simplex.size(); ++v) {
            for (int i = 0; i < kSynthDims; ++i) {
                simplex[v].x[i] =
                    simplex[0].x[i] + config.shrink * (simplex[v].x[i] - simplex[0].x[i]);
            }
            simplex[v].f = eval(simplex[v].x);
        }
    }

    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    return NelderMeadOutcome{simplex.front().x, simplex.front().f, evals};
}

SynthesisResult synthesize(const GateSpec& spec, const SearchSpace& space,
                           const SynthesisConfig& config) {
    spec.validate();
    space.validate();
    config.validate();
    if (space.bounds[1].lo < config.coarse_dtau) {
        throw std::invalid_argument("synthesize: tau_final bound below the coarse step");
    }

    auto fn = [&](const ParamVector& x) {
        return objective(x, spec, config.coarse_dtau, config.scheme, space);
    };

    const long per_restart_budget = config.max_evaluations / config.restarts;
    std::vector<NelderMeadOutcome> outcomes(config.restarts);

    const int workers = worker_count();
#pragma omp parallel for num_threads(workers) schedule(dynamic) if (workers > 1)
    for (int r = 0; r < config.restarts; ++r) {
        std::uint64_t stream = config.rng_seed + 0x632BE59BD9B4E019ull * (r + 1);
        ParamVector start;
        for (int i = 0; i < kSynthDims; ++i) {
            const Interval& b = space.bounds[i];
            start[i] = b.lo + (b.hi - b.lo) * uniform01(stream);
        }
        outcomes[r] = nelder_mead(fn, start, config, space, per_restart_budget, stream);
    }

    SynthesisResult result;
    int best_restart = 0;
    double running_best = outcomes[0].value;
    for (int r = 0; r < config.restarts; ++r) {
        result.evaluations_used += outcomes[r].evaluations;
        if (outcomes[r].value < running_best) {
            running_best = outcomes[r].value;
            best_restart = r;
        }
        result.history.push_back(RestartRecord{r, running_best});
    }

    const NelderMeadOutcome& chosen = outcomes[best_restart];
    result.best_vector = chosen.best;
    result.best_coarse_error = chosen.value;
    result.best_params = params_from_vector(chosen.best);
    result.best_tau_final = chosen.best[1];
    const EvolutionParams fine{config.fine_dtau, chosen.best[1], 1L << 60};
    result.best_report =
        gate_error(result.best_params, fine, spec, config.scheme, config.target_error);
    result.target_met = chosen.value < config.target_error &&
                        result.best_report.max_deviation < config.target_error;
    return result;
}

}  // namespace gpgate
