#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

// Classical bookkeeping simulation of the nonlinear search scheme: a uniform
// superposition over n-bit candidates is annotated with oracle values,
// optionally collapsed by measurement, and then repeatedly halved by a
// pairwise reduction over the least significant bit. Iterating the reduction
// and fixing one bit per round recovers the preferred candidate; the number
// of pair reductions is counted literally.

namespace gpgate {

struct SpaceTooLargeError : std::runtime_error {
    explicit SpaceTooLargeError(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyCollapseError : std::runtime_error {
    explicit EmptyCollapseError(const std::string& what) : std::runtime_error(what) {}
};

struct Oracle {
    enum class Kind {
        legality,  // values restricted to {0,1}
        cost,      // arbitrary integer scores
    };
    Kind kind = Kind::cost;
    std::function<std::int64_t(std::uint32_t)> fn;
};

inline constexpr int kMaxSpaceBits = 20;     // enumerable set cap
inline constexpr int kMaxOptimizeBits = 16;  // full iterated procedure cap

struct CandidateSpace {
    int n_bits = 0;
    Oracle oracle;

    void validate() const;  // throws SpaceTooLargeError / std::invalid_argument
    std::uint32_t size() const { return 1u << n_bits; }
};

struct Entry {
    std::uint32_t key = 0;
    std::int64_t f = 0;  // meaningful only when the owning set is annotated
};

struct CandidateSet {
    int n_bits = 0;
    bool annotated = false;
    std::vector<Entry> entries;     // unique, sorted by key
    double amplitude_weight = 0.0;  // uniform 1/sqrt(|entries|)
};

struct ReductionRule {
    enum class Kind { boolean_combiner, preference_selector };

    Kind kind = Kind::preference_selector;
    std::array<int, 4> table{};  // combiner output, indexed by 2*f0 + f1
    bool minimize = true;        // preference order
    // tie_break: the zero branch is preferred, always

    static ReductionRule nor_combiner();
    static ReductionRule preference(bool minimize);
};

// A group of up to two entries sharing the high n-1 bits; branch b holds the
// f-value of key 2*prefix + b when that key is present.
struct LsbGroup {
    std::uint32_t prefix = 0;
    std::optional<std::int64_t> branch0;
    std::optional<std::int64_t> branch1;
};

CandidateSet uniform_superposition(const CandidateSpace& space);

// Annotates every entry with oracle(key); the set must not be annotated yet.
CandidateSet apply_oracle(CandidateSet set, const CandidateSpace& space);

// Keeps the entries satisfying the predicate and renormalizes the weight.
CandidateSet collapse_subset(const CandidateSet& set,
                             const std::function<bool(const Entry&)>& predicate);

std::vector<LsbGroup> factor_lsb(const CandidateSet& set);

// Optional replacement for the combiner table; physical-gate mode plugs in a
// simulated evolution here. Called once per two-branch group.
using CombinerFn = std::function<int(int f0, int f1)>;

struct ReduceOutcome {
    CandidateSet reduced;     // set over n-1 bits
    long operations = 0;      // one per group
    std::vector<int> decisions;  // per group: chosen branch (preference)
                                 // or combiner output bit (boolean)
};

// Halves the set over the least significant bit. Groups with one branch pass
// the present f-value through unchanged. Groups are independent and run on
// the worker pool, merged by group index.
ReduceOutcome reduce_pairs(const CandidateSet& set, const ReductionRule& rule,
                           const CombinerFn& combiner = nullptr);

struct RoundTrace {
    int round = 0;       // 1-based
    int bit = 0;         // absolute bit index fixed this round (preference mode)
    int value = 0;       // fixed bit value, or the layer's single reduced value
    long operations = 0;
};

struct OptimumResult {
    std::uint32_t bitstring = 0;  // preference: reconstructed optimum;
                                  // boolean: the final cascaded bit
    std::int64_t best_f = 0;
    long total_operations = 0;
    std::vector<RoundTrace> trace;
};

// The full iterated procedure. Preference rules fix one bit per round, most
// significant first: the candidate set restricted to the bits already fixed
// is cascaded down to a single entry and the last surviving bit is kept.
// Boolean rules run a single cascade and decode the final value.
OptimumResult determine_optimum(const CandidateSpace& space, const ReductionRule& rule,
                                const CombinerFn& combiner = nullptr);

// Independent checks used by the CLI self-test and the test suites.
std::uint32_t brute_force_optimum(const CandidateSpace& space, bool minimize);
int direct_boolean_value(const CandidateSpace& space, const ReductionRule& rule);

}  // namespace gpgate
