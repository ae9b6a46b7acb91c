#include "gpgate/search.hpp"

#include <algorithm>
#include <cmath>

#include "gpgate/parallel.hpp"

namespace gpgate {

void CandidateSpace::validate() const {
    if (n_bits < 1) throw std::invalid_argument("CandidateSpace: n_bits must be >= 1");
    if (n_bits > kMaxSpaceBits) {
        throw SpaceTooLargeError("CandidateSpace: n_bits " + std::to_string(n_bits) +
                                 " exceeds the enumerable cap " +
                                 std::to_string(kMaxSpaceBits));
    }
    if (!oracle.fn) throw std::invalid_argument("CandidateSpace: oracle not set");
}

ReductionRule ReductionRule::nor_combiner() {
    ReductionRule r;
    r.kind = Kind::boolean_combiner;
    r.table = {1, 0, 0, 0};  // output 1 only for (f0,f1) = (0,0)
    return r;
}

ReductionRule ReductionRule::preference(bool minimize) {
    ReductionRule r;
    r.kind = Kind::preference_selector;
    r.minimize = minimize;
    return r;
}

namespace {

double uniform_weight(std::size_t count) {
    return 1.0 / std::sqrt(static_cast<double>(count));
}

std::int64_t oracle_value(const CandidateSpace& space, std::uint32_t key) {
    const std::int64_t v = space.oracle.fn(key);
    if (space.oracle.kind == Oracle::Kind::legality && v != 0 && v != 1) {
        throw std::invalid_argument("legality oracle returned a non-bit value");
    }
    return v;
}

}  // namespace

CandidateSet uniform_superposition(const CandidateSpace& space) {
    space.validate();
    CandidateSet set;
    set.n_bits = space.n_bits;
    set.annotated = false;
    const std::uint32_t n = space.size();
    set.entries.resize(n);
    for (std::uint32_t k = 0; k < n; ++k) set.entries[k] = Entry{k, 0};
    set.amplitude_weight = uniform_weight(n);
    return set;
}

CandidateSet apply_oracle(CandidateSet set, const CandidateSpace& space) {
    space.validate();
    if (set.annotated) throw std::logic_error("apply_oracle: set already annotated");
    for (Entry& e : set.entries) e.f = oracle_value(space, e.key);
    set.annotated = true;
    return set;
}

CandidateSet collapse_subset(const CandidateSet& set,
                             const std::function<bool(const Entry&)>& predicate) {
    CandidateSet out;
    out.n_bits = set.n_bits;
    out.annotated = set.annotated;
    for (const Entry& e : set.entries) {
        if (predicate(e)) out.entries.push_back(e);
    }
    if (out.entries.empty()) {
        throw EmptyCollapseError("collapse_subset: no entry satisfies the predicate");
    }
    out.amplitude_weight = uniform_weight(out.entries.size());
    return out;
}

std::vector<LsbGroup> factor_lsb(const CandidateSet& set) {
    std::vector<LsbGroup> groups;
    std::size_t i = 0;
    while (i < set.entries.size()) {
        const Entry& e = set.entries[i];
        LsbGroup g;
        g.prefix = e.key >> 1;
        if ((e.key & 1u) == 0) {
            g.branch0 = e.f;
            if (i + 1 < set.entries.size() && (set.entries[i + 1].key >> 1) == g.prefix) {
                g.branch1 = set.entries[i + 1].f;
                ++i;
            }
        } else {
            g.branch1 = e.f;
        }
        groups.push_back(g);
        ++i;
    }
    return groups;
}

namespace {

struct GroupReduction {
    Entry entry;
    int decision;
};

GroupReduction reduce_group(const LsbGroup& g, const ReductionRule& rule,
                            const CombinerFn& combiner) {
    GroupReduction out;
    out.entry.key = g.prefix;
    if (g.branch0 && g.branch1) {
        const std::int64_t f0 = *g.branch0;
        const std::int64_t f1 = *g.branch1;
        if (rule.kind == ReductionRule::Kind::boolean_combiner) {
            if ((f0 != 0 && f0 != 1) || (f1 != 0 && f1 != 1)) {
                throw std::invalid_argument("boolean combiner applied to non-bit f-values");
            }
            const int b0 = static_cast<int>(f0);
            const int b1 = static_cast<int>(f1);
            const int value = combiner ? combiner(b0, b1) : rule.table[2 * b0 + b1];
            out.entry.f = value;
            out.decision = value;
        } else {
            // preferred branch; ties go to branch 0
            const bool take1 = rule.minimize ? (f1 < f0) : (f1 > f0);
            out.entry.f = take1 ? f1 : f0;
            out.decision = take1 ? 1 : 0;
        }
    } else {
        // a collapsed group passes its single f-value through unchanged
        const bool have1 = g.branch1.has_value();
        out.entry.f = have1 ? *g.branch1 : *g.branch0;
        out.decision = have1 ? 1 : 0;
    }
    return out;
}

}  // namespace

ReduceOutcome reduce_pairs(const CandidateSet& set, const ReductionRule& rule,
                           const CombinerFn& combiner) {
    if (set.n_bits < 1) throw std::invalid_argument("reduce_pairs: set has no bits left");
    if (!set.annotated) throw std::logic_error("reduce_pairs: set is not annotated");

    const std::vector<LsbGroup> groups = factor_lsb(set);

    ReduceOutcome out;
    out.operations = static_cast<long>(groups.size());
    out.decisions.resize(groups.size());
    out.reduced.n_bits = set.n_bits - 1;
    out.reduced.annotated = true;
    out.reduced.entries.resize(groups.size());
    out.reduced.amplitude_weight = uniform_weight(groups.size());

    const int workers = worker_count();
    const long count = static_cast<long>(groups.size());
#pragma omp parallel for num_threads(workers) schedule(static) if (workers > 1)
    for (long i = 0; i < count; ++i) {
        const GroupReduction r = reduce_group(groups[i], rule, combiner);
        out.reduced.entries[i] = r.entry;
        out.decisions[i] = r.decision;
    }
    return out;
}

namespace {

// Annotated candidate set over `bits` keys prefixed (above the low `bits`)
// by the bits already fixed.
CandidateSet restricted_set(const CandidateSpace& space, std::uint32_t fixed_prefix,
                            int bits) {
    CandidateSet set;
    set.n_bits = bits;
    set.annotated = true;
    const std::uint32_t n = 1u << bits;
    set.entries.resize(n);
    for (std::uint32_t j = 0; j < n; ++j) {
        const std::uint32_t key = (fixed_prefix << bits) | j;
        set.entries[j] = Entry{j, oracle_value(space, key)};
    }
    set.amplitude_weight = uniform_weight(n);
    return set;
}

}  // namespace

OptimumResult determine_optimum(const CandidateSpace& space, const ReductionRule& rule,
                                const CombinerFn& combiner) {
    space.validate();
    if (space.n_bits > kMaxOptimizeBits) {
        throw SpaceTooLargeError("determine_optimum: n_bits exceeds the cap " +
                                 std::to_string(kMaxOptimizeBits));
    }

    OptimumResult result;

    if (rule.kind == ReductionRule::Kind::boolean_combiner) {
        // single cascade; the decoded result is the final surviving value
        CandidateSet set = apply_oracle(uniform_superposition(space), space);
        for (int layer = 1; layer <= space.n_bits; ++layer) {
            ReduceOutcome r = reduce_pairs(set, rule, combiner);
            result.total_operations += r.operations;
            RoundTrace t;
            t.round = layer;
            t.bit = -1;
            t.value = static_cast<int>(r.reduced.entries.size() == 1
                                           ? r.reduced.entries[0].f
                                           : -1);
            t.operations = r.operations;
            result.trace.push_back(t);
            set = std::move(r.reduced);
        }
        result.bitstring = static_cast<std::uint32_t>(set.entries[0].f);
        result.best_f = set.entries[0].f;
        return result;
    }

    // One bit fixed per round, most significant first. Each round cascades
    // the restricted set down to a single entry; the branch taken by the last
    // reduction is the value of the surviving (most significant) bit.
    std::uint32_t fixed_prefix = 0;
    for (int round = 1; round <= space.n_bits; ++round) {
        const int bits = space.n_bits - round + 1;
        CandidateSet set = restricted_set(space, fixed_prefix, bits);
        long round_ops = 0;
        int last_decision = 0;
        for (int layer = 0; layer < bits; ++layer) {
            ReduceOutcome r = reduce_pairs(set, rule, combiner);
            round_ops += r.operations;
            last_decision = r.decisions[0];
            set = std::move(r.reduced);
        }
        fixed_prefix = (fixed_prefix << 1) | static_cast<std::uint32_t>(last_decision);
        result.total_operations += round_ops;

        RoundTrace t;
        t.round = round;
        t.bit = bits - 1;
        t.value = last_decision;
        t.operations = round_ops;
        result.trace.push_back(t);
        result.best_f = set.entries[0].f;
    }
    result.bitstring = fixed_prefix;
    return result;
}

std::uint32_t brute_force_optimum(const CandidateSpace& space, bool minimize) {
    space.validate();
    const std::uint32_t n = space.size();
    std::uint32_t best_key = 0;
    std::int64_t best_f = oracle_value(space, 0);
    for (std::uint32_t k = 1; k < n; ++k) {
        const std::int64_t f = oracle_value(space, k);
        const bool better = minimize ? (f < best_f) : (f > best_f);
        if (better) {
            best_f = f;
            best_key = k;
        }
    }
    return best_key;
}

namespace {

std::int64_t direct_tree_value(const CandidateSpace& space, const ReductionRule& rule,
                               int level, std::uint32_t j) {
    if (level == 0) {
        const std::int64_t v = oracle_value(space, j);
        if (v != 0 && v != 1) {
            throw std::invalid_argument("boolean combiner applied to non-bit f-values");
        }
        return v;
    }
    const std::int64_t f0 = direct_tree_value(space, rule, level - 1, 2 * j);
    const std::int64_t f1 = direct_tree_value(space, rule, level - 1, 2 * j + 1);
    return rule.table[2 * static_cast<int>(f0) + static_cast<int>(f1)];
}

}  // namespace

int direct_boolean_value(const CandidateSpace& space, const ReductionRule& rule) {
    space.validate();
    if (rule.kind != ReductionRule::Kind::boolean_combiner) {
        throw std::invalid_argument("direct_boolean_value: boolean rule required");
    }
    return static_cast<int>(direct_tree_value(space, rule, space.n_bits, 0));
}

}  // namespace gpgate
