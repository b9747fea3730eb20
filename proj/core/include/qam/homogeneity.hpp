#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qam/am_core.hpp"
#include "qam/pointer_matrix.hpp"
#include "qam/rational.hpp"

namespace qam {

/// P²: entry (j, k) is set iff j and k lie in different subcontexts and take
/// different outcomes. Symmetric with a zero diagonal.
PointerMatrix pointer_heterogeneity_matrix(const Dataset& dataset, const FeatureVector& given);

// The four homogeneity criteria. Each is computed independently of the
// others; they agree on every input. `members` are zero-based positions of
// the exemplars inside the supracontext.

/// No member pair crosses a subcontext boundary with a change in outcome.
bool is_homogeneous_pointer(const Query& query, std::span<const std::size_t> members);
/// Not (two or more subcontexts and two or more outcomes).
bool is_homogeneous_plurality(const Query& query, std::span<const std::size_t> members);
/// A single outcome, or failing that a single subcontext.
bool is_homogeneous_determinism(const Query& query, std::span<const std::size_t> members);
/// Ordered disagreeing pairs in the supracontext equal those within subcontexts.
bool is_homogeneous_disagreement(const Query& query, std::span<const std::size_t> members);

bool is_homogeneous_pointer(const Dataset& dataset, const FeatureVector& given, const SupracontextMask& mask);
bool is_homogeneous_plurality(const Dataset& dataset, const FeatureVector& given, const SupracontextMask& mask);
bool is_homogeneous_determinism(const Dataset& dataset, const FeatureVector& given, const SupracontextMask& mask);
bool is_homogeneous_disagreement(const Dataset& dataset, const FeatureVector& given, const SupracontextMask& mask);

struct SupracontextVerdict {
    SupracontextMask mask;
    std::vector<std::size_t> members;
    bool homogeneous = true;
    std::size_t dimension = 0;  // dataset size m

    /// A²: every member pair when homogeneous, otherwise all zeros.
    PointerMatrix pointers() const;
    std::size_t pointer_count() const { return homogeneous ? members.size() * members.size() : 0; }
};

struct AnalogicalSet {
    std::vector<SupracontextVerdict> verdicts;  // lattice order
    std::vector<Outcome> alphabet;
    std::vector<std::size_t> exemplar_outcomes;  // alphabet code per exemplar
    std::vector<std::uint64_t> outcome_counts;   // pointers by target outcome, aligned with alphabet
    std::uint64_t total_pointers = 0;

    std::uint64_t count(const Outcome& outcome) const;
    const SupracontextVerdict& verdict(const SupracontextMask& mask) const;
};

/// Classifies every supracontext with the pointer criterion and tallies the
/// surviving pointers by the outcome of their target exemplar.
AnalogicalSet analogical_set(const Dataset& dataset, const FeatureVector& given,
                             std::size_t variable_cap = kDefaultVariableCap);

struct OutcomeDistribution {
    std::vector<Outcome> outcomes;
    std::vector<Rational> probabilities;

    Rational probability(const Outcome& outcome) const;
    /// Lexicographically smallest label among the most probable outcomes.
    const Outcome& most_likely() const;

    friend bool operator==(const OutcomeDistribution&, const OutcomeDistribution&) = default;
};

/// One-step selection: every homogeneous pointer is equally likely.
OutcomeDistribution predict_distribution(const AnalogicalSet& set);

/// Choose a homogeneous supracontext with weight k², then a member uniformly.
OutcomeDistribution two_step_distribution(const AnalogicalSet& set);

/// Cumulative-count inversion over the common denominator of the
/// distribution, driven by std::mt19937_64 seeded with `seed`. The uniform
/// draw uses rejection so the result does not depend on the standard
/// library's distribution classes.
const Outcome& sample_outcome(const OutcomeDistribution& distribution, std::uint64_t seed);

}  // namespace qam
