#include "qam/homogeneity.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>

namespace qam {

PointerMatrix pointer_heterogeneity_matrix(const Dataset& dataset, const FeatureVector& given) {
    const Query query(dataset, given);
    PointerMatrix p2(query.size());
    for (std::size_t j = 0; j < query.size(); ++j) {
        for (std::size_t k = 0; k < query.size(); ++k) {
            const bool other_subcontext = subcontext_key(query.difference(j)) != subcontext_key(query.difference(k));
            const bool other_outcome = query.outcome_code(j) != query.outcome_code(k);
            p2.set(j, k, other_subcontext && other_outcome);
        }
    }
    return p2;
}

bool is_homogeneous_pointer(const Query& query, std::span<const std::size_t> members) {
    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            const std::size_t j = members[a], k = members[b];
            if (query.outcome_code(j) != query.outcome_code(k) && query.difference(j) != query.difference(k)) {
                return false;
            }
        }
    }
    return true;
}

bool is_homogeneous_plurality(const Query& query, std::span<const std::size_t> members) {
    std::set<DifferenceVector> subcontexts;
    std::set<std::size_t> outcomes;
    for (std::size_t j : members) {
        subcontexts.insert(subcontext_key(query.difference(j)));
        outcomes.insert(query.outcome_code(j));
    }
    return !(subcontexts.size() >= 2 && outcomes.size() >= 2);
}

bool is_homogeneous_determinism(const Query& query, std::span<const std::size_t> members) {
    if (members.empty()) return true;
    const std::size_t first = members.front();
    const bool deterministic = std::all_of(members.begin(), members.end(), [&](std::size_t j) {
        return query.outcome_code(j) == query.outcome_code(first);
    });
    if (deterministic) return true;
    return std::all_of(members.begin(), members.end(), [&](std::size_t j) {
        return subcontext_key(query.difference(j)) == subcontext_key(query.difference(first));
    });
}

bool is_homogeneous_disagreement(const Query& query, std::span<const std::size_t> members) {
    // Ordered disagreeing pairs in a group of size k with outcome counts c_o
    // is k^2 - sum c_o^2.
    const auto disagreements = [](const std::map<std::size_t, std::uint64_t>& by_outcome) {
        std::uint64_t k = 0, same = 0;
        for (const auto& [outcome, c] : by_outcome) {
            k += c;
            same += c * c;
        }
        return k * k - same;
    };
    std::map<std::size_t, std::uint64_t> supra;
    std::map<DifferenceVector, std::map<std::size_t, std::uint64_t>> sub;
    for (std::size_t j : members) {
        ++supra[query.outcome_code(j)];
        ++sub[subcontext_key(query.difference(j))][query.outcome_code(j)];
    }
    std::uint64_t within = 0;
    for (const auto& [key, counts] : sub) within += disagreements(counts);
    return disagreements(supra) == within;
}

namespace {

template <class Criterion>
bool evaluate(Criterion criterion, const Dataset& dataset, const FeatureVector& given,
              const SupracontextMask& mask) {
    const Query query(dataset, given);
    const std::vector<std::size_t> members = query.members(mask);
    return criterion(query, std::span<const std::size_t>(members));
}

}  // namespace

bool is_homogeneous_pointer(const Dataset& dataset, const FeatureVector& given, const SupracontextMask& mask) {
    return evaluate([](const Query& q, std::span<const std::size_t> m) { return is_homogeneous_pointer(q, m); },
                    dataset, given, mask);
}

bool is_homogeneous_plurality(const Dataset& dataset, const FeatureVector& given, const SupracontextMask& mask) {
    return evaluate([](const Query& q, std::span<const std::size_t> m) { return is_homogeneous_plurality(q, m); },
                    dataset, given, mask);
}

bool is_homogeneous_determinism(const Dataset& dataset, const FeatureVector& given, const SupracontextMask& mask) {
    return evaluate([](const Query& q, std::span<const std::size_t> m) { return is_homogeneous_determinism(q, m); },
                    dataset, given, mask);
}

bool is_homogeneous_disagreement(const Dataset& dataset, const FeatureVector& given, const SupracontextMask& mask) {
    return evaluate([](const Query& q, std::span<const std::size_t> m) { return is_homogeneous_disagreement(q, m); },
                    dataset, given, mask);
}

PointerMatrix SupracontextVerdict::pointers() const {
    PointerMatrix a2(dimension);
    if (!homogeneous) return a2;
    for (std::size_t j : members) {
        for (std::size_t k : members) a2.set(j, k, true);
    }
    return a2;
}

std::uint64_t AnalogicalSet::count(const Outcome& outcome) const {
    const auto it = std::find(alphabet.begin(), alphabet.end(), outcome);
    return it == alphabet.end() ? 0 : outcome_counts[static_cast<std::size_t>(it - alphabet.begin())];
}

const SupracontextVerdict& AnalogicalSet::verdict(const SupracontextMask& mask) const {
    const auto it = std::find_if(verdicts.begin(), verdicts.end(),
                                 [&](const SupracontextVerdict& v) { return v.mask == mask; });
    if (it == verdicts.end()) {
        throw ShapeError("no supracontext " + mask.to_string() + " in the analogical set");
    }
    return *it;
}

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw UnsupportedSizeError("pointer count overflows 64 bits");
    return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw UnsupportedSizeError("pointer count overflows 64 bits");
    return out;
}

}  // namespace

AnalogicalSet analogical_set(const Dataset& dataset, const FeatureVector& given, std::size_t variable_cap) {
    const Query query(dataset, given);
    AnalogicalSet set;
    set.alphabet = dataset.outcome_alphabet();
    set.outcome_counts.assign(set.alphabet.size(), 0);
    set.exemplar_outcomes.reserve(dataset.size());
    for (std::size_t j = 0; j < dataset.size(); ++j) set.exemplar_outcomes.push_back(dataset.outcome_code(j));

    const std::vector<SupracontextMask> lattice = supracontext_lattice(dataset.variable_count(), variable_cap);
    set.verdicts.reserve(lattice.size());
    std::vector<std::uint64_t> by_outcome(set.alphabet.size());
    for (const SupracontextMask& mask : lattice) {
        SupracontextVerdict verdict{mask, query.members(mask), true, dataset.size()};
        verdict.homogeneous = is_homogeneous_pointer(query, verdict.members);
        if (verdict.homogeneous && !verdict.members.empty()) {
            // Each of the k sources points at every member, so a target
            // outcome held by c members receives k * c pointers.
            std::fill(by_outcome.begin(), by_outcome.end(), 0);
            for (std::size_t j : verdict.members) ++by_outcome[query.outcome_code(j)];
            const std::uint64_t k = verdict.members.size();
            for (std::size_t o = 0; o < by_outcome.size(); ++o) {
                set.outcome_counts[o] = checked_add(set.outcome_counts[o], checked_mul(k, by_outcome[o]));
            }
            set.total_pointers = checked_add(set.total_pointers, checked_mul(k, k));
        }
        set.verdicts.push_back(std::move(verdict));
    }
    return set;
}

Rational OutcomeDistribution::probability(const Outcome& outcome) const {
    const auto it = std::find(outcomes.begin(), outcomes.end(), outcome);
    return it == outcomes.end() ? Rational(0) : probabilities[static_cast<std::size_t>(it - outcomes.begin())];
}

const Outcome& OutcomeDistribution::most_likely() const {
    if (outcomes.empty()) throw NoAnalogicalSupportError("empty distribution");
    std::size_t best = 0;
    for (std::size_t i = 1; i < outcomes.size(); ++i) {
        if (probabilities[i] > probabilities[best] ||
            (probabilities[i] == probabilities[best] && outcomes[i] < outcomes[best])) {
            best = i;
        }
    }
    return outcomes[best];
}

OutcomeDistribution predict_distribution(const AnalogicalSet& set) {
    if (set.total_pointers == 0) {
        throw NoAnalogicalSupportError("no homogeneous pointers: no analogical support");
    }
    OutcomeDistribution dist;
    dist.outcomes = set.alphabet;
    for (std::uint64_t c : set.outcome_counts) {
        dist.probabilities.emplace_back(BigInt(c), BigInt(set.total_pointers));
    }
    return dist;
}

OutcomeDistribution two_step_distribution(const AnalogicalSet& set) {
    BigInt weight_total = 0;
    for (const SupracontextVerdict& v : set.verdicts) {
        if (v.homogeneous) weight_total += BigInt(v.members.size()) * v.members.size();
    }
    if (weight_total == 0) {
        throw NoAnalogicalSupportError("no homogeneous pointers: no analogical support");
    }
    OutcomeDistribution dist;
    dist.outcomes = set.alphabet;
    dist.probabilities.assign(set.alphabet.size(), Rational(0));
    for (const SupracontextVerdict& v : set.verdicts) {
        if (!v.homogeneous || v.members.empty()) continue;
        const BigInt k = v.members.size();
        const Rational pick_supracontext(k * k, weight_total);
        for (std::size_t j : v.members) {
            // Each member is chosen with probability 1/k inside the supracontext.
            dist.probabilities[set.exemplar_outcomes[j]] += pick_supracontext * Rational(BigInt(1), k);
        }
    }
    return dist;
}

const Outcome& sample_outcome(const OutcomeDistribution& distribution, std::uint64_t seed) {
    if (distribution.outcomes.empty()) throw NoAnalogicalSupportError("empty distribution");
    BigInt denominator = 1;
    for (const Rational& p : distribution.probabilities) {
        denominator = boost::multiprecision::lcm(denominator, boost::multiprecision::denominator(p));
    }
    if (denominator > std::numeric_limits<std::uint64_t>::max()) {
        throw UnsupportedSizeError("distribution denominator exceeds 64 bits");
    }
    const auto range = denominator.convert_to<std::uint64_t>();

    std::mt19937_64 rng(seed);
    // 2^64 mod range; draws below it would bias the modulus.
    const std::uint64_t threshold = (0 - range) % range;
    std::uint64_t draw = rng();
    while (draw < threshold) draw = rng();
    const BigInt ticket = draw % range;

    BigInt cumulative = 0;
    for (std::size_t i = 0; i < distribution.outcomes.size(); ++i) {
        const Rational& p = distribution.probabilities[i];
        cumulative += boost::multiprecision::numerator(p) * (denominator / boost::multiprecision::denominator(p));
        if (ticket < cumulative) return distribution.outcomes[i];
    }
    throw InvalidDistributionError("probabilities do not sum to one");
}

}  // namespace qam
