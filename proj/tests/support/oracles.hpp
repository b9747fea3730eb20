#pragma once

// Brute-force reference computations over plain strings. Nothing here calls
// into the library, so these stay independent of the engines they check.

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace qam::testing {

struct RawInstance {
    std::vector<std::vector<std::string>> contexts;
    std::vector<std::string> outcomes;
    std::vector<std::string> given;

    std::size_t m() const { return contexts.size(); }
    std::size_t n() const { return given.size(); }
};

// Masks as strings: character i is '1' when variable i must match.
inline std::vector<std::string> all_masks(std::size_t n) {
    std::vector<std::string> out;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        std::string s(n, '0');
        for (std::size_t i = 0; i < n; ++i) {
            if (v & (std::uint64_t{1} << i)) s[i] = '1';
        }
        out.push_back(s);
    }
    return out;
}

inline bool in_supracontext(const RawInstance& inst, const std::string& mask, std::size_t j) {
    for (std::size_t i = 0; i < inst.n(); ++i) {
        if (mask[i] == '1' && inst.contexts[j][i] != inst.given[i]) return false;
    }
    return true;
}

inline bool same_subcontext(const RawInstance& inst, std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < inst.n(); ++i) {
        if ((inst.contexts[a][i] == inst.given[i]) != (inst.contexts[b][i] == inst.given[i])) return false;
    }
    return true;
}

inline std::vector<std::size_t> members_of(const RawInstance& inst, const std::string& mask) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < inst.m(); ++j) {
        if (in_supracontext(inst, mask, j)) out.push_back(j);
    }
    return out;
}

struct DisagreementCount {
    std::uint64_t supracontext = 0;  // ordered member pairs with differing outcomes
    std::uint64_t subcontexts = 0;   // the same, restricted to shared subcontexts
};

inline DisagreementCount count_disagreements(const RawInstance& inst, const std::string& mask) {
    DisagreementCount out;
    const auto mem = members_of(inst, mask);
    for (std::size_t a : mem) {
        for (std::size_t b : mem) {
            if (inst.outcomes[a] == inst.outcomes[b]) continue;
            ++out.supracontext;
            if (same_subcontext(inst, a, b)) ++out.subcontexts;
        }
    }
    return out;
}

inline bool homogeneous_by_enumeration(const RawInstance& inst, const std::string& mask) {
    const DisagreementCount c = count_disagreements(inst, mask);
    return c.supracontext == c.subcontexts;
}

/// Surviving pointers per target outcome, by enumerating every ordered pair
/// in every homogeneous supracontext.
inline std::map<std::string, std::uint64_t> pointer_counts_by_enumeration(const RawInstance& inst) {
    std::map<std::string, std::uint64_t> counts;
    for (const std::string& mask : all_masks(inst.n())) {
        if (!homogeneous_by_enumeration(inst, mask)) continue;
        const auto mem = members_of(inst, mask);
        for (std::size_t a : mem) {
            for (std::size_t b : mem) {
                (void)a;
                ++counts[inst.outcomes[b]];
            }
        }
    }
    return counts;
}

/// sum over i != j of p_i p_j.
inline double two_draw_disagreement(const std::vector<double>& p) {
    double out = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (i != j) out += p[i] * p[j];
        }
    }
    return out;
}

inline RawInstance random_instance(std::mt19937_64& rng, std::size_t max_m = 8, std::size_t max_n = 4,
                                   std::size_t max_outcomes = 3) {
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    static const std::vector<std::string> symbols = {"a", "b", "c"};
    static const std::vector<std::string> labels = {"x", "y", "z"};
    RawInstance inst;
    const std::size_t m = pick(1, max_m), n = pick(1, max_n), k = pick(1, max_outcomes);
    std::vector<std::size_t> arity(n);
    for (auto& a : arity) a = pick(2, 3);
    for (std::size_t i = 0; i < n; ++i) inst.given.push_back(symbols[pick(0, arity[i] - 1)]);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<std::string> ctx;
        for (std::size_t i = 0; i < n; ++i) ctx.push_back(symbols[pick(0, arity[i] - 1)]);
        inst.contexts.push_back(std::move(ctx));
        inst.outcomes.push_back(labels[pick(0, k - 1)]);
    }
    return inst;
}

inline std::vector<double> random_probabilities(std::mt19937_64& rng, std::size_t max_size = 6) {
    const std::size_t size = std::uniform_int_distribution<std::size_t>(1, max_size)(rng);
    std::vector<double> w(size);
    double sum = 0.0;
    for (double& x : w) {
        x = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        sum += x;
    }
    for (double& x : w) x /= sum;
    return w;
}

}  // namespace qam::testing
