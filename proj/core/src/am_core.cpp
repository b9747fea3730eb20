#include "qam/am_core.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace qam {

FeatureVector FeatureVector::parse(std::string_view text) {
    FeatureVector out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(' ', start), text.size());
        const std::string_view token = text.substr(start, end - start);
        if (token.empty()) {
            throw FormatError("features must be separated by single spaces: '" + std::string(text) + "'");
        }
        if (token.find_first_of("\t\r\n\v\f") != std::string_view::npos) {
            throw FormatError("feature contains whitespace: '" + std::string(token) + "'");
        }
        out.values.emplace_back(token);
        start = end + 1;
    }
    return out;
}

std::string FeatureVector::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ' ';
        out += values[i];
    }
    return out;
}

Dataset Dataset::from_rows(std::vector<std::pair<FeatureVector, Outcome>> rows) {
    std::vector<Exemplar> exemplars;
    exemplars.reserve(rows.size());
    for (auto& [context, outcome] : rows) {
        exemplars.push_back(Exemplar{std::move(context), std::move(outcome), exemplars.size() + 1});
    }
    return Dataset(std::move(exemplars));
}

Dataset::Dataset(std::vector<Exemplar> exemplars) : exemplars_(std::move(exemplars)) {
    if (exemplars_.empty()) {
        throw FormatError("dataset has no exemplars");
    }
    variable_count_ = exemplars_.front().context.size();
    if (variable_count_ == 0) {
        throw FormatError("exemplar 1 has no features");
    }
    std::set<std::size_t> seen;
    outcome_codes_.reserve(exemplars_.size());
    for (const Exemplar& e : exemplars_) {
        if (e.context.size() != variable_count_) {
            throw FormatError("exemplar " + std::to_string(e.index) + " has " +
                              std::to_string(e.context.size()) + " features, expected " +
                              std::to_string(variable_count_));
        }
        if (e.outcome.label.empty()) {
            throw FormatError("exemplar " + std::to_string(e.index) + " has an empty outcome");
        }
        if (!seen.insert(e.index).second) {
            throw FormatError("duplicate exemplar index " + std::to_string(e.index));
        }
        auto it = std::find(alphabet_.begin(), alphabet_.end(), e.outcome);
        if (it == alphabet_.end()) {
            alphabet_.push_back(e.outcome);
            it = std::prev(alphabet_.end());
        }
        outcome_codes_.push_back(static_cast<std::size_t>(it - alphabet_.begin()));
    }
}

Dataset parse_dataset(std::istream& in) {
    std::vector<Exemplar> exemplars;
    std::string line;
    std::size_t line_number = 0;
    std::size_t expected = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;

        const auto fail = [&](const std::string& what) {
            throw FormatError("line " + std::to_string(line_number) + ": " + what);
        };
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos) fail("expected <outcome><TAB><features>");
        const std::string label = line.substr(0, tab);
        if (label.empty() || label.find_first_of(" \t") != std::string::npos) {
            fail("outcome must be a single non-empty token");
        }
        FeatureVector features;
        try {
            features = FeatureVector::parse(std::string_view(line).substr(tab + 1));
        } catch (const FormatError& e) {
            fail(e.what());
        }
        if (expected == 0) {
            expected = features.size();
        } else if (features.size() != expected) {
            fail("has " + std::to_string(features.size()) + " features, expected " + std::to_string(expected));
        }
        exemplars.push_back(Exemplar{std::move(features), Outcome{label}, exemplars.size() + 1});
    }
    if (exemplars.empty()) {
        throw FormatError("dataset has no exemplars");
    }
    return Dataset(std::move(exemplars));
}

Dataset parse_dataset(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_dataset(in);
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open dataset '" + path.string() + "'");
    }
    return parse_dataset(in);
}

std::string serialize_dataset(const Dataset& dataset) {
    std::string out;
    for (const Exemplar& e : dataset.exemplars()) {
        out += e.outcome.label;
        out += '\t';
        out += e.context.to_string();
        out += '\n';
    }
    return out;
}

DifferenceVector difference_vector(const FeatureVector& exemplar, const FeatureVector& given) {
    if (exemplar.size() != given.size()) {
        throw ShapeError("context has " + std::to_string(exemplar.size()) + " features, given has " +
                         std::to_string(given.size()));
    }
    DifferenceVector d(exemplar.size(), 0);
    for (std::size_t i = 0; i < exemplar.size(); ++i) {
        d.set(i, exemplar[i] != given[i]);
    }
    return d;
}

bool contains(const SupracontextMask& mask, const DifferenceVector& difference) {
    if (mask.width() != difference.width()) {
        throw ShapeError("mask width " + std::to_string(mask.width()) + " differs from difference width " +
                         std::to_string(difference.width()));
    }
    return (mask.value() & difference.value()) == 0;
}

std::vector<std::size_t> contained_exemplars(const Dataset& dataset, const FeatureVector& given,
                                             const SupracontextMask& mask) {
    return Query(dataset, given).members(mask);
}

void check_variable_cap(std::size_t variable_count, std::size_t cap) {
    if (variable_count > cap) {
        throw UnsupportedSizeError(std::to_string(variable_count) + " variables exceeds the cap of " +
                                   std::to_string(cap) + " (2^n supracontexts)");
    }
    if (variable_count >= 64) {
        throw UnsupportedSizeError("lattice enumeration supports at most 63 variables");
    }
}

std::vector<SupracontextMask> supracontext_lattice(std::size_t variable_count, std::size_t cap) {
    check_variable_cap(variable_count, cap);
    const std::uint64_t total = std::uint64_t{1} << variable_count;
    std::vector<std::uint64_t> values(total);
    for (std::uint64_t v = 0; v < total; ++v) values[v] = v;
    std::sort(values.begin(), values.end(), [](std::uint64_t a, std::uint64_t b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa > pb : a > b;
    });
    std::vector<SupracontextMask> masks;
    masks.reserve(total);
    for (std::uint64_t v : values) masks.emplace_back(variable_count, v);
    return masks;
}

Query::Query(const Dataset& dataset, const FeatureVector& given)
    : variable_count_(dataset.variable_count()), alphabet_size_(dataset.outcome_alphabet().size()) {
    differences_.reserve(dataset.size());
    outcome_codes_.reserve(dataset.size());
    for (std::size_t j = 0; j < dataset.size(); ++j) {
        differences_.push_back(difference_vector(dataset[j].context, given));
        outcome_codes_.push_back(dataset.outcome_code(j));
    }
}

std::vector<std::size_t> Query::members(const SupracontextMask& mask) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < differences_.size(); ++j) {
        if (contains(mask, differences_[j])) out.push_back(j);
    }
    return out;
}

std::string display_context(const Dataset& dataset, const FeatureVector& context) {
    const bool compact = std::all_of(dataset.exemplars().begin(), dataset.exemplars().end(), [](const Exemplar& e) {
        return std::all_of(e.context.values.begin(), e.context.values.end(),
                           [](const std::string& f) { return f.size() == 1; });
    });
    if (!compact) return context.to_string();
    std::string out;
    for (const std::string& f : context.values) out += f;
    return out;
}

}  // namespace qam
