#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qam/bits.hpp"

namespace qam {

/// Lattice enumeration refuses more variables than this unless overridden.
inline constexpr std::size_t kDefaultVariableCap = 24;

struct Outcome {
    std::string label;

    friend bool operator==(const Outcome&, const Outcome&) = default;
    friend auto operator<=>(const Outcome&, const Outcome&) = default;
};

struct FeatureVector {
    std::vector<std::string> values;

    std::size_t size() const { return values.size(); }
    const std::string& operator[](std::size_t i) const { return values[i]; }

    /// Splits on single spaces, as in a dataset line or the --given argument.
    static FeatureVector parse(std::string_view text);
    std::string to_string() const;

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

struct Exemplar {
    FeatureVector context;
    Outcome outcome;
    std::size_t index = 0;  // one-based ordinal within the dataset
};

/// An ordered, non-empty collection of exemplars sharing one variable count.
///
/// Library APIs address exemplars by zero-based position; `Exemplar::index`
/// is the one-based ordinal used in reports.
class Dataset {
  public:
    /// Numbers the rows 1..m in order.
    static Dataset from_rows(std::vector<std::pair<FeatureVector, Outcome>> rows);

    /// Requires unique indices, m >= 1 and a consistent variable count.
    explicit Dataset(std::vector<Exemplar> exemplars);

    std::size_t size() const { return exemplars_.size(); }
    std::size_t variable_count() const { return variable_count_; }
    const std::vector<Exemplar>& exemplars() const { return exemplars_; }
    const Exemplar& operator[](std::size_t position) const { return exemplars_[position]; }

    /// Distinct outcomes in order of first appearance.
    const std::vector<Outcome>& outcome_alphabet() const { return alphabet_; }
    /// Position of the exemplar's outcome within `outcome_alphabet()`.
    std::size_t outcome_code(std::size_t position) const { return outcome_codes_[position]; }

  private:
    std::vector<Exemplar> exemplars_;
    std::size_t variable_count_ = 0;
    std::vector<Outcome> alphabet_;
    std::vector<std::size_t> outcome_codes_;
};

// Dataset text: '#' comment lines and blank lines are skipped; every other
// line is `<outcome>\t<f1> <f2> ... <fn>`.
Dataset parse_dataset(std::istream& in);
Dataset parse_dataset(std::string_view text);
Dataset load_dataset(const std::filesystem::path& path);
std::string serialize_dataset(const Dataset& dataset);

DifferenceVector difference_vector(const FeatureVector& exemplar, const FeatureVector& given);

/// True iff the exemplar agrees with the given context on every attended variable.
bool contains(const SupracontextMask& mask, const DifferenceVector& difference);

/// Zero-based positions of the exemplars inside the supracontext, ascending.
std::vector<std::size_t> contained_exemplars(const Dataset& dataset, const FeatureVector& given,
                                             const SupracontextMask& mask);

/// Two exemplars share a subcontext iff their keys are equal.
inline DifferenceVector subcontext_key(const DifferenceVector& difference) { return difference; }

/// Throws UnsupportedSizeError when n exceeds the cap or 63.
void check_variable_cap(std::size_t variable_count, std::size_t cap);

/// All 2^n masks, most specific first: by attended-variable count descending,
/// then by textual value descending (111, 110, 101, 011, 100, 010, 001, 000).
std::vector<SupracontextMask> supracontext_lattice(std::size_t variable_count,
                                                   std::size_t cap = kDefaultVariableCap);

/// Difference vectors and outcome codes of a dataset against one given context.
class Query {
  public:
    Query(const Dataset& dataset, const FeatureVector& given);

    std::size_t size() const { return differences_.size(); }
    std::size_t variable_count() const { return variable_count_; }
    const DifferenceVector& difference(std::size_t position) const { return differences_[position]; }
    std::size_t outcome_code(std::size_t position) const { return outcome_codes_[position]; }
    std::size_t alphabet_size() const { return alphabet_size_; }

    std::vector<std::size_t> members(const SupracontextMask& mask) const;

  private:
    std::size_t variable_count_ = 0;
    std::size_t alphabet_size_ = 0;
    std::vector<DifferenceVector> differences_;
    std::vector<std::size_t> outcome_codes_;
};

/// Features joined without separators when every feature of the dataset is a
/// single character ("oms"), otherwise space-separated.
std::string display_context(const Dataset& dataset, const FeatureVector& context);

}  // namespace qam
