#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "qam/am_core.hpp"
#include "qam/rational.hpp"

namespace qam {

/// Outcome probabilities; non-negative and summing to 1 within 1e-12.
class DiscreteDistribution {
  public:
    static constexpr double kSumTolerance = 1e-12;

    explicit DiscreteDistribution(std::vector<std::pair<Outcome, double>> weights);

    const std::vector<std::pair<Outcome, double>>& weights() const { return weights_; }
    std::vector<double> probabilities() const;

  private:
    std::vector<std::pair<Outcome, double>> weights_;
};

/// -sum p log2 p, in bits, with 0 log 0 = 0.
double entropy(const DiscreteDistribution& distribution);
/// 1 - sum p^2: the chance two independent draws disagree.
double disagreement(const DiscreteDistribution& distribution);
/// sum p^2.
double agreement(const DiscreteDistribution& distribution);

// Exact forms; the probabilities must be non-negative and sum to exactly 1.
Rational disagreement(std::span<const Rational> probabilities);
Rational agreement(std::span<const Rational> probabilities);

/// f(x) sampled on a strictly increasing grid.
class TabulatedDensity {
  public:
    static constexpr double kDefaultTolerance = 1e-6;

    /// Requires >= 2 points, f >= 0 and a trapezoid integral within
    /// `tolerance` of 1.
    TabulatedDensity(std::vector<double> grid, std::vector<double> values, double tolerance = kDefaultTolerance);

    /// Two whitespace-separated columns, x and f(x); '#' lines are comments.
    static TabulatedDensity parse(std::istream& in, double tolerance = kDefaultTolerance);

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }

  private:
    std::vector<double> grid_;
    std::vector<double> values_;
};

/// Z' = integral of f(x)^2, by the trapezoid rule over the grid.
double agreement_density(const TabulatedDensity& density);

}  // namespace qam
