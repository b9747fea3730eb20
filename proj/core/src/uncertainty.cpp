#include "qam/uncertainty.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <string>

namespace qam {

DiscreteDistribution::DiscreteDistribution(std::vector<std::pair<Outcome, double>> weights)
    : weights_(std::move(weights)) {
    if (weights_.empty()) throw InvalidDistributionError("distribution has no outcomes");
    double sum = 0.0;
    for (const auto& [outcome, p] : weights_) {
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
            throw InvalidDistributionError("probability of '" + outcome.label + "' is outside [0, 1]");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "probabilities sum to " << sum << ", not 1";
        throw InvalidDistributionError(msg.str());
    }
}

std::vector<double> DiscreteDistribution::probabilities() const {
    std::vector<double> out;
    out.reserve(weights_.size());
    for (const auto& [outcome, p] : weights_) out.push_back(p);
    return out;
}

double entropy(const DiscreteDistribution& distribution) {
    double h = 0.0;
    for (double p : distribution.probabilities()) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

double agreement(const DiscreteDistribution& distribution) {
    double z = 0.0;
    for (double p : distribution.probabilities()) z += p * p;
    return z;
}

double disagreement(const DiscreteDistribution& distribution) { return 1.0 - agreement(distribution); }

Rational agreement(std::span<const Rational> probabilities) {
    if (probabilities.empty()) throw InvalidDistributionError("distribution has no outcomes");
    Rational sum = 0, z = 0;
    for (const Rational& p : probabilities) {
        if (p < 0 || p > 1) throw InvalidDistributionError("probability " + to_string(p) + " is outside [0, 1]");
        sum += p;
        z += p * p;
    }
    if (sum != 1) throw InvalidDistributionError("probabilities sum to " + to_string(sum) + ", not 1");
    return z;
}

Rational disagreement(std::span<const Rational> probabilities) { return Rational(1) - agreement(probabilities); }

TabulatedDensity::TabulatedDensity(std::vector<double> grid, std::vector<double> values, double tolerance)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (grid_.size() != values_.size()) throw ShapeError("density grid and values differ in length");
    if (grid_.size() < 2) throw InvalidDistributionError("a tabulated density needs at least two points");
    double mass = 0.0;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        if (!std::isfinite(grid_[i]) || !std::isfinite(values_[i]) || values_[i] < 0.0) {
            throw InvalidDistributionError("density values must be finite and non-negative");
        }
        if (i > 0) {
            if (!(grid_[i] > grid_[i - 1])) throw InvalidDistributionError("density grid must be strictly increasing");
            mass += 0.5 * (grid_[i] - grid_[i - 1]) * (values_[i] + values_[i - 1]);
        }
    }
    if (std::abs(mass - 1.0) > tolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "density integrates to " << mass << ", not 1";
        throw InvalidDistributionError(msg.str());
    }
}

TabulatedDensity TabulatedDensity::parse(std::istream& in, double tolerance) {
    std::vector<double> grid, values;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        double x = 0.0, f = 0.0;
        std::string rest;
        if (!(fields >> x >> f) || (fields >> rest)) {
            throw FormatError("density line " + std::to_string(line_number) + ": expected two numbers");
        }
        grid.push_back(x);
        values.push_back(f);
    }
    return TabulatedDensity(std::move(grid), std::move(values), tolerance);
}

double agreement_density(const TabulatedDensity& density) {
    const auto& x = density.grid();
    const auto& f = density.values();
    double z = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) z += 0.5 * (x[i] - x[i - 1]) * (f[i] * f[i] + f[i - 1] * f[i - 1]);
    return z;
}

}  // namespace qam
