#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "qam/errors.hpp"

namespace qam {

/// Fixed-width string of per-variable bits, at most 64 wide.
///
/// Variable 0 is the leftmost character of the textual form, so "110" has
/// variables 0 and 1 set. Internally variable i lives at bit (width - 1 - i),
/// which makes the numeric value of "110" equal to 6.
template <class Tag>
class VariableBits {
  public:
    static constexpr std::size_t kMaxWidth = 64;

    VariableBits() = default;

    VariableBits(std::size_t width, std::uint64_t value) : value_(value), width_(width) {
        if (width > kMaxWidth) {
            throw UnsupportedSizeError("bit string wider than 64 variables");
        }
        if (width < kMaxWidth && (value >> width) != 0) {
            throw ShapeError("value does not fit in " + std::to_string(width) + " bits");
        }
    }

    static VariableBits parse(std::string_view text) {
        if (text.size() > kMaxWidth) {
            throw UnsupportedSizeError("bit string wider than 64 variables");
        }
        std::uint64_t value = 0;
        for (char c : text) {
            if (c != '0' && c != '1') {
                throw FormatError("bit string may only contain 0 and 1: '" + std::string(text) + "'");
            }
            value = (value << 1) | static_cast<std::uint64_t>(c == '1');
        }
        return VariableBits(text.size(), value);
    }

    std::size_t width() const { return width_; }
    std::uint64_t value() const { return value_; }

    bool test(std::size_t variable) const { return (value_ >> shift(variable)) & 1U; }

    void set(std::size_t variable, bool on) {
        const std::uint64_t bit = std::uint64_t{1} << shift(variable);
        value_ = on ? (value_ | bit) : (value_ & ~bit);
    }

    std::size_t count() const { return static_cast<std::size_t>(std::popcount(value_)); }
    bool none() const { return value_ == 0; }

    std::string to_string() const {
        std::string out(width_, '0');
        for (std::size_t i = 0; i < width_; ++i) {
            if (test(i)) out[i] = '1';
        }
        return out;
    }

    friend bool operator==(const VariableBits&, const VariableBits&) = default;
    friend auto operator<=>(const VariableBits&, const VariableBits&) = default;

  private:
    std::size_t shift(std::size_t variable) const {
        if (variable >= width_) {
            throw ShapeError("variable " + std::to_string(variable) + " out of range for width " +
                             std::to_string(width_));
        }
        return width_ - 1 - variable;
    }

    std::uint64_t value_ = 0;
    std::size_t width_ = 0;
};

using DifferenceVector = VariableBits<struct DifferenceVectorTag>;
using SupracontextMask = VariableBits<struct SupracontextMaskTag>;

}  // namespace qam
