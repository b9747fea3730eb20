#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qam {

/// Square bit matrix over ordered exemplar pairs; entry (j, k) describes the
/// directional pointer from exemplar j to exemplar k (zero-based positions).
/// Storage is row-major, so linear index k' = j * m + k.
class PointerMatrix {
  public:
    PointerMatrix() = default;
    explicit PointerMatrix(std::size_t dimension) : dimension_(dimension), bits_(dimension * dimension, 0) {}

    /// Rows written as "0 1 1" or "011".
    static PointerMatrix from_rows(const std::vector<std::string_view>& rows);

    std::size_t dimension() const { return dimension_; }

    bool at(std::size_t row, std::size_t col) const { return bits_[index(row, col)] != 0; }
    void set(std::size_t row, std::size_t col, bool on) { bits_[index(row, col)] = on ? 1 : 0; }

    bool linear(std::size_t k) const { return bits_.at(k) != 0; }

    std::size_t count() const;
    bool is_zero() const { return count() == 0; }
    bool is_symmetric() const;
    bool has_zero_diagonal() const;
    /// Every one here is also a one in `other`.
    bool is_subset_of(const PointerMatrix& other) const;

    /// Row rendered as space-separated 0/1.
    std::string row_string(std::size_t row) const;
    std::vector<std::string> row_strings() const;
    std::vector<std::vector<int>> to_nested() const;

    friend bool operator==(const PointerMatrix&, const PointerMatrix&) = default;

  private:
    std::size_t index(std::size_t row, std::size_t col) const;

    std::size_t dimension_ = 0;
    std::vector<std::uint8_t> bits_;
};

}  // namespace qam
