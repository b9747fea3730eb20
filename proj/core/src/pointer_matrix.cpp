#include "qam/pointer_matrix.hpp"

#include <algorithm>

#include "qam/errors.hpp"

namespace qam {

PointerMatrix PointerMatrix::from_rows(const std::vector<std::string_view>& rows) {
    PointerMatrix out(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::size_t c = 0;
        for (char ch : rows[r]) {
            if (ch == ' ') continue;
            if (ch != '0' && ch != '1') {
                throw FormatError("matrix rows may only contain 0, 1 and spaces");
            }
            if (c >= rows.size()) {
                throw ShapeError("matrix row " + std::to_string(r + 1) + " is too long");
            }
            out.set(r, c++, ch == '1');
        }
        if (c != rows.size()) {
            throw ShapeError("matrix row " + std::to_string(r + 1) + " is too short");
        }
    }
    return out;
}

std::size_t PointerMatrix::index(std::size_t row, std::size_t col) const {
    if (row >= dimension_ || col >= dimension_) {
        throw ShapeError("pointer (" + std::to_string(row) + ", " + std::to_string(col) +
                         ") outside a matrix of dimension " + std::to_string(dimension_));
    }
    return row * dimension_ + col;
}

std::size_t PointerMatrix::count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool PointerMatrix::is_symmetric() const {
    for (std::size_t r = 0; r < dimension_; ++r) {
        for (std::size_t c = r + 1; c < dimension_; ++c) {
            if (at(r, c) != at(c, r)) return false;
        }
    }
    return true;
}

bool PointerMatrix::has_zero_diagonal() const {
    for (std::size_t r = 0; r < dimension_; ++r) {
        if (at(r, r)) return false;
    }
    return true;
}

bool PointerMatrix::is_subset_of(const PointerMatrix& other) const {
    if (other.dimension_ != dimension_) return false;
    for (std::size_t k = 0; k < bits_.size(); ++k) {
        if (bits_[k] && !other.bits_[k]) return false;
    }
    return true;
}

std::string PointerMatrix::row_string(std::size_t row) const {
    std::string out;
    for (std::size_t c = 0; c < dimension_; ++c) {
        if (c) out += ' ';
        out += at(row, c) ? '1' : '0';
    }
    return out;
}

std::vector<std::string> PointerMatrix::row_strings() const {
    std::vector<std::string> out;
    out.reserve(dimension_);
    for (std::size_t r = 0; r < dimension_; ++r) out.push_back(row_string(r));
    return out;
}

std::vector<std::vector<int>> PointerMatrix::to_nested() const {
    std::vector<std::vector<int>> out(dimension_, std::vector<int>(dimension_, 0));
    for (std::size_t r = 0; r < dimension_; ++r) {
        for (std::size_t c = 0; c < dimension_; ++c) out[r][c] = at(r, c) ? 1 : 0;
    }
    return out;
}

}  // namespace qam
