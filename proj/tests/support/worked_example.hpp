#pragma once

// The six-exemplar worked example and its expected tables, transcribed
// row-major (36 bits per block, rows of six).

#include <string>
#include <string_view>
#include <vector>

#include "qam/am_core.hpp"
#include "qam/pointer_matrix.hpp"

namespace qam::testing {

inline constexpr std::string_view kWorkedDatasetText =
    "y\to m s\n"
    "x\tg f a\n"
    "x\tc m s\n"
    "x\tc m a\n"
    "x\to m n\n"
    "x\tg f r\n";

inline Dataset worked_dataset() { return parse_dataset(kWorkedDatasetText); }
inline FeatureVector worked_given() { return FeatureVector::parse("o m a"); }

inline PointerMatrix from_linear(std::string_view bits, std::size_t m = 6) {
    std::string compact;
    for (char c : bits) {
        if (c != ' ') compact += c;
    }
    std::vector<std::string> rows;
    for (std::size_t r = 0; r < m; ++r) rows.push_back(compact.substr(r * m, m));
    std::vector<std::string_view> views(rows.begin(), rows.end());
    return PointerMatrix::from_rows(views);
}

inline PointerMatrix zeros(std::size_t m = 6) { return PointerMatrix(m); }

inline PointerMatrix ones(std::size_t m = 6) {
    PointerMatrix out(m);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) out.set(r, c, true);
    }
    return out;
}

inline PointerMatrix fixture_v2() {
    return PointerMatrix::from_rows({"0 1 1 1 0 1", "1 0 1 1 1 1", "1 1 0 1 1 1",
                                     "1 1 1 0 1 1", "0 1 1 1 0 1", "1 1 1 1 1 0"});
}

inline PointerMatrix fixture_w2() {
    return PointerMatrix::from_rows({"0 1 1 1 1 1", "1 0 0 0 0 0", "1 0 0 0 0 0",
                                     "1 0 0 0 0 0", "1 0 0 0 0 0", "1 0 0 0 0 0"});
}

inline PointerMatrix fixture_p2() {
    return PointerMatrix::from_rows({"0 1 1 1 0 1", "1 0 0 0 0 0", "1 0 0 0 0 0",
                                     "1 0 0 0 0 0", "0 0 0 0 0 0", "1 0 0 0 0 0"});
}

// C² blocks per supracontext.
inline PointerMatrix fixture_c2_110() {
    return from_linear("1 0 0 0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 1 0 0 0 0 0 0 0");
}
inline PointerMatrix fixture_c2_100() { return fixture_c2_110(); }
inline PointerMatrix fixture_c2_010() {
    return from_linear("1 0 1 1 1 0 0 0 0 0 0 0 1 0 1 1 1 0 1 0 1 1 1 0 1 0 1 1 1 0 0 0 0 0 0 0");
}
inline PointerMatrix fixture_c2_001() {
    return from_linear("0 0 0 0 0 0 0 1 0 1 0 0 0 0 0 0 0 0 0 1 0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0");
}
inline PointerMatrix fixture_c2_011() {
    return PointerMatrix::from_rows({"0 0 0 0 0 0", "0 0 0 0 0 0", "0 0 0 0 0 0",
                                     "0 0 0 1 0 0", "0 0 0 0 0 0", "0 0 0 0 0 0"});
}

inline PointerMatrix fixture_h2_010() {
    return from_linear("0 0 1 1 0 0 0 0 0 0 0 0 1 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0");
}
inline PointerMatrix fixture_h2_000() {
    return from_linear("0 1 1 1 0 1 1 0 0 0 0 0 1 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0");
}
inline PointerMatrix fixture_not_h2_010() {
    return from_linear("1 1 0 0 1 1 1 1 1 1 1 1 0 1 1 1 1 1 0 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1");
}
inline PointerMatrix fixture_not_h2_000() {
    return from_linear("1 0 0 0 1 0 0 1 1 1 1 1 0 1 1 1 1 1 0 1 1 1 1 1 1 1 1 1 1 1 0 1 1 1 1 1");
}

struct FixtureBlock {
    std::string mask;
    PointerMatrix c2;
    bool homogeneous;
    PointerMatrix a2;
};

// Lattice order, as listed in the A² table.
inline std::vector<FixtureBlock> fixture_blocks() {
    return {
        {"111", zeros(), true, zeros()},
        {"110", fixture_c2_110(), true, fixture_c2_110()},
        {"101", zeros(), true, zeros()},
        {"011", fixture_c2_011(), true, fixture_c2_011()},
        {"100", fixture_c2_100(), true, fixture_c2_100()},
        {"010", fixture_c2_010(), false, zeros()},
        {"001", fixture_c2_001(), true, fixture_c2_001()},
        {"000", ones(), false, zeros()},
    };
}

}  // namespace qam::testing
