#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "../support/instances.hpp"
#include "../support/worked_example.hpp"
#include "qam/am_core.hpp"

namespace qam {
namespace {

using testing::worked_dataset;
using testing::worked_given;

TEST(ParseDataset, WorkedExample) {
    const Dataset ds = worked_dataset();
    EXPECT_EQ(ds.size(), 6u);
    EXPECT_EQ(ds.variable_count(), 3u);
    ASSERT_EQ(ds.outcome_alphabet().size(), 2u);
    EXPECT_EQ(ds.outcome_alphabet()[0].label, "y");
    EXPECT_EQ(ds.outcome_alphabet()[1].label, "x");
    EXPECT_EQ(ds[0].context.to_string(), "o m s");
    EXPECT_EQ(ds[5].index, 6u);
    EXPECT_EQ(ds.outcome_code(0), 0u);
    EXPECT_EQ(ds.outcome_code(3), 1u);
}

TEST(ParseDataset, SingleLine) {
    const Dataset ds = parse_dataset("x\ta");
    EXPECT_EQ(ds.size(), 1u);
    EXPECT_EQ(ds.variable_count(), 1u);
}

TEST(ParseDataset, SkipsCommentsAndBlankLines) {
    const Dataset ds = parse_dataset("# header\n\nx\ta b\r\n# trailing\ny\ta c\n");
    EXPECT_EQ(ds.size(), 2u);
    EXPECT_EQ(ds[1].context.to_string(), "a c");
}

TEST(ParseDataset, InconsistentFeatureCountNamesLine) {
    try {
        parse_dataset("x\ta b c\n# comment\ny\ta b c d\n");
        FAIL() << "expected FormatError";
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(ParseDataset, Errors) {
    EXPECT_THROW(parse_dataset(""), FormatError);
    EXPECT_THROW(parse_dataset("# only a comment\n"), FormatError);
    EXPECT_THROW(parse_dataset("x a b\n"), FormatError);       // no tab
    EXPECT_THROW(parse_dataset("x\ta  b\n"), FormatError);     // double space
    EXPECT_THROW(parse_dataset("\ta b\n"), FormatError);       // empty outcome
    EXPECT_THROW(parse_dataset("x\t\n"), FormatError);         // no features
    EXPECT_THROW(load_dataset("/nonexistent/file.tsv"), FormatError);
}

TEST(ParseDataset, DuplicateExemplarsAreDistinct) {
    const Dataset ds = parse_dataset("x\ta b\nx\ta b\n");
    EXPECT_EQ(ds.size(), 2u);
    EXPECT_EQ(ds[0].index, 1u);
    EXPECT_EQ(ds[1].index, 2u);
}

TEST(ParseDataset, RoundTripsThroughSerialization) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Dataset ds = testing::to_dataset(testing::random_instance(rng));
        const Dataset again = parse_dataset(serialize_dataset(ds));
        ASSERT_EQ(again.size(), ds.size());
        for (std::size_t j = 0; j < ds.size(); ++j) {
            EXPECT_EQ(again[j].context, ds[j].context);
            EXPECT_EQ(again[j].outcome, ds[j].outcome);
            EXPECT_EQ(again[j].index, ds[j].index);
        }
    }
}

TEST(Dataset, RejectsDuplicateIndices) {
    std::vector<Exemplar> rows = {{FeatureVector::parse("a"), Outcome{"x"}, 1}, {FeatureVector::parse("b"), Outcome{"y"}, 1}};
    EXPECT_THROW(Dataset{rows}, FormatError);
}

TEST(DifferenceVector, WorkedTable) {
    const Dataset ds = worked_dataset();
    const std::vector<std::string> expected = {"001", "110", "101", "100", "001", "111"};
    for (std::size_t j = 0; j < ds.size(); ++j) {
        EXPECT_EQ(difference_vector(ds[j].context, worked_given()).to_string(), expected[j]) << "exemplar " << j + 1;
    }
}

TEST(DifferenceVector, IdentityAndMismatch) {
    const FeatureVector oma = FeatureVector::parse("o m a");
    EXPECT_EQ(difference_vector(oma, oma).to_string(), "000");
    EXPECT_THROW(difference_vector(FeatureVector::parse("o m"), oma), ShapeError);
}

TEST(DifferenceVector, SelfDifferenceIsZeroForRandomContexts) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = testing::random_instance(rng);
        for (const auto& ctx : inst.contexts) {
            EXPECT_TRUE(difference_vector(FeatureVector{ctx}, FeatureVector{ctx}).none());
        }
    }
}

TEST(VariableBits, TextualOrderPutsVariableZeroLeftmost) {
    const auto mask = SupracontextMask::parse("110");
    EXPECT_EQ(mask.value(), 6u);
    EXPECT_TRUE(mask.test(0));
    EXPECT_TRUE(mask.test(1));
    EXPECT_FALSE(mask.test(2));
    EXPECT_EQ(mask.count(), 2u);
    EXPECT_THROW(SupracontextMask::parse("12"), FormatError);
    EXPECT_THROW(SupracontextMask(2, 4), ShapeError);
}

TEST(Contains, Examples) {
    const auto d = [](const char* s) { return DifferenceVector::parse(s); };
    const auto s = [](const char* t) { return SupracontextMask::parse(t); };
    EXPECT_TRUE(contains(s("110"), d("001")));
    EXPECT_FALSE(contains(s("110"), d("110")));
    for (const char* any : {"000", "001", "010", "011", "100", "101", "110", "111"}) {
        EXPECT_TRUE(contains(s("000"), d(any)));
    }
    EXPECT_THROW(contains(s("11"), d("001")), ShapeError);
}

TEST(Contains, MonotoneInTheMask) {
    // Removing attended variables can only add members.
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
        for (std::uint64_t sub = mask;; sub = (sub - 1) & mask) {
            for (std::uint64_t d = 0; d < 16; ++d) {
                if (contains(SupracontextMask(4, mask), DifferenceVector(4, d))) {
                    EXPECT_TRUE(contains(SupracontextMask(4, sub), DifferenceVector(4, d)));
                }
            }
            if (sub == 0) break;
        }
    }
}

TEST(ContainedExemplars, WorkedExample) {
    const Dataset ds = worked_dataset();
    const auto members = [&](const char* mask) {
        return contained_exemplars(ds, worked_given(), SupracontextMask::parse(mask));
    };
    EXPECT_EQ(members("010"), (std::vector<std::size_t>{0, 2, 3, 4}));
    EXPECT_TRUE(members("111").empty());
    EXPECT_EQ(members("001"), (std::vector<std::size_t>{1, 3}));
    EXPECT_EQ(members("000"), (std::vector<std::size_t>{0, 1, 2, 3, 4, 5}));
}

TEST(ContainedExemplars, GrowsAsBitsAreRemoved) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = testing::random_instance(rng);
        const Dataset ds = testing::to_dataset(inst);
        const FeatureVector given = testing::to_given(inst);
        for (const auto& mask : supracontext_lattice(ds.variable_count())) {
            const auto wide = contained_exemplars(ds, given, mask);
            for (std::size_t i = 0; i < mask.width(); ++i) {
                if (!mask.test(i)) continue;
                SupracontextMask looser = mask;
                looser.set(i, false);
                const auto more = contained_exemplars(ds, given, looser);
                EXPECT_TRUE(std::includes(more.begin(), more.end(), wide.begin(), wide.end()));
            }
        }
        EXPECT_EQ(contained_exemplars(ds, given, SupracontextMask(ds.variable_count(), 0)).size(), ds.size());
    }
}

TEST(SubcontextKey, SharedDifferenceVectorsShareASubcontext) {
    const auto key = [](const char* s) { return subcontext_key(DifferenceVector::parse(s)); };
    EXPECT_EQ(key("001"), key("001"));
    EXPECT_NE(key("001"), key("110"));
}

TEST(Lattice, LatticeOrder) {
    std::vector<std::string> labels;
    for (const auto& mask : supracontext_lattice(3)) labels.push_back(mask.to_string());
    EXPECT_EQ(labels, (std::vector<std::string>{"111", "110", "101", "011", "100", "010", "001", "000"}));
    EXPECT_EQ(supracontext_lattice(1).size(), 2u);
}

TEST(Lattice, CapIsEnforced) {
    EXPECT_THROW(supracontext_lattice(25), UnsupportedSizeError);
    EXPECT_THROW(supracontext_lattice(5, 4), UnsupportedSizeError);
    EXPECT_NO_THROW(supracontext_lattice(5, 5));
    EXPECT_THROW(check_variable_cap(64, 100), UnsupportedSizeError);
}

TEST(DisplayContext, CompactForSingleCharacterFeatures) {
    const Dataset ds = worked_dataset();
    EXPECT_EQ(display_context(ds, ds[0].context), "oms");
    const Dataset wide = parse_dataset("x\tab c\n");
    EXPECT_EQ(display_context(wide, wide[0].context), "ab c");
}

}  // namespace
}  // namespace qam
