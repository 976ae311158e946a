#include <gtest/gtest.h>

#include "support.hpp"

using namespace harmpadic;

namespace {

VerifyScale small_scale() {
    VerifyScale s;
    s.lemma_n = 300;
    s.lemma_square_n = 60;
    s.oracle_n = 500;
    s.bernoulli_grid = 60;
    s.von_staudt_grid = 80;
    return s;
}

} // namespace

TEST(Verify, EverySuitePassesAtReducedScale) {
    for (const auto& name : suite_names()) {
        auto r = run_suite(name, small_scale());
        EXPECT_TRUE(r.ok()) << name << ": " << r.failed << " failures, first: " << (r.failures.empty() ? "" : r.failures[0]);
        EXPECT_GT(r.passed, 0) << name;
    }
}

TEST(Verify, ReportKeepsOnlyFirstFailures) {
    SuiteReport r;
    for (int i = 0; i < 50; ++i) r.check(false, "x");
    r.check(true, "y");
    EXPECT_EQ(r.failed, 50);
    EXPECT_EQ(r.passed, 1);
    EXPECT_EQ(r.failures.size(), 20u);
    EXPECT_FALSE(r.ok());
    EXPECT_FALSE(SuiteReport{}.ok());
}

TEST(Verify, UnknownSuite) { EXPECT_THROW(run_suite("nope"), DomainError); }
