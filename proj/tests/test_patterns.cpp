#include <gtest/gtest.h>

#include <fstream>

#include "support.hpp"

using namespace harmpadic;
using hp_test::Gen;

TEST(Classifier, Descent) {
    EXPECT_EQ(classify_valuations({2, 1, 0, -1, -2}, false).kind, TowerCase::Descent);
    EXPECT_EQ(classify_valuations({0, -1, -2}, true).kind, TowerCase::Descent);
    EXPECT_EQ(classify_valuations({2, 1, 1}, false).kind, TowerCase::Violation);
}

TEST(Classifier, NonWolstenholmeShapes) {
    EXPECT_EQ(classify_valuations({5, 2, 1, 0}, false).kind, TowerCase::NonWolstenholmeCase1);
    EXPECT_EQ(classify_valuations({5, 3, 1}, false).kind, TowerCase::Violation);

    auto ascent = classify_valuations({3, 5, 7, 9}, false);
    EXPECT_EQ(ascent.kind, TowerCase::NonWolstenholmeCase2);
    EXPECT_TRUE(ascent.prefix_only);

    // M = 9: 2m + 3 for m <= 2, then 9 - m.
    auto turn = classify_valuations({3, 5, 7, 6, 5, 4, 3}, false);
    EXPECT_EQ(turn.kind, TowerCase::NonWolstenholmeCase3);
    EXPECT_EQ(turn.turning_index, 9);
    EXPECT_EQ(turn.boundary_convention, "derived");

    // The same M with the ascent kept up to m <= M/3 + 1.
    auto late = classify_valuations({3, 5, 7, 9, 11, 4, 3}, false);
    EXPECT_EQ(late.kind, TowerCase::NonWolstenholmeCase3);
    EXPECT_EQ(late.boundary_convention, "published");

    EXPECT_EQ(classify_valuations({3, 5, 7, 5, 5}, false).kind, TowerCase::Violation);
}

TEST(Classifier, SmallTurningIndexFollowsTheCancellationBound) {
    // M = 3: nu(H(pn)) = 2 is forced by H(pn) = H(n)/p + O(p^2); only the
    // boundary 3m + 3 <= M is compatible with it.
    auto c = classify_valuations({3, 2, 1, 0, -1}, false);
    EXPECT_EQ(c.kind, TowerCase::NonWolstenholmeCase3);
    EXPECT_EQ(c.turning_index, 3);
    EXPECT_EQ(c.boundary_convention, "derived");
}

TEST(Classifier, WolstenholmeShapes) {
    EXPECT_EQ(classify_valuations({3, 2, 1, 0}, true).kind, TowerCase::WolstenholmeCase1);
    EXPECT_EQ(classify_valuations({3, 3, 1, 0}, true).kind, TowerCase::Violation);
    auto up = classify_valuations({4, 7, 8}, true);
    EXPECT_EQ(up.kind, TowerCase::WolstenholmeCase2);
    auto c3 = classify_valuations({5, 6, 8, 7, 6}, true);
    EXPECT_EQ(c3.kind, TowerCase::WolstenholmeCase3);
    EXPECT_EQ(c3.turning_index, 10);
}

TEST(Classifier, CaseThreeBoundaryAcrossTurningIndices) {
    // Towers synthesised from the derived boundary are always accepted.
    for (bool w : {false, true}) {
        const long offset = w ? 4 : 3;
        for (long M = offset; M <= 40; ++M) {
            std::vector<long> v;
            for (long m = 0; m <= M + 2; ++m) v.push_back(3 * m + offset <= M ? 2 * m + offset : M - m);
            if (v[0] != offset) continue;
            auto c = classify_valuations(v, w);
            EXPECT_NE(c.kind, TowerCase::Violation) << "M=" << M << " w=" << w;
            if (c.kind != TowerCase::Violation) {
                EXPECT_TRUE(c.boundary_convention == "derived" || c.boundary_convention == "both");
            }
        }
    }
}

TEST(Tower, DescentForFive) {
    auto r = classify_tower(5, 4);
    EXPECT_EQ(r.classification.kind, TowerCase::Descent);
    ASSERT_EQ(r.tower.size(), 7u);
    for (long m = 0; m <= 6; ++m) EXPECT_EQ(r.tower[static_cast<std::size_t>(m)].valuation, Valuation(2 - m));
}

TEST(Tower, WolstenholmePrimeDescendsAfterBaseThree) {
    auto r = classify_tower(16843, 16842);
    EXPECT_TRUE(r.wolstenholme_prime);
    EXPECT_EQ(r.base_valuation(), Valuation(3));
    EXPECT_EQ(r.classification.kind, TowerCase::WolstenholmeCase1);
    EXPECT_EQ(r.tower[1].valuation, Valuation(2));
}

TEST(Tower, ElevenCorpusIsNeverAViolation) {
    for (u64 n : {848ULL, 9338ULL, 10583ULL}) {
        auto r = classify_tower(11, to_integer(n));
        EXPECT_EQ(r.base_valuation(), Valuation(3));
        EXPECT_TRUE(r.classification.kind == TowerCase::NonWolstenholmeCase2 ||
                    r.classification.kind == TowerCase::NonWolstenholmeCase3)
            << to_string(r.classification.kind);
    }
}

TEST(Tower, DescentOnRandomBases) {
    Gen g(41);
    for (int i = 0; i < 40; ++i) {
        u64 p = g.prime_from({5, 7, 13, 17});
        Integer n = g.big(g.uniform(1, 12));
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
        TowerOptions opt;
        opt.m_max = 4;
        auto r = classify_tower(p, n, opt);
        if (r.base_valuation() <= Valuation(2)) {
            EXPECT_EQ(r.classification.kind, TowerCase::Descent) << n << " p=" << p;
        }
        EXPECT_NE(r.classification.kind, TowerCase::Violation) << n << " p=" << p;
    }
}

TEST(Tower, InputValidation) {
    EXPECT_THROW(classify_tower(5, 10), DomainError);
    EXPECT_THROW(classify_tower(3, 1), DomainError);
    EXPECT_THROW(classify_tower(5, 0), DomainError);
}

TEST(Table, GoldenRowsForFive) {
    std::ifstream in(std::string(HARMPADIC_GOLDEN_DIR) + "/table_p5.csv");
    ASSERT_TRUE(in);
    std::string header;
    std::getline(in, header);
    auto table = table_generate(5, 127);
    std::string csv = to_csv(table);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), header);
    std::vector<std::string> lines;
    std::istringstream all(csv);
    for (std::string l; std::getline(all, l);) lines.push_back(l);
    std::size_t checked = 0;
    for (std::string row; std::getline(in, row);) {
        std::size_t m = std::stoul(row.substr(0, row.find(',')));
        EXPECT_EQ(lines.at(m + 1), row);
        ++checked;
    }
    EXPECT_EQ(checked, 17u);
}

TEST(Table, Shape) {
    auto t = table_generate(7, 3);
    ASSERT_EQ(t.rows.size(), 3u);
    EXPECT_EQ(t.rows[0].size(), 7u);
    EXPECT_TRUE(t.rows[0][0].is_infinite());
    EXPECT_THROW(table_generate(5, 0), DomainError);
    EXPECT_THROW(table_generate(5, 10, 20), CapacityError);
}
