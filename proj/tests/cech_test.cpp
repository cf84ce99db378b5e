#include <gtest/gtest.h>

#include "tmfalg/covers/cech.hpp"
#include "tmfalg/covers/tmf_mu.hpp"

using namespace tmfalg;

namespace {

std::size_t lattice_count(int w1, int w2, int j, bool positive)
{
    std::size_t n = 0;
    for (int i = -100; i <= 100; ++i)
        for (int k = -100; k <= 100; ++k)
            if (w1 * i + w2 * k == j && (positive ? (i >= 0 && k >= 0) : (i < 0 && k < 0)))
                ++n;
    return n;
}

} // namespace

TEST(Cech, P13SmallTwists)
{
    auto page = cech_weighted_projective({1, 3}, -6, 6, 2);
    EXPECT_EQ(page.base, "Z_(2)");
    const auto& zero = page.entries.at(0);
    EXPECT_EQ(zero.h0_rank, 1);
    EXPECT_EQ(zero.h1_rank, 0);
    EXPECT_EQ(zero.h0, std::vector<std::string>{"1"});

    const auto& m4 = page.entries.at(-4);
    EXPECT_EQ(m4.h0_rank, 0);
    ASSERT_EQ(m4.h1_rank, 1);
    EXPECT_EQ(m4.h1.front(), "alpha1^-1*alpha3^-1");

    const auto& three = page.entries.at(3);
    EXPECT_EQ(three.h0_rank, 2);
    EXPECT_EQ(three.h1_rank, 0);
    std::vector<std::string> expect{"alpha3", "alpha1^3"};
    EXPECT_EQ(three.h0, expect);

    const auto& m1 = page.entries.at(-1);
    EXPECT_EQ(m1.h0_rank, 0);
    EXPECT_EQ(m1.h1_rank, 0);
    for (const auto& [j, e] : page.entries)
        EXPECT_TRUE(e.h1_torsion.empty()) << j;
}

TEST(Cech, FirstNegativeClassOfP13)
{
    auto page = cech_weighted_projective({1, 3}, -30, -1);
    for (int j = -3; j <= -1; ++j)
        EXPECT_EQ(page.entries.at(j).h1_rank, 0);
    EXPECT_EQ(page.entries.at(-4).h1_rank, 1);
}

TEST(Cech, EulerCharacteristic)
{
    for (auto w : {std::array<int, 2>{1, 3}, {4, 6}, {2, 3}, {1, 1}}) {
        auto page = cech_weighted_projective(w, -25, 25);
        for (const auto& [j, e] : page.entries) {
            mpz_class chi = e.h0_rank - e.h1_rank;
            mpz_class expect = mpz_class(static_cast<unsigned long>(lattice_count(w[0], w[1], j, true))) -
                               mpz_class(static_cast<unsigned long>(lattice_count(w[0], w[1], j, false)));
            EXPECT_EQ(chi, expect) << w[0] << "," << w[1] << " j=" << j;
        }
    }
}

TEST(Cech, RejectsBadWeights)
{
    EXPECT_THROW(cech_weighted_projective({0, 3}, 0, 1), AlgebraError);
    EXPECT_THROW(cech_weighted_projective({1, 3}, 2, 1), AlgebraError);
}

TEST(Descent, P13ConnectivePartIsPolynomial)
{
    auto table = descent_assemble(cech_weighted_projective({1, 3}, -4, 24, 2));
    // Z[a1, a3], |a1| = 2, |a3| = 6
    auto poly = PoincareSeries::polynomial({2, 6}, 48);
    for (int d = 0; d <= 48; ++d)
        EXPECT_EQ(table.rank(d), poly[d]) << d;
    std::vector<int> first{1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 2, 0, 3};
    for (int d = 0; d <= 12; ++d)
        EXPECT_EQ(table.rank(d), first[d]) << d;
    EXPECT_EQ(table.rank(-9), 1);
    EXPECT_EQ(table.groups.at(-9).generators.front(), "H1(-4): alpha1^-1*alpha3^-1");
    for (int d = -8; d < 0; ++d)
        EXPECT_EQ(table.rank(d), 0) << d;
}

TEST(Descent, GapForP46)
{
    auto table = descent_assemble(cech_weighted_projective({4, 6}, -12, 4, 5, {"c4", "c6"}));
    for (int d = -20; d < 0; ++d)
        EXPECT_EQ(table.rank(d), 0) << d;
    EXPECT_EQ(table.rank(-21), 1);
    EXPECT_EQ(table.groups.at(-21).generators.front(), "H1(-10): c4^-1*c6^-1");
    EXPECT_EQ(table.rank(0), 1);
}

TEST(Descent, OddDegreesComeFromH1)
{
    auto page = cech_weighted_projective({2, 3}, -15, 15);
    auto table = descent_assemble(page);
    for (const auto& [d, g] : table.groups)
        for (const auto& gen : g.generators)
            EXPECT_EQ(gen.rfind(d % 2 == 0 ? "H0" : "H1", 0), 0u) << d;
}

TEST(Descent, EmptyH1GivesH0Only)
{
    auto table = descent_assemble(cech_weighted_projective({1, 3}, 0, 6));
    for (const auto& [d, g] : table.groups) {
        if (d % 2 != 0) {
            EXPECT_EQ(g.rank, 0);
        }
    }
    EXPECT_EQ(table.rank(12), 3);
}

TEST(Descent, RejectsMalformedPage)
{
    auto page = cech_weighted_projective({1, 3}, 0, 3);
    page.entries.at(2).h0_rank = 5;
    EXPECT_THROW(descent_assemble(page), AlgebraError);
    auto moved = cech_weighted_projective({1, 3}, 0, 3);
    moved.entries.at(1).twist = 2;
    EXPECT_THROW(descent_assemble(moved), AlgebraError);
}

TEST(TmfMu, SpecializationMatchesP13)
{
    TmfMuOptions opt;
    opt.twist_min = -20;
    opt.twist_max = 10;
    opt.stages = 6;
    opt.specialize = true;
    auto mu = tmf_mu_page(opt);
    EXPECT_TRUE(mu.certificate.regular);
    auto p13 = cech_weighted_projective({1, 3}, -20, 10, 2);
    for (int j = -20; j <= 10; ++j) {
        const auto& a = mu.page.entries.at(j);
        const auto& b = p13.entries.at(j);
        EXPECT_TRUE(a.stable) << j;
        EXPECT_EQ(a.h0_rank, b.h0_rank) << j;
        EXPECT_EQ(a.h1_rank, b.h1_rank) << j;
    }
}

TEST(TmfMu, H0IsThePolynomialRing)
{
    TmfMuOptions opt;
    opt.twist_min = 0;
    opt.twist_max = 6;
    opt.stages = 1;
    auto mu = tmf_mu_page(opt);
    EXPECT_EQ(mu.page.entries.at(1).h0_rank, 1);
    EXPECT_EQ(mu.page.entries.at(1).h0.size(), 0u); // H1 is nonzero here, so no listing
    std::vector<int> degrees{2, 4, 6, 8, 12};
    for (int n = 4; n <= mu.en_cutoff; ++n)
        degrees.push_back(2 * n);
    auto R = PoincareSeries::polynomial(degrees, 12);
    for (int j = 0; j <= 6; ++j)
        EXPECT_EQ(mu.page.entries.at(j).h0_rank, R[2 * j]) << j;
}

TEST(TmfMu, H1OfFullRingGrowsInNonnegativeWeights)
{
    TmfMuOptions opt;
    opt.twist_min = -2;
    opt.twist_max = 2;
    opt.stages = 3;
    auto mu = tmf_mu_page(opt);
    const auto& e = mu.page.entries.at(0);
    EXPECT_GT(e.h1_stage_ranks[0], 0);
    EXPECT_LT(e.h1_stage_ranks[0], e.h1_stage_ranks[1]);
    EXPECT_FALSE(e.stable);
}

TEST(TmfMu, CutoffBelowDemandIsAnError)
{
    TmfMuOptions opt;
    opt.twist_max = 4;
    opt.stages = 1;
    opt.en_cutoff = 5;
    EXPECT_THROW(tmf_mu_page(opt), AlgebraError);
}
