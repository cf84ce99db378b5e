#include <random>

#include <gtest/gtest.h>

#include "tmfalg/algebra/parse.hpp"
#include "tmfalg/steenrod/verify.hpp"

using namespace tmfalg;

namespace {

const DualSteenrod& algebra32()
{
    static const DualSteenrod a(32);
    return a;
}

Polynomial X(const DualSteenrod& a, const char* text) { return parse_polynomial(a.ring(), text); }
Polynomial T(const DualSteenrod& a, const char* text) { return parse_polynomial(a.tensor_ring(), text); }

} // namespace

TEST(DualSteenrod, Coproduct)
{
    const auto& a = algebra32();
    EXPECT_EQ(a.coproduct(a.xi(1)), T(a, "xi1 + xi1_R"));
    EXPECT_EQ(a.coproduct(a.xi(2)), T(a, "xi2 + xi1^2*xi1_R + xi2_R"));
    EXPECT_EQ(a.coproduct(a.xi(1).pow(2)), T(a, "xi1^2 + xi1_R^2"));
    EXPECT_EQ(a.generators(), 5);
    EXPECT_THROW(a.coproduct(a.xi(5) * a.xi(1).pow(2)), AlgebraError);
    EXPECT_THROW(a.xi(6), AlgebraError);
}

TEST(DualSteenrod, Conjugation)
{
    const auto& a = algebra32();
    EXPECT_EQ(a.conj_xi(1), a.xi(1));
    EXPECT_EQ(a.conj_xi(2), X(a, "xi2 + xi1^3"));
    EXPECT_EQ(a.conj_xi(3), X(a, "xi3 + xi1*xi2^2 + xi1^4*xi2 + xi1^7"));
    for (const auto& d : a.antipode_defects())
        EXPECT_TRUE(d.is_zero());
    for (int k = 1; k <= a.generators(); ++k)
        EXPECT_EQ(a.conjugate(a.conjugate(a.xi(k))), a.xi(k)) << k;
}

TEST(DualSteenrod, CoassociativeAndCounitalOnRandomElements)
{
    const DualSteenrod a(15);
    std::mt19937_64 rng(20240613);
    auto triple = a.tensor_ring()->extended({{"xi1_S", 1}, {"xi2_S", 3}, {"xi3_S", 7}, {"xi4_S", 15}});
    const int n = a.generators();
    // (Delta (x) 1) and (1 (x) Delta) as ring maps A (x) A -> A (x) A (x) A
    std::vector<Polynomial> left_images, right_images;
    auto shift = [&](const Polynomial& t, int from) {
        std::vector<Polynomial> images;
        for (int i = 0; i < 2 * n; ++i)
            images.push_back(Polynomial::generator(triple, static_cast<std::size_t>(from + i)));
        return t.substitute(images, triple);
    };
    for (int i = 1; i <= n; ++i)
        left_images.push_back(a.coproduct(a.xi(i)).embedded(triple));
    for (int i = 1; i <= n; ++i)
        left_images.push_back(Polynomial::generator(triple, static_cast<std::size_t>(2 * n + i - 1)));
    for (int i = 1; i <= n; ++i)
        right_images.push_back(Polynomial::generator(triple, static_cast<std::size_t>(i - 1)));
    for (int i = 1; i <= n; ++i)
        right_images.push_back(shift(a.coproduct(a.xi(i)), n));

    for (int trial = 0; trial < 6; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 15);
        Polynomial x(a.ring());
        for (const auto& m : a.basis(d))
            if (rng() & 1)
                x.add_term(m, 1);
        const auto dx = a.coproduct(x);
        EXPECT_EQ(dx.substitute(left_images, triple), dx.substitute(right_images, triple)) << x;
        // counit on either leg
        const auto legs = a.right_legs(dx);
        Polynomial left_counit(a.ring());
        for (const auto& [l, r] : legs)
            if (l.is_one())
                left_counit += r;
        EXPECT_EQ(left_counit, x);
        Polynomial right_counit(a.ring());
        for (const auto& [l, r] : legs)
            right_counit += Polynomial::monomial(a.ring(), l) * mpz_class(r.constant_term());
        EXPECT_EQ(right_counit, x);
    }
}

TEST(Subalgebra, ClosureOfKnownHomologies)
{
    const auto& a = algebra32();
    EXPECT_TRUE(comodule_closure_check(a, ko_homology(a)).closed);
    EXPECT_TRUE(comodule_closure_check(a, tmf_homology(a)).closed);
    for (int n = 0; n <= 3; ++n)
        EXPECT_NO_THROW(bp_n_homology(a, n)) << n;
    EXPECT_EQ(bp_n_homology(a, 1).generators.front().name, "xibar1^2");
    EXPECT_EQ(bp_n_homology(a, 0).generators.at(1).name, "xibar2");
    EXPECT_THROW(bp_n_homology(a, -1), AlgebraError);
}

TEST(Subalgebra, NonClosedWitness)
{
    const auto& a = algebra32();
    const auto r = comodule_closure_check(a, explicit_spec(a, "xi1^3", {a.xi(1).pow(3)}));
    EXPECT_FALSE(r.closed);
    EXPECT_EQ(*r.witness_left, "xi1^2");
    EXPECT_EQ(*r.witness_right, "xi1");
    // unconjugated generators fail where the conjugates succeed
    EXPECT_FALSE(comodule_closure_check(a, explicit_spec(a, "xi2^2-ko", {a.xi(1).pow(4), a.xi(2).pow(2), a.xi(3)})).closed);
}

TEST(Primitives, HopfPrimitivesArePowersOfXi1)
{
    const auto& a = algebra32();
    const auto p = hopf_primitives(a, 16);
    EXPECT_EQ(p.degrees(), (std::vector<int>{1, 2, 4, 8, 16}));
    EXPECT_EQ(p.classes.at(8).front(), "xi1^8");
}

TEST(Primitives, QuotientBySquares)
{
    const auto& a = algebra32();
    const auto p = quotient_primitives(a, squares_spec(a), 32);
    EXPECT_EQ(p.degrees(), (std::vector<int>{1, 3, 7, 15, 31}));
    EXPECT_EQ(p.classes.at(3).front(), a.conj_xi(2).to_string());
}

TEST(Primitives, TrivialComodule)
{
    const auto& a = algebra32();
    const auto p = subcomodule_primitives(a, trivial_spec(a), 20);
    EXPECT_EQ(p.degrees(), std::vector<int>{0});
    // a subcomodule of A has only the unit as comodule primitive
    EXPECT_EQ(subcomodule_primitives(a, ko_homology(a), 15).degrees(), std::vector<int>{0});
}

TEST(Freeness, KuOverKo)
{
    const auto& a = algebra32();
    const auto r = freeness_rank_check(a, bp_n_homology(a, 1), ko_homology(a), {2, 0});
    EXPECT_TRUE(r.ok()) << r.failure;
    EXPECT_EQ(r.lifts, (std::vector<std::string>{"1", "xibar1^2"}));
}

TEST(Freeness, Bp2OverTmf)
{
    const auto& a = algebra32();
    const auto r = freeness_rank_check(a, bp_n_homology(a, 2), tmf_homology(a), {0, 2, 4, 6, 6, 8, 10, 12});
    EXPECT_TRUE(r.ok()) << r.failure;
    EXPECT_EQ(r.found_cells.size(), 8u);
}

TEST(Freeness, SelfAndWrongCells)
{
    const auto& a = algebra32();
    EXPECT_TRUE(freeness_rank_check(a, tmf_homology(a), tmf_homology(a), {0}).ok());
    const auto wrong = freeness_rank_check(a, bp_n_homology(a, 1), ko_homology(a), {0, 4});
    EXPECT_FALSE(wrong.series_identity);
    EXPECT_FALSE(wrong.ok());
    const auto reversed = freeness_rank_check(a, ko_homology(a), bp_n_homology(a, 1), {0});
    EXPECT_FALSE(reversed.contained);
    EXPECT_FALSE(reversed.ok());
}

TEST(Uniqueness, KoAndTmf)
{
    const auto& a = algebra32();
    const auto ko = uniqueness_probe(a, whole_algebra(a), ko_homology(a), 16);
    EXPECT_EQ(ko.lowest_degree, 4);
    EXPECT_EQ(ko.forced_generator.value_or(""), "xi1^4");
    EXPECT_TRUE(ko.ok());

    const auto decoy = a.xi(1).pow(6) * a.conj_xi(2).pow(2);
    const auto tmf = uniqueness_probe(a, whole_algebra(a), tmf_homology(a), 16, {decoy});
    EXPECT_EQ(tmf.lowest_degree, 8);
    EXPECT_EQ(tmf.forced_generator.value_or(""), "xi1^8");
    ASSERT_EQ(tmf.decoys.size(), 1u);
    EXPECT_EQ(tmf.decoys[0].degree, 12);
    EXPECT_TRUE(tmf.decoys[0].excluded);
    EXPECT_TRUE(tmf.ok());
    // degrees below 12 in the candidate: only 1 and xi1^8
    for (const auto& s : tmf.steps)
        if (s.degree < 12) {
            EXPECT_EQ(s.degree, 8);
        }
}

TEST(Uniqueness, PatternQuotient)
{
    const auto& a = algebra32();
    const auto q = quotient_pattern(a, tmf_homology(a));
    EXPECT_TRUE(q.nonnegative());
    EXPECT_EQ(q.total(), 64);
    EXPECT_EQ(q.top_degree(), 23);
    DegreeCoordinates coords(a);
    const auto spec = tmf_homology(a);
    SubalgebraBasis tmf(a, spec, coords);
    EXPECT_EQ(a.poincare(32), tmf.poincare(32) * q);
}
