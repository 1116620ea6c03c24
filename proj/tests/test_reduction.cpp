#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "symplectic/fixtures.hpp"
#include "symplectic/reduction.hpp"

using namespace symplectic;

namespace {

const FixtureMap& fx() {
    static const FixtureMap m = load_fixtures();
    return m;
}

// Order of the image of inertia in PGL2: quadratic twists only move the scalar part.
int projective_order(int e) { return e % 2 == 0 ? e / 2 : e; }

// Random potentially good models with bad reduction at ell, built by scaling coefficients by ell.
std::vector<WeierstrassModel> potentially_good_samples(long ell, int count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> d(-20, 20);
    std::uniform_int_distribution<int> k(0, 4);
    std::vector<WeierstrassModel> out;
    while (static_cast<int>(out.size()) < count) {
        WeierstrassModel E{d(rng), d(rng), d(rng), d(rng) * ipow(Integer(ell), k(rng)), d(rng) * ipow(Integer(ell), k(rng))};
        if (invariants_of(E).disc == 0) continue;
        const auto L = minimal_model_at(E, ell).inv;
        if (L.v_disc == 0 || potentially_multiplicative(L)) continue;
        out.push_back(E);
    }
    return out;
}

}  // namespace

TEST(Defect, TameFormulaAtLargePrimes) {
    for (long ell : {5L, 7L, 13L}) {
        for (const auto& E : potentially_good_samples(ell, 60, 3 + ell)) {
            const auto L = minimal_model_at(E, ell).inv;
            EXPECT_EQ(semistability_defect(E, ell).e, 12 / std::gcd(12, L.v_disc));
        }
    }
}

TEST(Defect, ValuesLieInTheAllowedSets) {
    const std::set<int> at2{1, 2, 3, 4, 6, 8, 24}, at3{1, 2, 3, 4, 6, 12};
    for (const auto& E : potentially_good_samples(2, 150, 1)) EXPECT_TRUE(at2.count(classify(E, 2).e));
    for (const auto& E : potentially_good_samples(3, 150, 2)) EXPECT_TRUE(at3.count(classify(E, 3).e));
}

// Good reduction over a field with ramification e forces e * v(disc_min) = 0 mod 12.
TEST(Defect, KillsTheDiscriminantValuation) {
    for (long ell : {2L, 3L}) {
        for (const auto& E : potentially_good_samples(ell, 150, 7 * ell)) {
            const auto rc = classify(E, ell);
            EXPECT_EQ(rc.e * rc.local.inv.v_disc % 12, 0) << to_string(E) << " at " << ell;
        }
    }
}

TEST(Defect, ProjectiveOrderIsTwistInvariant) {
    for (long ell : {2L, 3L}) {
        for (const auto& E : potentially_good_samples(ell, 80, 13 * ell)) {
            const int e = classify(E, ell).e;
            for (long d : {-1L, 2L, -2L, 3L, -3L, 6L}) {
                const auto T = quadratic_twist(E, Integer(d));
                const auto rc = classify(T, ell);
                if (rc.kind == ReductionKind::Good) {
                    EXPECT_EQ(projective_order(e), 1);
                    continue;
                }
                ASSERT_EQ(rc.kind, ReductionKind::PotentiallyGood);
                EXPECT_EQ(projective_order(rc.e), projective_order(e)) << to_string(E) << " twisted by " << d;
            }
        }
    }
}

TEST(Defect, TwistByUnramifiedCharacterPreservesE) {
    for (const auto& E : potentially_good_samples(3, 60, 99)) {
        // -1 is a non-square unit at 3, so Q_3(sqrt(-1)) is unramified.
        EXPECT_EQ(classify(quadratic_twist(E, Integer(-1)), 3).e, classify(E, 3).e);
    }
    for (const auto& E : potentially_good_samples(2, 60, 98))
        EXPECT_EQ(classify(quadratic_twist(E, Integer(-3)), 2).e, classify(E, 2).e);
}

TEST(Defect, PotentiallyMultiplicativeIffJHasNegativeValuation) {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> d(-30, 30);
    int seen = 0;
    for (int i = 0; i < 400; ++i) {
        WeierstrassModel E{d(rng), d(rng), d(rng), d(rng), d(rng)};
        const auto v = invariants_of(E);
        if (v.disc == 0) continue;
        for (long ell : {2L, 3L, 5L, 7L}) {
            const auto L = minimal_model_at(E, ell).inv;
            Rational j(v.c4 * v.c4 * v.c4, v.disc);
            j.canonicalize();
            const bool neg = j != 0 && valuation(Integer(j.get_den()), Integer(ell)) > 0;
            EXPECT_EQ(potentially_multiplicative(L), neg);
            seen += neg;
        }
    }
    EXPECT_GT(seen, 50);
}

TEST(Classify, KindsFollowConductorExponent) {
    const auto E = fx().at("26a1");  // conductor 2 * 13
    EXPECT_EQ(classify(E, 2).kind, ReductionKind::Multiplicative);
    EXPECT_EQ(classify(E, 13).kind, ReductionKind::Multiplicative);
    EXPECT_EQ(classify(E, 3).kind, ReductionKind::Good);
    EXPECT_EQ(classify(E, 3).e, 1);
}

TEST(Classify, PotentiallyMultiplicativeHasReducingTwist) {
    // Twist of 26a1 by -1 is additive at 2, potentially multiplicative; -1 undoes it.
    const auto T = quadratic_twist(fx().at("26a1"), Integer(-1));
    const auto rc = classify(T, 2);
    EXPECT_EQ(rc.kind, ReductionKind::PotentiallyMultiplicative);
    const auto back = minimal_model_at(quadratic_twist(T, Integer(rc.reducing_twist)), 2);
    EXPECT_EQ(back.inv.conductor_exponent, 1);
}

TEST(Classify, PublishedLocalData) {
    struct Case {
        const char* label;
        long ell;
        std::tuple<int, int, int> triple;
        int e;
    };
    const Case cases[] = {
        {"2116a1", 2, {4, 6, 8}, 3},   {"10580a1", 2, {9, 7, 8}, 3}, {"648a1", 3, {2, 3, 4}, 3},
        {"12312a1", 3, {5, 8, 12}, 3}, {"52a2", 2, {6, 5, 4}, 3},    {"988b1", 2, {4, 5, 4}, 3},
    };
    for (const auto& c : cases) {
        const auto rc = classify(fx().at(c.label), c.ell);
        EXPECT_EQ(rc.local.inv.triple(), c.triple) << c.label;
        EXPECT_EQ(rc.e, c.e) << c.label;
    }
    for (const char* label : {"648a1", "12696e1", "4536c1"}) EXPECT_EQ(classify(fx().at(label), 2).e, 24) << label;
    EXPECT_EQ(classify(fx().at("2116a1"), 23).e, 3);
    EXPECT_EQ(classify(fx().at("882a1"), 7).e, 3);
    EXPECT_EQ(classify(fx().at("441b1"), 7).e, 3);
    // e = 6 at 5, brought to e = 3 by the twist by 5.
    const auto g = classify(fx().at("3675k1"), 5);
    EXPECT_EQ(g.e, 6);
    EXPECT_EQ(g.reducing_twist, 5);
    EXPECT_EQ(classify(fx().at("3675g1"), 5).e, 3);
    EXPECT_EQ(classify(fx().at("47775bf1"), 5).e, 3);
}

TEST(Classify, ThreeDivisionTorsionUnitsAtTwentyThree) {
    const auto L = classify(fx().at("2116a1"), 23).local.inv;
    EXPECT_EQ(L.c6_unit, 1728);
    EXPECT_EQ(classify(fx().at("10580a1"), 23).local.inv.c6_unit, -1372032);
}

TEST(InertialField, TameRootAndAbelianGuard) {
    const auto L = classify(fx().at("2116a1"), 23).local.inv;
    EXPECT_EQ(inertial_field_tag(L, 3, L.conductor_exponent), InertialFieldTag::tame_root);
    // 882a1 at 7: 7 = 1 mod 3, the tame field is abelian.
    const auto M = classify(fx().at("882a1"), 7).local.inv;
    EXPECT_THROW(inertial_field_tag(M, 3, M.conductor_exponent), Error);
    // 648a1 at 3 has disc unit -1024 = 2 mod 3.
    const auto N = classify(fx().at("648a1"), 3).local.inv;
    EXPECT_EQ(inertial_field_tag(N, 3, N.conductor_exponent), InertialFieldTag::cubic3);
}
