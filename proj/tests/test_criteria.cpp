#include <fstream>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "symplectic/criteria.hpp"
#include "symplectic/fixtures.hpp"

using namespace symplectic;

namespace {

const FixtureMap& fx() {
    static const FixtureMap m = load_fixtures();
    return m;
}

struct IsogenousPair {
    WeierstrassModel E, Ep;
    long n;
};

// Pairs linked by a prime-degree isogeny (PARI ellisomat); the induced E[p] -> E'[p] has type (n/p).
const std::vector<IsogenousPair>& isogenous_pairs() {
    static const std::vector<IsogenousPair> pairs = [] {
        std::ifstream in(std::string(SYMPLECTIC_TEST_DATA) + "/isogeny_pairs.json");
        nlohmann::json j;
        in >> j;
        std::vector<IsogenousPair> out;
        for (const auto& r : j) out.push_back({model_from_json(r["E"]), model_from_json(r["Ep"]), r["n"].get<long>()});
        return out;
    }();
    return pairs;
}

LocalInvariants local(long ell, int vc4, int vc6, int vd, long c4u, long c6u, long du, int f = 2) {
    LocalInvariants L;
    L.ell = ell;
    L.v_c4 = vc4;
    L.v_c6 = vc6;
    L.v_disc = vd;
    L.c4_unit = vc4 == kInfinity ? 0 : c4u;
    L.c6_unit = vc6 == kInfinity ? 0 : c6u;
    L.disc_unit = du;
    L.conductor_exponent = f;
    return L;
}

CriterionInput synthetic(long ell, long p, const LocalInvariants& L, const LocalInvariants& Lp, int e) {
    CriterionInput in;
    in.ell = ell;
    in.p = p;
    in.L = L;
    in.Lp = Lp;
    in.e = in.ep = e;
    return in;
}

CriterionInput from_curves(const WeierstrassModel& E, const WeierstrassModel& Ep, long ell, long p) {
    const auto a = classify(E, ell), b = classify(Ep, ell);
    CriterionInput in;
    in.ell = ell;
    in.p = p;
    in.L = a.local.inv;
    in.Lp = b.local.inv;
    in.e = a.e;
    in.ep = b.e;
    if (a.kind == ReductionKind::Good) in.residual = reduce_good(E, ell);
    if (b.kind == ReductionKind::Good) in.residual_prime = reduce_good(Ep, ell);
    return in;
}

void expect_verdict(const SymplecticVerdict& v, Outcome want, int r, int t) {
    ASSERT_EQ(v.outcome, want) << v.reason;
    ASSERT_TRUE(v.witness.has_value());
    EXPECT_EQ(v.witness->r, r);
    EXPECT_EQ(v.witness->t, t);
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// Individual criteria on worked examples.

TEST(TameE3, AntiSymplecticAtTwentyThree) {
    const auto in = from_curves(fx().at("2116a1"), fx().at("10580a1"), 23, 7);
    expect_verdict(crit_tame3(in), Outcome::AntiSymplectic, 1, 1);
}

TEST(TameE3, SymplecticAtTwoForThirteenTorsion) {
    const auto in = from_curves(fx().at("52a2"), fx().at("988b1"), 2, 13);
    expect_verdict(crit_tame3(in), Outcome::Symplectic, 0, 1);
}

TEST(TameE3, IdenticalCurves) {
    const auto& E = fx().at("2116a1");
    expect_verdict(crit_tame3(from_curves(E, E, 2, 7)), Outcome::Symplectic, 0, 0);
}

TEST(TameE3, ThreeTorsionPointOverQ2) {
    EXPECT_TRUE(has_rational_3torsion_local(classify(fx().at("2116a1"), 2).local.inv));
    EXPECT_FALSE(has_rational_3torsion_local(classify(fx().at("10580a1"), 2).local.inv));
    EXPECT_TRUE(has_rational_3torsion_local(classify(fx().at("988b1"), 2).local.inv));
    EXPECT_FALSE(has_rational_3torsion_local(classify(fx().at("52a2"), 2).local.inv));
}

TEST(TameE3, PThreeWithDifferentTorsionIsInconsistent) {
    const auto v = crit_tame3(from_curves(fx().at("2116a1"), fx().at("10580a1"), 2, 3));
    EXPECT_EQ(v.outcome, Outcome::NotApplicable);
    EXPECT_EQ(v.reason_code, ErrorCode::InconsistentPair);
}

TEST(E3P3, CongruenceOfDiscriminantValuations) {
    const auto a = local(7, 3, 4, 8, 1, 1, 1), b = local(7, 2, 3, 4, 1, 1, 1), c = local(7, 2, 3, 10, 1, 1, 1);
    expect_verdict(crit_e3_p3(synthetic(7, 3, a, b, 3)), Outcome::AntiSymplectic, 1, 0);
    expect_verdict(crit_e3_p3(synthetic(7, 3, b, c, 3)), Outcome::Symplectic, 0, 0);
    expect_verdict(crit_e3_p3(synthetic(7, 3, a, a, 3)), Outcome::Symplectic, 0, 0);
    expect_verdict(crit_e3_p3(from_curves(fx().at("882a1"), fx().at("441b1"), 7, 3)), Outcome::AntiSymplectic, 1, 0);
}

TEST(WildE3, PublishedPairAtThree) {
    const auto in = from_curves(fx().at("648a1"), fx().at("12312a1"), 3, 7);
    EXPECT_EQ(in.L.c6_unit, -448);
    EXPECT_EQ(in.Lp.c6_unit, -1703296);
    expect_verdict(crit_wild3(in), Outcome::Symplectic, 0, 0);
}

TEST(WildE3, DifferentC6ClassesGiveLegendreOfThree) {
    const auto a = local(3, 2, 3, 4, 1, 1, 2), b = local(3, 2, 3, 4, 1, 2, 2);
    expect_verdict(crit_wild3(synthetic(3, 5, a, b, 3)), Outcome::AntiSymplectic, 1, 0);   // (3/5) = -1
    expect_verdict(crit_wild3(synthetic(3, 11, a, b, 3)), Outcome::Symplectic, 1, 0);      // (3/11) = 1
    expect_verdict(crit_wild3(synthetic(3, 5, a, a, 3)), Outcome::Symplectic, 0, 0);
    // Abelian torsion field: no criterion.
    const auto c = local(3, 2, 3, 4, 1, 1, 1);
    EXPECT_EQ(crit_wild3(synthetic(3, 5, c, c, 3)).outcome, Outcome::NotApplicable);
}

TEST(TameE4, Formula) {
    // ell = 3, v(disc) = 3 and 9, both disc units squares mod 3: r = 1, t = 0.
    const auto a = local(3, 2, 3, 3, 1, 1, 1), b = local(3, 4, 6, 9, 1, 1, 4);
    expect_verdict(crit_tame4(synthetic(3, 5, a, b, 4)), Outcome::AntiSymplectic, 1, 0);
    expect_verdict(crit_tame4(synthetic(3, 5, a, a, 4)), Outcome::Symplectic, 0, 0);
    // t = 1 at ell = 7: disc units 1 and 3 (3 is a non-square mod 7), p = 5 with (2/5) = -1.
    const auto c = local(7, 1, 2, 3, 1, 1, 1), d = local(7, 1, 2, 3, 1, 1, 3);
    expect_verdict(crit_tame4(synthetic(7, 5, c, d, 4)), Outcome::AntiSymplectic, 0, 1);
    expect_verdict(crit_tame4(synthetic(7, 7 + 10, c, d, 4)), Outcome::Symplectic, 0, 1);  // (2/17) = 1
    EXPECT_EQ(crit_tame4(synthetic(7, 3, c, d, 4)).outcome, Outcome::NotApplicable);
}

TEST(WildE4, Formula) {
    const auto a = local(2, 5, 8, 9, 5, 1, 1), b = local(2, 5, 8, 9, 5, 3, 1);
    expect_verdict(crit_wild4(synthetic(2, 7, a, b, 4)), Outcome::Symplectic, 1, 0);       // (2/7) = 1
    expect_verdict(crit_wild4(synthetic(2, 5, a, b, 4)), Outcome::AntiSymplectic, 1, 0);   // (2/5) = -1
    expect_verdict(crit_wild4(synthetic(2, 5, a, a, 4)), Outcome::Symplectic, 0, 0);
    const auto abelian = local(2, 5, 8, 9, 1, 1, 1);
    EXPECT_EQ(crit_wild4(synthetic(2, 5, abelian, abelian, 4)).outcome, Outcome::NotApplicable);
    EXPECT_EQ(crit_wild4(synthetic(2, 5, a, abelian, 4)).reason_code, ErrorCode::InconsistentPair);
}

TEST(WildE24, Formula) {
    auto in = from_curves(fx().at("4536c1"), fx().at("648b1"), 2, 11);
    in.same_inertial_field = true;
    expect_verdict(crit_e24(in), Outcome::AntiSymplectic, 1, 0);
    in.p = 7;
    EXPECT_EQ(crit_e24(in).outcome, Outcome::Symplectic);
    auto c = from_curves(fx().at("12696e1"), fx().at("12696f1"), 2, 11);
    c.same_inertial_field = true;
    expect_verdict(crit_e24(c), Outcome::Symplectic, 0, 0);
    c.same_inertial_field = false;
    EXPECT_EQ(crit_e24(c).outcome, Outcome::NotApplicable);
}

TEST(WildE8, TableCases) {
    // Conductor 2^5: case (a) rows (4, >=7, 6) with c4 unit = 3 mod 4 and (7, 9, 12); case (b) rows
    // (6, >=10, 12) with c4 unit = 1 mod 4 and (4, 6, 9).
    const auto a1 = local(2, 4, 7, 6, 3, 1, 1, 5), a2 = local(2, 7, 9, 12, 1, 1, 1, 5);
    const auto b1 = local(2, 6, 10, 12, 1, 1, 1, 5), b2 = local(2, 4, 6, 9, 1, 1, 1, 5);
    EXPECT_EQ(e8_case(a1), 'a');
    EXPECT_EQ(e8_case(a2), 'a');
    EXPECT_EQ(e8_case(b1), 'b');
    EXPECT_EQ(e8_case(b2), 'b');
    EXPECT_THROW(e8_case(local(2, 4, 7, 6, 1, 1, 1, 5)), Error);

    auto in = synthetic(2, 7, a1, b1, 8);
    in.same_inertial_field = true;
    EXPECT_EQ(crit_e8(in).outcome, Outcome::Symplectic);  // (2/7) = 1
    in.p = 5;
    expect_verdict(crit_e8(in), Outcome::AntiSymplectic, 1, 0);
    in.Lp = a2;
    expect_verdict(crit_e8(in), Outcome::Symplectic, 0, 0);

    // Conductor 2^8: compare c4 units mod 4.
    auto h = synthetic(2, 3, local(2, 4, 6, 11, 1, 1, 1, 8), local(2, 4, 6, 11, 3, 1, 1, 8), 8);
    h.same_inertial_field = true;
    expect_verdict(crit_e8(h), Outcome::AntiSymplectic, 1, 0);
    h.Lp.c4_unit = 5;
    expect_verdict(crit_e8(h), Outcome::Symplectic, 0, 0);
    h.Lp.conductor_exponent = 5;
    EXPECT_EQ(crit_e8(h).outcome, Outcome::NotApplicable);
}

TEST(WildE12, TableCases) {
    const auto c = local(3, 3, 4, 5, 1, 1, 1, 5), c2 = local(3, 6, 8, 13, 1, 1, 1, 5);
    const auto d = local(3, 4, 5, 7, 1, 1, 1, 5);
    const auto a = local(3, 2, 3, 3, 1, 1, 1, 3), b = local(3, 4, 6, 9, 1, 1, 1, 3);
    EXPECT_EQ(e12_case(a), 'a');
    EXPECT_EQ(e12_case(b), 'b');
    EXPECT_EQ(e12_case(c), 'c');
    EXPECT_EQ(e12_case(d), 'd');
    // disc unit 2 or 4 mod 9 leaves the (a) row
    EXPECT_THROW(e12_case(local(3, 2, 3, 3, 1, 1, 2, 3)), Error);

    auto in = synthetic(3, 11, a, b, 12);
    in.same_inertial_field = true;
    EXPECT_EQ(crit_e12(in).outcome, Outcome::Symplectic);  // (3/11) = 1
    in.p = 5;
    expect_verdict(crit_e12(in), Outcome::AntiSymplectic, 1, 0);
    in.L = c;
    in.Lp = c2;
    expect_verdict(crit_e12(in), Outcome::Symplectic, 0, 0);
}

TEST(Good, ResidualPairForNineteenTorsion) {
    const auto& W = fx().at("864a1");
    const auto in = from_curves(W, W, 5, 19);
    ASSERT_TRUE(in.residual.has_value());
    const auto fd = frobenius_data(*in.residual);
    EXPECT_EQ(fd.a, -1);
    EXPECT_EQ(fd.disc, -19);
    EXPECT_EQ(fd.beta, 1);
    expect_verdict(crit_good(in), Outcome::Symplectic, 0, 0);
    // A model with the same reduction mod 5 but different global curve.
    const WeierstrassModel Wp{0, 0, 0, -3 + 5 * 4, 6 - 5 * 7};
    EXPECT_EQ(crit_good(from_curves(W, Wp, 5, 19)).outcome, Outcome::Symplectic);
    // p = 7 does not divide -19.
    const auto v = crit_good(from_curves(W, W, 5, 7));
    EXPECT_EQ(v.outcome, Outcome::NotApplicable);
    EXPECT_EQ(v.reason_code, ErrorCode::PreconditionFailed);
}

TEST(PotMult, RatioOfDiscriminantValuations) {
    const auto m = [](int v) { return local(3, 0, 0, v, 1, 1, 1, 1); };
    expect_verdict(crit_pot_mult(synthetic(3, 11, m(5), m(3), 0)), Outcome::Symplectic, 0, 0);
    expect_verdict(crit_pot_mult(synthetic(3, 17, m(5), m(2), 0)), Outcome::AntiSymplectic, 1, 0);
    expect_verdict(crit_pot_mult(synthetic(3, 17, m(4), m(4), 0)), Outcome::Symplectic, 0, 0);
    EXPECT_EQ(crit_pot_mult(synthetic(3, 5, m(5), m(3), 0)).outcome, Outcome::NotApplicable);
    EXPECT_EQ(crit_pot_mult(synthetic(3, 5, m(3), m(10), 0)).reason_code, ErrorCode::InconsistentPair);
    expect_verdict(crit_pot_mult(from_curves(fx().at("12696e1"), fx().at("12696f1"), 3, 11)), Outcome::Symplectic, 0,
                   0);
}

TEST(Isogeny, TypeIsLegendreOfDegree) {
    EXPECT_EQ(isogeny_type(Integer(2), 13), Outcome::AntiSymplectic);
    EXPECT_EQ(isogeny_type(Integer(3), 7), Outcome::AntiSymplectic);
    EXPECT_EQ(isogeny_type(Integer(4), 13), Outcome::Symplectic);
    EXPECT_EQ(isogeny_type(Integer(2), 7), Outcome::Symplectic);
    try {
        isogeny_type(Integer(14), 7);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegreeDivisibleByP);
    }
}

TEST(Criteria, BadPrimeArgumentsAreNotApplicable) {
    const auto in = from_curves(fx().at("2116a1"), fx().at("10580a1"), 23, 23);
    EXPECT_EQ(crit_tame3(in).outcome, Outcome::NotApplicable);
    auto even = in;
    even.p = 2;
    EXPECT_EQ(crit_tame3(even).outcome, Outcome::NotApplicable);
}

// ---------------------------------------------------------------------------------------------
// Global comparison.

TEST(Compare, TableRowsPerPrime) {
    struct Step {
        long ell;
        const char* criterion;
        Outcome outcome;
        int r, t;
        long twist;
    };
    struct Row {
        const char* e;
        const char* ep;
        long p;
        Outcome consensus;
        std::vector<Step> steps;
    };
    const auto S = Outcome::Symplectic, A = Outcome::AntiSymplectic;
    const std::vector<Row> rows = {
        {"2116a1", "10580a1", 7, A, {{2, "tame-e3", A, 0, 1, 1}, {23, "tame-e3", A, 1, 1, 1}}},
        {"648a1", "12312a1", 7, S, {{2, "wild-e24", S, 1, 0, 1}, {3, "wild-e3", S, 0, 0, 1}}},
        {"12696e1", "12696f1", 11, S, {{2, "wild-e24", S, 0, 0, 1}, {3, "pot-mult", S, 0, 0, 1}, {23, "tame-e3", S, 1, 1, 1}}},
        {"4536c1", "648b1", 11, A, {{2, "wild-e24", A, 1, 0, 1}}},
        {"52a2", "988b1", 13, S, {{2, "tame-e3", S, 0, 1, 1}}},
        {"52a1", "988b1", 13, A, {{2, "tame-e3", A, 1, 1, 1}}},
        {"3675k1", "47775cq1", 17, A, {{3, "pot-mult", A, 1, 0, 1}, {5, "tame-e3", A, 0, 1, 5}}},
        {"882a1", "441b1", 3, A, {{7, "e3-p3", A, 1, 0, 1}}},
    };
    for (const auto& row : rows) {
        SCOPED_TRACE(std::string(row.e) + " / " + row.ep);
        const auto rep = compare(fx().at(row.e), fx().at(row.ep), row.p);
        EXPECT_FALSE(rep.inconsistent);
        EXPECT_EQ(rep.consensus, row.consensus);
        std::vector<const PrimeVerdict*> determined;
        for (const auto& pv : rep.primes)
            if (pv.verdict.determined()) determined.push_back(&pv);
        ASSERT_EQ(determined.size(), row.steps.size());
        for (size_t i = 0; i < row.steps.size(); ++i) {
            const auto& s = row.steps[i];
            const auto& pv = *determined[i];
            EXPECT_EQ(pv.ell, s.ell);
            EXPECT_EQ(pv.criterion, s.criterion);
            EXPECT_EQ(pv.verdict.outcome, s.outcome);
            EXPECT_EQ(pv.verdict.witness->r, s.r);
            EXPECT_EQ(pv.verdict.witness->t, s.t);
            EXPECT_EQ(pv.verdict.witness->twist, s.twist);
        }
    }
}

TEST(Compare, CriterionPrimeList) {
    const auto l = criterion_prime_list(fx().at("12696e1"), fx().at("12696f1"), 11);
    const std::vector<std::pair<long, std::string>> want{{2, "wild-e24"}, {3, "pot-mult"}, {23, "tame-e3"}};
    EXPECT_EQ(l, want);
}

TEST(Compare, IdenticalCurvesAreSymplecticEverywhere) {
    for (const auto& [label, E] : fx()) {
        for (long p : {3L, 5L, 7L, 11L, 13L}) {
            const auto rep = compare(E, E, p);
            for (const auto& pv : rep.primes)
                if (pv.verdict.determined()) {
                    EXPECT_EQ(pv.verdict.outcome, Outcome::Symplectic) << label << " ell " << pv.ell;
                }
        }
    }
}

TEST(Compare, ParallelMatchesSerial) {
    CompareOptions par;
    par.jobs = 4;
    par.good_bound = 50;
    CompareOptions ser = par;
    ser.jobs = 1;
    const auto a = compare(fx().at("12696e1"), fx().at("12696f1"), 11, par);
    const auto b = compare(fx().at("12696e1"), fx().at("12696f1"), 11, ser);
    ASSERT_EQ(a.primes.size(), b.primes.size());
    for (size_t i = 0; i < a.primes.size(); ++i) {
        EXPECT_EQ(a.primes[i].ell, b.primes[i].ell);
        EXPECT_EQ(a.primes[i].verdict.outcome, b.primes[i].verdict.outcome);
    }
}

TEST(Compare, RejectsEvenP) { EXPECT_THROW(compare(fx().at("52a1"), fx().at("52a2"), 2), Error); }

// Every determined verdict on an isogenous pair must equal the type of the isogeny, and the
// dataset reaches every criterion.
TEST(IsogenyOracle, EveryDeterminedVerdictMatches) {
    std::map<std::string, int> hits;
    for (const auto& pr : isogenous_pairs()) {
        for (long p : {3L, 5L, 7L, 11L, 13L}) {
            if (pr.n % p == 0) continue;
            const Outcome want = isogeny_type(Integer(pr.n), p);
            const auto rep = compare(pr.E, pr.Ep, p);
            EXPECT_FALSE(rep.inconsistent) << to_string(pr.E) << " " << to_string(pr.Ep) << " p " << p;
            for (const auto& pv : rep.primes) {
                EXPECT_NE(pv.verdict.outcome, Outcome::BothPossible);
                if (!pv.verdict.determined()) continue;
                ASSERT_TRUE(pv.verdict.witness.has_value());
                ++hits[pv.criterion];
                EXPECT_EQ(pv.verdict.outcome, want) << to_string(pr.E) << " -> " << to_string(pr.Ep) << " n " << pr.n
                                                    << " p " << p << " ell " << pv.ell << " " << pv.criterion;
            }
        }
    }
    for (const char* id : {"tame-e3", "e3-p3", "wild-e3", "tame-e4", "wild-e4", "wild-e24", "wild-e8", "wild-e12",
                           "good", "pot-mult"})
        EXPECT_GT(hits[id], 0) << id;
}

TEST(IsogenyOracle, SwappingThePairPreservesVerdicts) {
    int checked = 0;
    for (size_t i = 0; i < isogenous_pairs().size(); i += 3) {
        const auto& pr = isogenous_pairs()[i];
        for (long p : {5L, 7L}) {
            if (pr.n % p == 0) continue;
            const auto a = compare(pr.E, pr.Ep, p), b = compare(pr.Ep, pr.E, p);
            ASSERT_EQ(a.primes.size(), b.primes.size());
            for (size_t k = 0; k < a.primes.size(); ++k) {
                EXPECT_EQ(a.primes[k].verdict.outcome, b.primes[k].verdict.outcome);
                checked += a.primes[k].verdict.determined();
            }
        }
    }
    EXPECT_GT(checked, 500);
}

TEST(IsogenyOracle, CommonTwistPreservesConsensus) {
    int checked = 0;
    for (size_t i = 0; i < isogenous_pairs().size(); i += 5) {
        const auto& pr = isogenous_pairs()[i];
        for (long d : {-1L, 2L, -3L, 5L}) {
            const auto E = quadratic_twist(pr.E, Integer(d)), Ep = quadratic_twist(pr.Ep, Integer(d));
            for (long p : {5L, 7L}) {
                if (pr.n % p == 0) continue;
                const auto rep = compare(E, Ep, p);
                EXPECT_FALSE(rep.inconsistent);
                if (!is_determined(rep.consensus)) continue;
                EXPECT_EQ(rep.consensus, isogeny_type(Integer(pr.n), p));
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 200);
}

TEST(Compare, CommonTwistOfTableRows) {
    const std::vector<std::tuple<const char*, const char*, long>> rows = {
        {"2116a1", "10580a1", 7}, {"648a1", "12312a1", 7}, {"52a2", "988b1", 13}, {"882a1", "441b1", 3}};
    for (const auto& [e, ep, p] : rows) {
        const auto base = compare(fx().at(e), fx().at(ep), p).consensus;
        for (long d : {-1L, 5L, -7L}) {
            const auto rep = compare(quadratic_twist(fx().at(e), Integer(d)), quadratic_twist(fx().at(ep), Integer(d)), p);
            EXPECT_FALSE(rep.inconsistent);
            if (is_determined(rep.consensus)) {
                EXPECT_EQ(rep.consensus, base) << e << " twisted by " << d;
            }
        }
    }
}

// ---------------------------------------------------------------------------------------------
// Existence gate.

namespace {

// Independent characterisation: a criterion exists iff the image is non-abelian or has order
// divisible by p.
bool existence_by_structure(const std::vector<Mat2>& gens, long p) {
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = 0; j < gens.size(); ++j)
            if (mat_mul(gens[i], gens[j], p) != mat_mul(gens[j], gens[i], p)) return true;
    std::set<Mat2> seen{mat_identity()};
    std::vector<Mat2> stack{mat_identity()};
    while (!stack.empty()) {
        const Mat2 h = stack.back();
        stack.pop_back();
        for (const auto& g : gens) {
            const Mat2 x = mat_mul(h, g, p);
            if (seen.insert(x).second) stack.push_back(x);
        }
    }
    return seen.size() % static_cast<size_t>(p) == 0;
}

}  // namespace

TEST(Existence, NamedSubgroups) {
    const auto u = criterion_exists({{2, 1, 0, 2}}, 7);
    EXPECT_TRUE(u.exists);
    EXPECT_EQ(u.pattern, ExistencePattern::UnipotentCyclic);
    EXPECT_FALSE(criterion_exists({{2, 0, 0, 1}}, 5).exists);                  // split Cartan
    EXPECT_FALSE(criterion_exists({{0, 2, 1, 0}}, 5).exists);                  // x^2 - 2, non-split Cartan
    EXPECT_FALSE(criterion_exists({{3, 0, 0, 3}}, 7).exists);                  // scalar
    EXPECT_EQ(criterion_exists({{3, 0, 0, 3}}, 7).centralizer_order, 48u * 42u);
    const auto n = criterion_exists({{0, 1, 6, 0}, {1, 1, 0, 1}}, 7);          // non-abelian
    EXPECT_TRUE(n.exists);
    EXPECT_EQ(n.pattern, ExistencePattern::NonAbelian);
    EXPECT_THROW(criterion_exists({{1, 0, 0, 0}}, 5), Error);
    EXPECT_THROW(criterion_exists({{1, 0, 0, 1}}, 29), Error);
}

TEST(Existence, EverySubgroupOfGL2F3) {
    // Every subgroup of GL2(F_3) is generated by at most two elements.
    const auto G = gl2_elements(3);
    for (const auto& x : G)
        for (const auto& y : G) EXPECT_EQ(criterion_exists({x, y}, 3).exists, existence_by_structure({x, y}, 3));
}

TEST(Existence, RandomGeneratorSets) {
    std::mt19937_64 rng(17);
    for (long p : {5L, 7L}) {
        const auto G = gl2_elements(p);
        std::uniform_int_distribution<size_t> pick(0, G.size() - 1);
        std::uniform_int_distribution<int> count(1, 3);
        for (int i = 0; i < 100; ++i) {
            std::vector<Mat2> gens;
            for (int k = count(rng); k > 0; --k) gens.push_back(G[pick(rng)]);
            EXPECT_EQ(criterion_exists(gens, p).exists, existence_by_structure(gens, p));
        }
    }
}
