#pragma once

#include <algorithm>
#include <future>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symplectic/goodred.hpp"
#include "symplectic/matrix.hpp"
#include "symplectic/reduction.hpp"

namespace symplectic {

enum class Outcome { Symplectic, AntiSymplectic, BothPossible, NotApplicable };

inline std::string to_string(Outcome o) {
    switch (o) {
    case Outcome::Symplectic: return "symplectic";
    case Outcome::AntiSymplectic: return "anti-symplectic";
    case Outcome::BothPossible: return "both-possible";
    case Outcome::NotApplicable: return "not-applicable";
    }
    return "?";
}

inline bool is_determined(Outcome o) { return o == Outcome::Symplectic || o == Outcome::AntiSymplectic; }

struct Witness {
    long ell = 0;
    std::string criterion;
    int r = 0, t = 0;
    long twist = 1;  // common quadratic twist applied before the criterion
};

struct SymplecticVerdict {
    Outcome outcome = Outcome::NotApplicable;
    std::optional<ErrorCode> reason_code;
    std::string reason;
    std::optional<Witness> witness;
    std::vector<std::string> assumptions;

    bool determined() const { return is_determined(outcome); }
};

// Local data of E and E' at one prime, as consumed by the criteria.
struct CriterionInput {
    long p = 0;
    long ell = 0;
    LocalInvariants L, Lp;
    int e = 0, ep = 0;
    // The e = 24 criterion needs the two inertial fields to agree; no table decides this, so the
    // caller asserts it. For e = 8, 12 it skips the tag comparison.
    bool same_inertial_field = false;
    std::optional<ResidualCurve> residual, residual_prime;  // good reduction only
};

inline constexpr const char* kGalIsoAssumption = "E[p] and E'[p] isomorphic as G_Q_ell-modules (caller-asserted)";

namespace detail {

inline SymplecticVerdict not_applicable(ErrorCode code, std::string why) {
    SymplecticVerdict v;
    v.reason_code = code;
    v.reason = std::move(why);
    return v;
}

inline SymplecticVerdict decided(const CriterionInput& in, const std::string& id, bool symplectic, int r = 0,
                                 int t = 0) {
    SymplecticVerdict v;
    v.outcome = symplectic ? Outcome::Symplectic : Outcome::AntiSymplectic;
    v.witness = Witness{in.ell, id, r, t, 1};
    return v;
}

// Runs a criterion body, turning library errors into NotApplicable verdicts.
template <class F>
SymplecticVerdict guarded(F&& body) {
    try {
        return body();
    } catch (const Error& err) {
        return not_applicable(err.code(), err.what());
    }
}

inline int sign_pow(int s, int k) { return k ? s : 1; }

inline std::string triple_string(const LocalInvariants& L) {
    auto f = [](int v) { return v == kInfinity ? std::string("inf") : std::to_string(v); };
    return "(" + f(L.v_c4) + "," + f(L.v_c6) + "," + f(L.v_disc) + ")";
}

inline bool base_checks(const CriterionInput& in, SymplecticVerdict& out) {
    if (in.p < 3 || !is_prime(in.p)) {
        out = not_applicable(ErrorCode::PreconditionFailed, "p must be an odd prime");
        return false;
    }
    if (in.p == in.ell) {
        out = not_applicable(ErrorCode::PreconditionFailed, "p must differ from ell");
        return false;
    }
    if (in.L.ell != in.ell || in.Lp.ell != in.ell) {
        out = not_applicable(ErrorCode::PreconditionFailed, "local data at a different prime");
        return false;
    }
    return true;
}

}  // namespace detail

// Whether a curve with tame e = 3 at ell != 3 has a 3-torsion point over Q_ell.
inline bool has_rational_3torsion_local(const LocalInvariants& L) {
    require(L.ell != 3, ErrorCode::PreconditionFailed, "3-torsion test needs ell != 3");
    require(!L.c6_zero(), ErrorCode::PreconditionFailed, "c6 = 0 is not an e = 3 curve");
    if (L.ell >= 5) {
        // -6 c6 is a square in Q_ell iff v(c6) is even and -6 c6~ is a square mod ell.
        return L.v_c6 % 2 == 0 && legendre(Integer(-6 * L.c6_unit), Integer(L.ell)) == 1;
    }
    const int a = L.v_c4, b = L.v_c6, d = L.v_disc;
    if (a == 4 && b == 5 && d == 4) {
        const long x = L.c4_mod(8), y = L.c6_mod(8);
        return (x == 7 && y == 1) || (x == 3 && y == 5);
    }
    if ((a >= 6 && b == 5 && d == 4) || (a >= 7 && b == 7 && d == 8)) return L.c6_mod(8) == 5;
    if (a == 4 && b == 6 && d == 8) {
        const long x = L.c4_mod(32), y = L.c6_mod(16);
        return (x == 29 && y == 15) || (x == 5 && y == 3) || (x == 13 && y == 7) || (x == 21 && y == 11);
    }
    fail(ErrorCode::TableMiss, "no 3-torsion rule for valuations " + detail::triple_string(L) + " at 2");
}

inline SymplecticVerdict crit_tame3(const CriterionInput& in) {
    return detail::guarded([&] {
        SymplecticVerdict v;
        if (!detail::base_checks(in, v)) return v;
        if (mod(in.ell, 3L) != 2 || in.e != 3 || in.ep != 3)
            return detail::not_applicable(ErrorCode::PreconditionFailed, "needs ell = 2 mod 3 and e = e' = 3");
        const int r = mod(static_cast<long>(in.L.v_disc - in.Lp.v_disc), 3L) != 0;
        const int t = has_rational_3torsion_local(in.L) != has_rational_3torsion_local(in.Lp);
        if (in.p == 3 && t == 1)
            return detail::not_applicable(ErrorCode::InconsistentPair,
                                          "exactly one curve has a rational 3-torsion point, so E[3] and E'[3] differ");
        const int s = detail::sign_pow(legendre(in.ell, in.p), r) * (in.p == 3 ? 1 : detail::sign_pow(legendre(3L, in.p), t));
        auto out = detail::decided(in, "tame-e3", s == 1, r, t);
        out.assumptions.push_back(kGalIsoAssumption);
        return out;
    });
}

inline SymplecticVerdict crit_e3_p3(const CriterionInput& in) {
    return detail::guarded([&] {
        SymplecticVerdict v;
        if (!detail::base_checks(in, v)) return v;
        if (in.p != 3 || mod(in.ell, 3L) != 1 || in.e != 3 || in.ep != 3)
            return detail::not_applicable(ErrorCode::PreconditionFailed, "needs p = 3, ell = 1 mod 3 and e = e' = 3");
        const int r = mod(static_cast<long>(in.L.v_disc - in.Lp.v_disc), 3L) != 0;
        auto out = detail::decided(in, "e3-p3", r == 0, r);
        out.assumptions.push_back(kGalIsoAssumption);
        return out;
    });
}

inline SymplecticVerdict crit_wild3(const CriterionInput& in) {
    return detail::guarded([&] {
        SymplecticVerdict v;
        if (!detail::base_checks(in, v)) return v;
        if (in.ell != 3 || in.p < 5)
            return detail::not_applicable(ErrorCode::PreconditionFailed, "needs ell = 3 and p >= 5");
        auto in_rows = [](const LocalInvariants& L) {
            auto t = L.triple();
            return t == std::tuple{2, 3, 4} || t == std::tuple{5, 8, 12};
        };
        if (!in_rows(in.L) || !in_rows(in.Lp))
            return detail::not_applicable(ErrorCode::PreconditionFailed,
                                          "valuations must lie in {(2,3,4), (5,8,12)}, got " +
                                              detail::triple_string(in.L) + " and " + detail::triple_string(in.Lp));
        const bool n1 = in.L.disc_mod(3) == 2, n2 = in.Lp.disc_mod(3) == 2;
        if (n1 != n2)
            return detail::not_applicable(ErrorCode::InconsistentPair,
                                          "disc unit = 2 mod 3 for one curve only, contradicting E[p] = E'[p]");
        if (!n1)
            return detail::not_applicable(ErrorCode::PreconditionFailed,
                                          "disc unit = 1 mod 3: torsion field abelian, no criterion");
        const int r = in.L.c6_mod(3) != in.Lp.c6_mod(3);
        auto out = detail::decided(in, "wild-e3", detail::sign_pow(legendre(3L, in.p), r) == 1, r);
        out.assumptions.push_back(kGalIsoAssumption);
        return out;
    });
}

inline SymplecticVerdict crit_tame4(const CriterionInput& in) {
    return detail::guarded([&] {
        SymplecticVerdict v;
        if (!detail::base_checks(in, v)) return v;
        if (mod(in.ell, 4L) != 3 || in.e != 4 || in.ep != 4)
            return detail::not_applicable(ErrorCode::PreconditionFailed, "needs ell = 3 mod 4 and e = e' = 4");
        if (in.p < 5) return detail::not_applicable(ErrorCode::PreconditionFailed, "no e = 4 criterion for p = 3");
        const int r = mod(static_cast<long>(in.L.v_disc - in.Lp.v_disc), 4L) != 0;
        const bool s1 = legendre(in.L.disc_unit, Integer(in.ell)) == 1;
        const bool s2 = legendre(in.Lp.disc_unit, Integer(in.ell)) == 1;
        const int t = s1 != s2;
        const int s = detail::sign_pow(legendre(in.ell, in.p), r) * detail::sign_pow(legendre(2L, in.p), t);
        auto out = detail::decided(in, "tame-e4", s == 1, r, t);
        out.assumptions.push_back(kGalIsoAssumption);
        return out;
    });
}

inline SymplecticVerdict crit_wild4(const CriterionInput& in) {
    return detail::guarded([&] {
        SymplecticVerdict v;
        if (!detail::base_checks(in, v)) return v;
        if (in.ell != 2) return detail::not_applicable(ErrorCode::PreconditionFailed, "needs ell = 2");
        auto in_rows = [](const LocalInvariants& L) {
            auto t = L.triple();
            return t == std::tuple{5, 8, 9} || t == std::tuple{7, 11, 15};
        };
        if (!in_rows(in.L) || !in_rows(in.Lp))
            return detail::not_applicable(ErrorCode::PreconditionFailed,
                                          "valuations must lie in {(5,8,9), (7,11,15)}, got " +
                                              detail::triple_string(in.L) + " and " + detail::triple_string(in.Lp));
        auto cond = [](const LocalInvariants& L) { return mod(L.c4_unit - 5 * L.disc_unit, Integer(8)) == 0; };
        const bool n1 = cond(in.L), n2 = cond(in.Lp);
        if (n1 != n2)
            return detail::not_applicable(ErrorCode::InconsistentPair,
                                          "c4 unit = 5 disc unit mod 8 for one curve only, contradicting E[p] = E'[p]");
        if (!n1)
            return detail::not_applicable(ErrorCode::PreconditionFailed,
                                          "c4 unit != 5 disc unit mod 8: torsion field abelian, no criterion");
        const int r = in.L.c6_mod(4) != in.Lp.c6_mod(4);
        auto out = detail::decided(in, "wild-e4", detail::sign_pow(legendre(2L, in.p), r) == 1, r);
        out.assumptions.push_back(kGalIsoAssumption);
        return out;
    });
}

inline SymplecticVerdict crit_e24(const CriterionInput& in) {
    return detail::guarded([&] {
        SymplecticVerdict v;
        if (!detail::base_checks(in, v)) return v;
        if (in.ell != 2 || in.e != 24 || in.ep != 24)
            return detail::not_applicable(ErrorCode::PreconditionFailed, "needs ell = 2 and e = e' = 24");
        if (!in.same_inertial_field)
            return detail::not_applicable(ErrorCode::PreconditionFailed,
                                          "same inertial field not asserted (no table decides it for e = 24)");
        const int r = mod(static_cast<long>(in.L.v_disc - in.Lp.v_disc), 3L) != 0;
        const bool symp = legendre(2L, in.p) == 1 || r == 0;
        auto out = detail::decided(in, "wild-e24", symp, r);
        out.assumptions.push_back("same inertial field (caller-asserted)");
        return out;
    });
}

// Case of the conductor 2^5 table for e = 8.
inline char e8_case(const LocalInvariants& L) {
    const int a = L.v_c4, b = L.v_c6, d = L.v_disc;
    const long c4 = L.c4_zero() ? -1 : L.c4_mod(4);
    if ((a == 4 && b >= 7 && d == 6 && c4 == 3) || (a == 7 && b == 9 && d == 12)) return 'a';
    if ((a == 6 && b >= 10 && d == 12 && c4 == 1) || (a == 4 && b == 6 && d == 9)) return 'b';
    fail(ErrorCode::TableMiss, "valuations " + detail::triple_string(L) + " match no e = 8 case at conductor 2^5");
}

// Case of the e = 12 table at 3, keyed on conductor exponent, valuations and disc unit mod 9.
inline char e12_case(const LocalInvariants& L) {
    const int a = L.v_c4, b = L.v_c6, d = L.v_disc, f = L.conductor_exponent;
    const long d9 = L.disc_mod(9);
    const bool not24 = d9 != 2 && d9 != 4;
    if (f == 3) {
        if ((a >= 2 && b == 3 && d == 3 && not24) || (a == 2 && b == 4 && d == 3) || (a == 4 && b == 6 && d == 11))
            return 'a';
        if ((a >= 4 && b == 6 && d == 9 && not24) || (a == 2 && b == 3 && d == 5) || (a == 4 && b == 7 && d == 9))
            return 'b';
    } else if (f == 5) {
        if ((a >= 3 && b == 4 && d == 5) || (a >= 6 && b == 8 && d == 13)) return 'c';
        if ((a >= 4 && b == 5 && d == 7) || (a >= 5 && b == 7 && d == 11)) return 'd';
    }
    fail(ErrorCode::TableMiss, "valuations " + detail::triple_string(L) + " with conductor 3^" + std::to_string(f) +
                                   " match no e = 12 case");
}

namespace detail {

inline bool inertial_fields_agree(const CriterionInput& in, SymplecticVerdict& out) {
    if (in.same_inertial_field) {
        out.assumptions.push_back("same inertial field (caller-asserted)");
        return true;
    }
    const auto t1 = inertial_field_tag(in.L, in.e, in.L.conductor_exponent);
    const auto t2 = inertial_field_tag(in.Lp, in.ep, in.Lp.conductor_exponent);
    if (t1 != t2) return false;
    out.assumptions.push_back("same inertial field (" + to_string(t1) + ")");
    return true;
}

}  // namespace detail

inline SymplecticVerdict crit_e8(const CriterionInput& in) {
    return detail::guarded([&] {
        SymplecticVerdict v;
        if (!detail::base_checks(in, v)) return v;
        if (in.ell != 2 || in.e != 8 || in.ep != 8)
            return detail::not_applicable(ErrorCode::PreconditionFailed, "needs ell = 2 and e = e' = 8");
        const int f = in.L.conductor_exponent;
        if (f != in.Lp.conductor_exponent || (f != 5 && f != 8))
            return detail::not_applicable(ErrorCode::PreconditionFailed,
                                          "conductor exponents must both be 5 or both be 8 (twist by 2 first)");
        SymplecticVerdict notes;
        if (!detail::inertial_fields_agree(in, notes))
            return detail::not_applicable(ErrorCode::PreconditionFailed, "inertial fields differ");
        int r = 0;
        if (legendre(2L, in.p) != 1) {
            if (f == 5) r = e8_case(in.L) != e8_case(in.Lp);
            else r = in.L.c4_mod(4) != in.Lp.c4_mod(4);
        }
        auto out = detail::decided(in, "wild-e8", r == 0, r);
        out.assumptions = notes.assumptions;
        return out;
    });
}

inline SymplecticVerdict crit_e12(const CriterionInput& in) {
    return detail::guarded([&] {
        SymplecticVerdict v;
        if (!detail::base_checks(in, v)) return v;
        if (in.ell != 3 || in.p < 5 || in.e != 12 || in.ep != 12)
            return detail::not_applicable(ErrorCode::PreconditionFailed, "needs ell = 3, p >= 5 and e = e' = 12");
        SymplecticVerdict notes;
        if (!detail::inertial_fields_agree(in, notes))
            return detail::not_applicable(ErrorCode::PreconditionFailed, "inertial fields differ");
        int r = 0;
        if (legendre(3L, in.p) != 1) r = e12_case(in.L) != e12_case(in.Lp);
        auto out = detail::decided(in, "wild-e12", r == 0, r);
        out.assumptions = notes.assumptions;
        return out;
    });
}

inline SymplecticVerdict crit_good(const CriterionInput& in) {
    return detail::guarded([&] {
        SymplecticVerdict v;
        if (!detail::base_checks(in, v)) return v;
        if (!in.residual || !in.residual_prime)
            return detail::not_applicable(ErrorCode::PreconditionFailed, "needs good reduction for both curves");
        if (!residual_iso_check(*in.residual, *in.residual_prime))
            return detail::not_applicable(ErrorCode::PreconditionFailed, "residual curves are not F_ell-isomorphic");
        const auto fd = frobenius_data(*in.residual);
        if (fd.disc % in.p != 0)
            return detail::not_applicable(ErrorCode::PreconditionFailed,
                                          "p does not divide a^2 - 4 ell = " + std::to_string(fd.disc));
        if (fd.beta % in.p == 0)
            return detail::not_applicable(ErrorCode::PreconditionFailed,
                                          "p divides beta = " + std::to_string(fd.beta) + " (Frobenius scalar mod p)");
        return detail::decided(in, "good", true);
    });
}

inline SymplecticVerdict crit_pot_mult(const CriterionInput& in) {
    return detail::guarded([&] {
        SymplecticVerdict v;
        if (!detail::base_checks(in, v)) return v;
        if (in.L.conductor_exponent != 1 || in.Lp.conductor_exponent != 1)
            return detail::not_applicable(ErrorCode::PreconditionFailed, "needs multiplicative reduction for both");
        const long a = in.L.v_disc, b = in.Lp.v_disc;
        if (a % in.p == 0) return detail::not_applicable(ErrorCode::PreconditionFailed, "p divides v(disc)");
        if (b % in.p == 0)
            return detail::not_applicable(ErrorCode::InconsistentPair, "p divides v(disc') but not v(disc)");
        const long ratio = mod(a * inverse_mod(b, in.p), in.p);
        const bool symp = legendre(ratio, in.p) == 1;
        auto out = detail::decided(in, "pot-mult", symp, symp ? 0 : 1);
        out.assumptions.push_back(kGalIsoAssumption);
        return out;
    });
}

// Symplectic type of the isomorphism E[p] -> E'[p] induced by an isogeny of degree n.
inline Outcome isogeny_type(const Integer& n, long p) {
    require(n > 0, ErrorCode::InvalidArgument, "isogeny degree must be positive");
    require(p >= 3 && is_prime(p), ErrorCode::InvalidArgument, "p must be an odd prime");
    require(!divides(Integer(p), n), ErrorCode::DegreeDivisibleByP, "p divides the isogeny degree");
    return legendre(n, Integer(p)) == 1 ? Outcome::Symplectic : Outcome::AntiSymplectic;
}

// ---------------------------------------------------------------------------------------------
// Per-prime dispatch and the global comparison.

struct CompareOptions {
    long good_bound = 0;               // also try good primes ell <= bound
    bool same_inertial_field = true;   // assumed for e = 24; implied by E[p] = E'[p] as G_Q_ell-modules
    int jobs = 1;
};

struct PrimeVerdict {
    long ell = 0;
    std::string criterion;  // empty when no criterion is attempted
    std::string kind, kind_prime;
    int e = 0, e_prime = 0;
    SymplecticVerdict verdict;
};

namespace detail {

inline std::string kind_label(const ReductionClass& rc) {
    if (rc.kind == ReductionKind::PotentiallyGood) return "potentially-good(e=" + std::to_string(rc.e) + ")";
    return to_string(rc.kind);
}

inline PrimeVerdict dispatch(const WeierstrassModel& E, const WeierstrassModel& Ep, long ell, long p,
                             const CompareOptions& opt, long twist) {
    PrimeVerdict pv;
    pv.ell = ell;
    auto finish = [&](SymplecticVerdict v) {
        if (v.witness) v.witness->twist = twist;
        if (twist != 1) v.assumptions.push_back("both curves twisted by " + std::to_string(twist));
        pv.verdict = std::move(v);
        return pv;
    };
    ReductionClass a, b;
    try {
        a = classify(E, ell);
        b = classify(Ep, ell);
    } catch (const Error& err) {
        return finish(not_applicable(err.code(), err.what()));
    }
    pv.kind = kind_label(a);
    pv.kind_prime = kind_label(b);
    pv.e = a.e;
    pv.e_prime = b.e;
    if (ell == p) return finish(not_applicable(ErrorCode::PreconditionFailed, "ell = p is excluded"));

    CriterionInput in;
    in.p = p;
    in.ell = ell;
    in.L = a.local.inv;
    in.Lp = b.local.inv;
    in.e = a.e;
    in.ep = b.e;
    in.same_inertial_field = false;

    using K = ReductionKind;
    auto retwist = [&](long d) {
        if (twist != 1) return finish(not_applicable(ErrorCode::PreconditionFailed, "second twist needed"));
        auto sub = dispatch(quadratic_twist(E, Integer(d)), quadratic_twist(Ep, Integer(d)), ell, p, opt, d);
        sub.kind = pv.kind;
        sub.kind_prime = pv.kind_prime;
        sub.e = pv.e;
        sub.e_prime = pv.e_prime;
        return sub;
    };

    if (a.kind == K::Good && b.kind == K::Good) {
        pv.criterion = "good";
        try {
            in.residual = reduce_good(E, ell);
            in.residual_prime = reduce_good(Ep, ell);
        } catch (const Error& err) {
            return finish(not_applicable(err.code(), err.what()));
        }
        return finish(crit_good(in));
    }
    const bool m1 = a.kind == K::Multiplicative || a.kind == K::PotentiallyMultiplicative;
    const bool m2 = b.kind == K::Multiplicative || b.kind == K::PotentiallyMultiplicative;
    if (m1 && m2) {
        pv.criterion = "pot-mult";
        if (a.kind == K::Multiplicative && b.kind == K::Multiplicative) return finish(crit_pot_mult(in));
        const long d = a.kind == K::PotentiallyMultiplicative ? a.reducing_twist : b.reducing_twist;
        return retwist(d);
    }
    if (a.kind != K::PotentiallyGood || b.kind != K::PotentiallyGood)
        return finish(not_applicable(ErrorCode::PreconditionFailed, "reduction types differ: " + pv.kind + " vs " +
                                                                        pv.kind_prime));
    if (a.e != b.e)
        return finish(not_applicable(ErrorCode::PreconditionFailed,
                                     "semistability defects differ: " + std::to_string(a.e) + " vs " +
                                         std::to_string(b.e)));
    switch (a.e) {
    case 2:
    case 6: return retwist(a.reducing_twist);
    case 3:
        if (mod(ell, 3L) == 2) {
            pv.criterion = "tame-e3";
            return finish(crit_tame3(in));
        }
        if (ell == 3) {
            pv.criterion = "wild-e3";
            return finish(crit_wild3(in));
        }
        if (p == 3) {
            pv.criterion = "e3-p3";
            return finish(crit_e3_p3(in));
        }
        return finish(not_applicable(ErrorCode::PreconditionFailed, "e = 3 with ell = 1 mod 3 needs p = 3"));
    case 4:
        if (mod(ell, 4L) == 3) {
            pv.criterion = "tame-e4";
            return finish(crit_tame4(in));
        }
        if (ell == 2) {
            pv.criterion = "wild-e4";
            return finish(crit_wild4(in));
        }
        return finish(not_applicable(ErrorCode::PreconditionFailed, "e = 4 with ell = 1 mod 4: abelian inertia image"));
    case 8: {
        pv.criterion = "wild-e8";
        if (twist != 1) return finish(crit_e8(in));
        // Bring both conductors to 2^5 or 2^8 by a common twist.
        for (long d : {1L, 2L, -1L, -2L}) {
            auto x = minimal_model_at(quadratic_twist(E, Integer(d)), 2).inv;
            auto y = minimal_model_at(quadratic_twist(Ep, Integer(d)), 2).inv;
            const int f = x.conductor_exponent;
            if (f != y.conductor_exponent || (f != 5 && f != 8)) continue;
            if (d == 1) return finish(crit_e8(in));
            return retwist(d);
        }
        return finish(not_applicable(ErrorCode::PreconditionFailed,
                                     "no common twist brings both conductors to 2^5 or 2^8"));
    }
    case 12:
        pv.criterion = "wild-e12";
        return finish(crit_e12(in));
    case 24:
        pv.criterion = "wild-e24";
        in.same_inertial_field = opt.same_inertial_field;
        return finish(crit_e24(in));
    default: break;
    }
    return finish(not_applicable(ErrorCode::UnclassifiedReduction, "no criterion for e = " + std::to_string(a.e)));
}

}  // namespace detail

inline PrimeVerdict verdict_at(const WeierstrassModel& E, const WeierstrassModel& Ep, long ell, long p,
                               const CompareOptions& opt = {}) {
    require(ell >= 2 && is_prime(ell), ErrorCode::InvalidArgument, "ell must be prime");
    require(p >= 3 && is_prime(p), ErrorCode::InvalidArgument, "p must be an odd prime");
    return detail::dispatch(E, Ep, ell, p, opt, 1);
}

// Primes examined for (E, E', p): bad primes of either curve and good primes up to the bound.
inline std::vector<long> candidate_primes(const WeierstrassModel& E, const WeierstrassModel& Ep, long p,
                                          long good_bound) {
    std::set<long> s;
    for (long l : global_reduction(E).bad_primes) s.insert(l);
    for (long l : global_reduction(Ep).bad_primes) s.insert(l);
    for (long l : primes_up_to(good_bound)) s.insert(l);
    s.erase(p);
    return {s.begin(), s.end()};
}

struct CompareReport {
    long p = 0;
    std::vector<PrimeVerdict> primes;  // sorted by ell
    Outcome consensus = Outcome::NotApplicable;
    bool inconsistent = false;
};

inline CompareReport compare(const WeierstrassModel& E, const WeierstrassModel& Ep, long p,
                             const CompareOptions& opt = {}) {
    require(p >= 3 && is_prime(p), ErrorCode::InvalidArgument, "p must be an odd prime");
    CompareReport rep;
    rep.p = p;
    const auto ells = candidate_primes(E, Ep, p, opt.good_bound);
    if (opt.jobs <= 1) {
        for (long l : ells) rep.primes.push_back(verdict_at(E, Ep, l, p, opt));
    } else {
        for (size_t i = 0; i < ells.size(); i += static_cast<size_t>(opt.jobs)) {
            std::vector<std::future<PrimeVerdict>> batch;
            for (size_t j = i; j < std::min(ells.size(), i + static_cast<size_t>(opt.jobs)); ++j)
                batch.push_back(std::async(std::launch::async, [&, l = ells[j]] { return verdict_at(E, Ep, l, p, opt); }));
            for (auto& f : batch) rep.primes.push_back(f.get());
        }
    }
    for (const auto& pv : rep.primes) {
        if (!pv.verdict.determined()) continue;
        if (rep.consensus == Outcome::NotApplicable) rep.consensus = pv.verdict.outcome;
        else if (rep.consensus != pv.verdict.outcome) rep.inconsistent = true;
    }
    return rep;
}

// The (ell, criterion) pairs whose criterion applies to (E, E', p).
inline std::vector<std::pair<long, std::string>> criterion_prime_list(const WeierstrassModel& E,
                                                                      const WeierstrassModel& Ep, long p,
                                                                      const CompareOptions& opt = {}) {
    std::vector<std::pair<long, std::string>> out;
    for (const auto& pv : compare(E, Ep, p, opt).primes)
        if (pv.verdict.determined()) out.emplace_back(pv.ell, pv.criterion);
    return out;
}

}  // namespace symplectic
