#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symplectic/tate.hpp"

namespace symplectic {

enum class ReductionKind { Good, Multiplicative, PotentiallyMultiplicative, PotentiallyGood };
enum class InertiaTag { C1, C2, C3, C4, C6, H8, Dic12, SL2F3 };

inline std::string to_string(ReductionKind k) {
    switch (k) {
    case ReductionKind::Good: return "good";
    case ReductionKind::Multiplicative: return "multiplicative";
    case ReductionKind::PotentiallyMultiplicative: return "potentially-multiplicative";
    case ReductionKind::PotentiallyGood: return "potentially-good";
    }
    return "?";
}

inline std::string to_string(InertiaTag t) {
    static const char* names[] = {"C1", "C2", "C3", "C4", "C6", "H8", "Dic12", "SL2F3"};
    return names[static_cast<int>(t)];
}

inline InertiaTag inertia_for_defect(int e) {
    switch (e) {
    case 1: return InertiaTag::C1;
    case 2: return InertiaTag::C2;
    case 3: return InertiaTag::C3;
    case 4: return InertiaTag::C4;
    case 6: return InertiaTag::C6;
    case 8: return InertiaTag::H8;
    case 12: return InertiaTag::Dic12;
    case 24: return InertiaTag::SL2F3;
    }
    fail(ErrorCode::InvalidArgument, "impossible semistability defect " + std::to_string(e));
}

// A row of the valuation-triple table relating e to the minimal invariants at 2 and 3
// (and the two tame rows at ell >= 5).
struct ModelCase {
    std::string name;  // "A3", "B4ii", "C3iii", "Da", "Gh", ...
    int e = 0;
};

namespace detail {

inline bool at_least(int v, int n) { return v >= n; }  // kInfinity satisfies every bound

inline std::optional<ModelCase> match_rows_2(const LocalInvariants& L) {
    const int a = L.v_c4, b = L.v_c6, d = L.v_disc, f = L.conductor_exponent;
    auto c4m = [&](long m) { return L.c4_zero() ? -1 : L.c4_mod(m); };
    auto c6m = [&](long m) { return L.c6_zero() ? -1 : L.c6_mod(m); };
    const long dm4 = L.disc_mod(4);
    if (f == 8 && ((a == 5 && b == 8 && d == 9) || (a == 7 && b == 11 && d == 15))) return ModelCase{"C4", 4};
    if (a == 4 && b == 5 && d == 4 && c4m(4) == 3 && c6m(4) == 1) return ModelCase{"C3i", 3};
    if (at_least(a, 6) && b == 5 && d == 4 && c6m(4) == 1) return ModelCase{"C3ii", 3};
    if (a == 4 && b == 6 && d == 8 && c6m(4) == 3 && dm4 == 3) return ModelCase{"C3iii", 3};
    if (at_least(a, 7) && b == 7 && d == 8 && c6m(4) == 1) return ModelCase{"C3iv", 3};
    if (f == 5) {
        if (a == 4 && at_least(b, 7) && d == 6 && c4m(4) == 3) return ModelCase{"Da", 8};
        if (a == 6 && at_least(b, 10) && d == 12 && c4m(4) == 1) return ModelCase{"Db", 8};
        if (a == 7 && b == 9 && d == 12) return ModelCase{"Dc", 8};
        if (a == 4 && b == 6 && d == 9) return ModelCase{"Dd", 8};
    }
    if (f == 8) {
        if (a == 5 && at_least(b, 9) && d == 9) return ModelCase{"De", 8};
        if (a == 7 && at_least(b, 12) && d == 15) return ModelCase{"Df", 8};
    }
    return std::nullopt;
}

inline std::optional<ModelCase> match_rows_3(const LocalInvariants& L) {
    const int a = L.v_c4, b = L.v_c6, d = L.v_disc, f = L.conductor_exponent;
    const long dm9 = L.disc_mod(9);
    const bool d24 = dm9 == 2 || dm9 == 4;
    if ((a == 2 && b == 3 && d == 4) || (a == 5 && b == 8 && d == 12)) return ModelCase{"B3", 3};
    if ((a == 2 && at_least(b, 5) && d == 3) || (a == 4 && at_least(b, 8) && d == 9)) return ModelCase{"B4i", 4};
    if (at_least(a, 2) && b == 3 && d == 3 && d24) return ModelCase{"B4ii", 4};
    if (at_least(a, 4) && b == 6 && d == 9 && d24) return ModelCase{"B4iii", 4};
    if (f == 3) {
        if (at_least(a, 2) && b == 3 && d == 3 && !d24) return ModelCase{"Ga", 12};
        if (at_least(a, 4) && b == 6 && d == 9 && !d24) return ModelCase{"Gb", 12};
        if (a == 2 && b == 4 && d == 3) return ModelCase{"Gc", 12};
        if (a == 2 && b == 3 && d == 5) return ModelCase{"Gd", 12};
        if (a == 4 && b == 7 && d == 9) return ModelCase{"Ge", 12};
        if (a == 4 && b == 6 && d == 11) return ModelCase{"Gf", 12};
    }
    if (f == 5) {
        if (at_least(a, 3) && b == 4 && d == 5) return ModelCase{"Gg", 12};
        if (at_least(a, 4) && b == 5 && d == 7) return ModelCase{"Gh", 12};
        if (at_least(a, 5) && b == 7 && d == 11) return ModelCase{"Gi", 12};
        if (at_least(a, 6) && b == 8 && d == 13) return ModelCase{"Gj", 12};
    }
    return std::nullopt;
}

inline std::optional<ModelCase> match_rows_tame(const LocalInvariants& L) {
    const int a = L.v_c4, b = L.v_c6, d = L.v_disc;
    if ((at_least(a, 2) && b == 2 && d == 4) || (at_least(a, 3) && b == 4 && d == 8)) return ModelCase{"A3", 3};
    if ((a == 1 && at_least(b, 2) && d == 3) || (a == 3 && at_least(b, 5) && d == 9)) return ModelCase{"A4", 4};
    return std::nullopt;
}

}  // namespace detail

// Table row matched by the minimal invariants, if any.
inline std::optional<ModelCase> model_case(const LocalInvariants& L) {
    if (L.ell == 2) return detail::match_rows_2(L);
    if (L.ell == 3) return detail::match_rows_3(L);
    return detail::match_rows_tame(L);
}

inline bool potentially_multiplicative(const LocalInvariants& L) {
    return L.v_disc > 0 && !L.c4_zero() && 3 * L.v_c4 < L.v_disc;
}

// e read off the invariants of one minimal model, without twisting. Requires potentially good
// reduction. Returns nullopt at 2 and 3 when no row matches directly.
inline std::optional<int> semistability_defect(const LocalInvariants& L) {
    require(!potentially_multiplicative(L), ErrorCode::PreconditionFailed,
            "semistability defect needs potentially good reduction");
    if (L.v_disc == 0) return 1;
    if (L.ell >= 5) return 12 / std::gcd(L.v_disc, 12);
    if (auto row = model_case(L)) return row->e;
    return std::nullopt;
}

// Whether Q_ell(sqrt(d)) is ramified over Q_ell, for squarefree d.
inline bool twist_ramified(long d, long ell) {
    if (ell == 2) return mod(d, 4L) != 1;
    return d % ell == 0;
}

inline std::vector<long> twist_candidates(long ell) {
    std::vector<long> out;
    for (long d : {-1L, 2L, -2L, ell, -ell, 2 * ell, -2 * ell}) {
        if (ell == 2 && (d == 4 || d == -4)) continue;
        if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    }
    return out;
}

struct ReductionClass {
    long ell = 0;
    ReductionKind kind = ReductionKind::Good;
    int e = 1;  // 0 (absent) for potentially multiplicative
    InertiaTag inertia = InertiaTag::C1;
    int conductor_exponent = 0;
    std::optional<ModelCase> row;  // row of the minimal model itself
    long reducing_twist = 1;        // d bringing e = 2, 6 to 1, 3, or making the reduction multiplicative
    bool defect_by_elimination = false;
    LocalData local;
};

// Semistability defect of a potentially good curve, including the twist search and, at 2, the
// e = 24 conclusion when no other value is possible.
struct DefectResult {
    int e = 0;
    long twist = 1;
    bool by_elimination = false;
};

inline DefectResult semistability_defect(const WeierstrassModel& E, long ell) {
    auto ld = minimal_model_at(E, ell);
    require(!potentially_multiplicative(ld.inv), ErrorCode::PreconditionFailed,
            "semistability defect needs potentially good reduction");
    if (auto e = semistability_defect(ld.inv)) {
        if (ell >= 5 && (*e == 2 || *e == 6)) return {*e, ell, false};
        return {*e, 1, false};
    }
    for (long d : twist_candidates(ell)) {
        auto tw = minimal_model_at(quadratic_twist(E, Integer(d)), ell);
        auto e2 = semistability_defect(tw.inv);
        if (!e2) continue;
        int e = *e2;
        if (twist_ramified(d, ell) && (e == 1 || e == 3)) e *= 2;
        return {e, d, false};
    }
    if (ell == 2) return {24, 1, true};
    fail(ErrorCode::UnclassifiedReduction,
         "no table row matches at ell = " + std::to_string(ell) + " (directly or after twisting)");
}

inline ReductionClass classify(const WeierstrassModel& E, long ell) {
    ReductionClass rc;
    rc.ell = ell;
    rc.local = minimal_model_at(E, ell);
    const auto& L = rc.local.inv;
    rc.conductor_exponent = L.conductor_exponent;
    rc.row = model_case(L);
    if (L.v_disc == 0) return rc;
    if (L.conductor_exponent == 1) {
        rc.kind = ReductionKind::Multiplicative;
        return rc;
    }
    if (potentially_multiplicative(L)) {
        rc.kind = ReductionKind::PotentiallyMultiplicative;
        rc.e = 0;
        for (long d : twist_candidates(ell)) {
            if (minimal_model_at(quadratic_twist(E, Integer(d)), ell).inv.conductor_exponent == 1) {
                rc.reducing_twist = d;
                break;
            }
        }
        return rc;
    }
    rc.kind = ReductionKind::PotentiallyGood;
    auto dr = semistability_defect(E, ell);
    rc.e = dr.e;
    rc.reducing_twist = dr.twist;
    rc.defect_by_elimination = dr.by_elimination;
    rc.inertia = inertia_for_defect(rc.e);
    return rc;
}

// Fields of good reduction named by their defining polynomials.
enum class InertialFieldTag { f1, f2, g1, g2, g3, g4, h1, h2, h3, h4, h5, cubic3, tame_root };

inline std::string to_string(InertialFieldTag t) {
    static const char* names[] = {"f1", "f2", "g1", "g2", "g3", "g4", "h1", "h2", "h3", "h4", "h5", "x^3+3x^2+3",
                                  "Q_l(l^(1/e))"};
    return names[static_cast<int>(t)];
}

inline InertialFieldTag inertial_field_tag(const LocalInvariants& L, int e, int conductor_exponent) {
    using T = InertialFieldTag;
    auto row = model_case(L);
    auto miss = [&]() -> InertialFieldTag {
        fail(ErrorCode::TableMiss, "no inertial-field row for ell = " + std::to_string(L.ell) + ", e = " +
                                       std::to_string(e) + ", case " + (row ? row->name : std::string("none")));
    };
    require(L.conductor_exponent == conductor_exponent, ErrorCode::PreconditionFailed,
            "conductor exponent does not match the local invariants");
    require(row && row->e == e, ErrorCode::PreconditionFailed, "invariants do not lie in a table row with this e");
    const std::string& c = row->name;
    if (L.ell >= 5) {
        require(mod(L.ell, static_cast<long>(e)) == e - 1, ErrorCode::PreconditionFailed,
                "tame torsion field is abelian unless ell = -1 mod e");
        return T::tame_root;
    }
    // 3 = -1 mod 4 and 2 = -1 mod 3, so these tame cases are always non-abelian.
    if ((L.ell == 3 && e == 4) || (L.ell == 2 && e == 3)) return T::tame_root;
    if (L.ell == 3 && e == 3) {
        require(L.disc_mod(3) == 2, ErrorCode::PreconditionFailed, "torsion field abelian (disc unit = 1 mod 3)");
        return T::cubic3;
    }
    if (L.ell == 2 && e == 4) {
        require(mod(L.c4_unit - 5 * L.disc_unit, Integer(8)) == 0, ErrorCode::PreconditionFailed,
                "torsion field abelian (c4 unit != 5 disc unit mod 8)");
        const long a = L.c4_mod(8), b = L.c6_mod(4);
        const bool first = (a == 1 && b == 1) || (a == 5 && b == 3);
        const bool second = (a == 1 && b == 3) || (a == 5 && b == 1);
        if (!first && !second) return miss();
        if (L.v_c4 == 5) return first ? T::f2 : T::f1;
        return first ? T::f1 : T::f2;
    }
    if (L.ell == 2 && e == 8) {
        if (conductor_exponent == 5) {
            if (c == "Da") return L.v_c6 >= 8 ? T::g1 : T::g2;
            if (c == "Db") return L.v_c6 >= 11 ? T::g1 : T::g2;
            if (c == "Dc") return L.c4_mod(4) == 1 ? T::g1 : T::g2;
            if (c == "Dd") return L.disc_mod(4) == 1 ? T::g1 : T::g2;
        } else if (conductor_exponent == 8) {
            const long a = L.c4_mod(8);
            const bool low = a == 1 || a == 3;
            if (c == "De") return low ? T::g3 : T::g4;
            if (c == "Df") return low ? T::g4 : T::g3;
        }
        return miss();
    }
    if (L.ell == 3 && e == 12) {
        if (conductor_exponent == 3) {
            if (c == "Ga") return L.v_c4 == 2 ? T::h1 : T::h2;
            if (c == "Gb") return L.v_c4 == 4 ? T::h1 : T::h2;
            const long d3 = L.disc_mod(3);
            if (d3 == 1) return T::h1;
            if (d3 == 2) return T::h2;
            return miss();
        }
        if (conductor_exponent == 5) {
            const long d9 = L.disc_mod(9);
            if (c == "Gh" || c == "Gj") {
                if (d9 == 8) return T::h4;
                if (d9 == 5) return T::h3;
                if (d9 == 2) return T::h5;
                return miss();
            }
            const bool low_n = (c == "Gg" && L.v_c4 == 3) || (c == "Gi" && L.v_c4 == 5);
            if (!low_n) {
                if (d9 == 8) return T::h3;
                if (d9 == 5) return T::h4;
                if (d9 == 2) return T::h5;
                return miss();
            }
            const long c3 = L.c4_mod(3);
            if ((d9 == 2 && c3 == 2) || (d9 == 5 && c3 == 1)) return T::h3;
            if ((d9 == 2 && c3 == 1) || (d9 == 8 && c3 == 2)) return T::h4;
            if ((d9 == 5 && c3 == 2) || (d9 == 8 && c3 == 1)) return T::h5;
            return miss();
        }
    }
    return miss();
}

}  // namespace symplectic
