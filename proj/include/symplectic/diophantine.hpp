#pragma once

#include <algorithm>
#include <future>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "symplectic/criteria.hpp"
#include "symplectic/goodred.hpp"
#include "symplectic/reduction.hpp"

namespace symplectic {

// ---------------------------------------------------------------------------------------------
// Frey curves

enum class FreyTag { x2y3zp, hyper_E1, hyper_E2, hyper2_E2 };

inline std::string to_string(FreyTag t) {
    switch (t) {
    case FreyTag::x2y3zp: return "x2y3zp";
    case FreyTag::hyper_E1: return "hyper_E1";
    case FreyTag::hyper_E2: return "hyper_E2";
    case FreyTag::hyper2_E2: return "hyper2_E2";
    }
    return "?";
}

struct FreySpec {
    FreyTag tag = FreyTag::x2y3zp;
    std::vector<Integer> params;  // (a, b) or (u, v, w, ell, p)
    WeierstrassModel model;
    Integer c4, c6, disc;
    bool coprime = true;
    std::tuple<int, int, int> triple2{0, 0, 0};  // valuations at 2 of a 2-minimal model
    int conductor_exponent2 = 0;
};

namespace detail {

inline void fill_invariants(FreySpec& s) {
    auto v = invariants_of(s.model);
    s.c4 = v.c4;
    s.c6 = v.c6;
    s.disc = v.disc;
    auto L = minimal_model_at(s.model, 2).inv;
    s.triple2 = L.triple();
    s.conductor_exponent2 = L.conductor_exponent;
}

}  // namespace detail

// y^2 = x^3 + 3 b x - 2 a, attached to a^2 + b^3 = c^p.
inline FreySpec frey_x2y3zp(const Integer& a, const Integer& b) {
    require(a * a + b * b * b != 0, ErrorCode::DegenerateFrey, "a^2 + b^3 = 0 gives a singular Frey curve");
    FreySpec s;
    s.tag = FreyTag::x2y3zp;
    s.params = {a, b};
    s.model = {0, 0, 0, 3 * b, -2 * a};
    s.coprime = gcd(a, b) == 1;
    detail::fill_invariants(s);
    return s;
}

// Frey curves for u^p + ell (-v^2)^p = w^2 (hyper_E1, hyper_E2) and 2 ell (-v^2)^p + u^p = w^2
// (hyper2_E2). p must be odd; small exponents serve as stand-ins in tests.
inline FreySpec frey_hyperelliptic(const Integer& u, const Integer& v, const Integer& w, long ell, long p,
                                   FreyTag variant) {
    require(variant != FreyTag::x2y3zp, ErrorCode::InvalidArgument, "not a hyperelliptic Frey variant");
    require(p >= 3 && p % 2 == 1, ErrorCode::InvalidArgument, "exponent must be odd and at least 3");
    require(is_prime(ell), ErrorCode::InvalidArgument, "ell must be prime");
    require(gcd(u, v) == 1 && gcd(w, v) == 1, ErrorCode::GcdViolated, "need gcd(u, v) = gcd(w, v) = 1");
    require(u % 2 != 0, ErrorCode::HypothesisFailed, "u is odd for every solution");
    const auto up = ipow(u, static_cast<unsigned long>(p));
    const auto v2p = ipow(v, static_cast<unsigned long>(2 * p));
    const Integer coef = variant == FreyTag::hyper2_E2 ? Integer(2 * ell) : Integer(ell);
    require(up - coef * v2p == w * w, ErrorCode::EquationViolated, "(u, v, w) does not satisfy the equation");
    FreySpec s;
    s.tag = variant;
    s.params = {u, v, w, Integer(ell), Integer(p)};
    if (variant == FreyTag::hyper_E2) s.model = {0, 2 * w, 0, -Integer(ell) * v2p, 0};
    else s.model = {0, 2 * w, 0, up, 0};
    detail::fill_invariants(s);
    return s;
}

// Whether a_ell is congruent to +-(ell + 1) modulo p, the condition for level lowering at ell.
inline bool level_lowering_congruence(const Integer& a_ell, long ell, long p) {
    const Integer m(p);
    return mod(a_ell - (ell + 1), m) == 0 || mod(a_ell + (ell + 1), m) == 0;
}

// ---------------------------------------------------------------------------------------------
// Residual-pair scan

struct ScanMatch {
    long d = 1, a = 0, b = 0;
    ResidualCurve curve;
    Mat2 frob;
    bool isomorphic_to_w = false;
};

enum class ScanVerdict { Eliminated, NotEliminated };

inline std::string to_string(ScanVerdict v) { return v == ScanVerdict::Eliminated ? "eliminated" : "not-eliminated"; }

struct ScanReport {
    long p = 0, ell = 0;
    ResidualCurve w_curve;
    long a_w = 0;
    Mat2 w_frob;
    bool level_lowering_possible = false;
    bool w_order_condition = false;
    long nonresidue = 0;
    long cells = 0;  // (d, a, b) triples with good reduction
    std::vector<ScanMatch> matches;  // sorted by (d, a, b)
    ScanVerdict verdict = ScanVerdict::NotEliminated;
    std::string reason;
};

// Residual Frey curve y^2 = x^3 + 3 b d^2 x - 2 a d^3 over F_ell.
inline ResidualCurve frey_residual(long a, long b, long d, long ell) {
    return residual_curve(ell, 0, 0, 0, mod(3 * b * d * d, ell), mod(-2 * a * d * d * d, ell));
}

inline ScanReport scan_residual_pairs(const WeierstrassModel& W, long ell, long p, int jobs = 1) {
    require(p >= 3 && is_prime(p), ErrorCode::InvalidArgument, "p must be an odd prime");
    require(ell >= 5 && is_prime(ell), ErrorCode::InvalidArgument, "auxiliary prime must be at least 5");
    require(ell != p, ErrorCode::InvalidArgument, "auxiliary prime must differ from p");
    ScanReport rep;
    rep.p = p;
    rep.ell = ell;
    rep.w_curve = reduce_good(W, ell);
    const auto fw = frobenius_data(rep.w_curve);
    rep.a_w = fw.a;
    rep.w_frob = frob_matrix(fw, p);
    rep.level_lowering_possible = level_lowering_congruence(Integer(fw.a), ell, p);
    rep.w_order_condition = frob_order_condition(fw, p);
    rep.nonresidue = least_nonresidue(ell);

    // One row of cells per (d, a); rows are independent.
    struct Row {
        long cells = 0;
        std::vector<ScanMatch> matches;
    };
    auto scan_row = [&](long d, long a) {
        Row row;
        for (long b = 0; b < ell; ++b) {
            if (a == 0 && b == 0) continue;
            if (mod(a * a + b * b % ell * b, ell) == 0) continue;
            ++row.cells;
            const auto C = frey_residual(a, b, d, ell);
            const auto fd = frobenius_data(C);
            const Mat2 m = frob_matrix(fd, p);
            if (!mat_conjugate(m, rep.w_frob, p)) continue;
            row.matches.push_back({d, a, b, C, m, residual_iso_check(C, rep.w_curve)});
        }
        return row;
    };
    std::vector<std::pair<long, long>> keys;
    for (long d : {1L, rep.nonresidue})
        for (long a = 0; a < ell; ++a) keys.emplace_back(d, a);
    std::vector<Row> rows(keys.size());
    const size_t step = static_cast<size_t>(std::max(1, jobs));
    for (size_t i = 0; i < keys.size(); i += step) {
        std::vector<std::future<Row>> batch;
        for (size_t j = i; j < std::min(keys.size(), i + step); ++j)
            batch.push_back(std::async(step > 1 ? std::launch::async : std::launch::deferred,
                                       [&, k = keys[j]] { return scan_row(k.first, k.second); }));
        for (size_t j = 0; j < batch.size(); ++j) rows[i + j] = batch[j].get();
    }
    for (auto& r : rows) {
        rep.cells += r.cells;
        for (auto& m : r.matches) rep.matches.push_back(std::move(m));
    }

    if (rep.level_lowering_possible) {
        rep.reason = "a_ell(W) = +-(ell + 1) mod p: the Frey curve may be multiplicative at ell";
    } else if (!rep.w_order_condition) {
        rep.reason = "Frobenius of W at ell has order prime to p: the good-reduction criterion does not apply";
    } else if (!std::all_of(rep.matches.begin(), rep.matches.end(), [](const auto& m) { return m.isomorphic_to_w; })) {
        rep.reason = "some conjugate match is not F_ell-isomorphic to the reduction of W";
    } else {
        rep.verdict = ScanVerdict::Eliminated;
        rep.reason = rep.matches.empty() ? "no residual Frey curve has conjugate Frobenius"
                                         : "every conjugate match is F_ell-isomorphic to the reduction of W";
    }
    return rep;
}

// ---------------------------------------------------------------------------------------------
// Symplectic argument for y^2 = x^p - ell and y^2 = x^p - 2 ell

enum class HyperVariant { Ell, TwoEll };  // y^2 = x^p - ell, y^2 = x^p - 2 ell

inline std::string to_string(HyperVariant v) { return v == HyperVariant::Ell ? "x^p-l" : "x^p-2l"; }

struct HyperComparison {
    std::string frey;  // which Frey curve
    std::string label;  // comparison curve
    WeierstrassModel model;
    std::string criterion_2, criterion_ell;
    std::vector<long> consistent_primes;    // sample p where both criteria agree
    std::vector<long> contradicted_primes;  // sample p where they disagree
    int forced_parity = 0;  // +1: (2/p) = 1 forced; -1: (2/p) = -1 forced; 0: no constraint
};

struct HyperArgument {
    long ell = 0;
    HyperVariant variant = HyperVariant::Ell;
    std::vector<HyperComparison> comparisons;
    int forced_parity = 0;
    std::string conclusion;
};

namespace detail {

// Local invariants of the Frey curve read off its closed-form c4, Delta and parity conditions on u, v, w.
inline LocalInvariants symbolic_local(long ell, int vc4, int vc6, int vdisc, long c4_unit, int f) {
    LocalInvariants L;
    L.ell = ell;
    L.v_c4 = vc4;
    L.v_c6 = vc6;
    L.v_disc = vdisc;
    L.c4_unit = c4_unit;
    L.c6_unit = 1;
    L.disc_unit = 1;
    L.conductor_exponent = f;
    return L;
}

inline long integer_sqrt_exact(long n) {
    const long r = isqrt(Integer(n)).get_si();
    require(r * r == n, ErrorCode::HypothesisFailed, std::to_string(n) + " is not a square");
    return r;
}

inline constexpr long kHyperSampleBound = 200;

// Applies the criterion at 2 and the multiplicative criterion at ell for sample primes p.
inline HyperComparison compare_with(const std::string& frey, const std::string& label, const WeierstrassModel& F,
                                    long ell, const LocalInvariants& frey2, int frey_e2, int frey_vell) {
    HyperComparison hc;
    hc.frey = frey;
    hc.label = label;
    hc.model = F;
    auto c2 = classify(F, 2);
    auto cl = classify(F, ell);
    require(c2.kind == ReductionKind::PotentiallyGood && c2.e == frey_e2, ErrorCode::HypothesisFailed,
            label + " does not have e = " + std::to_string(frey_e2) + " at 2");
    require(cl.kind == ReductionKind::Multiplicative, ErrorCode::HypothesisFailed,
            label + " is not multiplicative at " + std::to_string(ell));
    if (frey_e2 == 8) {
        require(c2.local.inv.conductor_exponent == 5 && e8_case(c2.local.inv) == e8_case(frey2),
                ErrorCode::HypothesisFailed, label + " is not in the same e = 8 case as the Frey curve");
    }
    hc.criterion_2 = frey_e2 == 8 ? "wild-e8" : "wild-e24";
    hc.criterion_ell = "pot-mult";
    int plus_ok = -1, minus_ok = -1;  // whether every sample with (2/p) = +1 / -1 is consistent
    for (long p : primes_up_to(kHyperSampleBound)) {
        if (p < 7 || p == ell) continue;
        CriterionInput at2;
        at2.p = p;
        at2.ell = 2;
        at2.L = frey2;
        at2.Lp = c2.local.inv;
        at2.e = at2.ep = frey_e2;
        at2.same_inertial_field = true;  // implied by the isomorphism of p-torsion
        auto v2 = frey_e2 == 8 ? crit_e8(at2) : crit_e24(at2);
        CriterionInput atl;
        atl.p = p;
        atl.ell = ell;
        atl.L = symbolic_local(ell, 0, 0, frey_vell, 1, 1);
        atl.Lp = cl.local.inv;
        auto vl = crit_pot_mult(atl);
        require(v2.determined() && vl.determined(), ErrorCode::HypothesisFailed,
                "criterion not applicable at p = " + std::to_string(p) + ": " + v2.reason + vl.reason);
        const bool ok = v2.outcome == vl.outcome;
        (ok ? hc.consistent_primes : hc.contradicted_primes).push_back(p);
        int& slot = legendre(2L, p) == 1 ? plus_ok : minus_ok;
        slot = (slot == -1 ? 1 : slot) && ok;
    }
    if (plus_ok == 1 && minus_ok == 0) hc.forced_parity = 1;
    else if (plus_ok == 0 && minus_ok == 1) hc.forced_parity = -1;
    return hc;
}

}  // namespace detail

inline HyperArgument hyperelliptic_parity_argument(long ell, HyperVariant variant) {
    require(ell >= 2 && is_prime(ell), ErrorCode::HypothesisFailed, "ell must be prime");
    HyperArgument out;
    out.ell = ell;
    out.variant = variant;
    using detail::symbolic_local;
    if (variant == HyperVariant::Ell) {
        if (ell == 3) {
            // E1 with u = -1 mod 4, w even: c4/2^4 = 4 w^2 - 3 u^p = 3 mod 4; Delta = -2^6 3 (uv)^(2p).
            auto frey2 = symbolic_local(2, 4, 7, 6, 3, 5);
            out.comparisons.push_back(
                detail::compare_with("E1", "96a1", {0, 1, 0, -2, 0}, ell, frey2, 8, 1));
        } else {
            require(mod(ell, 8L) == 5, ErrorCode::HypothesisFailed, "ell must be 5 mod 8");
            const long k = detail::integer_sqrt_exact(ell - 1);
            require(ell == 5 || ell >= 29, ErrorCode::HypothesisFailed, "ell must be 5 or at least 29");
            // E2 with v odd, w even: c4/2^4 = 4 w^2 + 3 ell v^(2p) = 3 ell = 3 mod 4; Delta = 2^6 ell^2 (u v^4)^p.
            auto frey2 = symbolic_local(2, 4, 7, 6, mod(3 * ell, 4L), 5);
            if (ell == 5)
                out.comparisons.push_back(detail::compare_with("E2", "160a1", {0, 1, 0, -6, 4}, ell, frey2, 8, 2));
            else
                out.comparisons.push_back(detail::compare_with(
                    "E2", "y^2 = x^3 + " + std::to_string(2 * k) + "x^2 - x", {0, 2 * k, 0, -1, 0}, ell, frey2, 8, 2));
        }
    } else {
        require(mod(ell, 8L) == 3, ErrorCode::HypothesisFailed, "ell must be 3 mod 8");
        require(ell >= 29, ErrorCode::HypothesisFailed, "ell must be at least 29");
        const long k = detail::integer_sqrt_exact(ell - 2);
        // E2 with u, v, w odd: valuations (4, 6, 7) at 2, e = 24; Delta = -2^7 ell (uv)^(2p).
        auto frey2 = symbolic_local(2, 4, 6, 7, 1, 7);
        const std::string sq = std::to_string(2 * k);
        out.comparisons.push_back(detail::compare_with("E2", "y^2 = x^3 + " + sq + "x^2 + " + std::to_string(ell) + "x",
                                                       {0, 2 * k, 0, ell, 0}, ell, frey2, 24, 1));
        out.comparisons.push_back(detail::compare_with("E2", "y^2 = x^3 + " + sq + "x^2 - 2x", {0, 2 * k, 0, -2, 0},
                                                       ell, frey2, 24, 1));
    }
    out.forced_parity = out.comparisons.front().forced_parity;
    for (const auto& c : out.comparisons)
        if (c.forced_parity != out.forced_parity) out.forced_parity = 0;
    if (out.forced_parity == 1) out.conclusion = "(2/p) = 1 forced";
    else if (out.forced_parity == -1) out.conclusion = "(2/p) = -1 forced";
    else out.conclusion = "no parity constraint";
    return out;
}

}  // namespace symplectic
