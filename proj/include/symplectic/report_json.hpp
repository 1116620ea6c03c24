#pragma once

#include <string>

#include <json.hpp>

#include "symplectic/criteria.hpp"
#include "symplectic/diophantine.hpp"
#include "symplectic/torsion.hpp"

// JSON views of library results. nlohmann::json keeps object keys sorted, so dumps are stable.
namespace symplectic::json {

using nlohmann::json;

inline constexpr int kSchema = 1;

inline json integer(const Integer& x) { return x.get_str(); }

inline json valuation(int v) { return v == kInfinity ? json("inf") : json(v); }

inline json envelope(const std::string& command, json body) {
    return {{"schema", kSchema}, {"command", command}, {"result", std::move(body)}};
}

inline json error_envelope(const std::string& command, ErrorCode code, const std::string& message) {
    return {{"schema", kSchema},
            {"command", command},
            {"error", {{"code", std::string(error_code_name(code))}, {"message", message}}}};
}

inline json of(const WeierstrassModel& E) {
    return json::array({integer(E.a1), integer(E.a2), integer(E.a3), integer(E.a4), integer(E.a6)});
}

inline json of(const Mat2& m) { return json::array({json::array({m.a, m.b}), json::array({m.c, m.d})}); }

inline json of(const ResidualCurve& C) {
    return {{"ell", C.ell}, {"a", json::array({C.a1, C.a2, C.a3, C.a4, C.a6})}};
}

inline json of(const LocalInvariants& L) {
    json j{{"ell", L.ell},
           {"v_c4", valuation(L.v_c4)},
           {"v_c6", valuation(L.v_c6)},
           {"v_disc", L.v_disc},
           {"kodaira", L.kodaira.str()},
           {"conductor_exponent", L.conductor_exponent},
           {"tamagawa", L.tamagawa}};
    const long m = L.default_modulus();
    j["residue_modulus"] = m;
    j["c4_residue"] = L.c4_zero() ? json(nullptr) : json(L.c4_mod(m));
    j["c6_residue"] = L.c6_zero() ? json(nullptr) : json(L.c6_mod(m));
    j["disc_residue"] = L.disc_mod(m);
    return j;
}

inline json of(const ReductionClass& rc) {
    json j{{"ell", rc.ell},
           {"kind", to_string(rc.kind)},
           {"e", rc.e},
           {"inertia", to_string(rc.inertia)},
           {"conductor_exponent", rc.conductor_exponent},
           {"reducing_twist", rc.reducing_twist},
           {"defect_by_elimination", rc.defect_by_elimination},
           {"minimal_model", of(rc.local.minimal)},
           {"local", of(rc.local.inv)}};
    j["row"] = rc.row ? json(rc.row->name) : json(nullptr);
    return j;
}

inline json of(const SymplecticVerdict& v) {
    json j{{"outcome", to_string(v.outcome)}, {"reason", v.reason}, {"assumptions", v.assumptions}};
    j["reason_code"] = v.reason_code ? json(std::string(error_code_name(*v.reason_code))) : json(nullptr);
    if (v.witness) {
        j["witness"] = {{"ell", v.witness->ell},
                        {"criterion", v.witness->criterion},
                        {"r", v.witness->r},
                        {"t", v.witness->t},
                        {"twist", v.witness->twist}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

// Flat per-prime record: {prime, criterion, r, t, outcome, reason} plus context.
inline json of(const PrimeVerdict& pv) {
    json j{{"prime", pv.ell},
           {"criterion", pv.criterion.empty() ? json(nullptr) : json(pv.criterion)},
           {"reduction", json::array({pv.kind, pv.kind_prime})},
           {"outcome", to_string(pv.verdict.outcome)},
           {"reason", pv.verdict.reason},
           {"assumptions", pv.verdict.assumptions}};
    j["reason_code"] = pv.verdict.reason_code ? json(std::string(error_code_name(*pv.verdict.reason_code)))
                                              : json(nullptr);
    j["r"] = pv.verdict.witness ? json(pv.verdict.witness->r) : json(nullptr);
    j["t"] = pv.verdict.witness ? json(pv.verdict.witness->t) : json(nullptr);
    j["twist"] = pv.verdict.witness ? json(pv.verdict.witness->twist) : json(nullptr);
    return j;
}

inline json of(const CompareReport& r) {
    json primes = json::array();
    json used = json::array();
    for (const auto& pv : r.primes) {
        primes.push_back(of(pv));
        if (pv.verdict.determined()) used.push_back({{"prime", pv.ell}, {"criterion", pv.criterion}});
    }
    return {{"p", r.p},
            {"primes", primes},
            {"criterion_primes", used},
            {"consensus", r.inconsistent ? "inconsistent" : to_string(r.consensus)}};
}

inline json of(const FrobeniusData& fd) {
    return {{"ell", fd.ell}, {"a", fd.a}, {"disc", fd.disc}, {"beta", fd.beta}, {"j", fd.j}};
}

inline json of(const OracleTypes& t) {
    return {{"types", to_string(t)}, {"frob", of(t.frob)}, {"frob_prime", of(t.frob_prime)}};
}

inline json of(const ExistenceResult& r) {
    return {{"exists", r.exists},
            {"pattern", to_string(r.pattern)},
            {"subgroup_order", r.subgroup_order},
            {"centralizer_order", r.centralizer_order},
            {"nonsquare_centralizer", r.nonsquare_centralizer}};
}

inline json of(const ScanReport& r) {
    json matches = json::array();
    for (const auto& m : r.matches)
        matches.push_back({{"d", m.d},
                           {"a", m.a},
                           {"b", m.b},
                           {"curve", of(m.curve)},
                           {"frob", of(m.frob)},
                           {"isomorphic_to_w", m.isomorphic_to_w}});
    return {{"p", r.p},
            {"ell", r.ell},
            {"w_curve", of(r.w_curve)},
            {"a_w", r.a_w},
            {"w_frob", of(r.w_frob)},
            {"level_lowering_possible", r.level_lowering_possible},
            {"w_order_condition", r.w_order_condition},
            {"nonresidue", r.nonresidue},
            {"cells", r.cells},
            {"matches", matches},
            {"verdict", to_string(r.verdict)},
            {"reason", r.reason}};
}

inline json of(const HyperArgument& h) {
    json comps = json::array();
    for (const auto& c : h.comparisons)
        comps.push_back({{"frey", c.frey},
                         {"curve", c.label},
                         {"model", of(c.model)},
                         {"criterion_2", c.criterion_2},
                         {"criterion_ell", c.criterion_ell},
                         {"consistent_primes", c.consistent_primes},
                         {"contradicted_primes", c.contradicted_primes},
                         {"forced_parity", c.forced_parity}});
    return {{"ell", h.ell},
            {"variant", to_string(h.variant)},
            {"comparisons", comps},
            {"forced_parity", h.forced_parity},
            {"conclusion", h.conclusion}};
}

inline json of(const FreySpec& s) {
    json params = json::array();
    for (const auto& x : s.params) params.push_back(integer(x));
    const auto [v4, v6, vd] = s.triple2;
    return {{"tag", to_string(s.tag)},
            {"params", params},
            {"model", of(s.model)},
            {"c4", integer(s.c4)},
            {"c6", integer(s.c6)},
            {"disc", integer(s.disc)},
            {"coprime", s.coprime},
            {"triple_at_2", json::array({valuation(v4), valuation(v6), vd})},
            {"conductor_exponent_at_2", s.conductor_exponent2}};
}

}  // namespace symplectic::json
