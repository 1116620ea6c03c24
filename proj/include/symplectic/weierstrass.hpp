#pragma once

#include <array>
#include <string>
#include <vector>

#include "symplectic/arith.hpp"

namespace symplectic {

// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a ring R.
template <class R>
struct Weierstrass {
    R a1{}, a2{}, a3{}, a4{}, a6{};

    bool operator==(const Weierstrass&) const = default;
};

using WeierstrassModel = Weierstrass<Integer>;
using RationalModel = Weierstrass<Rational>;

template <class R>
struct Invariants {
    R b2, b4, b6, b8, c4, c6, disc;
};

template <class R>
Invariants<R> invariants_of(const Weierstrass<R>& E) {
    Invariants<R> v;
    v.b2 = E.a1 * E.a1 + 4 * E.a2;
    v.b4 = E.a1 * E.a3 + 2 * E.a4;
    v.b6 = E.a3 * E.a3 + 4 * E.a6;
    v.b8 = E.a1 * E.a1 * E.a6 + 4 * E.a2 * E.a6 - E.a1 * E.a3 * E.a4 + E.a2 * E.a3 * E.a3 - E.a4 * E.a4;
    v.c4 = v.b2 * v.b2 - 24 * v.b4;
    v.c6 = -v.b2 * v.b2 * v.b2 + 36 * v.b2 * v.b4 - 216 * v.b6;
    v.disc = -v.b2 * v.b2 * v.b8 - 8 * v.b4 * v.b4 * v.b4 - 27 * v.b6 * v.b6 + 9 * v.b2 * v.b4 * v.b6;
    return v;
}

struct StandardInvariants {
    Integer b2, b4, b6, b8, c4, c6, disc;
    Rational j;
};

inline StandardInvariants standard_invariants(const WeierstrassModel& E) {
    auto v = invariants_of(E);
    require(v.disc != 0, ErrorCode::SingularModel, "curve is singular");
    if (v.c4 * v.c4 * v.c4 - v.c6 * v.c6 != 1728 * v.disc)
        fail(ErrorCode::SingularModel, "invariant identity 1728*disc = c4^3 - c6^2 violated");
    StandardInvariants s{v.b2, v.b4, v.b6, v.b8, v.c4, v.c6, v.disc, Rational(v.c4 * v.c4 * v.c4, v.disc)};
    s.j.canonicalize();
    return s;
}

inline WeierstrassModel short_model(const Integer& a, const Integer& b) { return {0, 0, 0, a, b}; }

inline RationalModel to_rational(const WeierstrassModel& E) {
    return {Rational(E.a1), Rational(E.a2), Rational(E.a3), Rational(E.a4), Rational(E.a6)};
}

inline WeierstrassModel to_integral(const RationalModel& E) {
    for (const Rational* q : {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6})
        if (q->get_den() != 1) fail(ErrorCode::NonIntegralModel, "model has non-integral coefficients");
    return {E.a1.get_num(), E.a2.get_num(), E.a3.get_num(), E.a4.get_num(), E.a6.get_num()};
}

// Coordinate change x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
template <class R>
Weierstrass<R> transform(const Weierstrass<R>& E, const R& u, const R& r, const R& s, const R& t) {
    if (u == R(0)) fail(ErrorCode::ZeroScale, "coordinate change with u = 0");
    const R u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    Weierstrass<R> F;
    F.a1 = (E.a1 + 2 * s) / u;
    F.a2 = (E.a2 - s * E.a1 + 3 * r - s * s) / u2;
    F.a3 = (E.a3 + r * E.a1 + 2 * t) / u3;
    F.a4 = (E.a4 - s * E.a3 + 2 * r * E.a2 - (t + r * s) * E.a1 + 3 * r * r - 2 * s * t) / u4;
    F.a6 = (E.a6 + r * E.a4 + r * r * E.a2 + r * r * r - t * E.a3 - t * t - r * t * E.a1) / u6;
    return F;
}

inline RationalModel transform(const WeierstrassModel& E, const Rational& u, const Rational& r, const Rational& s,
                               const Rational& t) {
    return transform(to_rational(E), u, r, s, t);
}

// The (u, r, s, t) undoing transform(E, u, r, s, t).
template <class R>
std::array<R, 4> inverse_change(const R& u, const R& r, const R& s, const R& t) {
    if (u == R(0)) fail(ErrorCode::ZeroScale, "coordinate change with u = 0");
    return {R(1) / u, -r / (u * u), -s / u, (r * s - t) / (u * u * u)};
}

// Integral translation with u = 1.
inline WeierstrassModel rst(const WeierstrassModel& E, const Integer& r, const Integer& s, const Integer& t) {
    return transform(E, Integer(1), r, s, t);
}

// Quadratic twist by d. For a1 = a3 = 0 the invariants scale exactly by (d^2, d^3); otherwise the
// returned model is y^2 = x^3 + d b2 x^2 + 8 d^2 b4 x + 16 d^3 b6, whose invariants carry an extra
// factor 2^4 resp. 2^6 (the same twist, integral by construction).
inline WeierstrassModel quadratic_twist(const WeierstrassModel& E, const Integer& d) {
    require(d != 0, ErrorCode::ZeroTwist, "quadratic twist by 0");
    if (E.a1 == 0 && E.a3 == 0) return {0, d * E.a2, 0, d * d * E.a4, d * d * d * E.a6};
    auto v = invariants_of(E);
    return {0, d * v.b2, 0, 8 * d * d * v.b4, 16 * d * d * d * v.b6};
}

inline std::string to_string(const WeierstrassModel& E) {
    return "[" + E.a1.get_str() + "," + E.a2.get_str() + "," + E.a3.get_str() + "," + E.a4.get_str() + "," +
           E.a6.get_str() + "]";
}

inline std::vector<Integer> coefficients(const WeierstrassModel& E) { return {E.a1, E.a2, E.a3, E.a4, E.a6}; }

}  // namespace symplectic
