#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "symplectic/class_poly.hpp"
#include "symplectic/matrix.hpp"
#include "symplectic/tate.hpp"

namespace symplectic {

inline constexpr long kMaxCountingPrime = 10000;

// Weierstrass model over F_ell, coefficients in [0, ell).
struct ResidualCurve {
    long ell = 0;
    long a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    bool operator==(const ResidualCurve&) const = default;
};

inline ResidualCurve residual_curve(long ell, long a1, long a2, long a3, long a4, long a6) {
    return {ell, mod(a1, ell), mod(a2, ell), mod(a3, ell), mod(a4, ell), mod(a6, ell)};
}

inline WeierstrassModel lift(const ResidualCurve& C) { return {C.a1, C.a2, C.a3, C.a4, C.a6}; }

struct ResidualInvariants {
    long c4, c6, disc, j;  // j only meaningful when disc != 0
};

inline ResidualInvariants residual_invariants(const ResidualCurve& C) {
    auto v = invariants_of(lift(C));
    const Integer m(C.ell);
    ResidualInvariants r{mod(v.c4, C.ell), mod(v.c6, C.ell), mod(v.disc, C.ell), 0};
    if (r.disc != 0) r.j = mod(Integer(ipow(v.c4, 3) * inverse_mod(v.disc, m)), C.ell);
    return r;
}

inline bool is_nonsingular(const ResidualCurve& C) { return residual_invariants(C).disc != 0; }

// Reduction of an ell-minimal model; the curve must have good reduction at ell.
inline ResidualCurve reduce_good(const WeierstrassModel& E, long ell) {
    auto ld = minimal_model_at(E, ell);
    require(ld.inv.v_disc == 0, ErrorCode::SingularReduction,
            "bad reduction at " + std::to_string(ell) + " (v(disc) = " + std::to_string(ld.inv.v_disc) + ")");
    const auto& M = ld.minimal;
    return {ell, mod(M.a1, ell), mod(M.a2, ell), mod(M.a3, ell), mod(M.a4, ell), mod(M.a6, ell)};
}

struct PointCount {
    long n = 0;  // #E(F_ell), including the point at infinity
    long a = 0;  // ell + 1 - n
};

inline PointCount count_points(const ResidualCurve& C) {
    const long l = C.ell;
    require(is_nonsingular(C), ErrorCode::SingularReduction, "residual curve is singular");
    require(l <= kMaxCountingPrime, ErrorCode::ResourceBound, "naive point counting limited to ell <= 10^4");
    long n = 1;
    if (l == 2) {
        for (long x = 0; x < 2; ++x)
            for (long y = 0; y < 2; ++y)
                if (mod(y * y + C.a1 * x * y + C.a3 * y - x * x * x - C.a2 * x * x - C.a4 * x - C.a6, 2L) == 0) ++n;
    } else {
        std::vector<signed char> chi(static_cast<size_t>(l), -1);
        chi[0] = 0;
        for (long y = 1; y < l; ++y) chi[static_cast<size_t>(y * y % l)] = 1;
        for (long x = 0; x < l; ++x) {
            // (2y + a1 x + a3)^2 = disc(x)
            const long lin = (C.a1 * x + C.a3) % l;
            const long cub = (((x + C.a2) * x % l + C.a4) * x % l + C.a6) % l;
            n += 1 + chi[static_cast<size_t>((lin * lin + 4 * cub) % l)];
        }
    }
    PointCount pc{n, l + 1 - n};
    require(pc.a * pc.a <= 4 * l, ErrorCode::InvalidArgument, "Hasse bound violated");
    return pc;
}

struct FrobeniusData {
    long ell = 0;
    long a = 0;     // trace of Frobenius
    long disc = 0;  // a^2 - 4 ell
    long beta = 1;
    long j = 0;  // j-invariant mod ell
};

// Largest h with h^2 | disc and the aggregated class polynomial of disc/h^2 vanishing at j mod ell.
inline long beta(long j, long disc, long ell) {
    require(disc < 0, ErrorCode::InvalidArgument, "Frobenius discriminant must be negative");
    for (long h = static_cast<long>(std::sqrt(static_cast<double>(-disc))) + 1; h >= 1; --h) {
        if (disc % (h * h) != 0) continue;
        const auto P = hilbert_class_poly(disc / (h * h));
        if (!P.empty() && eval_mod(P, Integer(j), Integer(ell)) == 0) return h;
    }
    fail(ErrorCode::NoValidH, "no h with vanishing class polynomial (disc " + std::to_string(disc) + ")");
}

inline FrobeniusData frobenius_data(const ResidualCurve& C) {
    FrobeniusData fd;
    fd.ell = C.ell;
    fd.a = count_points(C).a;
    fd.disc = fd.a * fd.a - 4 * C.ell;
    fd.j = residual_invariants(C).j;
    fd.beta = beta(fd.j, fd.disc, C.ell);
    return fd;
}

inline FrobeniusData frobenius_data(const WeierstrassModel& E, long ell) { return frobenius_data(reduce_good(E, ell)); }

// Frobenius at ell acting on E[p] in the basis of the integral Frobenius matrix
//   [[(a b - D)/(2b), D (b^2 - D)/(4 b^3)], [b, (a b + D)/(2b)]],  b = beta, D = disc.
// The entries lie in Z[1/2] because b^2 | D, so they reduce modulo every odd p.
inline Mat2 frob_matrix(const FrobeniusData& fd, long p) {
    require(p >= 3 && is_prime(p), ErrorCode::InvalidArgument, "p must be an odd prime");
    require(p != fd.ell, ErrorCode::InvalidArgument, "p must differ from ell");
    const Integer a(fd.a), D(fd.disc), b(fd.beta);
    const Rational entries[4] = {Rational(a * b - D, 2 * b), Rational(D * (b * b - D), 4 * b * b * b), Rational(b),
                                 Rational(a * b + D, 2 * b)};
    long red[4];
    for (int i = 0; i < 4; ++i) {
        Rational q = entries[i];
        q.canonicalize();
        require(!divides(Integer(p), q.get_den()), ErrorCode::UnsupportedReduction,
                "Frobenius matrix entry not p-integral");
        red[i] = mod(Integer(q.get_num() * inverse_mod(q.get_den(), Integer(p))), p);
    }
    Mat2 m{red[0], red[1], red[2], red[3]};
    require(mat_trace(m, p) == mod(fd.a, p) && mat_det(m, p) == mod(fd.ell, p), ErrorCode::InvalidArgument,
            "Frobenius matrix fails its characteristic polynomial");
    return m;
}

// Frobenius has order divisible by p exactly when p | disc and p does not divide beta.
inline bool frob_order_condition(const FrobeniusData& fd, long p) {
    return fd.disc % p == 0 && fd.beta % p != 0;
}

namespace detail {

// (a4, a6) of y^2 = x^3 + a4 x + a6 isomorphic to C, ell >= 5.
inline std::pair<long, long> short_form(const ResidualCurve& C) {
    auto v = residual_invariants(C);
    const long l = C.ell;
    // y^2 = x^3 - 27 c4 x - 54 c6 is isomorphic over F_ell via u = 6.
    return {mod(-27 * v.c4, l), mod(-54 * v.c6, l)};
}

}  // namespace detail

// F_ell-isomorphism of two nonsingular residual curves.
inline bool residual_iso_check(const ResidualCurve& X, const ResidualCurve& Y) {
    require(X.ell == Y.ell, ErrorCode::InvalidArgument, "curves over different fields");
    require(is_nonsingular(X) && is_nonsingular(Y), ErrorCode::SingularReduction, "residual curve is singular");
    const long l = X.ell;
    if (residual_invariants(X).j != residual_invariants(Y).j) return false;
    if (l >= 5) {
        // Short models are unique up to (a4, a6) -> (u^4 a4, u^6 a6).
        auto [a4, a6] = detail::short_form(X);
        auto [b4, b6] = detail::short_form(Y);
        for (long u = 1; u < l; ++u) {
            const long u2 = u * u % l, u4 = u2 * u2 % l, u6 = u4 * u2 % l;
            if (a4 * u4 % l == b4 && a6 * u6 % l == b6) return true;
        }
        return false;
    }
    for (long u = 1; u < l; ++u)
        for (long r = 0; r < l; ++r)
            for (long s = 0; s < l; ++s)
                for (long t = 0; t < l; ++t) {
                    auto T = transform(Weierstrass<long>{X.a1, X.a2, X.a3, X.a4, X.a6}, 1L, r, s, t);
                    // u = 1 is the only unit in F_2 and F_3 has u^2 = 1, so only the sign of u
                    // matters at 3: a1, a3 change sign with u = -1.
                    const long sg = u == 1 ? 1 : -1;
                    ResidualCurve Z = residual_curve(l, sg * T.a1, T.a2, sg * T.a3, T.a4, T.a6);
                    if (Z == Y) return true;
                }
    return false;
}

}  // namespace symplectic
