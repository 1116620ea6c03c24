#pragma once

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "symplectic/weierstrass.hpp"

namespace symplectic {

// Valuation used for c4 = 0 or c6 = 0; compares above every finite bound.
inline constexpr int kInfinity = 1 << 20;

struct KodairaType {
    enum Kind { I0, In, II, III, IV, I0Star, InStar, IVStar, IIIStar, IIStar };
    Kind kind = I0;
    int n = 0;

    std::string str() const {
        switch (kind) {
        case I0: return "I0";
        case In: return "I" + std::to_string(n);
        case II: return "II";
        case III: return "III";
        case IV: return "IV";
        case I0Star: return "I0*";
        case InStar: return "I" + std::to_string(n) + "*";
        case IVStar: return "IV*";
        case IIIStar: return "III*";
        case IIStar: return "II*";
        }
        return "?";
    }
    bool operator==(const KodairaType&) const = default;
};

struct LocalInvariants {
    long ell = 0;
    int v_c4 = kInfinity, v_c6 = kInfinity, v_disc = 0;
    Integer c4_unit, c6_unit, disc_unit;  // zero when the invariant vanishes
    KodairaType kodaira;
    int conductor_exponent = 0;
    int tamagawa = 1;

    bool c4_zero() const { return v_c4 == kInfinity; }
    bool c6_zero() const { return v_c6 == kInfinity; }

    // Unit parts modulo m (m a power of ell). Zero invariants have no unit part; callers guard.
    long c4_mod(long m) const { return mod(c4_unit, m); }
    long c6_mod(long m) const { return mod(c6_unit, m); }
    long disc_mod(long m) const { return mod(disc_unit, m); }

    // Residue precision used by every table: mod 32 at 2, mod 9 at 3, mod ell otherwise.
    long default_modulus() const { return ell == 2 ? 32 : ell == 3 ? 9 : ell; }

    std::tuple<int, int, int> triple() const { return {v_c4, v_c6, v_disc}; }
};

struct LocalData {
    WeierstrassModel minimal;
    LocalInvariants inv;
};

namespace detail {

inline int pval(const Integer& x, const Integer& p) { return x == 0 ? kInfinity : valuation(x, p); }

// Number of roots in F_p of the polynomial with integer coefficients (constant term first).
inline int count_roots_mod(std::vector<Integer> f, const Integer& p) {
    for (auto& c : f) c = mod(c, p);
    while (!f.empty() && f.back() == 0) f.pop_back();
    if (f.empty()) return static_cast<int>(std::min<Integer>(p, Integer(1000000)).get_si());
    if (p < 2000) {
        int n = 0;
        for (long x = 0; x < p.get_si(); ++x) {
            Integer acc = 0;
            for (size_t i = f.size(); i-- > 0;) acc = mod(Integer(acc * x + f[i]), p);
            if (acc == 0) ++n;
        }
        return n;
    }
    // Large p: degree of gcd(x^p - x, f) for squarefree-part counting of distinct roots.
    using Poly = std::vector<Integer>;
    auto trim = [](Poly& a) { while (!a.empty() && a.back() == 0) a.pop_back(); };
    auto polymod = [&](Poly a, const Poly& b) {
        trim(a);
        Integer inv = inverse_mod(b.back(), p);
        while (a.size() >= b.size()) {
            Integer q = mod(Integer(a.back() * inv), p);
            size_t sh = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) a[sh + i] = mod(Integer(a[sh + i] - q * b[i]), p);
            trim(a);
        }
        return a;
    };
    auto mulmod = [&](const Poly& a, const Poly& b) {
        if (a.empty() || b.empty()) return Poly{};
        Poly c(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
        for (auto& x : c) x = mod(x, p);
        return polymod(c, f);
    };
    Poly result{1}, base{0, 1};
    base = polymod(base, f);
    for (size_t bit = mpz_sizeinbase(p.get_mpz_t(), 2); bit-- > 0;) {
        result = mulmod(result, result);
        if (mpz_tstbit(p.get_mpz_t(), bit)) result = mulmod(result, base);
    }
    if (result.size() < 2) result.resize(2, 0);
    result[1] = mod(Integer(result[1] - 1), p);
    trim(result);
    Poly a = f, b = result;
    while (!b.empty()) {
        Poly r = polymod(a, b);
        a = b;
        b = r;
    }
    return static_cast<int>(a.size()) - 1;
}

inline bool quadratic_has_root(const Integer& a, const Integer& b, const Integer& c, const Integer& p) {
    return count_roots_mod({c, b, a}, p) > 0;
}

}  // namespace detail

inline LocalInvariants local_invariants_of(const WeierstrassModel& minimal, long ell) {
    auto v = invariants_of(minimal);
    require(v.disc != 0, ErrorCode::SingularModel, "curve is singular");
    LocalInvariants L;
    L.ell = ell;
    Integer P(ell);
    if (v.c4 != 0) {
        L.v_c4 = valuation(v.c4, P);
        L.c4_unit = remove_prime(v.c4, P);
    }
    if (v.c6 != 0) {
        L.v_c6 = valuation(v.c6, P);
        L.c6_unit = remove_prime(v.c6, P);
    }
    L.v_disc = valuation(v.disc, P);
    L.disc_unit = remove_prime(v.disc, P);
    return L;
}

// Tate's algorithm at the prime ell: returns an ell-minimal model, its invariants, Kodaira type,
// conductor exponent and Tamagawa number.
inline LocalData minimal_model_at(const WeierstrassModel& model, long ell) {
    using detail::pval;
    using detail::quadratic_has_root;
    require(is_prime(ell), ErrorCode::InvalidArgument, "not a prime: " + std::to_string(ell));
    const Integer p(ell);
    const Integer pi2 = p * p, pi3 = pi2 * p, pi4 = pi3 * p, pi6 = pi4 * pi2;
    auto pdiv = [&](const Integer& x) { return divides(p, x); };
    auto preduce = [&](const Integer& x) { return mod(x, p); };
    auto pinv = [&](const Integer& x) { return inverse_mod(x, p); };
    const Integer half = ell == 2 ? Integer(0) : pinv(Integer(2));

    WeierstrassModel C = model;
    require(invariants_of(C).disc != 0, ErrorCode::SingularModel, "curve is singular");
    KodairaType ks;
    int fp = 0, cp = 1;

    while (true) {
        auto iv = invariants_of(C);
        const int vpd = valuation(iv.disc, p);
        if (vpd == 0) {
            ks = {KodairaType::I0, 0};
            fp = 0;
            cp = 1;
            break;
        }
        // Move a singular point to (0, 0) mod p.
        Integer r, t;
        if (ell == 2) {
            if (pdiv(iv.b2)) {
                r = preduce(C.a4);
                t = preduce(Integer(((r + C.a2) * r + C.a4) * r + C.a6));
            } else {
                Integer inv = pinv(C.a1);
                r = inv * C.a3;
                t = inv * (C.a4 + r * r);
            }
        } else if (ell == 3) {
            r = pdiv(iv.b2) ? Integer(-iv.b6) : Integer(-pinv(iv.b2) * iv.b4);
            t = C.a1 * r + C.a3;
        } else {
            r = pdiv(iv.c4) ? Integer(-pinv(Integer(12)) * iv.b2)
                            : Integer(-pinv(Integer(12 * iv.c4)) * (iv.c6 + iv.b2 * iv.c4));
            t = -half * (C.a1 * r + C.a3);
        }
        C = rst(C, preduce(r), 0, preduce(t));
        iv = invariants_of(C);

        if (!pdiv(iv.c4)) {
            ks = {KodairaType::In, vpd};
            fp = 1;
            if (quadratic_has_root(1, C.a1, -C.a2, p))
                cp = vpd;
            else
                cp = vpd % 2 == 0 ? 2 : 1;
            break;
        }
        if (pval(C.a6, p) < 2) {
            ks = {KodairaType::II, 0};
            fp = vpd;
            cp = 1;
            break;
        }
        if (pval(iv.b8, p) < 3) {
            ks = {KodairaType::III, 0};
            fp = vpd - 1;
            cp = 2;
            break;
        }
        if (pval(iv.b6, p) < 3) {
            ks = {KodairaType::IV, 0};
            fp = vpd - 2;
            cp = quadratic_has_root(1, Integer(C.a3 / p), Integer(-C.a6 / pi2), p) ? 3 : 1;
            break;
        }

        // Arrange p | a1, a2; p^2 | a3, a4; p^3 | a6.
        Integer s;
        if (ell == 2) {
            s = preduce(C.a2);
            t = p * preduce(Integer(C.a6 / pi2));
        } else if (ell == 3) {
            s = C.a1;
            t = C.a3;
        } else {
            s = -C.a1 * half;
            t = -C.a3 * half;
        }
        C = rst(C, 0, s, t);

        const Integer b = C.a2 / p, c = C.a4 / pi2, d = C.a6 / pi3;
        const Integer w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c;
        const Integer x = 3 * c - b * b;
        int sw = pdiv(w) ? (pdiv(x) ? 3 : 2) : 1;

        if (sw == 1) {
            ks = {KodairaType::I0Star, 0};
            fp = vpd - 4;
            cp = 1 + detail::count_roots_mod({d, c, b, 1}, p);
            break;
        }
        if (sw == 2) {
            // Double root: move it to T = 0, then peel off I_m^* layers.
            Integer r2;
            if (ell == 2)
                r2 = preduce(c);
            else if (ell == 3)
                r2 = c * pinv(b);
            else
                r2 = (b * c - 9 * d) * pinv(Integer(2 * x));
            C = rst(C, p * preduce(r2), 0, 0);
            int ix = 3, iy = 3;
            Integer mx = pi2, my = pi2;
            while (true) {
                Integer a2t = C.a2 / p, a3t = C.a3 / my, a4t = C.a4 / (p * mx), a6t = C.a6 / (mx * my);
                if (pdiv(Integer(a3t * a3t + 4 * a6t))) {
                    Integer t2 = ell == 2 ? Integer(my * preduce(a6t)) : Integer(my * preduce(Integer(-a3t * half)));
                    C = rst(C, 0, 0, t2);
                    my *= p;
                    ++iy;
                    a2t = C.a2 / p;
                    a3t = C.a3 / my;
                    a4t = C.a4 / (p * mx);
                    a6t = C.a6 / (mx * my);
                    if (pdiv(Integer(a4t * a4t - 4 * a6t * a2t))) {
                        Integer r3 = ell == 2 ? Integer(mx * preduce(Integer(a6t * pinv(a2t))))
                                              : Integer(mx * preduce(Integer(-a4t * pinv(Integer(2 * a2t)))));
                        C = rst(C, r3, 0, 0);
                        mx *= p;
                        ++ix;
                    } else {
                        cp = quadratic_has_root(a2t, a4t, a6t, p) ? 4 : 2;
                        break;
                    }
                } else {
                    cp = quadratic_has_root(1, a3t, Integer(-a6t), p) ? 4 : 2;
                    break;
                }
            }
            ks = {KodairaType::InStar, ix + iy - 5};
            fp = vpd - ix - iy + 1;
            break;
        }
        // Triple root: move it to T = 0.
        Integer r4;
        if (ell == 2)
            r4 = b;
        else if (ell == 3)
            r4 = -d;
        else
            r4 = -b * pinv(Integer(3));
        C = rst(C, p * preduce(r4), 0, 0);
        const Integer x3t = C.a3 / pi2, x6t = C.a6 / pi4;
        if (!pdiv(Integer(x3t * x3t + 4 * x6t))) {
            ks = {KodairaType::IVStar, 0};
            fp = vpd - 6;
            cp = quadratic_has_root(1, x3t, Integer(-x6t), p) ? 3 : 1;
            break;
        }
        Integer t5 = ell == 2 ? Integer(-pi2 * preduce(x6t)) : Integer(pi2 * preduce(Integer(-x3t * half)));
        C = rst(C, 0, 0, t5);
        if (pval(C.a4, p) < 4) {
            ks = {KodairaType::IIIStar, 0};
            fp = vpd - 7;
            cp = 2;
            break;
        }
        if (pval(C.a6, p) < 6) {
            ks = {KodairaType::IIStar, 0};
            fp = vpd - 8;
            cp = 1;
            break;
        }
        // Non-minimal: divide out u = p and start over.
        C = {C.a1 / p, C.a2 / pi2, C.a3 / pi3, C.a4 / pi4, C.a6 / pi6};
    }

    LocalData out;
    out.minimal = C;
    out.inv = local_invariants_of(C, ell);
    out.inv.kodaira = ks;
    out.inv.conductor_exponent = fp;
    out.inv.tamagawa = cp;
    return out;
}

// Conductor and the bad primes of an integral model.
struct GlobalReduction {
    Integer conductor = 1;
    std::vector<long> bad_primes;
};

inline GlobalReduction global_reduction(const WeierstrassModel& E) {
    auto v = invariants_of(E);
    require(v.disc != 0, ErrorCode::SingularModel, "curve is singular");
    GlobalReduction g;
    for (long ell : prime_divisors(v.disc)) {
        auto ld = minimal_model_at(E, ell);
        if (ld.inv.conductor_exponent > 0) {
            g.bad_primes.push_back(ell);
            g.conductor *= ipow(Integer(ell), static_cast<unsigned long>(ld.inv.conductor_exponent));
        }
    }
    return g;
}

}  // namespace symplectic
