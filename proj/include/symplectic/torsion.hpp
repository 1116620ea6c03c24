#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "symplectic/class_poly.hpp"
#include "symplectic/ffield.hpp"
#include "symplectic/goodred.hpp"
#include "symplectic/matrix.hpp"

namespace symplectic {

inline constexpr long kOracleMaxP = 19;
inline constexpr double kOracleMaxFieldBits = 2048;

// ---------------------------------------------------------------------------------------------
// Division polynomials, in the x-only normalisation f_n = psi_n for odd n and psi_n / psi_2 for
// even n, with psi_2^2 = F = 4x^3 + b2 x^2 + 2 b4 x + b6.

namespace detail {

template <class Poly, class Mul, class Sub>
Poly division_recursion(long n, const Poly& F, const Poly& f3, const Poly& f4, Mul mul, Sub sub) {
    std::map<long, Poly> memo;
    const Poly F2 = mul(F, F);
    std::function<Poly(long)> f = [&](long m) -> Poly {
        if (auto it = memo.find(m); it != memo.end()) return it->second;
        Poly r;
        if (m == 0) r = Poly{};
        else if (m == 1 || m == 2) r = Poly{1};
        else if (m == 3) r = f3;
        else if (m == 4) r = f4;
        else if (m % 2 == 1) {
            const long k = (m - 1) / 2;
            Poly A = mul(f(k + 2), mul(f(k), mul(f(k), f(k))));
            Poly B = mul(f(k - 1), mul(f(k + 1), mul(f(k + 1), f(k + 1))));
            if (k % 2 == 0) A = mul(F2, A);
            else B = mul(F2, B);
            r = sub(A, B);
        } else {
            const long k = m / 2;
            Poly A = mul(f(k + 2), mul(f(k - 1), f(k - 1)));
            Poly B = mul(f(k - 2), mul(f(k + 1), f(k + 1)));
            r = mul(f(k), sub(A, B));
        }
        memo[m] = r;
        return r;
    };
    return f(n);
}

inline IntPoly int_trim(IntPoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

}  // namespace detail

// f_n over Z for an integral model. For odd n its roots are the x-coordinates of the nonzero
// n-torsion points; degree (n^2 - 1)/2 with leading coefficient n.
inline IntPoly division_polynomial(const WeierstrassModel& E, long n) {
    require(n >= 0, ErrorCode::InvalidArgument, "division polynomial index must be non-negative");
    auto v = invariants_of(E);
    const IntPoly F = detail::int_trim({v.b6, 2 * v.b4, v.b2, 4});
    const IntPoly f3 = detail::int_trim({v.b8, 3 * v.b6, 3 * v.b4, v.b2, 3});
    const IntPoly f4 = detail::int_trim({v.b4 * v.b8 - v.b6 * v.b6, v.b2 * v.b8 - v.b4 * v.b6, 10 * v.b8, 10 * v.b6,
                                         5 * v.b4, v.b2, 2});
    auto mul = [](const IntPoly& a, const IntPoly& b) { return detail::int_trim(poly_mul(a, b)); };
    auto sub = [](const IntPoly& a, const IntPoly& b) {
        IntPoly c(std::max(a.size(), b.size()), 0);
        for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
        for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
        return detail::int_trim(c);
    };
    return detail::division_recursion<IntPoly>(n, F, f3, f4, mul, sub);
}

// f_n over F_ell for a residual curve; n odd and prime to ell.
inline fl::Poly division_polynomial(const ResidualCurve& C, long n) {
    require(n % 2 == 1, ErrorCode::InvalidArgument, "division polynomial over F_ell needs odd n");
    require(n % C.ell != 0, ErrorCode::CharacteristicClash, "n divisible by the characteristic");
    const long l = C.ell;
    auto v = invariants_of(lift(C));
    auto m = [&](const Integer& z) { return mod(z, l); };
    const fl::Poly F = fl::from_ints({m(v.b6), m(2 * v.b4), m(v.b2), m(Integer(4))}, l);
    const fl::Poly f3 = fl::from_ints({m(v.b8), m(3 * v.b6), m(3 * v.b4), m(v.b2), 3}, l);
    const fl::Poly f4 = fl::from_ints({m(v.b4 * v.b8 - v.b6 * v.b6), m(v.b2 * v.b8 - v.b4 * v.b6), m(10 * v.b8),
                                       m(10 * v.b6), m(5 * v.b4), m(v.b2), 2},
                                      l);
    auto mul = [l](const fl::Poly& a, const fl::Poly& b) { return fl::mul(a, b, l); };
    auto sub = [l](const fl::Poly& a, const fl::Poly& b) { return fl::sub(a, b, l); };
    return detail::division_recursion<fl::Poly>(n, F, f3, f4, mul, sub);
}

// ---------------------------------------------------------------------------------------------
// Curve arithmetic over F_{ell^k}.

struct Point {
    bool inf = true;
    Field::Elem x, y;
};

class CurveOverField {
public:
    CurveOverField(const ResidualCurve& C, std::shared_ptr<const Field> F) : C_(C), F_(std::move(F)) {
        a1 = F_->from_long(C.a1);
        a2 = F_->from_long(C.a2);
        a3 = F_->from_long(C.a3);
        a4 = F_->from_long(C.a4);
        a6 = F_->from_long(C.a6);
    }

    const Field& field() const { return *F_; }
    std::shared_ptr<const Field> field_ptr() const { return F_; }
    const ResidualCurve& residual() const { return C_; }

    Point infinity() const { return {}; }

    bool on_curve(const Point& P) const {
        if (P.inf) return true;
        const Field& F = *F_;
        auto lhs = F.add(F.sqr(P.y), F.mul(P.y, F.add(F.mul(a1, P.x), a3)));
        auto rhs = F.add(F.mul(F.add(F.mul(F.add(P.x, a2), P.x), a4), P.x), a6);
        return lhs == rhs;
    }

    bool equal(const Point& P, const Point& Q) const {
        if (P.inf || Q.inf) return P.inf == Q.inf;
        return P.x == Q.x && P.y == Q.y;
    }

    Point neg(const Point& P) const {
        if (P.inf) return P;
        const Field& F = *F_;
        return {false, P.x, F.sub(F.neg(P.y), F.add(F.mul(a1, P.x), a3))};
    }

    // Slope of the line through P and Q (tangent when equal), or nullopt when vertical.
    std::optional<Field::Elem> slope(const Point& P, const Point& Q) const {
        const Field& F = *F_;
        if (P.x != Q.x) return F.div(F.sub(Q.y, P.y), F.sub(Q.x, P.x));
        if (P.y != Q.y) return std::nullopt;
        auto den = F.add(F.add(F.scale(P.y, 2), F.mul(a1, P.x)), a3);
        if (F.is_zero(den)) return std::nullopt;
        auto num = F.sub(F.add(F.add(F.scale(F.sqr(P.x), 3), F.scale(F.mul(a2, P.x), 2)), a4), F.mul(a1, P.y));
        return F.div(num, den);
    }

    Point add(const Point& P, const Point& Q) const {
        if (P.inf) return Q;
        if (Q.inf) return P;
        auto lam = slope(P, Q);
        if (!lam) return infinity();
        const Field& F = *F_;
        auto x3 = F.sub(F.sub(F.sub(F.add(F.sqr(*lam), F.mul(a1, *lam)), a2), P.x), Q.x);
        auto nu = F.sub(P.y, F.mul(*lam, P.x));
        auto y3 = F.sub(F.sub(F.neg(F.mul(F.add(*lam, a1), x3)), nu), a3);
        return {false, x3, y3};
    }

    Point sub(const Point& P, const Point& Q) const { return add(P, neg(Q)); }

    Point mul(const Integer& n_in, const Point& P) const {
        Integer n = n_in;
        Point base = n < 0 ? neg(P) : P;
        if (n < 0) n = -n;
        Point R = infinity();
        const size_t bits = n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
        for (size_t i = bits; i-- > 0;) {
            R = add(R, R);
            if (mpz_tstbit(n.get_mpz_t(), i)) R = add(R, base);
        }
        return R;
    }
    Point mul(long n, const Point& P) const { return mul(Integer(n), P); }

    Point frobenius(const Point& P) const {
        if (P.inf) return P;
        return {false, F_->frobenius(P.x), F_->frobenius(P.y)};
    }

    template <class Rng>
    Point random_point(Rng& rng) const {
        const Field& F = *F_;
        for (;;) {
            auto x = F.random(rng);
            auto A = F.add(F.mul(a1, x), a3);
            auto B = F.add(F.mul(F.add(F.mul(F.add(x, a2), x), a4), x), a6);
            if (F.characteristic() == 2) {
                if (F.is_zero(A)) {
                    auto y = F.sqrt(B, rng);
                    return {false, x, *y};
                }
                auto A2 = F.sqr(A);
                auto z = F.solve_artin_schreier(F.div(B, A2), rng);
                if (!z) continue;
                return {false, x, F.mul(A, *z)};
            }
            // (2y + A)^2 = A^2 + 4B
            auto w = F.sqrt(F.add(F.sqr(A), F.scale(B, 4)), rng);
            if (!w) continue;
            auto y = F.mul(F.sub(*w, A), F.inv(F.from_long(2)));
            return {false, x, y};
        }
    }

    Field::Elem a1, a2, a3, a4, a6;

private:
    ResidualCurve C_;
    std::shared_ptr<const Field> F_;
};

// ---------------------------------------------------------------------------------------------
// Weil pairing by Miller's algorithm with a random shift.

namespace detail {

// f_{n,P}(R) as numerator/denominator, where div f = n(P) - n(O) - ... ; nullopt when R hits a
// zero or pole of an intermediate line.
inline std::optional<Field::Elem> miller(const CurveOverField& E, long n, const Point& P, const Point& R) {
    const Field& F = E.field();
    Field::Elem num = F.one(), den = F.one();
    Point T = P;
    auto line = [&](const Point& A, const Point& B, Field::Elem& out_l, Field::Elem& out_v) {
        // l = line through A, B; v = vertical through A + B.
        auto lam = E.slope(A, B);
        if (!lam) {
            out_l = F.sub(R.x, A.x);
            out_v = F.one();
            return;
        }
        out_l = F.sub(F.sub(R.y, A.y), F.mul(*lam, F.sub(R.x, A.x)));
        Point S = E.add(A, B);
        out_v = F.sub(R.x, S.x);
    };
    const int bits = static_cast<int>(std::log2(static_cast<double>(n)));
    for (int i = bits - 1; i >= 0; --i) {
        Field::Elem l, v;
        line(T, T, l, v);
        num = F.mul(F.sqr(num), l);
        den = F.mul(F.sqr(den), v);
        T = E.add(T, T);
        if ((n >> i) & 1) {
            line(T, P, l, v);
            num = F.mul(num, l);
            den = F.mul(den, v);
            T = E.add(T, P);
        }
        if (F.is_zero(num) || F.is_zero(den)) return std::nullopt;
    }
    return F.div(num, den);
}

}  // namespace detail

template <class Rng>
Field::Elem weil_pairing(const CurveOverField& E, const Point& P, const Point& Q, long p, Rng& rng) {
    require(E.mul(p, P).inf && E.mul(p, Q).inf, ErrorCode::InvalidArgument, "pairing inputs are not p-torsion");
    const Field& F = E.field();
    if (P.inf || Q.inf) return F.one();
    for (int attempt = 0; attempt < 64; ++attempt) {
        Point S = E.random_point(rng);
        Point QS = E.add(Q, S), PS = E.sub(P, S), mS = E.neg(S);
        if (QS.inf || PS.inf || S.inf) continue;
        auto a = detail::miller(E, p, P, QS);
        auto b = detail::miller(E, p, P, S);
        auto c = detail::miller(E, p, Q, PS);
        auto d = detail::miller(E, p, Q, mS);
        if (!a || !b || !c || !d) continue;
        if (F.is_zero(*b) || F.is_zero(*c)) continue;
        return F.div(F.mul(*a, *d), F.mul(*b, *c));
    }
    fail(ErrorCode::PairingDegenerate, "Miller evaluation kept hitting divisor support");
}

// ---------------------------------------------------------------------------------------------
// Torsion field degree, bases and Frobenius.

// N_k = #E(F_{ell^k}) from the trace a over F_ell.
inline Integer points_over_extension(long a, long ell, int k) {
    Integer s0 = 2, s1 = a;
    for (int i = 1; i < k; ++i) {
        Integer s2 = a * s1 - ell * s0;
        s0 = s1;
        s1 = s2;
    }
    const Integer sk = k == 0 ? Integer(2) : s1;
    return ipow(Integer(ell), static_cast<unsigned long>(k)) + 1 - sk;
}

// Smallest k with E[p] contained in E(F_{ell^k}), found by testing that every root of the p-th
// division polynomial and the matching y-coordinates are fixed by the k-th Frobenius power.
inline int torsion_field_degree(const ResidualCurve& C, long p) {
    require(p >= 3 && p <= kOracleMaxP && is_prime(p), ErrorCode::ResourceBound, "oracle limited to odd p <= 19");
    require(p != C.ell, ErrorCode::CharacteristicClash, "p equals the characteristic");
    const long l = C.ell;
    const long a = count_points(C).a;
    const fl::Poly psi = fl::monic(division_polynomial(C, p), l);
    const fl::Poly x{0, 1};
    auto v = invariants_of(lift(C));
    fl::Poly X = fl::rem(x, psi, l);
    // Odd ell: y rational iff F(x) is a square, tracked through prod_i G^(ell^i), G = F^((ell-1)/2).
    // ell = 2: y^2 + A y = B is solvable iff the absolute trace of B / A^2 vanishes.
    fl::Poly G, Gi, prodG{1}, Z, trace_sum;
    if (l != 2) {
        const fl::Poly F = fl::from_ints({mod(v.b6, l), mod(Integer(2 * v.b4), l), mod(v.b2, l), 4 % l}, l);
        G = fl::powmod(F, Integer((l - 1) / 2), psi, l);
        Gi = G;
    } else {
        const fl::Poly A = fl::from_ints({C.a3, C.a1}, l);
        const fl::Poly B = fl::from_ints({C.a6, C.a4, C.a2, 1}, l);
        auto Ainv = fl::invmod(fl::mulmod(A, A, psi, l), psi, l);
        require(Ainv.has_value(), ErrorCode::BasisNotFound, "2-torsion x-coordinate among p-torsion roots");
        Z = fl::mulmod(B, *Ainv, psi, l);
        trace_sum = {};
    }
    const int bound = static_cast<int>(p * p - 1);
    for (int k = 1; k <= bound; ++k) {
        X = fl::powmod(X, Integer(l), psi, l);
        if (l != 2) {
            prodG = fl::mulmod(prodG, Gi, psi, l);
            Gi = fl::powmod(Gi, Integer(l), psi, l);
        } else {
            trace_sum = fl::add(trace_sum, Z, l);
            Z = fl::mulmod(Z, Z, psi, l);
        }
        if (Integer(mod(ipow(Integer(l), static_cast<unsigned long>(k)), Integer(p))) != 1) continue;
        if (!divides(Integer(p * p), points_over_extension(a, l, k))) continue;
        if (!fl::equal_x(X)) continue;
        const bool y_ok = l != 2 ? (prodG.size() == 1 && prodG[0] == 1) : trace_sum.empty();
        if (y_ok) return k;
    }
    fail(ErrorCode::BasisNotFound, "no torsion field degree up to p^2 - 1");
}

struct TorsionBasis {
    long ell = 0, p = 0;
    int k = 0;
    std::shared_ptr<const CurveOverField> curve;
    Point P, Q;
    Field::Elem pairing;  // e_p(P, Q)
    Field::Elem zeta;     // canonical primitive p-th root of unity
    bool symplectic = false;
};

namespace detail {

// Lexicographically smallest element of exact order p.
inline Field::Elem canonical_zeta(const Field& F, long p, std::mt19937_64& rng) {
    const Integer cof = (F.order() - 1) / p;
    require((F.order() - 1) % p == 0, ErrorCode::BasisNotFound, "field does not contain p-th roots of unity");
    Field::Elem z;
    do z = F.pow(F.random(rng), cof);
    while (F.is_one(z) || F.is_zero(z));
    Field::Elem best = z, w = z;
    for (long i = 2; i < p; ++i) {
        w = F.mul(w, z);
        if (w < best) best = w;
    }
    return best;
}

inline long discrete_log(const Field& F, const Field::Elem& base, const Field::Elem& target, long p) {
    Field::Elem w = F.one();
    for (long i = 0; i < p; ++i) {
        if (w == target) return i;
        w = F.mul(w, base);
    }
    fail(ErrorCode::PairingDegenerate, "value is not a power of the given root of unity");
}

inline int order_exponent(const CurveOverField& E, Point P, long p) {
    int s = 0;
    while (!P.inf) {
        P = E.mul(p, P);
        ++s;
    }
    return s;
}

}  // namespace detail

inline std::uint64_t oracle_seed(long ell, int k, long p) {
    return 0x5eed0000ULL ^ (static_cast<std::uint64_t>(ell) << 32) ^ (static_cast<std::uint64_t>(k) << 8) ^
           static_cast<std::uint64_t>(p);
}

inline TorsionBasis torsion_basis(const ResidualCurve& C, long p, std::optional<int> known_k = std::nullopt) {
    const int k = known_k ? *known_k : torsion_field_degree(C, p);
    // Miller evaluation needs auxiliary points off E[p]; when E(F_{ell^k}) is little more than
    // E[p] itself, work in an extension of the torsion field instead.
    int K = k;
    while (std::pow(static_cast<double>(C.ell), K) < 64.0 * static_cast<double>(p * p)) K += k;
    require(static_cast<double>(K) * std::log2(static_cast<double>(C.ell)) <= kOracleMaxFieldBits,
            ErrorCode::ResourceBound, "torsion field too large for the oracle");
    auto F = finite_field(C.ell, K);
    auto E = std::make_shared<const CurveOverField>(C, F);
    std::mt19937_64 rng(oracle_seed(C.ell, k, p));
    const Integer N = points_over_extension(count_points(C).a, C.ell, K);
    require(divides(Integer(p * p), N), ErrorCode::BasisNotFound, "p^2 does not divide the group order");
    const Integer cof = remove_prime(N, Integer(p));

    auto sylow = [&]() {
        for (;;) {
            Point R = E->mul(cof, E->random_point(rng));
            if (!R.inf) return R;
        }
    };
    Point g1 = sylow();
    int t1 = detail::order_exponent(*E, g1, p);
    Point P = E->mul(ipow(Integer(p), static_cast<unsigned long>(t1 - 1)), g1);
    Point Q;
    Field::Elem e;
    bool found = false;
    for (int attempt = 0; attempt < 200 && !found; ++attempt) {
        Point g2 = sylow();
        while (!g2.inf) {
            int s = detail::order_exponent(*E, g2, p);
            if (s > t1) {
                std::swap(g1, g2);
                std::swap(s, t1);
                P = E->mul(ipow(Integer(p), static_cast<unsigned long>(t1 - 1)), g1);
            }
            Point h = E->mul(ipow(Integer(p), static_cast<unsigned long>(s - 1)), g2);
            e = weil_pairing(*E, P, h, p, rng);
            if (!F->is_one(e)) {
                Q = h;
                found = true;
                break;
            }
            // h = lambda P: strip that component from g2, lowering its order.
            long lambda = -1;
            Point m = E->infinity();
            for (long i = 0; i < p; ++i, m = E->add(m, P))
                if (E->equal(m, h)) {
                    lambda = i;
                    break;
                }
            require(lambda >= 0, ErrorCode::BasisNotFound, "degenerate pairing on independent points");
            g2 = E->sub(g2, E->mul(Integer(lambda) * ipow(Integer(p), static_cast<unsigned long>(t1 - s)), g1));
        }
    }
    require(found, ErrorCode::BasisNotFound, "could not find two independent p-torsion points");

    TorsionBasis tb;
    tb.ell = C.ell;
    tb.p = p;
    tb.k = k;
    tb.curve = E;
    tb.zeta = detail::canonical_zeta(*F, p, rng);
    // Rescale Q so that e(P, Q) is the canonical root.
    const long i = detail::discrete_log(*F, tb.zeta, e, p);
    Q = E->mul(inverse_mod(i, p), Q);
    tb.P = P;
    tb.Q = Q;
    tb.pairing = weil_pairing(*E, P, Q, p, rng);
    tb.symplectic = tb.pairing == tb.zeta;
    require(tb.symplectic, ErrorCode::BasisNotFound, "basis normalisation failed");
    return tb;
}

// Coordinates (i, j) with R = iP + jQ, recovered through the pairing.
inline std::pair<long, long> basis_coordinates(const TorsionBasis& tb, const Point& R, std::mt19937_64& rng) {
    const auto& E = *tb.curve;
    const Field& F = E.field();
    // e(R, Q) = zeta^i, e(P, R) = zeta^j
    const long i = detail::discrete_log(F, tb.zeta, weil_pairing(E, R, tb.Q, tb.p, rng), tb.p);
    const long j = detail::discrete_log(F, tb.zeta, weil_pairing(E, tb.P, R, tb.p, rng), tb.p);
    require(E.equal(E.add(E.mul(i, tb.P), E.mul(j, tb.Q)), R), ErrorCode::BasisNotFound,
            "pairing coordinates do not reproduce the point");
    return {i, j};
}

struct OracleFrobenius {
    Mat2 matrix;  // columns are the images of P and Q
    int k = 0;
    long a = 0;
};

inline OracleFrobenius frobenius_matrix(const TorsionBasis& tb) {
    std::mt19937_64 rng(oracle_seed(tb.ell, tb.k, tb.p) + 1);
    const auto& E = *tb.curve;
    auto [a, c] = basis_coordinates(tb, E.frobenius(tb.P), rng);
    auto [b, d] = basis_coordinates(tb, E.frobenius(tb.Q), rng);
    OracleFrobenius of;
    of.matrix = {a, b, c, d};
    of.k = tb.k;
    of.a = count_points(E.residual()).a;
    require(mat_det(of.matrix, tb.p) == mod(tb.ell, tb.p), ErrorCode::BasisNotFound, "Frobenius determinant != ell");
    require(mat_trace(of.matrix, tb.p) == mod(of.a, tb.p), ErrorCode::BasisNotFound, "Frobenius trace != a_ell");
    return of;
}

inline OracleFrobenius frobenius_matrix(const ResidualCurve& C, long p) { return frobenius_matrix(torsion_basis(C, p)); }

struct OracleTypes {
    bool symplectic = false;
    bool antisymplectic = false;
    Mat2 frob, frob_prime;
};

inline std::string to_string(const OracleTypes& t) {
    if (t.symplectic && t.antisymplectic) return "both";
    if (t.symplectic) return "symplectic";
    if (t.antisymplectic) return "anti-symplectic";
    return "none";
}

// Symplectic types realised by the Frobenius-equivariant maps E[p] -> E'[p], both curves with
// good reduction at ell, in their canonical symplectic bases.
inline OracleTypes oracle_symplectic_type(const ResidualCurve& C, const ResidualCurve& Cp, long p) {
    require(C.ell == Cp.ell, ErrorCode::InvalidArgument, "curves reduced at different primes");
    OracleTypes out;
    out.frob = frobenius_matrix(C, p).matrix;
    out.frob_prime = frobenius_matrix(Cp, p).matrix;
    if (!mat_conjugate(out.frob, out.frob_prime, p))
        fail(ErrorCode::NotIsomorphic, "Frobenius matrices " + to_string(out.frob) + " and " +
                                           to_string(out.frob_prime) + " are not conjugate");
    // M represents phi : E[p] -> E'[p]; equivariance is M rho_E = rho_E' M.
    for (const auto& M : gl2_elements(p)) {
        if (mat_mul(M, out.frob, p) != mat_mul(out.frob_prime, M, p)) continue;
        if (is_square_mod(mat_det(M, p), p)) out.symplectic = true;
        else out.antisymplectic = true;
        if (out.symplectic && out.antisymplectic) break;
    }
    return out;
}

inline OracleTypes oracle_symplectic_type(const WeierstrassModel& E, const WeierstrassModel& Ep, long ell, long p) {
    return oracle_symplectic_type(reduce_good(E, ell), reduce_good(Ep, ell), p);
}

}  // namespace symplectic
