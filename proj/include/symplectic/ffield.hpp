#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "symplectic/arith.hpp"

namespace symplectic {

// Dense polynomials over F_ell, constant term first, no trailing zeros (zero is empty).
namespace fl {

using Poly = std::vector<long>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly from_ints(const std::vector<long>& c, long l) {
    Poly a(c.size());
    for (size_t i = 0; i < c.size(); ++i) a[i] = mod(c[i], l);
    trim(a);
    return a;
}

inline Poly add(const Poly& a, const Poly& b, long l) {
    Poly c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] = (c[i] + b[i]) % l;
    trim(c);
    return c;
}

inline Poly sub(const Poly& a, const Poly& b, long l) {
    Poly c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] = (c[i] - b[i] + l) % l;
    trim(c);
    return c;
}

inline Poly scale(const Poly& a, long s, long l) {
    Poly c(a.size());
    s = mod(s, l);
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] * s % l;
    trim(c);
    return c;
}

inline Poly mul(const Poly& a, const Poly& b, long l) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    // ell <= 10^4 keeps each partial product below 10^8; reduce periodically to stay in range.
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        const std::uint64_t ai = static_cast<std::uint64_t>(a[i]);
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] += ai * static_cast<std::uint64_t>(b[j]);
        if ((i & 1023) == 1023)
            for (auto& v : acc) v %= static_cast<std::uint64_t>(l);
    }
    Poly c(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) c[i] = static_cast<long>(acc[i] % static_cast<std::uint64_t>(l));
    trim(c);
    return c;
}

inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, long l) {
    require(!b.empty(), ErrorCode::InvalidArgument, "polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    Poly r = a, q(a.size() - b.size() + 1, 0);
    const long inv = inverse_mod(b.back(), l);
    for (size_t i = r.size(); i-- >= b.size();) {
        const long c = r[i] * inv % l;
        q[i - b.size() + 1] = c;
        if (c == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            long& t = r[i - b.size() + 1 + j];
            t = (t - c * b[j]) % l;
            if (t < 0) t += l;
        }
        if (i == 0) break;
    }
    trim(q);
    r.resize(b.size() - 1);
    trim(r);
    return {q, r};
}

inline Poly rem(const Poly& a, const Poly& b, long l) { return divmod(a, b, l).second; }

inline Poly monic(const Poly& a, long l) {
    if (a.empty()) return a;
    return scale(a, inverse_mod(a.back(), l), l);
}

inline Poly gcd(Poly a, Poly b, long l) {
    while (!b.empty()) {
        Poly r = rem(a, b, l);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, l);
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, long l) { return rem(mul(a, b, l), m, l); }

inline Poly powmod(Poly base, const Integer& e, const Poly& m, long l) {
    Poly r{1};
    r = rem(r, m, l);
    base = rem(base, m, l);
    const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = mulmod(r, r, m, l);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, base, m, l);
    }
    return r;
}

// Inverse of a modulo m, if gcd(a, m) = 1.
inline std::optional<Poly> invmod(const Poly& a, const Poly& m, long l) {
    Poly r0 = m, r1 = rem(a, m, l), s0{}, s1{1};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1, l);
        Poly s = sub(s0, mul(q, s1, l), l);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.size() != 1) return std::nullopt;
    return rem(scale(s0, inverse_mod(r0[0], l), l), m, l);
}

inline Poly derivative(const Poly& a, long l) {
    if (a.size() <= 1) return {};
    Poly d(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) d[i - 1] = static_cast<long>(i % static_cast<size_t>(l)) * a[i] % l;
    trim(d);
    return d;
}

inline bool equal_x(const Poly& a) { return a.size() == 2 && a[0] == 0 && a[1] == 1; }

// A degree-k polynomial is irreducible iff it has no factor of degree <= k/2, i.e.
// gcd(x^(ell^i) - x, f) = 1 for i <= k/2. Exits at the first small factor.
inline bool is_irreducible(const Poly& f, long l) {
    const int k = deg(f);
    if (k <= 0) return false;
    if (k == 1) return true;
    if (f[0] == 0) return false;
    const Poly x{0, 1};
    Poly xp = rem(x, f, l);
    for (int i = 1; 2 * i <= k; ++i) {
        xp = powmod(xp, Integer(l), f, l);
        if (gcd(f, sub(xp, x, l), l).size() != 1) return false;
    }
    return true;
}

}  // namespace fl

// F_{ell^k} = F_ell[t] / (modulus). Elements are coefficient vectors of length k.
class Field {
public:
    using Elem = std::vector<long>;

    Field(long ell, int k, fl::Poly modulus) : ell_(ell), k_(k), modulus_(std::move(modulus)) {
        order_ = ipow(Integer(ell_), static_cast<unsigned long>(k_));
    }

    long characteristic() const { return ell_; }
    int degree() const { return k_; }
    const fl::Poly& modulus() const { return modulus_; }
    const Integer& order() const { return order_; }

    Elem zero() const { return Elem(static_cast<size_t>(k_), 0); }
    Elem one() const { return from_long(1); }
    Elem from_long(long c) const {
        Elem e = zero();
        e[0] = mod(c, ell_);
        return e;
    }
    Elem from_poly(const fl::Poly& p) const {
        fl::Poly r = fl::rem(p, modulus_, ell_);
        Elem e = zero();
        for (size_t i = 0; i < r.size(); ++i) e[i] = r[i];
        return e;
    }
    fl::Poly to_poly(const Elem& a) const {
        fl::Poly p(a.begin(), a.end());
        fl::trim(p);
        return p;
    }

    bool is_zero(const Elem& a) const {
        for (long c : a)
            if (c) return false;
        return true;
    }
    bool is_one(const Elem& a) const {
        if (a[0] != 1) return false;
        for (size_t i = 1; i < a.size(); ++i)
            if (a[i]) return false;
        return true;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem c(a.size());
        for (size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % ell_;
        return c;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem c(a.size());
        for (size_t i = 0; i < a.size(); ++i) c[i] = (a[i] - b[i] + ell_) % ell_;
        return c;
    }
    Elem neg(const Elem& a) const {
        Elem c(a.size());
        for (size_t i = 0; i < a.size(); ++i) c[i] = (ell_ - a[i]) % ell_;
        return c;
    }
    Elem scale(const Elem& a, long s) const {
        s = mod(s, ell_);
        Elem c(a.size());
        for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] * s % ell_;
        return c;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        const size_t k = static_cast<size_t>(k_);
        const std::uint64_t L = static_cast<std::uint64_t>(ell_);
        std::vector<std::uint64_t> t(2 * k - 1, 0);
        for (size_t i = 0; i < k; ++i) {
            if (a[i] == 0) continue;
            const std::uint64_t ai = static_cast<std::uint64_t>(a[i]);
            for (size_t j = 0; j < k; ++j) t[i + j] += ai * static_cast<std::uint64_t>(b[j]);
        }
        // Fold the top coefficients back using the monic modulus: t^k = -sum m_j t^j.
        for (size_t i = 2 * k - 1; i-- > k;) {
            const std::uint64_t c = t[i] % L;
            if (c == 0) continue;
            for (size_t j = 0; j < k; ++j)
                t[i - k + j] += c * ((L - static_cast<std::uint64_t>(modulus_[j])) % L);
            if ((i & 255) == 0)
                for (size_t j = 0; j < i; ++j) t[j] %= L;
        }
        Elem c(k);
        for (size_t i = 0; i < k; ++i) c[i] = static_cast<long>(t[i] % L);
        return c;
    }
    Elem sqr(const Elem& a) const { return mul(a, a); }

    Elem pow(Elem base, const Integer& e) const {
        Elem r = one();
        const size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
        for (size_t i = bits; i-- > 0;) {
            r = sqr(r);
            if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, base);
        }
        return r;
    }

    Elem frobenius(const Elem& a) const { return pow(a, Integer(ell_)); }

    Elem inv(const Elem& a) const {
        require(!is_zero(a), ErrorCode::InvalidArgument, "inverse of zero in finite field");
        auto r = fl::invmod(to_poly(a), modulus_, ell_);
        require(r.has_value(), ErrorCode::InvalidArgument, "field modulus is not irreducible");
        return from_poly(*r);
    }

    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    template <class Rng>
    Elem random(Rng& rng) const {
        std::uniform_int_distribution<long> dist(0, ell_ - 1);
        Elem e = zero();
        for (auto& c : e) c = dist(rng);
        return e;
    }

    // Absolute trace to F_ell, as an element of the prime field.
    long trace(const Elem& a) const {
        Elem s = zero(), x = a;
        for (int i = 0; i < k_; ++i) {
            s = add(s, x);
            x = frobenius(x);
        }
        for (size_t i = 1; i < s.size(); ++i)
            require(s[i] == 0, ErrorCode::InvalidArgument, "trace left the prime field");
        return s[0];
    }

    bool is_square(const Elem& a) const {
        if (is_zero(a) || ell_ == 2) return true;
        return is_one(pow(a, Integer((order_ - 1) / 2)));
    }

    // A square root of a, if one exists (Tonelli-Shanks for odd ell, Frobenius inverse for ell = 2).
    template <class Rng>
    std::optional<Elem> sqrt(const Elem& a, Rng& rng) const {
        if (is_zero(a)) return a;
        if (ell_ == 2) return pow(a, order_ / 2);
        if (!is_square(a)) return std::nullopt;
        Integer q = order_ - 1;
        unsigned long s = 0;
        while (mpz_even_p(q.get_mpz_t())) {
            q /= 2;
            ++s;
        }
        Elem z;
        do z = random(rng);
        while (is_zero(z) || is_square(z));
        Elem c = pow(z, q), t = pow(a, q), r = pow(a, Integer((q + 1) / 2));
        unsigned long m = s;
        while (!is_one(t)) {
            unsigned long i = 0;
            Elem tt = t;
            while (!is_one(tt)) {
                tt = sqr(tt);
                ++i;
            }
            Elem b = c;
            for (unsigned long j = 0; j + i + 1 < m; ++j) b = sqr(b);
            m = i;
            c = sqr(b);
            t = mul(t, c);
            r = mul(r, b);
        }
        return r;
    }

    // A root z of z^2 + z = c in characteristic 2, if Tr(c) = 0.
    template <class Rng>
    std::optional<Elem> solve_artin_schreier(const Elem& c, Rng& rng) const {
        require(ell_ == 2, ErrorCode::InvalidArgument, "Artin-Schreier solver needs characteristic 2");
        if (trace(c) != 0) return std::nullopt;
        Elem tau;
        do tau = random(rng);
        while (trace(tau) != 1);
        // z = sum_{i=0}^{k-2} (sum_{j=i+1}^{k-1} tau^(2^j)) c^(2^i)
        std::vector<Elem> tp(static_cast<size_t>(k_)), cp(static_cast<size_t>(k_));
        tp[0] = tau;
        cp[0] = c;
        for (size_t i = 1; i < static_cast<size_t>(k_); ++i) {
            tp[i] = sqr(tp[i - 1]);
            cp[i] = sqr(cp[i - 1]);
        }
        Elem z = zero(), suffix = zero();
        for (size_t i = static_cast<size_t>(k_) - 1; i-- > 0;) {
            suffix = add(suffix, tp[i + 1]);
            z = add(z, mul(suffix, cp[i]));
        }
        return z;
    }

private:
    long ell_;
    int k_;
    fl::Poly modulus_;
    Integer order_;
};

// Smallest monic irreducible of degree k in the order comparing (a_{k-1}, ..., a_0), so sparse
// low-degree tails such as x^k + x + c are tried first.
inline fl::Poly smallest_irreducible(long ell, int k) {
    require(k >= 1, ErrorCode::InvalidArgument, "extension degree must be positive");
    std::vector<long> digits(static_cast<size_t>(k), 0);
    for (;;) {
        fl::Poly f(digits.begin(), digits.end());
        f.push_back(1);
        if (fl::is_irreducible(f, ell)) return f;
        // increment with a_0 varying fastest
        size_t i = 0;
        for (; i < digits.size(); ++i) {
            if (++digits[i] < ell) break;
            digits[i] = 0;
        }
        if (i == digits.size()) fail(ErrorCode::InvalidArgument, "no irreducible polynomial found");
    }
}

// Canonical tower: one shared field per (ell, k).
inline std::shared_ptr<const Field> finite_field(long ell, int k) {
    static std::mutex mu;
    static std::map<std::pair<long, int>, std::shared_ptr<const Field>> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find({ell, k}); it != cache.end()) return it->second;
    }
    auto F = std::make_shared<const Field>(ell, k, smallest_irreducible(ell, k));
    std::lock_guard lock(mu);
    return cache.emplace(std::make_pair(ell, k), F).first->second;
}

}  // namespace symplectic
