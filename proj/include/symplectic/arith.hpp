#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "symplectic/errors.hpp"

namespace symplectic {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer ipow(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// Least non-negative residue.
inline Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline long mod(const Integer& a, long m) {
    return static_cast<long>(mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(m)));
}

inline long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

inline bool divides(const Integer& d, const Integer& n) {
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline bool divides(unsigned long d, const Integer& n) {
    return mpz_divisible_ui_p(n.get_mpz_t(), d) != 0;
}

// v_ell(n) for n != 0.
inline int valuation(const Integer& n, const Integer& ell) {
    require(n != 0, ErrorCode::ZeroInput, "valuation of zero");
    Integer m = n;
    return static_cast<int>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), ell.get_mpz_t()));
}

inline int valuation(long n, long ell) { return valuation(Integer(n), Integer(ell)); }

inline Integer remove_prime(const Integer& n, const Integer& ell) {
    Integer m = n;
    mpz_remove(m.get_mpz_t(), m.get_mpz_t(), ell.get_mpz_t());
    return m;
}

inline bool is_prime(const Integer& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }
inline bool is_prime(long n) { return is_prime(Integer(n)); }

inline bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

inline Integer isqrt(const Integer& n) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer g;
    mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Inverse of a modulo m; caller guarantees gcd(a, m) = 1.
inline Integer inverse_mod(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), mod(a, m).get_mpz_t(), m.get_mpz_t()) == 0)
        fail(ErrorCode::InvalidArgument, "no inverse of " + a.get_str() + " modulo " + m.get_str());
    return r;
}

inline long inverse_mod(long a, long m) { return inverse_mod(Integer(a), Integer(m)).get_si(); }

inline int legendre(const Integer& a, const Integer& p) {
    require(p > 2 && is_prime(p), ErrorCode::InvalidArgument, "legendre needs an odd prime, got " + p.get_str());
    Integer r = mod(a, p);
    return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

inline int legendre(long a, long p) { return legendre(Integer(a), Integer(p)); }

struct TildeParts {
    int v = 0;
    Integer unit;     // n / ell^v, sign kept
    Integer residue;  // unit mod ell^k, in [0, ell^k)
};

inline TildeParts tilde_parts(const Integer& n, long ell, int k) {
    require(n != 0, ErrorCode::ZeroInput, "tilde_parts of zero");
    require(k >= 1, ErrorCode::InvalidArgument, "precision k must be positive");
    TildeParts t;
    t.v = valuation(n, Integer(ell));
    t.unit = remove_prime(n, Integer(ell));
    t.residue = mod(t.unit, ipow(Integer(ell), static_cast<unsigned long>(k)));
    return t;
}

inline std::vector<long> primes_up_to(long n) {
    std::vector<bool> sieve(static_cast<size_t>(std::max(n + 1, 2L)), true);
    std::vector<long> out;
    for (long i = 2; i <= n; ++i) {
        if (!sieve[static_cast<size_t>(i)]) continue;
        out.push_back(i);
        for (long j = i * i; j <= n; j += i) sieve[static_cast<size_t>(j)] = false;
    }
    return out;
}

inline long next_prime(long n) {
    long q = std::max(n + 1, 2L);
    while (!is_prime(q)) ++q;
    return q;
}

namespace detail {

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
inline Integer pollard_brent(const Integer& n, unsigned long seed) {
    if (divides(2UL, n)) return Integer(2);
    Integer y = seed % 97 + 2, c = seed % 89 + 1, m = 128, g = 1, r = 1, q = 1, x, ys;
    auto f = [&](const Integer& v) { return mod(Integer(v * v + c), n); };
    while (g == 1) {
        x = y;
        for (Integer i = 0; i < r; ++i) y = f(y);
        Integer k = 0;
        while (k < r && g == 1) {
            ys = y;
            Integer lim = std::min(m, Integer(r - k));
            for (Integer i = 0; i < lim; ++i) {
                y = f(y);
                Integer d = x - y;
                q = mod(Integer(q * abs(d)), n);
            }
            g = gcd(q, n);
            k += m;
        }
        r *= 2;
        if (r > (Integer(1) << 26)) return n;
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd(Integer(abs(Integer(x - ys))), n);
        } while (g == 1);
    }
    return g;
}

inline void factor_into(const Integer& n, std::map<Integer, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    for (unsigned long seed = 1; seed < 64; ++seed) {
        Integer d = pollard_brent(n, seed);
        if (d != 1 && d != n) {
            factor_into(d, out);
            factor_into(Integer(n / d), out);
            return;
        }
    }
    fail(ErrorCode::FactorizationLimit, "could not factor " + n.get_str());
}

}  // namespace detail

// Prime factorization of |n|, n != 0.
inline std::vector<std::pair<Integer, int>> factor(const Integer& n) {
    require(n != 0, ErrorCode::ZeroInput, "factor of zero");
    Integer m = abs(n);
    std::map<Integer, int> acc;
    for (unsigned long p = 2; p < 10000 && m > 1; ++p) {
        if (!divides(p, m)) continue;
        int e = valuation(m, Integer(p));
        acc[Integer(p)] += e;
        m = remove_prime(m, Integer(p));
    }
    detail::factor_into(m, acc);
    return {acc.begin(), acc.end()};
}

inline std::vector<long> prime_divisors(const Integer& n) {
    std::vector<long> out;
    for (auto& [p, e] : factor(n)) {
        require(p.fits_slong_p(), ErrorCode::FactorizationLimit, "prime divisor too large: " + p.get_str());
        out.push_back(p.get_si());
    }
    return out;
}

inline long least_nonresidue(long ell) {
    for (long n = 2; n < ell; ++n)
        if (legendre(n, ell) == -1) return n;
    fail(ErrorCode::InvalidArgument, "no non-residue modulo " + std::to_string(ell));
}

}  // namespace symplectic
