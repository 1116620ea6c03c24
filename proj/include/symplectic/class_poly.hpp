#pragma once

#include <mpfr.h>

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "symplectic/arith.hpp"

namespace symplectic {

// Integer polynomial, constant term first.
using IntPoly = std::vector<Integer>;

namespace detail {

// Minimal RAII handle for an mpfr_t of fixed precision.
class Real {
public:
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    ~Real() { mpfr_clear(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

private:
    mpfr_t v_;
};

struct Complex {
    Real re, im;
    explicit Complex(mpfr_prec_t prec) : re(prec), im(prec) {}
};

inline void cmul(Complex& out, const Complex& x, const Complex& y) {
    Real t1(out.re.prec()), t2(out.re.prec()), t3(out.re.prec());
    mpfr_mul(t1.get(), x.re.get(), y.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), x.im.get(), y.im.get(), MPFR_RNDN);
    mpfr_mul(t3.get(), x.re.get(), y.im.get(), MPFR_RNDN);
    mpfr_fma(out.im.get(), x.im.get(), y.re.get(), t3.get(), MPFR_RNDN);
    mpfr_sub(out.re.get(), t1.get(), t2.get(), MPFR_RNDN);
}

inline void cadd(Complex& out, const Complex& x, const Complex& y) {
    mpfr_add(out.re.get(), x.re.get(), y.re.get(), MPFR_RNDN);
    mpfr_add(out.im.get(), x.im.get(), y.im.get(), MPFR_RNDN);
}

inline void cdiv(Complex& out, const Complex& x, const Complex& y) {
    const mpfr_prec_t pr = out.re.prec();
    Real n(pr), t(pr), a(pr), b(pr);
    mpfr_sqr(n.get(), y.re.get(), MPFR_RNDN);
    mpfr_sqr(t.get(), y.im.get(), MPFR_RNDN);
    mpfr_add(n.get(), n.get(), t.get(), MPFR_RNDN);
    mpfr_mul(a.get(), x.re.get(), y.re.get(), MPFR_RNDN);
    mpfr_mul(t.get(), x.im.get(), y.im.get(), MPFR_RNDN);
    mpfr_add(a.get(), a.get(), t.get(), MPFR_RNDN);
    mpfr_mul(b.get(), x.im.get(), y.re.get(), MPFR_RNDN);
    mpfr_mul(t.get(), x.re.get(), y.im.get(), MPFR_RNDN);
    mpfr_sub(b.get(), b.get(), t.get(), MPFR_RNDN);
    mpfr_div(out.re.get(), a.get(), n.get(), MPFR_RNDN);
    mpfr_div(out.im.get(), b.get(), n.get(), MPFR_RNDN);
}

// j(tau) for tau = (-b + sqrt(D)) / (2a), through E4^3 / Delta with q-series truncated once the
// tail is below 2^-prec.
inline Complex j_at_form(long a, long b, long D, mpfr_prec_t prec) {
    Real pi(prec), r(prec), theta(prec);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    // |q| = exp(-pi sqrt|D| / a), arg q = -pi b / a
    mpfr_set_si(r.get(), -D, MPFR_RNDN);
    mpfr_sqrt(r.get(), r.get(), MPFR_RNDN);
    mpfr_mul(r.get(), r.get(), pi.get(), MPFR_RNDN);
    mpfr_div_si(r.get(), r.get(), a, MPFR_RNDN);
    const double decay_bits = mpfr_get_d(r.get(), MPFR_RNDN) / std::log(2.0);
    mpfr_neg(r.get(), r.get(), MPFR_RNDN);
    mpfr_exp(r.get(), r.get(), MPFR_RNDN);
    mpfr_mul_si(theta.get(), pi.get(), -b, MPFR_RNDN);
    mpfr_div_si(theta.get(), theta.get(), a, MPFR_RNDN);

    Complex q(prec);
    Real s(prec), c(prec);
    mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
    mpfr_mul(q.re.get(), r.get(), c.get(), MPFR_RNDN);
    mpfr_mul(q.im.get(), r.get(), s.get(), MPFR_RNDN);

    const long terms = static_cast<long>((static_cast<double>(prec) + 40.0) / decay_bits) + 4;

    // Powers q^n for n <= needed exponent of the pentagonal series.
    std::vector<Complex> qpow;
    qpow.reserve(static_cast<size_t>(terms) + 1);
    qpow.emplace_back(prec);
    mpfr_set_ui(qpow[0].re.get(), 1, MPFR_RNDN);
    for (long n = 1; n <= terms; ++n) {
        qpow.emplace_back(prec);
        cmul(qpow.back(), qpow[static_cast<size_t>(n - 1)], q);
    }

    // E4 = 1 + 240 sum sigma3(n) q^n
    Complex e4(prec), tmp(prec);
    mpfr_set_ui(e4.re.get(), 1, MPFR_RNDN);
    for (long n = 1; n <= terms; ++n) {
        Integer sigma = 0;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) sigma += Integer(d) * d * d;
        sigma *= 240;
        Real coef(prec);
        mpfr_set_z(coef.get(), sigma.get_mpz_t(), MPFR_RNDN);
        mpfr_mul(tmp.re.get(), qpow[static_cast<size_t>(n)].re.get(), coef.get(), MPFR_RNDN);
        mpfr_mul(tmp.im.get(), qpow[static_cast<size_t>(n)].im.get(), coef.get(), MPFR_RNDN);
        cadd(e4, e4, tmp);
    }
    // prod (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2}
    Complex eta(prec);
    mpfr_set_ui(eta.re.get(), 1, MPFR_RNDN);
    for (long k = 1;; ++k) {
        const long e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
        if (e1 > terms) break;
        for (long e : {e1, e2}) {
            if (e > terms) continue;
            const Complex& t = qpow[static_cast<size_t>(e)];
            if (k % 2) {
                mpfr_sub(eta.re.get(), eta.re.get(), t.re.get(), MPFR_RNDN);
                mpfr_sub(eta.im.get(), eta.im.get(), t.im.get(), MPFR_RNDN);
            } else {
                mpfr_add(eta.re.get(), eta.re.get(), t.re.get(), MPFR_RNDN);
                mpfr_add(eta.im.get(), eta.im.get(), t.im.get(), MPFR_RNDN);
            }
        }
    }
    // Delta = q * eta^24
    Complex e2(prec), e4p(prec), e8(prec), e16(prec), e24(prec), delta(prec);
    cmul(e2, eta, eta);
    cmul(e4p, e2, e2);
    cmul(e8, e4p, e4p);
    cmul(e16, e8, e8);
    cmul(e24, e16, e8);
    cmul(delta, e24, q);
    Complex e4sq(prec), e4cu(prec), j(prec);
    cmul(e4sq, e4, e4);
    cmul(e4cu, e4sq, e4);
    cdiv(j, e4cu, delta);
    return j;
}

}  // namespace detail

struct ReducedForm {
    long a, b, c;
};

// Reduced primitive positive definite forms of discriminant D < 0.
inline std::vector<ReducedForm> reduced_forms(long D) {
    require(D < 0 && (mod(D, 4L) == 0 || mod(D, 4L) == 1), ErrorCode::InvalidArgument,
            "not a negative discriminant: " + std::to_string(D));
    std::vector<ReducedForm> out;
    for (long a = 1; 3 * a * a <= -D; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            if (mod(b - D, 2L) != 0) continue;
            const long num = b * b - D;
            if (num % (4 * a) != 0) continue;
            const long c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

struct ClassPolyResult {
    IntPoly coeffs;
    double max_residual = 0;  // largest distance of a coefficient from its rounding
    mpfr_prec_t precision = 0;
};

// Classical class polynomial of the order of discriminant D.
inline ClassPolyResult single_class_poly(long D) {
    auto forms = reduced_forms(D);
    double inv_sum = 0;
    for (auto& f : forms) inv_sum += 1.0 / static_cast<double>(f.a);
    mpfr_prec_t prec =
        128 + static_cast<mpfr_prec_t>(std::ceil(M_PI * std::sqrt(static_cast<double>(-D)) * inv_sum / std::log(2.0)));
    for (int attempt = 0; attempt < 6; ++attempt, prec *= 2) {
        std::vector<detail::Complex> poly;
        poly.emplace_back(prec);
        mpfr_set_ui(poly[0].re.get(), 1, MPFR_RNDN);
        for (auto& f : forms) {
            auto j = detail::j_at_form(f.a, f.b, D, prec);
            // poly *= (x - j)
            std::vector<detail::Complex> next;
            for (size_t i = 0; i <= poly.size(); ++i) next.emplace_back(prec);
            detail::Complex t(prec);
            for (size_t i = 0; i < poly.size(); ++i) {
                detail::cadd(next[i + 1], next[i + 1], poly[i]);
                detail::cmul(t, poly[i], j);
                mpfr_sub(next[i].re.get(), next[i].re.get(), t.re.get(), MPFR_RNDN);
                mpfr_sub(next[i].im.get(), next[i].im.get(), t.im.get(), MPFR_RNDN);
            }
            poly = std::move(next);
        }
        ClassPolyResult res;
        res.precision = prec;
        bool ok = true;
        for (auto& c : poly) {
            detail::Real rounded(prec), diff(prec);
            mpfr_round(rounded.get(), c.re.get());
            mpfr_sub(diff.get(), c.re.get(), rounded.get(), MPFR_RNDN);
            const double resid = std::max(std::fabs(mpfr_get_d(diff.get(), MPFR_RNDN)),
                                          std::fabs(mpfr_get_d(c.im.get(), MPFR_RNDN)));
            res.max_residual = std::max(res.max_residual, resid);
            if (resid > std::ldexp(1.0, -16)) ok = false;
            Integer z;
            mpfr_get_z(z.get_mpz_t(), rounded.get(), MPFR_RNDN);
            res.coeffs.push_back(z);
        }
        if (ok) return res;
    }
    fail(ErrorCode::PrecisionFailure, "class polynomial of discriminant " + std::to_string(D) + " did not round");
}

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

namespace detail {

struct ClassPolyCache {
    std::shared_mutex mu;
    std::map<long, ClassPolyResult> memo;
};

inline ClassPolyCache& class_poly_cache() {
    static ClassPolyCache cache;
    return cache;
}

}  // namespace detail

// The aggregated polynomial over all orders containing the order of discriminant D:
// product of class polynomials of D / g^2 for the admissible g. P_0 = 0, P_D = 1 for D = 2, 3 mod 4.
inline ClassPolyResult hilbert_class_poly_checked(long D) {
    require(D <= 0, ErrorCode::InvalidArgument, "discriminant must be non-positive");
    if (D == 0) return {IntPoly{}, 0, 0};
    if (mod(D, 4L) == 2 || mod(D, 4L) == 3) return {IntPoly{1}, 0, 0};
    auto& cache = detail::class_poly_cache();
    {
        std::shared_lock lock(cache.mu);
        if (auto it = cache.memo.find(D); it != cache.memo.end()) return it->second;
    }
    ClassPolyResult total{IntPoly{1}, 0, 0};
    for (long g = 1; g * g <= -D; ++g) {
        if (D % (g * g) != 0) continue;
        const long Dg = D / (g * g);
        if (mod(Dg, 4L) != 0 && mod(Dg, 4L) != 1) continue;
        auto part = single_class_poly(Dg);
        total.coeffs = poly_mul(total.coeffs, part.coeffs);
        total.max_residual = std::max(total.max_residual, part.max_residual);
        total.precision = std::max(total.precision, part.precision);
    }
    std::unique_lock lock(cache.mu);
    cache.memo.emplace(D, total);
    return total;
}

inline IntPoly hilbert_class_poly(long D) { return hilbert_class_poly_checked(D).coeffs; }

inline Integer eval_mod(const IntPoly& f, const Integer& x, const Integer& m) {
    Integer acc = 0;
    for (size_t i = f.size(); i-- > 0;) acc = mod(Integer(acc * x + f[i]), m);
    return acc;
}

// "x^2 - 54000*x" style rendering, highest degree first.
inline std::string poly_to_string(const IntPoly& f, const std::string& var = "x") {
    if (f.empty()) return "0";
    std::string out;
    for (size_t i = f.size(); i-- > 0;) {
        const Integer& c = f[i];
        if (c == 0) continue;
        const bool neg = c < 0;
        const Integer mag = abs(c);
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        if (i == 0)
            out += mag.get_str();
        else if (mag == 1)
            out += mono;
        else
            out += mag.get_str() + "*" + mono;
    }
    return out.empty() ? "0" : out;
}

}  // namespace symplectic
