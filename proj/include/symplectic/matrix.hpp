#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "symplectic/arith.hpp"

namespace symplectic {

// 2x2 matrix [[a, b], [c, d]] with entries in [0, p).
struct Mat2 {
    long a = 1, b = 0, c = 0, d = 1;
    auto operator<=>(const Mat2&) const = default;
};

inline Mat2 mat_reduce(long a, long b, long c, long d, long p) { return {mod(a, p), mod(b, p), mod(c, p), mod(d, p)}; }

inline Mat2 mat_identity() { return {1, 0, 0, 1}; }

inline Mat2 mat_mul(const Mat2& x, const Mat2& y, long p) {
    return mat_reduce(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d, p);
}

inline long mat_det(const Mat2& m, long p) { return mod(m.a * m.d - m.b * m.c, p); }
inline long mat_trace(const Mat2& m, long p) { return mod(m.a + m.d, p); }
inline bool mat_is_scalar(const Mat2& m) { return m.b == 0 && m.c == 0 && m.a == m.d; }

inline Mat2 mat_inverse(const Mat2& m, long p) {
    const long det = mat_det(m, p);
    require(det != 0, ErrorCode::InvalidArgument, "singular matrix");
    const long inv = inverse_mod(det, p);
    return mat_reduce(m.d * inv, -m.b * inv, -m.c * inv, m.a * inv, p);
}

inline Mat2 mat_pow(Mat2 m, unsigned long e, long p) {
    Mat2 r = mat_identity();
    for (; e; e >>= 1, m = mat_mul(m, m, p))
        if (e & 1) r = mat_mul(r, m, p);
    return r;
}

// Multiplicative order in GL2(F_p).
inline long mat_order(const Mat2& m, long p) {
    require(mat_det(m, p) != 0, ErrorCode::InvalidArgument, "matrix not invertible");
    Mat2 x = m;
    for (long k = 1;; ++k) {
        if (x == mat_identity()) return k;
        x = mat_mul(x, m, p);
    }
}

inline bool mat_commute(const Mat2& x, const Mat2& y, long p) { return mat_mul(x, y, p) == mat_mul(y, x, p); }

// GL2(F_p) conjugacy: scalar matrices are alone in their class; a non-scalar 2x2 matrix is cyclic,
// hence conjugate to the companion matrix of its characteristic polynomial.
inline bool mat_conjugate(const Mat2& x, const Mat2& y, long p) {
    if (mat_is_scalar(x) || mat_is_scalar(y)) return x == y;
    return mat_trace(x, p) == mat_trace(y, p) && mat_det(x, p) == mat_det(y, p);
}

inline std::string to_string(const Mat2& m) {
    return "[[" + std::to_string(m.a) + "," + std::to_string(m.b) + "],[" + std::to_string(m.c) + "," +
           std::to_string(m.d) + "]]";
}

inline bool is_square_mod(long a, long p) { return mod(a, p) != 0 && legendre(a, p) == 1; }

// Every element of GL2(F_p), for the brute-force centralizer computations.
inline std::vector<Mat2> gl2_elements(long p) {
    require(p >= 2 && p <= 23 && is_prime(p), ErrorCode::ResourceBound, "GL2 enumeration limited to primes p <= 23");
    std::vector<Mat2> out;
    for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b)
            for (long c = 0; c < p; ++c)
                for (long d = 0; d < p; ++d)
                    if (mod(a * d - b * c, p) != 0) out.push_back({a, b, c, d});
    return out;
}

// Closure of the generators under multiplication (a group, since GL2(F_p) is finite).
inline std::set<Mat2> generated_subgroup(const std::vector<Mat2>& gens, long p) {
    std::set<Mat2> group{mat_identity()};
    std::vector<Mat2> frontier{mat_identity()};
    while (!frontier.empty()) {
        std::vector<Mat2> next;
        for (const auto& h : frontier)
            for (const auto& g : gens) {
                Mat2 x = mat_mul(h, g, p);
                if (group.insert(x).second) next.push_back(x);
            }
        frontier = std::move(next);
    }
    return group;
}

enum class ExistencePattern { NonAbelian, UnipotentCyclic, None };

inline std::string to_string(ExistencePattern t) {
    switch (t) {
    case ExistencePattern::NonAbelian: return "non-abelian";
    case ExistencePattern::UnipotentCyclic: return "unipotent-cyclic";
    case ExistencePattern::None: return "none";
    }
    return "?";
}

struct ExistenceResult {
    bool exists = false;
    ExistencePattern pattern = ExistencePattern::None;
    size_t subgroup_order = 0;
    size_t centralizer_order = 0;
    size_t nonsquare_centralizer = 0;  // centralizer elements with non-square determinant
};

// Whether all G-isomorphisms between p-torsion modules with image generated by gens share one
// symplectic type: every centralizer element must have square determinant.
inline ExistenceResult criterion_exists(const std::vector<Mat2>& gens_in, long p) {
    require(p >= 3, ErrorCode::InvalidArgument, "p must be an odd prime");
    require(p <= 23, ErrorCode::ResourceBound, "criterion_exists limited to p <= 23");
    require(is_prime(p), ErrorCode::InvalidArgument, "p must be prime");
    std::vector<Mat2> gens;
    for (const auto& g : gens_in) {
        Mat2 r = mat_reduce(g.a, g.b, g.c, g.d, p);
        require(mat_det(r, p) != 0, ErrorCode::InvalidArgument, "generator not invertible: " + to_string(r));
        gens.push_back(r);
    }
    ExistenceResult res;
    const auto group = generated_subgroup(gens, p);
    res.subgroup_order = group.size();
    for (const auto& m : gl2_elements(p)) {
        bool central = true;
        for (const auto& g : gens)
            if (!mat_commute(m, g, p)) {
                central = false;
                break;
            }
        if (!central) continue;
        ++res.centralizer_order;
        if (!is_square_mod(mat_det(m, p), p)) ++res.nonsquare_centralizer;
    }
    res.exists = res.nonsquare_centralizer == 0;

    bool abelian = true;
    for (size_t i = 0; i < gens.size() && abelian; ++i)
        for (size_t j = i + 1; j < gens.size() && abelian; ++j) abelian = mat_commute(gens[i], gens[j], p);
    if (!abelian) {
        res.pattern = ExistencePattern::NonAbelian;
    } else if (group.size() % static_cast<size_t>(p) == 0) {
        // Abelian of order divisible by p: contained in the centralizer of a transvection, which
        // is cyclic, so the group is generated by some [[a,1],[0,a]] up to conjugation.
        res.pattern = ExistencePattern::UnipotentCyclic;
    }
    return res;
}

}  // namespace symplectic
