// Copyright (c) 2026 the dcurves authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dcurves/errors.hpp"
#include "dcurves/rational.hpp"

namespace dcurves {

/// y^2 = (b x + 1)(d x + 1)(e x + 1) with b, d, e nonzero and pairwise
/// distinct (the nonsingularity condition in this shape).
struct ProductForm {
    Rational b, d, e;

    static ProductForm make(const Rational& b, const Rational& d, const Rational& e) {
        if (b.is_zero() || d.is_zero() || e.is_zero())
            throw degeneracy_error("ProductForm: coefficient is zero");
        if (b == d || b == e || d == e)
            throw degeneracy_error("ProductForm: coefficients not pairwise distinct");
        return ProductForm{b, d, e};
    }
};

/// Y^2 = (X - r1)(X - r2)(X - r3) with pairwise distinct rational roots,
/// together with the expanded long coefficients Y^2 = X^3 + A X^2 + B X + C.
struct RootForm {
    Rational r1, r2, r3;
    Rational A, B, C;

    static RootForm make(const Rational& r1, const Rational& r2, const Rational& r3) {
        if (r1 == r2 || r1 == r3 || r2 == r3)
            throw degeneracy_error("RootForm: repeated root (singular curve)");
        RootForm c{r1, r2, r3, Rational(0), Rational(0), Rational(0)};
        c.A = -(r1 + r2 + r3);
        c.B = r1 * r2 + r1 * r3 + r2 * r3;
        c.C = -(r1 * r2 * r3);
        return c;
    }

    std::array<Rational, 3> roots() const { return {r1, r2, r3}; }

    Rational rhs(const Rational& x) const {
        return ((x + A) * x + B) * x + C;
    }

    friend bool operator==(const RootForm& a, const RootForm& b) {
        return a.r1 == b.r1 && a.r2 == b.r2 && a.r3 == b.r3;
    }
};

/// (x, y) -> (u^2 f x, u^3 f y). With f = bde this carries the product form
/// to root form; with f = 1 it rescales between root-form models.
struct ScalingMap {
    Rational u;
    Rational x_factor;

    static ScalingMap make(const Rational& u, const Rational& x_factor) {
        if (u.is_zero() || x_factor.is_zero())
            throw degeneracy_error("ScalingMap: zero scale");
        return ScalingMap{u, x_factor};
    }

    Rational apply_x(const Rational& x) const { return u * u * x_factor * x; }
    Rational apply_y(const Rational& y) const { return u * u * u * x_factor * y; }

    ScalingMap inverse() const {
        // (u^2 f)^-1 = v^2 g with v = 1/u, g = 1/f
        return ScalingMap{Rational(1) / u, Rational(1) / x_factor};
    }
    ScalingMap compose_after(const ScalingMap& first) const {
        return ScalingMap{u * first.u, x_factor * first.x_factor};
    }
};

/// With X = bde x, Y = bde y the product form becomes
/// Y^2 = (X + de)(X + be)(X + bd).
inline std::pair<RootForm, ScalingMap> to_root_form(const ProductForm& c) {
    Rational bde = c.b * c.d * c.e;
    RootForm root = RootForm::make(-(c.d * c.e), -(c.b * c.e), -(c.b * c.d));
    return {root, ScalingMap::make(Rational(1), bde)};
}

namespace detail {

inline void factorize_into(Integer n, unsigned mult, std::map<Integer, unsigned>& out) {
    if (n < 0) n = -n;
    if (n <= 1) return;
    for (Integer p(2); p * p <= n && p < 100000; p = p == 2 ? Integer(3) : p + 2) {
        while (n % p == 0) {
            out[p] += mult;
            n /= p;
        }
    }
    if (n == 1) return;
    std::vector<Integer> pending{n};
    while (!pending.empty()) {
        Integer m = pending.back();
        pending.pop_back();
        if (m == 1) continue;
        if (mpz_probab_prime_p(m.get_mpz_t(), 40)) {
            out[m] += mult;
            continue;
        }
        if (mpz_perfect_power_p(m.get_mpz_t())) {
            for (unsigned long k = 2; k <= mpz_sizeinbase(m.get_mpz_t(), 2); ++k) {
                Integer root, rem;
                mpz_rootrem(root.get_mpz_t(), rem.get_mpz_t(), m.get_mpz_t(), k);
                if (rem == 0) {
                    factorize_into(root, mult * static_cast<unsigned>(k), out);
                    m = 1;
                    break;
                }
            }
            if (m == 1) continue;
        }
        // Pollard rho (Brent variant) to split a known composite
        Integer d(1);
        for (Integer c0(1); d == 1 || d == m; c0 += 1) {
            Integer x(2), y(2), diff;
            d = 1;
            while (d == 1) {
                x = (x * x + c0) % m;
                y = (y * y + c0) % m;
                y = (y * y + c0) % m;
                diff = x > y ? x - y : y - x;
                if (diff == 0) break; // cycle, retry with next c0
                mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
            }
            if (diff == 0) d = 1;
        }
        pending.push_back(d);
        pending.push_back(m / d);
    }
}

/// Least positive integer u with n | u^2.
inline Integer least_square_clearing(const Integer& n) {
    std::map<Integer, unsigned> factors;
    factorize_into(n, 1, factors);
    Integer u(1);
    for (const auto& [p, e] : factors) {
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), (e + 1) / 2);
        u *= pe;
    }
    return u;
}

} // namespace detail

/// Rescales by the least positive integer u for which all three u^2-scaled
/// roots are integers.
inline std::pair<RootForm, ScalingMap> to_integral_model(const RootForm& c) {
    Integer lcm(1);
    for (const auto& r : {c.r1, c.r2, c.r3})
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.den().get_mpz_t());
    Integer u = detail::least_square_clearing(lcm);
    ScalingMap map = ScalingMap::make(Rational(u), Rational(1));
    RootForm scaled = RootForm::make(map.apply_x(c.r1), map.apply_x(c.r2), map.apply_x(c.r3));
    return {scaled, map};
}

/// Point of a root-form curve: infinity or an affine pair that satisfies
/// the equation exactly.
struct CurvePoint {
    bool inf = true;
    Rational x, y;

    static CurvePoint infinity() { return CurvePoint{}; }
    static CurvePoint affine(const Rational& x, const Rational& y) {
        return CurvePoint{false, x, y};
    }

    bool is_two_torsion() const { return !inf && y.is_zero(); }

    friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
        if (a.inf || b.inf) return a.inf == b.inf;
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const CurvePoint& a, const CurvePoint& b) { return !(a == b); }
    friend bool operator<(const CurvePoint& a, const CurvePoint& b) {
        if (a.inf != b.inf) return a.inf; // infinity sorts first
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

inline bool on_curve(const RootForm& c, const CurvePoint& p) {
    if (p.inf) return true;
    return p.y * p.y == c.rhs(p.x);
}

/// Checked constructor: throws input_error for an off-curve pair.
inline CurvePoint make_point(const RootForm& c, const Rational& x, const Rational& y) {
    CurvePoint p = CurvePoint::affine(x, y);
    if (!on_curve(c, p))
        throw input_error("point (" + x.str() + ", " + y.str() + ") is not on the curve");
    return p;
}

inline CurvePoint neg(const CurvePoint& p) {
    if (p.inf) return p;
    return CurvePoint::affine(p.x, -p.y);
}

/// Chord-tangent addition with exact rational slopes. Both inputs must lie
/// on c; violations are reported as input errors (mixed-curve usage).
inline CurvePoint add(const RootForm& c, const CurvePoint& p, const CurvePoint& q) {
    if (!on_curve(c, p) || !on_curve(c, q))
        throw input_error("add: point not on this curve");
    if (p.inf) return q;
    if (q.inf) return p;
    Rational lambda;
    if (p.x == q.x) {
        if (p.y != q.y || p.y.is_zero()) return CurvePoint::infinity();
        // tangent: (3x^2 + 2Ax + B) / (2y)
        lambda = (Rational(3) * p.x * p.x + Rational(2) * c.A * p.x + c.B) /
                 (Rational(2) * p.y);
    } else {
        lambda = (q.y - p.y) / (q.x - p.x);
    }
    Rational x3 = lambda * lambda - c.A - p.x - q.x;
    Rational y3 = lambda * (p.x - x3) - p.y;
    return CurvePoint::affine(x3, y3);
}

inline CurvePoint sub(const RootForm& c, const CurvePoint& p, const CurvePoint& q) {
    return add(c, p, neg(q));
}

/// n-fold sum by double-and-add; mul(0, P) = infinity, mul(-n, P) = -mul(n, P).
inline CurvePoint mul(const RootForm& c, long n, const CurvePoint& p) {
    if (n == 0 || p.inf) return CurvePoint::infinity();
    CurvePoint base = n < 0 ? neg(p) : p;
    unsigned long k = n < 0 ? -static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
    CurvePoint acc = CurvePoint::infinity();
    while (k) {
        if (k & 1ul) acc = add(c, acc, base);
        if (k >>= 1ul) base = add(c, base, base);
    }
    return acc;
}

/// All rational points Q with 2Q = P. For affine P this solves
/// x - r_i = s_i^2 for each root; the candidate halves have
/// x(Q) = x + s1 s2 + s1 s3 + s2 s3 over the sign choices with
/// s1 s2 s3 = y, and each survivor is checked by doubling. Empty result
/// means P is not in 2E(Q). halve(infinity) is the 2-torsion subgroup.
inline std::vector<CurvePoint> halve(const RootForm& c, const CurvePoint& p) {
    std::vector<CurvePoint> out;
    if (p.inf) {
        out = {CurvePoint::infinity(), CurvePoint::affine(c.r1, Rational(0)),
               CurvePoint::affine(c.r2, Rational(0)), CurvePoint::affine(c.r3, Rational(0))};
        std::sort(out.begin(), out.end());
        return out;
    }
    if (!on_curve(c, p)) throw input_error("halve: point not on this curve");
    std::array<Rational, 3> s;
    const std::array<Rational, 3> roots = c.roots();
    for (int i = 0; i < 3; ++i) {
        auto root = is_square_rational(p.x - roots[i]);
        if (!root) return out;
        s[i] = *root;
    }
    for (int mask = 0; mask < 8; ++mask) {
        Rational s1 = (mask & 1) ? -s[0] : s[0];
        Rational s2 = (mask & 2) ? -s[1] : s[1];
        Rational s3 = (mask & 4) ? -s[2] : s[2];
        if (s1 * s2 * s3 != p.y) continue;
        Rational xq = p.x + s1 * s2 + s1 * s3 + s2 * s3;
        auto yq = is_square_rational(c.rhs(xq));
        if (!yq) continue;
        for (const Rational& y : {*yq, -*yq}) {
            CurvePoint cand = CurvePoint::affine(xq, y);
            if (mul(c, 2, cand) == p) out.push_back(cand);
            if (y.is_zero()) break;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace dcurves
