// Copyright (c) 2026 the dcurves authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dcurves/descent.hpp"
#include "dcurves/elliptic.hpp"
#include "dcurves/family.hpp"
#include "dcurves/poly.hpp"

namespace dcurves {

// ---------------------------------------------------------------------------
// order-4 exclusion
// ---------------------------------------------------------------------------

struct Order4Check {
    std::string label;
    Rational value;
    bool square = false;
    Rational root; // set when square
};

/// A point D with 2D of order two would force one of the six signed
/// expressions +-b(e-d), +-d(e-b), +-e(d-b) to be a perfect square; when
/// none is, no rational point of order four exists.
struct Order4Report {
    bool excluded = false;
    std::array<Order4Check, 6> tests;
};

inline Order4Report exclude_order4(const Rational& b, const Rational& d, const Rational& e) {
    Order4Report rep;
    const std::pair<std::string, Rational> base[3] = {
        {"b(e-d)", b * (e - d)}, {"d(e-b)", d * (e - b)}, {"e(d-b)", e * (d - b)}};
    rep.excluded = true;
    for (int i = 0; i < 3; ++i) {
        for (int sign = 0; sign < 2; ++sign) {
            Order4Check& chk = rep.tests[static_cast<std::size_t>(2 * i + sign)];
            chk.label = (sign ? "-" : "+") + base[i].first;
            chk.value = sign ? -base[i].second : base[i].second;
            auto root = is_square_rational(chk.value);
            chk.square = root.has_value();
            if (root) {
                chk.root = *root;
                rep.excluded = false;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// exact rational root isolation
// ---------------------------------------------------------------------------

namespace detail {

inline Integer rational_floor(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
    return q;
}
inline Integer rational_ceil(const Rational& x) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
    return q;
}

inline std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain{p, p.derivative()};
    while (!chain.back().is_zero()) {
        const Poly& a = chain[chain.size() - 2];
        const Poly& b = chain.back();
        Poly r = -(a % b);
        chain.push_back(r);
    }
    chain.pop_back();
    return chain;
}

inline int sign_variations(const std::vector<Poly>& chain, const Rational& x) {
    int variations = 0, last = 0;
    for (const Poly& q : chain) {
        int s = q.eval(x).sign();
        if (s == 0) continue;
        if (last != 0 && s != last) ++variations;
        last = s;
    }
    return variations;
}

} // namespace detail

/// Complete list of integer roots of a monic integer-coefficient polynomial
/// (every rational root of such a polynomial is an integer). Real roots are
/// isolated exactly with a Sturm chain, bisecting to interval width < 1/4,
/// and the integer candidates at each leaf are checked by exact evaluation.
inline std::vector<Integer> rational_roots_monic_integer(const std::vector<Integer>& coeffs) {
    if (coeffs.size() < 2 || coeffs.back() != 1)
        throw input_error("rational_roots_monic_integer: polynomial must be monic of degree >= 1");
    std::vector<Rational> rc(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) rc[i] = Rational(coeffs[i]);
    Poly p{rc};

    Poly sqfree = p;
    if (p.degree() >= 1) {
        Poly g = poly_gcd(p, p.derivative());
        if (g.degree() > 0) sqfree = (p / g).monic();
    }
    std::vector<Poly> chain = detail::sturm_chain(sqfree);

    Integer bound(1);
    for (const Integer& c : coeffs) {
        Integer a = abs(c);
        if (a > bound) bound = a;
    }
    bound += 1;

    std::set<Integer> found;
    auto try_candidate = [&](const Integer& k) {
        if (p.eval(Rational(k)).is_zero()) found.insert(k);
    };

    const Rational quarter(1, 4);
    const Integer neg_bound = -bound;
    std::vector<std::pair<Rational, Rational>> stack;
    stack.emplace_back(Rational(neg_bound), Rational(bound));
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        int count = detail::sign_variations(chain, lo) - detail::sign_variations(chain, hi);
        if (count <= 0) continue;
        if (hi - lo < quarter) {
            try_candidate(detail::rational_floor(lo));
            try_candidate(detail::rational_ceil(lo));
            try_candidate(detail::rational_floor(hi));
            try_candidate(detail::rational_ceil(hi));
            continue;
        }
        Rational mid = (lo + hi) / Rational(2);
        if (sqfree.eval(mid).is_zero()) {
            // exact hit: for a monic integer polynomial a rational root is an
            // integer, so record it and sidestep by a half unit
            if (mid.is_integer()) found.insert(mid.num());
            Rational half(1, 2);
            if (mid - half > lo) stack.push_back({lo, mid - half});
            if (hi > mid + half) stack.push_back({mid + half, hi});
            continue;
        }
        stack.push_back({lo, mid});
        stack.push_back({mid, hi});
    }
    return std::vector<Integer>(found.begin(), found.end());
}

/// Rational roots of an arbitrary nonzero polynomial over Q: normalize to a
/// monic rational polynomial, rescale x -> X/lambda to reach monic integer
/// coefficients, and pull the integer roots back.
struct MonicIntegerRescaling {
    Integer lambda;
    std::vector<Integer> coeffs; // degree-ascending, monic
};

inline MonicIntegerRescaling monic_integer_rescaling(const Poly& p) {
    if (p.is_zero() || p.degree() < 1)
        throw input_error("monic_integer_rescaling: need degree >= 1");
    Poly m = p.monic();
    Integer lambda(1);
    for (int i = 0; i < m.degree(); ++i)
        mpz_lcm(lambda.get_mpz_t(), lambda.get_mpz_t(),
                m.coeff(static_cast<std::size_t>(i)).den().get_mpz_t());
    const std::size_t n = static_cast<std::size_t>(m.degree());
    std::vector<Integer> out(n + 1);
    out[n] = 1;
    Integer pw(1);
    for (std::size_t i = n; i-- > 0;) {
        pw *= lambda; // lambda^(n-i)
        Rational scaled = m.coeff(i) * Rational(pw);
        if (!scaled.is_integer())
            throw std::logic_error("monic_integer_rescaling: non-integer coefficient");
        out[i] = scaled.num();
    }
    return {lambda, out};
}

inline std::vector<Rational> rational_roots(const Poly& p) {
    MonicIntegerRescaling r = monic_integer_rescaling(p);
    std::vector<Rational> out;
    for (const Integer& k : rational_roots_monic_integer(r.coeffs))
        out.push_back(Rational(k, r.lambda));
    return out;
}

// ---------------------------------------------------------------------------
// order-3 exclusion
// ---------------------------------------------------------------------------

/// Per-generator data for the cubic-multiple check. For the 2-torsion point
/// with product-form x-coordinate -1/xi (the other two parameters mu, nu),
/// a point F with 3F = T would make
///   x^4 - 6 h x^2 - 4 g h x - 3 h^2 = 0,     where
///   g = xi(mu+nu) - 2 mu nu,   h = mu nu (xi-mu)(xi-nu),
/// solvable in Q; the quartic comes out of eliminating x(2F) = x(T - F)
/// with the duplication law. No rational root => no such F.
struct Order3Generator {
    std::string label; // which parameter is singled out: "b", "d" or "e"
    Rational g, h;
    bool degenerate = false;
    Integer lambda;               // x -> X/lambda reaches the monic integer form
    std::vector<Integer> quartic; // degree-ascending, monic
    std::vector<Rational> roots;  // rational roots of the original quartic
};

struct Order3Report {
    bool excluded = false;
    std::array<Order3Generator, 3> generators;
};

inline Order3Generator order3_generator_check(const std::string& label, const Rational& xi,
                                              const Rational& mu, const Rational& nu) {
    Order3Generator gen;
    gen.label = label;
    gen.g = xi * (mu + nu) - Rational(2) * mu * nu;
    gen.h = mu * nu * (xi - mu) * (xi - nu);
    if (gen.g.is_zero() && gen.h.is_zero()) {
        gen.degenerate = true;
        gen.lambda = 1;
        gen.quartic = {Integer(0), Integer(0), Integer(0), Integer(0), Integer(1)};
        gen.roots = {Rational(0)};
        return gen;
    }
    Poly quartic{{-Rational(3) * gen.h * gen.h, -Rational(4) * gen.g * gen.h,
                  -Rational(6) * gen.h, Rational(0), Rational(1)}};
    MonicIntegerRescaling r = monic_integer_rescaling(quartic);
    gen.lambda = r.lambda;
    gen.quartic = r.coeffs;
    for (const Integer& k : rational_roots_monic_integer(r.coeffs))
        gen.roots.push_back(Rational(k, r.lambda));
    return gen;
}

/// Runs the quartic check for all three 2-torsion generators, cycling which
/// of b, d, e is singled out. Excluded iff every quartic has no rational
/// root and none is degenerate.
inline Order3Report exclude_order3(const Rational& b, const Rational& d, const Rational& e) {
    Order3Report rep;
    rep.generators[0] = order3_generator_check("b", b, d, e);
    rep.generators[1] = order3_generator_check("d", d, b, e);
    rep.generators[2] = order3_generator_check("e", e, b, d);
    rep.excluded = true;
    for (const auto& gen : rep.generators)
        if (gen.degenerate || !gen.roots.empty()) rep.excluded = false;
    return rep;
}

// ---------------------------------------------------------------------------
// assembled torsion determination
// ---------------------------------------------------------------------------

/// With all three 2-torsion points rational, the admissible torsion groups
/// are Z/2 x Z/2m for m in {1, 2, 3, 4}. The order-4 exclusion removes
/// m = 2 and m = 4, the order-3 exclusion removes m = 3; both passing pins
/// the torsion to Z/2 x Z/2. A failing exclusion never asserts a larger
/// group -- the conclusion is reported as undetermined with the reopened
/// candidates.
struct TorsionReport {
    ProductForm params{Rational(1), Rational(2), Rational(3)};
    RootForm curve{};
    TorsionSubgroup two_torsion{};
    Order4Report order4;
    Order3Report order3;
    std::string conclusion;
    std::vector<std::string> candidates; // empty when conclusion is definite
};

inline TorsionReport torsion_group(const Rational& b, const Rational& d, const Rational& e) {
    TorsionReport rep;
    rep.params = ProductForm::make(b, d, e);
    rep.curve = to_root_form(rep.params).first;
    rep.two_torsion = TorsionSubgroup::of(rep.curve);
    rep.order4 = exclude_order4(b, d, e);
    rep.order3 = exclude_order3(b, d, e);
    if (rep.order4.excluded && rep.order3.excluded) {
        rep.conclusion = "Z/2 x Z/2";
    } else {
        if (!rep.order4.excluded) {
            rep.candidates.push_back("Z/2 x Z/4");
            rep.candidates.push_back("Z/2 x Z/8");
        }
        if (!rep.order3.excluded) rep.candidates.push_back("Z/2 x Z/6");
        std::sort(rep.candidates.begin(), rep.candidates.end());
        std::string list;
        for (const auto& c : rep.candidates) {
            if (!list.empty()) list += ", ";
            list += c;
        }
        rep.conclusion = "undetermined, candidates {" + list + "}";
    }
    return rep;
}

inline TorsionReport torsion_group(const FamilyInstance& inst) {
    return torsion_group(inst.b, inst.d, inst.e);
}

/// Re-derives the conclusion from the recorded witnesses alone: square
/// checks are re-run on the stored order-4 values and root isolation on the
/// stored quartics; the booleans and the conclusion string must agree.
inline bool verify_torsion_report(const TorsionReport& rep) {
    bool order4_clean = true;
    for (const auto& chk : rep.order4.tests) {
        bool sq = is_square_rational(chk.value).has_value();
        if (sq != chk.square) return false;
        if (sq && chk.root * chk.root != chk.value) return false;
        if (sq) order4_clean = false;
    }
    if (order4_clean != rep.order4.excluded) return false;

    bool order3_clean = true;
    for (const auto& gen : rep.order3.generators) {
        if (gen.degenerate) {
            order3_clean = false;
            continue;
        }
        std::vector<Integer> roots = rational_roots_monic_integer(gen.quartic);
        if (roots.size() != gen.roots.size()) return false;
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (Rational(roots[i], gen.lambda) != gen.roots[i]) return false;
        if (!roots.empty()) order3_clean = false;
    }
    if (order3_clean != rep.order3.excluded) return false;

    bool definite = rep.order3.excluded && rep.order4.excluded;
    if (definite != (rep.conclusion == "Z/2 x Z/2")) return false;
    return true;
}

} // namespace dcurves
