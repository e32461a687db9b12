// Copyright (c) 2026 the dcurves authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#pragma once

#include <string>
#include <vector>

#include "dcurves/diophantine.hpp"
#include "dcurves/errors.hpp"
#include "dcurves/ratfunc.hpp"

namespace dcurves {

/// The quartic-in-k polynomial whose square values give quintuple
/// extensions:
///   F(k,t) = [k^2 (t+2)(2t+1)(2t+3) - 4k (t+1)(2t^2+4t+1)
///             + t(2t+1)(2t+3)]^2 - k^2 (2t+1)(2t+3).
inline BivarPoly build_F() {
    Poly t = Poly::var();
    Poly two_t1 = Poly::from_ints({1, 2});  // 2t+1
    Poly two_t3 = Poly::from_ints({3, 2});  // 2t+3
    Poly disc = two_t1 * two_t3;            // 4t^2+8t+3
    RatFunc B2{Poly::from_ints({2, 1}) * disc};
    RatFunc B1{Poly::from_ints({-4, -4}) * Poly::from_ints({1, 4, 2})}; // -4(t+1)(2t^2+4t+1)
    RatFunc B0{t * disc};
    BivarPoly bracket{std::vector<RatFunc>{B0, B1, B2}};
    BivarPoly correction{std::vector<RatFunc>{RatFunc(), RatFunc(), RatFunc{disc}}};
    return bracket * bracket - correction;
}

/// The computed ansatz: f = alpha k^2 + beta k + gamma kills the low-order
/// terms of F, G is the linear-in-k cofactor of k^3, and k2 is G's root.
struct QuarticAnsatz {
    BivarPoly F, f, G;
    RatFunc alpha, beta, gamma;
    RatFunc k2;
};

/// Derives k2 by coefficient matching rather than transcription:
/// gamma = F(0,t)'s square root t(2t+1)(2t+3), then beta and alpha are
/// chosen to cancel the k^1 and k^2 coefficients of F - f^2, leaving
/// F - f^2 = k^3 G with G linear in k, and k2 = -G(0)/G'(0).
inline QuarticAnsatz derive_k2() {
    QuarticAnsatz out;
    out.F = build_F();
    Poly t = Poly::var();
    out.gamma = RatFunc{t * Poly::from_ints({3, 8, 4})}; // t(2t+1)(2t+3)
    if (out.gamma * out.gamma != out.F.coeff_k(0))
        throw std::logic_error("derive_k2: gamma^2 != F(0,t)");
    RatFunc two_gamma = RatFunc(Rational(2)) * out.gamma;
    out.beta = out.F.coeff_k(1) / two_gamma;
    out.alpha = (out.F.coeff_k(2) - out.beta * out.beta) / two_gamma;
    out.f = BivarPoly{std::vector<RatFunc>{out.gamma, out.beta, out.alpha}};
    BivarPoly diff = out.F - out.f * out.f;
    out.G = diff.shift_down(3); // throws if k^0..k^2 coefficients survive
    if (out.G.degree_k() != 1)
        throw std::logic_error("derive_k2: G is not linear in k");
    if (out.G.coeff_k(1).is_zero())
        throw std::logic_error("derive_k2: leading coefficient of G vanishes");
    out.k2 = -out.G.coeff_k(0) / out.G.coeff_k(1);
    return out;
}

/// The whole family over Q(t): parameters, triple values, witnesses and the
/// extension pair, all as rational functions.
struct FamilySymbolic {
    RatFunc k2;
    RatFunc a, b, c, d, e;
    RatFunc q, r, s;  // triple witnesses, carried with their natural signs
    RatFunc w;        // de + 1 = w^2
    BivarPoly F, f, G;
};

/// Runs the whole construction through the triple recipe with k = k2(t),
/// a = t/k2, q = t+1. The invariants F - f^2 = k^3 G and G(k2) = 0 are
/// rechecked; de+1 must be a square in Q(t).
inline FamilySymbolic family_symbolic() {
    QuarticAnsatz ans = derive_k2();
    FamilySymbolic fam;
    fam.F = ans.F;
    fam.f = ans.f;
    fam.G = ans.G;
    fam.k2 = ans.k2;
    if (!ans.G.subst_k(fam.k2).is_zero())
        throw std::logic_error("family_symbolic: G(k2, t) != 0");

    RatFunc t = RatFunc::var();
    fam.a = t / fam.k2;
    fam.b = fam.a * fam.k2 * fam.k2 + RatFunc(Rational(2)) * fam.k2;
    fam.q = fam.a * fam.k2 + RatFunc(Rational(1)); // = t + 1
    fam.c = RatFunc(Rational(4)) * fam.q * (fam.q - fam.a) * (fam.b - fam.q);
    fam.r = fam.q * fam.q + fam.a * fam.b - RatFunc(Rational(2)) * fam.a * fam.q;
    fam.s = fam.q * fam.q + fam.a * fam.b - RatFunc(Rational(2)) * fam.b * fam.q;

    // triple identities in Q(t)
    if (fam.a * fam.b + RatFunc(Rational(1)) != fam.q * fam.q)
        throw std::logic_error("family_symbolic: ab+1 != q^2");
    if (fam.a * fam.c + RatFunc(Rational(1)) != fam.r * fam.r)
        throw std::logic_error("family_symbolic: ac+1 != r^2");
    if (fam.b * fam.c + RatFunc(Rational(1)) != fam.s * fam.s)
        throw std::logic_error("family_symbolic: bc+1 != s^2");

    RatFunc base = fam.a + fam.b + fam.c +
                   RatFunc(Rational(2)) * fam.a * fam.b * fam.c;
    RatFunc twist = RatFunc(Rational(2)) * fam.q * fam.r * fam.s;
    fam.d = base + twist;
    fam.e = base - twist;

    auto w = rf_is_square(fam.d * fam.e + RatFunc(Rational(1)));
    if (!w)
        throw std::logic_error("family_symbolic: de+1 is not a square in Q(t)");
    fam.w = *w;
    return fam;
}

/// One verified identity: the quantity that must be a square, and its root.
struct SquareIdentity {
    std::string name;
    RatFunc value;
    RatFunc root;
};

/// Verifies the computational core of the rank bound over Q(t): the ten
/// products-plus-one among {a,b,c,d,e} are squares, and the y^2 values of
/// the four candidate points x = 0, a, c, 1/(bde) on
/// y^2 = (bx+1)(dx+1)(ex+1) are squares. Throws naming the first identity
/// that fails (none may).
inline std::vector<SquareIdentity> verify_family_identities(const FamilySymbolic& fam) {
    std::vector<SquareIdentity> out;
    const RatFunc one(Rational(1));
    auto check = [&](const std::string& name, const RatFunc& value) {
        auto root = rf_is_square(value);
        if (!root)
            throw std::logic_error("family identity failed: " + name + " is not a square in Q(t)");
        out.push_back({name, value, *root});
    };

    const std::pair<std::string, RatFunc> vals[5] = {
        {"a", fam.a}, {"b", fam.b}, {"c", fam.c}, {"d", fam.d}, {"e", fam.e}};
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            check(vals[i].first + vals[j].first + "+1", vals[i].second * vals[j].second + one);

    auto y2_at = [&](const RatFunc& x) {
        return (fam.b * x + one) * (fam.d * x + one) * (fam.e * x + one);
    };
    check("y^2 at x=0", y2_at(RatFunc()));
    check("y^2 at x=a", y2_at(fam.a));
    check("y^2 at x=c", y2_at(fam.c));
    check("y^2 at x=1/(bde)", y2_at(one / (fam.b * fam.d * fam.e)));
    return out;
}

/// A specialization of the family at a rational parameter value: a full
/// rational Diophantine quintuple {a,b,c,d,e} with b*d*e != 0.
struct FamilyInstance {
    Rational t;
    Rational a, b, c, d, e;
    Rational w; // de+1 = w^2
    DiophantineTriple triple;
    ExtensionPair extension;
};

/// Exact specialization at t0. Poles raise pole_error; a vanishing value,
/// a collision among {b,d,e} or bde = 0 raises degeneracy_error naming t0
/// and the quantity.
inline FamilyInstance instantiate(const FamilySymbolic& fam, const Rational& t0) {
    auto eval_or_pole = [&](const RatFunc& f, const char* name) {
        try {
            return f.eval(t0);
        } catch (const pole_error& err) {
            throw pole_error(std::string(name) + ": " + err.what());
        }
    };
    Rational a = eval_or_pole(fam.a, "a");
    Rational b = eval_or_pole(fam.b, "b");
    Rational c = eval_or_pole(fam.c, "c");
    Rational d = eval_or_pole(fam.d, "d");
    Rational e = eval_or_pole(fam.e, "e");

    auto degenerate = [&](const std::string& what) {
        throw degeneracy_error("degenerate instance at t = " + t0.str() + ": " + what);
    };
    const std::pair<const char*, Rational> named[5] = {
        {"a", a}, {"b", b}, {"c", c}, {"d", d}, {"e", e}};
    for (const auto& [name, v] : named)
        if (v.is_zero()) degenerate(std::string(name) + " = 0");
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (named[i].second == named[j].second)
                degenerate(std::string(named[i].first) + " = " + named[j].first);

    FamilyInstance inst{t0, a, b, c, d, e, Rational(0),
                        DiophantineTriple::make(a, b, c), ExtensionPair{d, e}};

    // full quintuple check, including de+1 = w^2
    TupleCheck chk = verify_tuple({a, b, c, d, e});
    if (!chk.ok)
        throw std::logic_error("instantiate: quintuple identity failed at t = " + t0.str());
    inst.w = chk.witnesses[3][4];
    return inst;
}

} // namespace dcurves
