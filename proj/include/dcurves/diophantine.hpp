// Copyright (c) 2026 the dcurves authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dcurves/errors.hpp"
#include "dcurves/rational.hpp"

namespace dcurves {

/// Result of checking a candidate Diophantine m-tuple: on success the
/// upper-triangular matrix of witnesses w[i][j] with a_i*a_j + 1 = w^2
/// (i < j), on failure the first offending pair.
struct TupleCheck {
    bool ok = false;
    std::vector<std::vector<Rational>> witnesses; // m x m, entries for i < j
    std::optional<std::pair<std::size_t, std::size_t>> failing_pair;
};

/// Checks that every pairwise product plus one is a rational square.
/// Zero or repeated elements are input errors, distinct from "not a tuple".
inline TupleCheck verify_tuple(const std::vector<Rational>& values) {
    const std::size_t m = values.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (values[i].is_zero())
            throw input_error("tuple element " + std::to_string(i) + " is zero");
        for (std::size_t j = i + 1; j < m; ++j)
            if (values[i] == values[j])
                throw input_error("tuple elements " + std::to_string(i) + " and " +
                                  std::to_string(j) + " are equal (" + values[i].str() + ")");
    }
    TupleCheck out;
    out.witnesses.assign(m, std::vector<Rational>(m, Rational(0)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            auto w = is_square_rational(values[i] * values[j] + Rational(1));
            if (!w) {
                out.failing_pair = {i, j};
                return out;
            }
            out.witnesses[i][j] = *w;
        }
    out.ok = true;
    return out;
}

/// A Diophantine triple {a, b, c} together with its nonnegative square
/// witnesses: ab+1 = q^2, ac+1 = r^2, bc+1 = s^2.
struct DiophantineTriple {
    Rational a, b, c;
    Rational q, r, s;

    static DiophantineTriple make(const Rational& a, const Rational& b, const Rational& c) {
        TupleCheck chk = verify_tuple({a, b, c});
        if (!chk.ok) {
            auto [i, j] = *chk.failing_pair;
            throw input_error("not a Diophantine triple: product of elements " +
                              std::to_string(i) + "," + std::to_string(j) +
                              " plus one is not a square");
        }
        return DiophantineTriple{a, b, c, chk.witnesses[0][1], chk.witnesses[0][2],
                                 chk.witnesses[1][2]};
    }
};

/// The two canonical extension values d = a+b+c+2abc+2qrs and
/// e = a+b+c+2abc-2qrs. d = 0 or e = 0 is allowed but marks the pair
/// degenerate: the curve construction later requires bde != 0.
struct ExtensionPair {
    Rational d, e;

    bool degenerate() const { return d.is_zero() || e.is_zero(); }
};

/// Extends a triple. The six new square conditions hold with closed-form
/// witnesses, e.g. ad+1 = (as+qr)^2; they are asserted here up to squaring.
inline ExtensionPair extend_triple(const DiophantineTriple& t) {
    Rational base = t.a + t.b + t.c + Rational(2) * t.a * t.b * t.c;
    Rational twist = Rational(2) * t.q * t.r * t.s;
    ExtensionPair ext{base + twist, base - twist};

    auto expect_square = [](const Rational& value, const Rational& witness, const char* name) {
        if (value != witness * witness)
            throw std::logic_error(std::string("extension identity failed: ") + name);
    };
    expect_square(t.a * ext.d + Rational(1), t.a * t.s + t.q * t.r, "ad+1 = (as+qr)^2");
    expect_square(t.b * ext.d + Rational(1), t.b * t.r + t.q * t.s, "bd+1 = (br+qs)^2");
    expect_square(t.c * ext.d + Rational(1), t.c * t.q + t.r * t.s, "cd+1 = (cq+rs)^2");
    expect_square(t.a * ext.e + Rational(1), t.a * t.s - t.q * t.r, "ae+1 = (as-qr)^2");
    expect_square(t.b * ext.e + Rational(1), t.b * t.r - t.q * t.s, "be+1 = (br-qs)^2");
    expect_square(t.c * ext.e + Rational(1), t.c * t.q - t.r * t.s, "ce+1 = (cq-rs)^2");
    return ext;
}

/// The parametric triple recipe: b = a*k^2 + 2k, q = a*k + 1,
/// c = 4q(q-a)(b-q), with witnesses r = q^2+ab-2aq and s = q^2+ab-2bq.
/// Degenerate parameter choices are rejected with the vanishing quantity
/// named.
inline DiophantineTriple triple_from_parameters(const Rational& a, const Rational& k) {
    if (a.is_zero()) throw degeneracy_error("triple_from_parameters: a = 0");
    Rational b = a * k * k + Rational(2) * k;
    if (b.is_zero()) throw degeneracy_error("triple_from_parameters: b = 0");
    Rational q = a * k + Rational(1);
    Rational c = Rational(4) * q * (q - a) * (b - q);
    if (c.is_zero()) throw degeneracy_error("triple_from_parameters: c = 0");
    if (a == b) throw degeneracy_error("triple_from_parameters: a = b");
    if (a == c) throw degeneracy_error("triple_from_parameters: a = c");
    if (b == c) throw degeneracy_error("triple_from_parameters: b = c");
    Rational r = q * q + a * b - Rational(2) * a * q;
    Rational s = q * q + a * b - Rational(2) * b * q;
    DiophantineTriple t{a, b, c, abs(q), abs(r), abs(s)};
    // the closed forms must agree with direct verification
    TupleCheck chk = verify_tuple({a, b, c});
    if (!chk.ok || chk.witnesses[0][1] != t.q || chk.witnesses[0][2] != t.r ||
        chk.witnesses[1][2] != t.s)
        throw std::logic_error("triple_from_parameters: closed-form witnesses do not verify");
    return t;
}

} // namespace dcurves
