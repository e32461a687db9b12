// Copyright (c) 2026 the dcurves authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#pragma once

#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dcurves/rational.hpp"

namespace dcurves {

/// Univariate polynomial over Q. Coefficients are stored degree-ascending
/// with trailing zeros stripped; the zero polynomial has no coefficients.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c) { c_.push_back(c); trim(); }
    Poly(int c) : Poly(Rational(c)) {}
    Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    static Poly var() { return Poly({Rational(0), Rational(1)}); }

    /// Coefficients given as integers, degree-ascending.
    static Poly from_ints(std::initializer_list<long> coeffs) {
        std::vector<Rational> c;
        for (long v : coeffs) c.emplace_back(v);
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1 by convention
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const Rational& lead() const {
        if (is_zero()) throw std::domain_error("Poly: leading coefficient of zero");
        return c_.back();
    }

    Rational coeff(std::size_t i) const {
        return i < c_.size() ? c_[i] : Rational(0);
    }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_monic() const { return !is_zero() && lead() == Rational(1); }

    friend Poly operator-(const Poly& p) {
        std::vector<Rational> c;
        c.reserve(p.c_.size());
        for (const auto& x : p.c_) c.push_back(-x);
        return Poly(std::move(c));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }

    friend Poly operator*(const Poly& a, const Rational& s) {
        std::vector<Rational> c;
        c.reserve(a.c_.size());
        for (const auto& x : a.c_) c.push_back(x * s);
        return Poly(std::move(c));
    }
    friend Poly operator*(const Rational& s, const Poly& a) { return a * s; }

    Poly& operator+=(const Poly& b) { *this = *this + b; return *this; }
    Poly& operator-=(const Poly& b) { *this = *this - b; return *this; }
    Poly& operator*=(const Poly& b) { *this = *this * b; return *this; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Rational eval(const Rational& t) const {
        Rational acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<Rational> c(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rational(static_cast<long>(i));
        return Poly(std::move(c));
    }

    Poly pow(unsigned e) const {
        Poly acc(Rational(1));
        Poly base = *this;
        while (e) {
            if (e & 1u) acc *= base;
            base *= base;
            e >>= 1u;
        }
        return acc;
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    friend std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
        Poly r = a;
        std::vector<Rational> q;
        if (r.degree() >= b.degree())
            q.assign(static_cast<std::size_t>(r.degree() - b.degree()) + 1, Rational(0));
        while (!r.is_zero() && r.degree() >= b.degree()) {
            std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
            Rational f = r.lead() / b.lead();
            q[shift] = f;
            std::vector<Rational> sub(shift + b.c_.size(), Rational(0));
            for (std::size_t i = 0; i < b.c_.size(); ++i) sub[shift + i] = b.c_[i] * f;
            r = r - Poly(std::move(sub));
        }
        return {Poly(std::move(q)), r};
    }

    friend Poly operator/(const Poly& a, const Poly& b) { return divrem(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).second; }

    Poly monic() const {
        if (is_zero()) throw std::domain_error("Poly: monic of zero");
        return *this * (Rational(1) / lead());
    }

    /// Integer-coefficient image: this * (common denominator / numerator gcd),
    /// with positive leading coefficient. Returns {integer coeffs, scale} so
    /// that  this = Poly(ints) * scale.
    std::pair<std::vector<Integer>, Rational> primitive_integer() const {
        if (is_zero()) return {{}, Rational(0)};
        Integer den_lcm(1);
        for (const auto& x : c_)
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.den().get_mpz_t());
        std::vector<Integer> ints(c_.size());
        Integer num_gcd(0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            ints[i] = c_[i].num() * (den_lcm / c_[i].den());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), ints[i].get_mpz_t());
        }
        int s = sgn(ints.back());
        if (s < 0) num_gcd = -num_gcd;
        for (auto& v : ints) v /= num_gcd;
        return {ints, Rational(num_gcd, den_lcm)};
    }

    std::string str(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            if (!out.empty()) out += c_[i].sign() > 0 ? " + " : " - ";
            else if (c_[i].sign() < 0) out += "-";
            Rational a = abs(c_[i]);
            bool unit = a == Rational(1) && i > 0;
            if (!unit) out += a.str();
            if (i > 0) {
                if (!unit) out += "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

namespace detail {

inline std::vector<Integer> int_poly_primitive(std::vector<Integer> p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    if (p.empty()) return p;
    Integer g(0);
    for (const auto& v : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (sgn(p.back()) < 0) g = -g;
    for (auto& v : p) v /= g;
    return p;
}

// pseudo-remainder of a by b (b nonzero), both integer polynomials
inline std::vector<Integer> int_poly_prem(std::vector<Integer> a, const std::vector<Integer>& b) {
    const Integer& lb = b.back();
    auto deg = [](const std::vector<Integer>& p) { return static_cast<int>(p.size()) - 1; };
    while (deg(a) >= deg(b) && !a.empty()) {
        Integer f = a.back();
        std::size_t shift = static_cast<std::size_t>(deg(a) - deg(b));
        for (auto& v : a) v *= lb;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

} // namespace detail

/// Monic greatest common divisor, computed with a primitive pseudo-remainder
/// sequence over Z to keep coefficient growth in check.
inline Poly poly_gcd(const Poly& p, const Poly& q) {
    if (p.is_zero() && q.is_zero())
        throw std::domain_error("poly_gcd: both arguments zero");
    if (p.is_zero()) return q.monic();
    if (q.is_zero()) return p.monic();
    std::vector<Integer> a = detail::int_poly_primitive(p.primitive_integer().first);
    std::vector<Integer> b = detail::int_poly_primitive(q.primitive_integer().first);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        std::vector<Integer> r = detail::int_poly_primitive(detail::int_poly_prem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    std::vector<Rational> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = Rational(a[i]);
    return Poly(std::move(c)).monic();
}

/// Exact polynomial square root, by matching coefficients from the top
/// degree down; fails fast on odd degree or a non-square obstruction.
/// The returned root has a positive leading coefficient.
inline std::optional<Poly> poly_sqrt(const Poly& p) {
    if (p.is_zero()) return Poly();
    if (p.degree() % 2 != 0) return std::nullopt;
    std::size_t m = static_cast<std::size_t>(p.degree()) / 2;
    auto lead_root = is_square_rational(p.lead());
    if (!lead_root) return std::nullopt;
    std::vector<Rational> s(m + 1, Rational(0));
    s[m] = *lead_root;
    Rational two_lead = Rational(2) * s[m];
    for (std::size_t k = m; k-- > 0;) {
        // coefficient of t^(m+k) in s^2 must equal p's; the only term with an
        // unknown factor is 2*s[m]*s[k], every other (i, m+k-i) has both
        // indices strictly between k and m
        Rational known(0);
        for (std::size_t i = k + 1; i < m; ++i)
            known += s[i] * s[m + k - i];
        s[k] = (p.coeff(m + k) - known) / two_lead;
    }
    Poly root{std::vector<Rational>(s.begin(), s.end())};
    if (root * root != p) return std::nullopt;
    return root;
}

} // namespace dcurves
