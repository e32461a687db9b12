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

#include "dcurves/errors.hpp"
#include "dcurves/poly.hpp"

namespace dcurves {

/// Element of Q(t) as a reduced fraction num/den with gcd(num, den) = 1 and
/// a monic denominator; the sign lives in the numerator. Zero is 0/1.
/// Equality is therefore structural.
class RatFunc {
public:
    RatFunc() : num_(), den_(Rational(1)) {}
    RatFunc(const Rational& c) : num_(c), den_(Rational(1)) {}
    RatFunc(int c) : RatFunc(Rational(c)) {}
    RatFunc(const Poly& p) : num_(p), den_(Rational(1)) {}
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        normalize();
    }

    static RatFunc var() { return RatFunc(Poly::var()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RatFunc operator-(const RatFunc& a) {
        RatFunc r;
        r.num_ = -a.num_;
        r.den_ = a.den_;
        return r;
    }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& b) { *this = *this + b; return *this; }
    RatFunc& operator-=(const RatFunc& b) { *this = *this - b; return *this; }
    RatFunc& operator*=(const RatFunc& b) { *this = *this * b; return *this; }
    RatFunc& operator/=(const RatFunc& b) { *this = *this / b; return *this; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    /// Exact value at t0; throws pole_error when the denominator vanishes.
    Rational eval(const Rational& t0) const {
        Rational d = den_.eval(t0);
        if (d.is_zero())
            throw pole_error("pole at t = " + t0.str() + " (denominator " + den_.str() + ")");
        return num_.eval(t0) / d;
    }

    RatFunc pow(unsigned e) const {
        RatFunc acc(Rational(1));
        RatFunc base = *this;
        while (e) {
            if (e & 1u) acc *= base;
            base *= base;
            e >>= 1u;
        }
        return acc;
    }

    std::string str(const std::string& var = "t") const {
        if (den_ == Poly(Rational(1))) return num_.str(var);
        return "(" + num_.str(var) + ") / (" + den_.str(var) + ")";
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly(Rational(1));
            return;
        }
        Poly g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        Rational lead = den_.lead();
        if (lead != Rational(1)) {
            Rational inv = Rational(1) / lead;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Poly num_;
    Poly den_;
};

/// Square root in Q(t) when one exists: with the denominator monic and the
/// fraction reduced, r is a square exactly when num and den are both squares
/// in Q[t]. Returns the root whose numerator has a positive leading
/// coefficient; nullopt otherwise.
inline std::optional<RatFunc> rf_is_square(const RatFunc& r) {
    if (r.is_zero()) return RatFunc();
    auto sn = poly_sqrt(r.num());
    if (!sn) return std::nullopt;
    auto sd = poly_sqrt(r.den());
    if (!sd) return std::nullopt;
    return RatFunc(*sn, *sd);
}

/// Polynomial in k with coefficients in Q(t); the shape needed for the
/// quartic-in-k identities. Coefficients are degree-ascending in k.
class BivarPoly {
public:
    BivarPoly() = default;
    BivarPoly(std::vector<RatFunc> coeffs) : c_(std::move(coeffs)) { trim(); }
    BivarPoly(const RatFunc& c) { c_.push_back(c); trim(); }

    bool is_zero() const { return c_.empty(); }
    int degree_k() const { return static_cast<int>(c_.size()) - 1; }

    /// Coefficient of k^i (zero beyond the degree).
    RatFunc coeff_k(std::size_t i) const {
        return i < c_.size() ? c_[i] : RatFunc();
    }

    friend BivarPoly operator-(const BivarPoly& p) {
        std::vector<RatFunc> c;
        c.reserve(p.c_.size());
        for (const auto& x : p.c_) c.push_back(-x);
        return BivarPoly(std::move(c));
    }
    friend BivarPoly operator+(const BivarPoly& a, const BivarPoly& b) {
        std::vector<RatFunc> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff_k(i) + b.coeff_k(i);
        return BivarPoly(std::move(c));
    }
    friend BivarPoly operator-(const BivarPoly& a, const BivarPoly& b) { return a + (-b); }
    friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
        if (a.is_zero() || b.is_zero()) return BivarPoly();
        std::vector<RatFunc> c(a.c_.size() + b.c_.size() - 1, RatFunc());
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return BivarPoly(std::move(c));
    }

    friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const BivarPoly& a, const BivarPoly& b) { return !(a == b); }

    /// Substitute a rational function for k.
    RatFunc subst_k(const RatFunc& k) const {
        RatFunc acc;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * k + c_[i];
        return acc;
    }

    /// Divide by k^e; requires the low-order coefficients to vanish.
    BivarPoly shift_down(std::size_t e) const {
        for (std::size_t i = 0; i < e && i < c_.size(); ++i)
            if (!c_[i].is_zero())
                throw std::domain_error("BivarPoly: not divisible by k^" + std::to_string(e));
        std::vector<RatFunc> c(c_.begin() + std::min(e, c_.size()), c_.end());
        return BivarPoly(std::move(c));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<RatFunc> c_;
};

} // namespace dcurves
