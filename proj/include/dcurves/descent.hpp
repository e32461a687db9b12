// Copyright (c) 2026 the dcurves authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "dcurves/elliptic.hpp"
#include "dcurves/errors.hpp"

namespace dcurves {

/// The rational 2-torsion subgroup {O, (r1,0), (r2,0), (r3,0)}.
struct TorsionSubgroup {
    std::array<CurvePoint, 4> pts;

    static TorsionSubgroup of(const RootForm& c) {
        return TorsionSubgroup{{CurvePoint::infinity(),
                                CurvePoint::affine(c.r1, Rational(0)),
                                CurvePoint::affine(c.r2, Rational(0)),
                                CurvePoint::affine(c.r3, Rational(0))}};
    }
};

/// Result of the 2-descent membership test: a point lies in 2E(Q) exactly
/// when x - r1 and x - r2 are rational squares (the third factor is then a
/// square automatically, their product with x - r3 being y^2). On a
/// negative answer, witness_index in {0, 1} names a non-square coordinate.
struct In2EResult {
    bool in_2e;
    int witness_index = -1;      // 0 -> x - r1, 1 -> x - r2
    Rational witness_value;      // the non-square value itself
};

inline In2EResult in_2E(const CurvePoint& p, const RootForm& c) {
    if (p.inf) return {true, -1, Rational(0)};
    if (!on_curve(c, p)) throw input_error("in_2E: point not on this curve");
    Rational v1 = p.x - c.r1;
    if (!is_square_rational(v1)) return {false, 0, v1};
    Rational v2 = p.x - c.r2;
    if (!is_square_rational(v2)) return {false, 1, v2};
    return {true, -1, Rational(0)};
}

/// One swept combination: X = sum of the eps-selected points plus the
/// torsion element, with the witness that X is not in 2E(Q).
struct CertEntry {
    std::uint32_t eps = 0;   // bit i set -> point i participates
    int torsion_index = 0;   // 0 = O, 1..3 = (r_i, 0)
    int witness_index = 0;   // which of x-r1 / x-r2 is not a square
    Rational combo_x;        // x-coordinate of the combination point
};

/// Machine-checkable record that n points are independent modulo torsion:
/// every combination eps.P + T with (eps, T) != (0, O) fails the 2-descent
/// membership test, which by the parity-descent argument (valid on curves
/// whose rational torsion is Z/2 x Z/2) forces independence, hence
/// rank >= n.
struct IndependenceCertificate {
    RootForm curve;
    std::vector<CurvePoint> points;          // the certified (possibly refined) set
    std::vector<CurvePoint> original_points; // input set before refinement
    TorsionSubgroup torsion;
    std::vector<CertEntry> entries;          // 4 * 2^n - 1 of them, canonical order
    int refinement_rounds = 0;
};

/// A combination found inside 2E(Q) (or equal to O): certification is
/// impossible for this generating set as given.
struct SweepFailure {
    std::uint32_t eps = 0;
    int torsion_index = 0;
    CurvePoint combo;
    bool is_torsion_combo = false; // combination itself landed in {O, 2-torsion}
};

using CertifyResult = std::variant<IndependenceCertificate, SweepFailure>;

namespace detail {

/// All 2^n epsilon-sums, computed incrementally in Gray-code order so each
/// step costs one addition.
inline std::vector<CurvePoint> epsilon_sums(const std::vector<CurvePoint>& pts,
                                            const RootForm& c) {
    const std::size_t n = pts.size();
    std::vector<CurvePoint> sums(std::size_t(1) << n, CurvePoint::infinity());
    for (std::uint32_t i = 1; i < sums.size(); ++i) {
        std::uint32_t g = i ^ (i >> 1);
        std::uint32_t prev = (i - 1) ^ ((i - 1) >> 1);
        std::uint32_t bit = g ^ prev;
        int j = 0;
        while (!((bit >> j) & 1u)) ++j;
        const CurvePoint& step = pts[static_cast<std::size_t>(j)];
        sums[g] = ((g >> j) & 1u) ? add(c, sums[prev], step)
                                  : sub(c, sums[prev], step);
    }
    return sums;
}

inline void validate_sweep_input(const std::vector<CurvePoint>& points, const RootForm& c) {
    if (points.empty()) throw input_error("certify: empty point list");
    if (points.size() > 20) throw input_error("certify: more than 20 points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].inf)
            throw input_error("certify: point " + std::to_string(i) + " is infinity");
        if (!on_curve(c, points[i]))
            throw input_error("certify: point " + std::to_string(i) + " is not on the curve");
        if (points[i].is_two_torsion())
            throw input_error("certify: point " + std::to_string(i) + " is 2-torsion");
    }
}

} // namespace detail

/// Sweeps all combinations eps.P + T, (eps, T) != (0, O). A clean sweep
/// yields the certificate; otherwise the first failing combination in
/// canonical (eps, torsion) order is returned. Cells are independent, so
/// `jobs` worker threads may split the sweep.
inline CertifyResult certify_independence(const std::vector<CurvePoint>& points,
                                          const RootForm& c, int jobs = 1) {
    detail::validate_sweep_input(points, c);
    const std::size_t n = points.size();
    const TorsionSubgroup torsion = TorsionSubgroup::of(c);
    const std::vector<CurvePoint> sums = detail::epsilon_sums(points, c);
    const std::size_t cells = sums.size() * 4;

    std::vector<CertEntry> entries(cells);
    std::vector<std::optional<SweepFailure>> failures;
    int workers = jobs < 1 ? 1 : jobs;
    if (static_cast<std::size_t>(workers) > cells) workers = static_cast<int>(cells);
    failures.assign(static_cast<std::size_t>(workers), std::nullopt);

    auto run_range = [&](std::size_t lo, std::size_t hi, std::optional<SweepFailure>& fail) {
        for (std::size_t cell = lo; cell < hi; ++cell) {
            std::uint32_t eps = static_cast<std::uint32_t>(cell >> 2);
            int t_idx = static_cast<int>(cell & 3);
            if (eps == 0 && t_idx == 0) continue;
            CurvePoint combo = add(c, sums[eps], torsion.pts[static_cast<std::size_t>(t_idx)]);
            if (combo.inf) {
                if (!fail || fail->eps > eps ||
                    (fail->eps == eps && fail->torsion_index > t_idx))
                    fail = SweepFailure{eps, t_idx, combo, true};
                continue;
            }
            In2EResult r = in_2E(combo, c);
            if (r.in_2e) {
                if (!fail || fail->eps > eps ||
                    (fail->eps == eps && fail->torsion_index > t_idx))
                    fail = SweepFailure{eps, t_idx, combo, combo.is_two_torsion()};
                continue;
            }
            entries[cell] = CertEntry{eps, t_idx, r.witness_index, combo.x};
        }
    };

    if (workers == 1) {
        run_range(0, cells, failures[0]);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (cells + static_cast<std::size_t>(workers) - 1) /
                            static_cast<std::size_t>(workers);
        for (int w = 0; w < workers; ++w) {
            std::size_t lo = static_cast<std::size_t>(w) * chunk;
            std::size_t hi = std::min(cells, lo + chunk);
            pool.emplace_back([&, lo, hi, w]() { run_range(lo, hi, failures[static_cast<std::size_t>(w)]); });
        }
        for (auto& th : pool) th.join();
    }

    std::optional<SweepFailure> first;
    for (const auto& f : failures)
        if (f && (!first || f->eps < first->eps ||
                  (f->eps == first->eps && f->torsion_index < first->torsion_index)))
            first = f;
    if (first) return *first;

    IndependenceCertificate cert;
    cert.curve = c;
    cert.points = points;
    cert.original_points = points;
    cert.torsion = torsion;
    cert.entries.reserve(cells - 1);
    for (std::size_t cell = 1; cell < cells; ++cell) cert.entries.push_back(entries[cell]);
    return cert;
}

/// Outcome of refine_and_certify: either a certificate for the refined set
/// or the last failure after max_rounds.
struct RefineResult {
    std::optional<IndependenceCertificate> certificate;
    std::vector<CurvePoint> points;   // refined set (certificate's, on success)
    int rounds = 0;
    std::optional<SweepFailure> failure;
};

/// When the sweep finds X = eps.P + T inside 2E(Q) with some eps_j = 1,
/// replaces P_j by a half of X (a valid generator exchange modulo
/// 2E(Q) + torsion) and retries, up to max_rounds times. A combination that
/// lands in the torsion subgroup itself is a genuine dependence and is not
/// refinable.
inline RefineResult refine_and_certify(const std::vector<CurvePoint>& points,
                                       const RootForm& c, int max_rounds, int jobs = 1) {
    RefineResult out;
    out.points = points;
    for (int round = 0; round <= max_rounds; ++round) {
        CertifyResult r = certify_independence(out.points, c, jobs);
        if (std::holds_alternative<IndependenceCertificate>(r)) {
            out.certificate = std::get<IndependenceCertificate>(r);
            out.certificate->original_points = points;
            out.certificate->refinement_rounds = round;
            out.rounds = round;
            out.points = out.certificate->points;
            return out;
        }
        SweepFailure fail = std::get<SweepFailure>(r);
        out.failure = fail;
        out.rounds = round;
        if (fail.eps == 0 || fail.is_torsion_combo) return out; // genuine dependence
        if (round == max_rounds) return out;
        std::vector<CurvePoint> halves = halve(c, fail.combo);
        if (halves.empty())
            throw std::logic_error("refine_and_certify: in_2E accepted a combination "
                                   "that has no rational half");
        // deterministic choice: halve() returns sorted points
        CurvePoint replacement = halves.front();
        int j = 0;
        while (!((fail.eps >> j) & 1u)) ++j;
        out.points[static_cast<std::size_t>(j)] = replacement;
    }
    return out;
}

/// Re-checks an emitted certificate from its own data: points on curve,
/// full coverage of the (eps, T) grid, and for every entry the combination
/// point recomputed from scratch with add/mul plus a fresh non-square check
/// of the recorded witness coordinate.
struct CertificateCheck {
    bool valid = false;
    std::string problem;
};

inline CertificateCheck verify_certificate(const IndependenceCertificate& cert, int jobs = 1) {
    const RootForm& c = cert.curve;
    const std::size_t n = cert.points.size();
    if (n == 0 || n > 20) return {false, "point count out of range"};
    for (std::size_t i = 0; i < n; ++i) {
        const CurvePoint& p = cert.points[i];
        if (p.inf || p.is_two_torsion() || !on_curve(c, p))
            return {false, "point " + std::to_string(i) + " invalid for certification"};
    }
    TorsionSubgroup torsion = TorsionSubgroup::of(c);
    for (int i = 0; i < 4; ++i)
        if (!(cert.torsion.pts[static_cast<std::size_t>(i)] == torsion.pts[static_cast<std::size_t>(i)]))
            return {false, "torsion subgroup does not match the curve"};

    const std::size_t cells = (std::size_t(1) << n) * 4;
    if (cert.entries.size() != cells - 1)
        return {false, "expected " + std::to_string(cells - 1) + " entries, found " +
                           std::to_string(cert.entries.size())};
    std::vector<bool> seen(cells, false);
    for (const auto& e : cert.entries) {
        std::size_t cell = (static_cast<std::size_t>(e.eps) << 2) |
                           static_cast<std::size_t>(e.torsion_index);
        if (e.torsion_index < 0 || e.torsion_index > 3 || e.eps >= (std::uint32_t(1) << n) ||
            cell == 0 || seen[cell])
            return {false, "entry grid coverage broken"};
        seen[cell] = true;
    }

    std::vector<std::string> problems(static_cast<std::size_t>(jobs < 1 ? 1 : jobs));
    int workers = jobs < 1 ? 1 : jobs;
    auto check_range = [&](std::size_t lo, std::size_t hi, std::string& problem) {
        for (std::size_t idx = lo; idx < hi && problem.empty(); ++idx) {
            const CertEntry& e = cert.entries[idx];
            CurvePoint combo = CurvePoint::infinity();
            for (std::size_t j = 0; j < n; ++j)
                if ((e.eps >> j) & 1u) combo = add(c, combo, cert.points[j]);
            combo = add(c, combo, torsion.pts[static_cast<std::size_t>(e.torsion_index)]);
            std::string tag = "entry (eps=" + std::to_string(e.eps) +
                              ", T=" + std::to_string(e.torsion_index) + ")";
            if (combo.inf) {
                problem = tag + ": combination is the identity";
                return;
            }
            if (combo.x != e.combo_x) {
                problem = tag + ": recorded x does not match recomputation";
                return;
            }
            if (e.witness_index != 0 && e.witness_index != 1) {
                problem = tag + ": witness index out of range";
                return;
            }
            Rational v = combo.x - (e.witness_index == 0 ? c.r1 : c.r2);
            if (is_square_rational(v)) {
                problem = tag + ": witness coordinate is a square";
                return;
            }
        }
    };

    if (workers == 1) {
        check_range(0, cert.entries.size(), problems[0]);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (cert.entries.size() + static_cast<std::size_t>(workers) - 1) /
                            static_cast<std::size_t>(workers);
        for (int w = 0; w < workers; ++w) {
            std::size_t lo = static_cast<std::size_t>(w) * chunk;
            std::size_t hi = std::min(cert.entries.size(), lo + chunk);
            pool.emplace_back([&, lo, hi, w]() { check_range(lo, hi, problems[static_cast<std::size_t>(w)]); });
        }
        for (auto& th : pool) th.join();
    }
    for (const auto& p : problems)
        if (!p.empty()) return {false, p};
    return {true, ""};
}

} // namespace dcurves
