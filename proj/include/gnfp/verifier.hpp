/*
 * Copyright 2026 The gnfp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gnfp/error.hpp"
#include "gnfp/gn_metric.hpp"
#include "gnfp/point.hpp"
#include "gnfp/sampling.hpp"

namespace gnfp {

enum class Property {
    NonNegative,
    G1,
    G2,
    G3,
    G4,
    G5,
    Symmetry,
    Prop15,
    BallContain,
    DerivedMetric,
    ConvergenceEquivalence,
};

inline std::string_view property_name(Property p) {
    switch (p) {
        case Property::NonNegative: return "NONNEG";
        case Property::G1: return "G1";
        case Property::G2: return "G2";
        case Property::G3: return "G3";
        case Property::G4: return "G4";
        case Property::G5: return "G5";
        case Property::Symmetry: return "SYMMETRY";
        case Property::Prop15: return "PROP15";
        case Property::BallContain: return "BALL_CONTAIN";
        case Property::DerivedMetric: return "DG_METRIC";
        case Property::ConvergenceEquivalence: return "CONV_EQUIV";
    }
    return "?";
}

struct NamedValue {
    std::string label;
    double value;
};

/// The first failing instance of a property, reproducible from the report seed.
template <Carrier P>
struct Witness {
    std::size_t trial = 0;
    std::vector<P> points;
    std::vector<NamedValue> values;
};

/// `witness` is set exactly when `passed` is false.
template <Carrier P>
struct AxiomVerdict {
    Property id;
    bool passed = true;
    std::size_t checked = 0;  // non-vacuous instances
    std::size_t failures = 0;
    std::optional<Witness<P>> witness;
};

template <Carrier P>
struct VerificationReport {
    std::vector<AxiomVerdict<P>> verdicts;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double tolerance = kDefaultTolerance;

    bool all_passed() const {
        for (const auto& v : verdicts)
            if (!v.passed) return false;
        return true;
    }

    const AxiomVerdict<P>* find(Property id) const {
        for (const auto& v : verdicts)
            if (v.id == id) return &v;
        return nullptr;
    }
};

namespace detail {

/// Accumulates one property over trials; keeps the lowest-index failure.
template <Carrier P>
class VerdictBuilder {
public:
    explicit VerdictBuilder(Property id) { verdict_.id = id; }

    void pass() { ++verdict_.checked; }

    void fail(std::size_t trial, std::vector<P> points, std::vector<NamedValue> values) {
        ++verdict_.checked;
        ++verdict_.failures;
        verdict_.passed = false;
        if (!verdict_.witness || trial < verdict_.witness->trial)
            verdict_.witness = Witness<P>{trial, std::move(points), std::move(values)};
    }

    AxiomVerdict<P> take() { return std::move(verdict_); }

private:
    AxiomVerdict<P> verdict_;
};

inline void require_trials(std::size_t trials) {
    if (trials < 1) throw UsageError("trials must be >= 1");
}

inline std::uint64_t stream_of(Property p) { return static_cast<std::uint64_t>(p) + 1; }

template <Carrier P>
bool all_equal(const std::vector<P>& t, std::size_t from) {
    for (std::size_t i = from + 1; i < t.size(); ++i)
        if (!points_equal(t[from], t[i])) return false;
    return true;
}

}  // namespace detail

/**
 * Sampled check of non-negativity and G1..G5.
 *
 *  - NONNEG: G(t) >= -tol and finite on random tuples.
 *  - G1: G(x,...,x) <= tol.
 *  - G2: G(x,...,x,y) > tol for x != y (trial is vacuous when x == y).
 *  - G3: G(x1,...,x1,x2) <= G(x1,...,xn) + tol whenever some pair among x2..xn
 *    is distinct.
 *  - G4: |G(t) - G(pi t)| <= tol for a random permutation pi.
 *  - G5: G(x1..xn) <= G(x1,a,...,a) + G(a,x2,...,xn) + tol, a drawn from the
 *    same sampler.
 */
template <Carrier P>
VerificationReport<P> check_axioms(const GnMetric<P>& metric, const Sampler<P>& sampler, std::size_t trials,
                                   double tol = kDefaultTolerance) {
    detail::require_trials(trials);
    const std::size_t n = metric.arity();
    VerificationReport<P> report{{}, trials, sampler.seed, tol};

    {
        detail::VerdictBuilder<P> b(Property::NonNegative);
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = make_rng(sampler.seed, detail::stream_of(Property::NonNegative), t);
            auto x = draw_tuple(sampler, rng, n);
            const double g = evaluate(metric, x);
            if (std::isfinite(g) && g >= -tol)
                b.pass();
            else
                b.fail(t, std::move(x), {{"G", g}});
        }
        report.verdicts.push_back(b.take());
    }
    {
        detail::VerdictBuilder<P> b(Property::G1);
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = make_rng(sampler.seed, detail::stream_of(Property::G1), t);
            std::vector<P> x(n, sampler(rng));
            const double g = evaluate(metric, x);
            if (std::abs(g) <= tol)
                b.pass();
            else
                b.fail(t, std::move(x), {{"G", g}});
        }
        report.verdicts.push_back(b.take());
    }
    {
        detail::VerdictBuilder<P> b(Property::G2);
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = make_rng(sampler.seed, detail::stream_of(Property::G2), t);
            P x = sampler(rng);
            P y = sampler(rng);
            if (points_equal(x, y)) continue;
            auto tuple = many_then_one(x, y, n);
            const double g = evaluate(metric, tuple);
            if (g > tol)
                b.pass();
            else
                b.fail(t, std::move(tuple), {{"G", g}});
        }
        report.verdicts.push_back(b.take());
    }
    {
        detail::VerdictBuilder<P> b(Property::G3);
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = make_rng(sampler.seed, detail::stream_of(Property::G3), t);
            auto x = draw_tuple(sampler, rng, n);
            if (detail::all_equal(x, 1)) continue;
            const double lhs = g_many_one(metric, x[0], x[1]);
            const double rhs = evaluate(metric, x);
            if (lhs <= rhs + tol)
                b.pass();
            else
                b.fail(t, std::move(x), {{"lhs", lhs}, {"rhs", rhs}});
        }
        report.verdicts.push_back(b.take());
    }
    {
        detail::VerdictBuilder<P> b(Property::G4);
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = make_rng(sampler.seed, detail::stream_of(Property::G4), t);
            auto x = draw_tuple(sampler, rng, n);
            auto permuted = x;
            shuffle(permuted, rng);
            const double a = evaluate(metric, x);
            const double c = evaluate(metric, permuted);
            if (std::abs(a - c) <= tol) {
                b.pass();
            } else {
                x.insert(x.end(), permuted.begin(), permuted.end());
                b.fail(t, std::move(x), {{"G", a}, {"G_permuted", c}});
            }
        }
        report.verdicts.push_back(b.take());
    }
    {
        detail::VerdictBuilder<P> b(Property::G5);
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = make_rng(sampler.seed, detail::stream_of(Property::G5), t);
            auto x = draw_tuple(sampler, rng, n);
            P extra = sampler(rng);
            const double lhs = evaluate(metric, x);
            const double first = g_one_many(metric, x[0], extra);
            auto rest = x;
            rest[0] = extra;
            const double second = evaluate(metric, rest);
            if (lhs <= first + second + tol) {
                b.pass();
            } else {
                x.push_back(std::move(extra));
                b.fail(t, std::move(x), {{"lhs", lhs}, {"rhs", first + second}});
            }
        }
        report.verdicts.push_back(b.take());
    }
    return report;
}

/**
 * Sampled check of the consequences of the axioms:
 *  - PROP15: G(x,y,...,y) <= (n-1) G(y,x,...,x) + tol.
 *  - BALL_CONTAIN: y in B_G(x, r/n) implies d_G(x,y) < r (+ tol). Half of the
 *    radii are placed just above n G(x,y,...,y) so the antecedent is
 *    usually live; the rest are uniform on (0, 20].
 *  - DG_METRIC: d_G(x,x) = 0, d_G(x,y) = d_G(y,x) and
 *    d_G(x,z) <= d_G(x,y) + d_G(y,z), all within tol.
 */
template <Carrier P>
VerificationReport<P> check_propositions(const GnMetric<P>& metric, const Sampler<P>& sampler,
                                         std::size_t trials, double tol = kDefaultTolerance) {
    detail::require_trials(trials);
    const double n = static_cast<double>(metric.arity());
    VerificationReport<P> report{{}, trials, sampler.seed, tol};

    {
        detail::VerdictBuilder<P> b(Property::Prop15);
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = make_rng(sampler.seed, detail::stream_of(Property::Prop15), t);
            P x = sampler(rng);
            P y = uniform01(rng) < 0.05 ? x : sampler(rng);
            const double lhs = g_one_many(metric, x, y);
            const double rhs = (n - 1.0) * g_one_many(metric, y, x);
            if (lhs <= rhs + tol)
                b.pass();
            else
                b.fail(t, {std::move(x), std::move(y)}, {{"lhs", lhs}, {"rhs", rhs}});
        }
        report.verdicts.push_back(b.take());
    }
    {
        detail::VerdictBuilder<P> b(Property::BallContain);
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = make_rng(sampler.seed, detail::stream_of(Property::BallContain), t);
            P x = sampler(rng);
            P y = uniform01(rng) < 0.05 ? x : sampler(rng);
            const double g = g_one_many(metric, x, y);
            double radius = n * g * (1.0 + uniform01(rng));
            if (uniform01(rng) < 0.5 || !(radius > 0.0)) radius = 20.0 * (1.0 - uniform01(rng));
            if (!ball_contains(metric, x, radius / n, y)) {
                b.pass();
                continue;
            }
            const double d = derived_metric(metric, x, y);
            if (d < radius + tol)
                b.pass();
            else
                b.fail(t, {std::move(x), std::move(y)}, {{"radius", radius}, {"G", g}, {"d_G", d}});
        }
        report.verdicts.push_back(b.take());
    }
    {
        detail::VerdictBuilder<P> b(Property::DerivedMetric);
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = make_rng(sampler.seed, detail::stream_of(Property::DerivedMetric), t);
            auto pts = draw_tuple(sampler, rng, 3);
            const double self = derived_metric(metric, pts[0], pts[0]);
            const double xy = derived_metric(metric, pts[0], pts[1]);
            const double yx = derived_metric(metric, pts[1], pts[0]);
            const double yz = derived_metric(metric, pts[1], pts[2]);
            const double xz = derived_metric(metric, pts[0], pts[2]);
            if (std::abs(self) <= tol && std::abs(xy - yx) <= tol && xz <= xy + yz + tol)
                b.pass();
            else
                b.fail(t, std::move(pts), {{"d(x,x)", self}, {"d(x,y)", xy}, {"d(y,x)", yx}, {"d(y,z)", yz}, {"d(x,z)", xz}});
        }
        report.verdicts.push_back(b.take());
    }
    return report;
}

/// Sampled check that G(x,y,...,y) = G(x,...,x,y) within tol.
template <Carrier P>
VerificationReport<P> check_symmetry(const GnMetric<P>& metric, const Sampler<P>& sampler, std::size_t trials,
                                     double tol = kDefaultTolerance) {
    detail::require_trials(trials);
    VerificationReport<P> report{{}, trials, sampler.seed, tol};
    detail::VerdictBuilder<P> b(Property::Symmetry);
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = make_rng(sampler.seed, detail::stream_of(Property::Symmetry), t);
        P x = sampler(rng);
        P y = sampler(rng);
        if (is_symmetric_at(metric, x, y, tol)) {
            b.pass();
        } else {
            const double a = g_one_many(metric, x, y);
            const double c = g_many_one(metric, x, y);
            b.fail(t, {std::move(x), std::move(y)}, {{"G(x,y..y)", a}, {"G(x..x,y)", c}});
        }
    }
    report.verdicts.push_back(b.take());
    return report;
}

/// d_G(x_m, x), G(x_m,...,x_m,x) and G(x_m,x,...,x) for one sequence element.
struct ConvergenceTail {
    double derived = 0.0;
    double many_one = 0.0;
    double one_many = 0.0;
};

template <Carrier P>
ConvergenceTail convergence_tail(const GnMetric<P>& metric, const P& element, const P& limit) {
    return {derived_metric(metric, element, limit), g_many_one(metric, element, limit),
            g_one_many(metric, element, limit)};
}

/**
 * The three convergence criteria must agree at the final element: either
 * all three are <= tol (the sequence looks convergent to `limit`) or all
 * three are > tol.
 */
template <Carrier P>
VerificationReport<P> check_convergence_equivalence(const GnMetric<P>& metric, const std::vector<P>& sequence,
                                                    const P& limit, double tol = kDefaultTolerance) {
    if (sequence.empty()) throw UsageError("convergence check needs a non-empty sequence");
    VerificationReport<P> report{{}, 1, 0, tol};
    detail::VerdictBuilder<P> b(Property::ConvergenceEquivalence);
    const auto tail = convergence_tail(metric, sequence.back(), limit);
    const bool a = tail.derived <= tol;
    const bool c = tail.many_one <= tol;
    const bool d = tail.one_many <= tol;
    if (a == c && c == d)
        b.pass();
    else
        b.fail(sequence.size() - 1, {sequence.back(), limit},
               {{"d_G", tail.derived}, {"G(xm..xm,x)", tail.many_one}, {"G(xm,x..x)", tail.one_many}});
    report.verdicts.push_back(b.take());
    return report;
}

}  // namespace gnfp
