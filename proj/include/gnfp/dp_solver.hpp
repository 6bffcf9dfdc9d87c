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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gnfp/constructions.hpp"
#include "gnfp/error.hpp"
#include "gnfp/fixed_point.hpp"
#include "gnfp/point.hpp"
#include "gnfp/sampling.hpp"

namespace gnfp {

/// M(x, y, a) = beta * a + c(x, y). An empty `c` means c == 0.
struct AffineAggregator {
    double beta = 0.0;
    std::vector<double> c;  // row-major, states x decisions
};

/// M(x, y, a) given as a callback; `lipschitz` is the declared constant in a.
struct CallbackAggregator {
    std::string name;
    std::function<double(std::size_t state, std::size_t decision, double a)> fn;
    double lipschitz = 0.0;
};

using Aggregator = std::variant<AffineAggregator, CallbackAggregator>;

/// Named callback families available to configuration files.
///   half_sine:   M = sin(a) / 2, r = 1/2
///   scaled_tanh: M = beta * tanh(a), r = beta
inline CallbackAggregator builtin_aggregator(const std::string& name, double beta = 0.5) {
    if (name == "half_sine")
        return {name, [](std::size_t, std::size_t, double a) { return std::sin(a) / 2.0; }, 0.5};
    if (name == "scaled_tanh")
        return {name, [beta](std::size_t, std::size_t, double a) { return beta * std::tanh(a); }, beta};
    throw UsageError("unknown aggregator builtin '" + name + "'");
}

/**
 * Finite decision process: f(x) = max_y [ g(x,y) + M(x, y, f(tau(x,y))) ].
 *
 * Tables are row-major over (state, decision). Transitions are stored as
 * state indices; use from_tables() to resolve state values.
 */
class DpProblem {
public:
    DpProblem(GridPtr states, std::vector<double> decisions, std::vector<double> reward,
              std::vector<std::size_t> transition, Aggregator aggregator)
        : states_(std::move(states)),
          decisions_(std::move(decisions)),
          reward_(std::move(reward)),
          transition_(std::move(transition)),
          aggregator_(std::move(aggregator)) {
        if (!states_) throw UsageError("problem requires a state grid");
        if (decisions_.empty()) throw UsageError("decision grid must be non-empty");
        const std::size_t cells = num_states() * num_decisions();
        if (reward_.size() != cells)
            throw UsageError(fmt::format("reward table has {} entries, expected {}", reward_.size(), cells));
        if (transition_.size() != cells)
            throw UsageError(fmt::format("transition table has {} entries, expected {}", transition_.size(), cells));
        for (double g : reward_)
            if (!std::isfinite(g)) throw UsageError("reward entries must be finite");
        for (std::size_t i = 0; i < cells; ++i)
            if (transition_[i] >= num_states())
                throw IntegrityError(fmt::format("transition ({},{}) points to state index {} outside the grid",
                                                 i / num_decisions(), i % num_decisions(), transition_[i]));
        if (auto* affine = std::get_if<AffineAggregator>(&aggregator_)) {
            if (!affine->c.empty() && affine->c.size() != cells)
                throw UsageError(fmt::format("aggregator c table has {} entries, expected {}", affine->c.size(), cells));
            for (double c : affine->c)
                if (!std::isfinite(c)) throw UsageError("aggregator c entries must be finite");
        } else if (!std::get<CallbackAggregator>(aggregator_).fn) {
            throw UsageError("callback aggregator has no function");
        }
        const double r = declared_r();
        if (!(r >= 0.0 && r < 1.0))
            throw UsageError("declared Lipschitz constant must lie in [0, 1), got " + format_real(r));
    }

    /// Resolves transition state values against the grid; an unknown value is an IntegrityError.
    static DpProblem from_tables(std::vector<double> states, std::vector<double> decisions, std::vector<double> reward,
                                 const std::vector<double>& transition_values, Aggregator aggregator) {
        auto grid = std::make_shared<const StateGrid>(std::move(states));
        std::vector<std::size_t> transition;
        transition.reserve(transition_values.size());
        for (std::size_t i = 0; i < transition_values.size(); ++i) {
            auto idx = grid->index_of(transition_values[i]);
            if (!idx)
                throw IntegrityError(fmt::format("transition entry {} = {} is not a member of the state grid", i,
                                                 format_real(transition_values[i])));
            transition.push_back(*idx);
        }
        return DpProblem(std::move(grid), std::move(decisions), std::move(reward), std::move(transition),
                         std::move(aggregator));
    }

    const GridPtr& grid() const { return states_; }
    const std::vector<double>& decisions() const { return decisions_; }
    std::size_t num_states() const { return states_->size(); }
    std::size_t num_decisions() const { return decisions_.size(); }
    const Aggregator& aggregator() const { return aggregator_; }

    double reward(std::size_t x, std::size_t y) const { return reward_[x * num_decisions() + y]; }
    std::size_t next_state(std::size_t x, std::size_t y) const { return transition_[x * num_decisions() + y]; }

    double aggregate(std::size_t x, std::size_t y, double a) const {
        if (auto* affine = std::get_if<AffineAggregator>(&aggregator_))
            return affine->beta * a + (affine->c.empty() ? 0.0 : affine->c[x * num_decisions() + y]);
        return std::get<CallbackAggregator>(aggregator_).fn(x, y, a);
    }

    double declared_r() const {
        if (auto* affine = std::get_if<AffineAggregator>(&aggregator_)) return affine->beta;
        return std::get<CallbackAggregator>(aggregator_).lipschitz;
    }

    /// max over (x,y) of |g(x,y) + M(x,y,0)|; bounds sup |T(0)|.
    double zero_image_bound() const {
        double m = 0.0;
        for (std::size_t x = 0; x < num_states(); ++x)
            for (std::size_t y = 0; y < num_decisions(); ++y) m = std::max(m, std::abs(reward(x, y) + aggregate(x, y, 0.0)));
        return m;
    }

private:
    GridPtr states_;
    std::vector<double> decisions_;
    std::vector<double> reward_;
    std::vector<std::size_t> transition_;
    Aggregator aggregator_;
};

namespace detail {
inline void require_problem_grid(const DpProblem& problem, const BoundedFunctionPoint& f) {
    if (!same_grid(problem.grid(), f.grid()))
        throw IntegrityError("value table is not defined on the problem's state grid");
}

/// Decision maximising g + M; ties go to the lowest decision index.
inline std::pair<std::size_t, double> best_decision(const DpProblem& problem, std::size_t x,
                                                    const BoundedFunctionPoint& f) {
    std::size_t best = 0;
    double value = problem.reward(x, 0) + problem.aggregate(x, 0, f[problem.next_state(x, 0)]);
    for (std::size_t y = 1; y < problem.num_decisions(); ++y) {
        const double v = problem.reward(x, y) + problem.aggregate(x, y, f[problem.next_state(x, y)]);
        if (v > value) {
            value = v;
            best = y;
        }
    }
    return {best, value};
}
}  // namespace detail

/// (Tf)(x) = max_y [ g(x,y) + M(x, y, f(tau(x,y))) ] over the finite decision grid.
inline BoundedFunctionPoint bellman_apply(const DpProblem& problem, const BoundedFunctionPoint& f) {
    detail::require_problem_grid(problem, f);
    std::vector<double> out(problem.num_states());
    for (std::size_t x = 0; x < problem.num_states(); ++x) out[x] = detail::best_decision(problem, x, f).second;
    return BoundedFunctionPoint(problem.grid(), std::move(out));
}

/// Maximising decision index per state (lowest index on ties).
inline std::vector<std::size_t> greedy_policy(const DpProblem& problem, const BoundedFunctionPoint& f) {
    detail::require_problem_grid(problem, f);
    std::vector<std::size_t> out(problem.num_states());
    for (std::size_t x = 0; x < problem.num_states(); ++x) out[x] = detail::best_decision(problem, x, f).first;
    return out;
}

struct LipschitzWitness {
    std::size_t state = 0;
    std::size_t decision = 0;
    double a = 0.0;
    double b = 0.0;
    double lhs = 0.0;  // |M(x,y,a) - M(x,y,b)|
    double rhs = 0.0;  // r |a - b|
};

struct LipschitzReport {
    double r = 0.0;
    bool passed = true;
    bool exact = false;  // affine family: decided from beta, no sampling
    std::size_t checks = 0;
    std::size_t violation_count = 0;
    double half_width = 0.0;  // values sampled from [-half_width, half_width]
    std::optional<LipschitzWitness> witness;
};

/// Default half width of the sampled value interval: the a-priori iterate bound plus one.
inline double default_value_half_width(const DpProblem& problem, double r) {
    return problem.zero_image_bound() / (1.0 - r) + 1.0;
}

/**
 * Checks |M(x,y,a) - M(x,y,b)| <= r |a - b| + tol.
 *
 * The affine family is decided exactly (beta <= r). Callbacks are sampled:
 * `value_samples` pairs (a, b) per (state, decision).
 */
inline LipschitzReport verify_M_lipschitz(const DpProblem& problem, double r, std::size_t value_samples,
                                          std::uint64_t seed, double tol = kDefaultTolerance,
                                          std::optional<double> half_width = std::nullopt) {
    detail::require_unit_interval(r, "r");
    LipschitzReport report;
    report.r = r;
    report.half_width = half_width.value_or(default_value_half_width(problem, r));

    if (auto* affine = std::get_if<AffineAggregator>(&problem.aggregator())) {
        report.exact = true;
        report.checks = 1;
        if (affine->beta > r) {
            report.passed = false;
            report.violation_count = 1;
            report.witness = LipschitzWitness{0, 0, 0.0, 1.0, affine->beta, r};
        }
        return report;
    }

    const double w = report.half_width;
    for (std::size_t x = 0; x < problem.num_states(); ++x) {
        for (std::size_t y = 0; y < problem.num_decisions(); ++y) {
            Rng rng = make_rng(seed, 201, x * problem.num_decisions() + y);
            for (std::size_t s = 0; s < value_samples; ++s) {
                const double a = uniform(rng, -w, w);
                const double b = uniform(rng, -w, w);
                const double lhs = std::abs(problem.aggregate(x, y, a) - problem.aggregate(x, y, b));
                const double rhs = r * std::abs(a - b);
                ++report.checks;
                if (lhs <= rhs + tol) continue;
                ++report.violation_count;
                report.passed = false;
                if (!report.witness) report.witness = LipschitzWitness{x, y, a, b, lhs, rhs};
            }
        }
    }
    return report;
}

/// The bounded solution f on the state grid; `residual` = max_x |f(x) - (Tf)(x)|.
struct ValueFunction {
    BoundedFunctionPoint f;
    double residual = 0.0;
    std::size_t iterations = 0;
};

struct DpSolveOptions {
    std::size_t n = 3;
    double tol = 1e-10;
    std::size_t max_iter = 10000;
    std::size_t lipschitz_samples = 1000;
    std::uint64_t lipschitz_seed = 0;
    std::optional<BoundedFunctionPoint> start;  // zero table when absent
};

struct DpSolution {
    bool converged = false;
    IterationTrace<BoundedFunctionPoint> trace;
    LipschitzReport lipschitz;
    std::optional<ValueFunction> value;
    std::vector<std::size_t> policy;  // argmax decision per state; empty unless converged
};

/**
 * Picard iteration of the Bellman operator in the sup-metric G_n space,
 * starting from the zero table. Bounds in the trace use k = declared r.
 * Throws UsageError when M fails the Lipschitz check at the declared r.
 */
inline DpSolution solve(const DpProblem& problem, const DpSolveOptions& options = {}) {
    DpSolution out;
    const double r = problem.declared_r();
    out.lipschitz = verify_M_lipschitz(problem, r, options.lipschitz_samples, options.lipschitz_seed);
    if (!out.lipschitz.passed)
        throw UsageError(fmt::format("aggregator is not {}-Lipschitz in its value argument", format_real(r)));

    const auto metric = sup_metric_gn(problem.grid(), options.n);
    const Mapping<BoundedFunctionPoint> T = [&problem](const BoundedFunctionPoint& f) {
        return bellman_apply(problem, f);
    };
    BoundedFunctionPoint start = options.start.value_or(BoundedFunctionPoint::constant(problem.grid(), 0.0));
    out.trace = picard_iterate(T, start, metric, options.tol, options.max_iter, r);
    out.converged = out.trace.converged;
    if (!out.converged) return out;

    const BoundedFunctionPoint& f = *out.trace.fixed_point;
    const BoundedFunctionPoint tf = bellman_apply(problem, f);
    double residual = 0.0;
    for (std::size_t x = 0; x < f.size(); ++x) residual = std::max(residual, std::abs(f[x] - tf[x]));
    out.value = ValueFunction{f, residual, out.trace.steps.size()};
    out.policy = greedy_policy(problem, f);
    return out;
}

/**
 * T^horizon(0) by direct table evaluation. Deliberately shares no code with
 * bellman_apply or picard_iterate; it is the reference the solver is
 * checked against.
 */
inline BoundedFunctionPoint brute_force_horizon(const DpProblem& problem, std::size_t horizon) {
    const std::size_t ns = problem.num_states();
    const std::size_t nd = problem.num_decisions();
    std::vector<double> current(ns, 0.0);
    std::vector<double> next(ns);
    for (std::size_t h = 0; h < horizon; ++h) {
        for (std::size_t x = 0; x < ns; ++x) {
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t y = 0; y < nd; ++y)
                best = std::max(best, problem.reward(x, y) + problem.aggregate(x, y, current[problem.next_state(x, y)]));
            next[x] = best;
        }
        current.swap(next);
    }
    return BoundedFunctionPoint(problem.grid(), std::move(current));
}

/// r^h / (1 - r) * max|g + M(.,.,0)|, the distance bound between T^h(0) and the solution.
inline double horizon_tail_bound(const DpProblem& problem, std::size_t horizon) {
    const double r = problem.declared_r();
    return std::pow(r, static_cast<double>(horizon)) / (1.0 - r) * problem.zero_image_bound();
}

}  // namespace gnfp
