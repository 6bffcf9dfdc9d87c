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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gnfp/dp_solver.hpp"
#include "gnfp/report_io.hpp"
#include "test_support.hpp"

using namespace gnfp;
using gnfp::testing::Gen;

namespace {

DpProblem single_state(double g = 1.0, double beta = 0.5) {
    return DpProblem::from_tables({0.0}, {0.0}, {g}, {0.0}, AffineAggregator{beta, {}});
}

// The five-state, three-action fixture (tests/fixtures/five_state.json).
DpProblem five_state() {
    return DpProblem::from_tables({0, 1, 2, 3, 4}, {-1, 0, 1},
                                  {0.0, 1.0, 0.5, 2.0, -1.0, 0.3, 0.0, 0.7, 1.2, -0.5, 2.5, 0.0, 1.0, 0.2, -2.0},
                                  {0, 0, 1, 0, 1, 2, 1, 2, 3, 2, 3, 4, 3, 4, 4},
                                  AffineAggregator{0.8, {0.0, -0.05, -0.1, 0.1, 0.05, 0.0, 0.2, 0.15, 0.1, 0.3, 0.25,
                                                         0.2, 0.4, 0.35, 0.3}});
}

// Frozen output of tests/oracles/dp_policy_enumeration.py: the pointwise max
// over all 243 stationary policies of (I - 0.8 P_pi)^{-1} (g + c)_pi.
const std::vector<double> kFiveStateOracle{8.512, 10.14, 12.3, 13.75, 12.4};

DpProblem sine_problem() {
    return DpProblem::from_tables({0, 1, 2}, {0, 1}, {1.0, 0.5, 0.0, 2.0, -1.0, 0.25}, {1, 2, 0, 2, 2, 0},
                                  builtin_aggregator("half_sine"));
}

double sup_dist(const BoundedFunctionPoint& a, const BoundedFunctionPoint& b) { return sup_distance()(a, b); }

}  // namespace

TEST(BellmanApply, SingleStateExamples) {
    const auto p = single_state();
    const auto zero = BoundedFunctionPoint::constant(p.grid(), 0.0);
    const auto two = BoundedFunctionPoint::constant(p.grid(), 2.0);
    EXPECT_EQ(bellman_apply(p, zero)[0], 1.0);
    EXPECT_EQ(bellman_apply(p, two)[0], 2.0);
}

TEST(BellmanApply, ZeroRewardZeroAggregator) {
    const auto p = DpProblem::from_tables({0, 1}, {0, 1}, {0, 0, 0, 0}, {0, 1, 1, 0}, AffineAggregator{0.0, {}});
    const auto f = BoundedFunctionPoint(p.grid(), {3.0, -7.0});
    const auto tf = bellman_apply(p, f);
    EXPECT_EQ(tf.values(), (std::vector<double>{0.0, 0.0}));
}

TEST(BellmanApply, MaxOverDecisionsWithLowestIndexTieBreak) {
    // decision 0 and 2 tie at state 0
    const auto p = DpProblem::from_tables({0, 1}, {10, 20, 30}, {1.0, 0.5, 1.0, 0.0, 3.0, 3.0}, {0, 0, 0, 1, 1, 1},
                                          AffineAggregator{0.5, {}});
    const auto zero = BoundedFunctionPoint::constant(p.grid(), 0.0);
    EXPECT_EQ(bellman_apply(p, zero).values(), (std::vector<double>{1.0, 3.0}));
    EXPECT_EQ(greedy_policy(p, zero), (std::vector<std::size_t>{0, 1}));
}

TEST(BellmanApply, ForeignGridIsIntegrityError) {
    const auto p = single_state();
    const auto other = BoundedFunctionPoint::constant(std::make_shared<const StateGrid>(std::vector<double>{5.0}), 0.0);
    EXPECT_THROW(bellman_apply(p, other), IntegrityError);
}

TEST(DpProblem, Validation) {
    EXPECT_THROW(DpProblem::from_tables({0, 1}, {0}, {0, 0}, {0, 2}, AffineAggregator{0.5, {}}), IntegrityError);
    EXPECT_THROW(DpProblem::from_tables({0, 1}, {0}, {0, 0}, {0, 0.5}, AffineAggregator{0.5, {}}), IntegrityError);
    EXPECT_THROW(DpProblem::from_tables({0, 1}, {0}, {0}, {0, 1}, AffineAggregator{0.5, {}}), UsageError);
    EXPECT_THROW(DpProblem::from_tables({0, 1}, {0}, {0, 0}, {0, 1}, AffineAggregator{1.0, {}}), UsageError);
    EXPECT_THROW(DpProblem::from_tables({0, 1}, {0}, {0, 0}, {0, 1}, AffineAggregator{0.5, {1.0}}), UsageError);
    EXPECT_THROW(DpProblem::from_tables({0, 1}, {}, {}, {}, AffineAggregator{0.5, {}}), UsageError);
    EXPECT_THROW(DpProblem::from_tables({0, 1}, {0}, {0, NAN}, {0, 1}, AffineAggregator{0.5, {}}), UsageError);
    EXPECT_THROW(builtin_aggregator("nope"), UsageError);
}

TEST(Lipschitz, AffineIsDecidedExactly) {
    const auto p = DpProblem::from_tables({0}, {0}, {1.0}, {0.0}, AffineAggregator{0.8, {}});
    const auto ok = verify_M_lipschitz(p, 0.8, 100, 1);
    EXPECT_TRUE(ok.passed);
    EXPECT_TRUE(ok.exact);
    EXPECT_FALSE(ok.witness.has_value());

    const auto p9 = DpProblem::from_tables({0}, {0}, {1.0}, {0.0}, AffineAggregator{0.9, {}});
    const auto bad = verify_M_lipschitz(p9, 0.8, 100, 1);
    EXPECT_FALSE(bad.passed);
    ASSERT_TRUE(bad.witness.has_value());
    EXPECT_DOUBLE_EQ(bad.witness->lhs / std::abs(bad.witness->a - bad.witness->b), 0.9);
    EXPECT_GT(bad.witness->lhs, bad.witness->rhs);
}

TEST(Lipschitz, HalfSinePassesOnSamples) {
    const auto p = sine_problem();
    const auto report = verify_M_lipschitz(p, 0.5, 2000, 3);
    EXPECT_TRUE(report.passed);
    EXPECT_FALSE(report.exact);
    EXPECT_EQ(report.checks, 6u * 2000u);
    // V = max|g + sin(0)/2| / (1 - 1/2) + 1 = 2 / 0.5 + 1
    EXPECT_EQ(report.half_width, 5.0);
}

TEST(Lipschitz, HalfSineFailsBelowItsConstant) {
    const auto p = sine_problem();
    const auto report = verify_M_lipschitz(p, 0.3, 2000, 3, kDefaultTolerance, 0.5);
    EXPECT_FALSE(report.passed);
    ASSERT_TRUE(report.witness.has_value());
    const auto& w = *report.witness;
    EXPECT_EQ(std::abs(std::sin(w.a) / 2 - std::sin(w.b) / 2), w.lhs);
    EXPECT_GT(w.lhs, 0.3 * std::abs(w.a - w.b));
}

TEST(Lipschitz, DeclaredConstantTooSmallBlocksSolve) {
    const CallbackAggregator lying{"lying", [](std::size_t, std::size_t, double a) { return 0.9 * a; }, 0.3};
    const auto p = DpProblem::from_tables({0, 1}, {0}, {1.0, 2.0}, {1, 0}, lying);
    EXPECT_THROW(solve(p), UsageError);
}

TEST(DpSolve, SingleStateClosedForm) {
    DpSolveOptions opts;
    opts.tol = 1e-10;
    const auto sol = solve(single_state(), opts);
    ASSERT_TRUE(sol.converged);
    EXPECT_NEAR(sol.value->f[0], 2.0, 1e-10);
    EXPECT_LE(sol.value->iterations, 60u);
    EXPECT_LE(sol.value->residual, 1e-10);
}

TEST(DpSolve, FiveStateMatchesPolicyEnumerationOracle) {
    DpSolveOptions opts;
    opts.tol = 1e-12;
    const auto sol = solve(five_state(), opts);
    ASSERT_TRUE(sol.converged);
    for (std::size_t x = 0; x < 5; ++x) EXPECT_NEAR(sol.value->f[x], kFiveStateOracle[x], 1e-10) << "state " << x;
}

TEST(DpSolve, FiveStateMatchesBruteForceHorizon) {
    const auto p = five_state();
    const auto sol = solve(p, DpSolveOptions{});
    ASSERT_TRUE(sol.converged);
    EXPECT_LE(sup_dist(sol.value->f, brute_force_horizon(p, 200)), 1e-6);
    EXPECT_LE(sol.value->residual, 1e-8);
}

TEST(DpSolve, ZeroRewardHasZeroSolution) {
    const auto p = DpProblem::from_tables({0, 1, 2}, {0, 1}, std::vector<double>(6, 0.0), {0, 1, 1, 2, 2, 0},
                                          AffineAggregator{0.7, {}});
    const auto sol = solve(p, DpSolveOptions{});
    ASSERT_TRUE(sol.converged);
    EXPECT_EQ(sol.trace.steps.size(), 1u);
    EXPECT_EQ(sol.value->f.values(), std::vector<double>(3, 0.0));
}

TEST(DpSolve, NonConvergenceCarriesTrace) {
    DpSolveOptions opts;
    opts.max_iter = 5;
    const auto sol = solve(five_state(), opts);
    EXPECT_FALSE(sol.converged);
    EXPECT_EQ(sol.trace.steps.size(), 5u);
    EXPECT_FALSE(sol.value.has_value());
}

TEST(DpSolve, ValueCsv) {
    const auto p = single_state();
    const auto sol = solve(p, DpSolveOptions{});
    std::ostringstream os;
    write_value_csv(os, p, sol);
    EXPECT_EQ(os.str().rfind("state,value,argmax_decision\n0,", 0), 0u);
}

TEST(BruteForceHorizon, Examples) {
    const auto p = single_state();
    EXPECT_EQ(brute_force_horizon(p, 0)[0], 0.0);
    EXPECT_EQ(brute_force_horizon(p, 3)[0], 1.75);
    EXPECT_EQ(brute_force_horizon(five_state(), 0).values(), std::vector<double>(5, 0.0));
}

TEST(BruteForceHorizon, TailBoundAgainstSolver) {
    for (const auto& p : {five_state(), sine_problem(), single_state(3.0, 0.9)}) {
        DpSolveOptions opts;
        opts.tol = 1e-12;
        const auto sol = solve(p, opts);
        ASSERT_TRUE(sol.converged);
        for (std::size_t h : {0u, 1u, 5u, 20u, 50u, 200u})
            EXPECT_LE(sup_dist(sol.value->f, brute_force_horizon(p, h)), horizon_tail_bound(p, h) + 1e-10) << "h=" << h;
    }
}

TEST(DpProperties, BellmanOperatorContracts) {
    Gen gen(77);
    for (const auto& p : {five_state(), sine_problem()}) {
        const double r = p.declared_r();
        for (int i = 0; i < 2000; ++i) {
            const auto f = gen.table(p.grid(), -50, 50);
            const auto g = gen.table(p.grid(), -50, 50);
            ASSERT_LE(sup_dist(bellman_apply(p, f), bellman_apply(p, g)), r * sup_dist(f, g) + 1e-12);
        }
    }
}

TEST(DpProperties, StartPointIndependence) {
    Gen gen(78);
    for (const auto& p : {five_state(), sine_problem()}) {
        DpSolveOptions opts;
        opts.tol = 1e-10;
        const auto base = solve(p, opts);
        for (int i = 0; i < 10; ++i) {
            opts.start = gen.table(p.grid(), -100, 100);
            const auto other = solve(p, opts);
            ASSERT_TRUE(other.converged);
            ASSERT_LE(sup_dist(base.value->f, other.value->f), 10 * opts.tol);
        }
    }
}

TEST(DpProperties, ResultsIndependentOfArity) {
    const auto p = five_state();
    std::string reference;
    for (std::size_t n : {3u, 4u, 5u, 8u}) {
        DpSolveOptions opts;
        opts.n = n;
        const auto sol = solve(p, opts);
        std::ostringstream os;
        write_trace_csv(os, sol.trace);
        write_value_csv(os, p, sol);
        if (reference.empty())
            reference = os.str();
        else
            EXPECT_EQ(os.str(), reference) << "n=" << n;
    }
}
