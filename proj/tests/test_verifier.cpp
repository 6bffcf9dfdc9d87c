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
#include <sstream>
#include <string>
#include <vector>

#include "gnfp/constructions.hpp"
#include "gnfp/report_io.hpp"
#include "gnfp/verifier.hpp"

using namespace gnfp;

namespace {

GnMetric<double> signed_difference() {
    return GnMetric<double>(3, [](std::span<const double> x) { return x[0] - x[1]; }, "signed");
}

// Squared K2: satisfies G1, G2, G4 but breaks the rectangle inequality.
GnMetric<double> squared_k2(std::size_t n) {
    const auto k2 = k2_max(abs_distance(), n);
    return GnMetric<double>(n, [k2](std::span<const double> x) {
        const double g = k2(x);
        return g * g;
    });
}

// Sees only the first two arguments; the three convergence tests disagree.
GnMetric<double> first_pair_only() {
    return GnMetric<double>(3, [](std::span<const double> x) { return std::abs(x[0] - x[1]); });
}

template <class P>
std::string csv_of(const std::vector<VerificationReport<P>>& reports) {
    std::ostringstream os;
    write_verification_csv(os, reports);
    return os.str();
}

}  // namespace

TEST(CheckAxioms, K2MaxPassesTenThousandTrials) {
    const auto report = check_axioms(k2_max(abs_distance(), 3), uniform_real_sampler(1), 10000);
    EXPECT_TRUE(report.all_passed());
    ASSERT_EQ(report.verdicts.size(), 6u);
    for (const auto& v : report.verdicts) {
        EXPECT_FALSE(v.witness.has_value()) << property_name(v.id);
        EXPECT_GT(v.checked, 9000u) << property_name(v.id);
    }
    EXPECT_EQ(report.trials, 10000u);
    EXPECT_EQ(report.seed, 1u);
}

TEST(CheckAxioms, SignedCandidateIsCaughtWithWitness) {
    const auto m = signed_difference();
    const auto report = check_axioms(m, uniform_real_sampler(3), 1000);
    EXPECT_FALSE(report.all_passed());
    const auto* nonneg = report.find(Property::NonNegative);
    ASSERT_NE(nonneg, nullptr);
    ASSERT_FALSE(nonneg->passed);
    ASSERT_TRUE(nonneg->witness.has_value());
    const auto& w = *nonneg->witness;
    EXPECT_LT(w.points[0], w.points[1]);
    // witness values are reproducible from the witness tuple
    EXPECT_EQ(evaluate(m, w.points), w.values[0].value);
    EXPECT_LT(w.values[0].value, 0.0);
}

TEST(CheckAxioms, WitnessIsLowestFailingTrial) {
    const auto report = check_axioms(signed_difference(), uniform_real_sampler(3), 1000);
    const auto* nonneg = report.find(Property::NonNegative);
    ASSERT_TRUE(nonneg->witness);
    for (std::size_t t = 0; t < nonneg->witness->trial; ++t) {
        Rng rng = make_rng(3, static_cast<std::uint64_t>(Property::NonNegative) + 1, t);
        const auto x = draw_tuple(uniform_real_sampler(3), rng, 3);
        EXPECT_GE(x[0] - x[1], -1e-12) << "earlier trial " << t << " should have been the witness";
    }
}

TEST(CheckAxioms, RectangleViolationWitnessReplays) {
    const auto m = squared_k2(3);
    const auto report = check_axioms(m, uniform_real_sampler(8), 2000);
    const auto* g5 = report.find(Property::G5);
    ASSERT_NE(g5, nullptr);
    ASSERT_FALSE(g5->passed);
    const auto& w = *g5->witness;
    ASSERT_EQ(w.points.size(), 4u);  // x1..x3 and the extra point
    const std::vector<double> tuple(w.points.begin(), w.points.begin() + 3);
    std::vector<double> rest = tuple;
    rest[0] = w.points[3];
    EXPECT_EQ(evaluate(m, tuple), w.values[0].value);
    EXPECT_EQ(g_one_many(m, tuple[0], w.points[3]) + evaluate(m, rest), w.values[1].value);
    EXPECT_GT(w.values[0].value, w.values[1].value);
    EXPECT_TRUE(report.find(Property::G1)->passed);
    EXPECT_TRUE(report.find(Property::G4)->passed);
}

TEST(CheckAxioms, ConstantSamplerPassesVacuously) {
    const auto report = check_axioms(rho_max(3), constant_sampler(0.0), 500);
    EXPECT_TRUE(report.all_passed());
    EXPECT_EQ(report.find(Property::G2)->checked, 0u);
    EXPECT_EQ(report.find(Property::G3)->checked, 0u);
    EXPECT_EQ(report.find(Property::G1)->checked, 500u);
}

TEST(CheckAxioms, ZeroTrialsIsUsageError) {
    EXPECT_THROW(check_axioms(rho_max(3), uniform_real_sampler(1), 0), UsageError);
    EXPECT_THROW(check_propositions(rho_max(3), uniform_real_sampler(1), 0), UsageError);
}

TEST(CheckPropositions, K1SatisfiesOneManyBound) {
    const auto report = check_propositions(k1_sum(abs_distance(), 3), uniform_real_sampler(5), 10000);
    EXPECT_TRUE(report.find(Property::Prop15)->passed);
    EXPECT_TRUE(report.all_passed());
}

TEST(CheckPropositions, K2BallContainmentIsLive) {
    const auto report = check_propositions(k2_max(abs_distance(), 4), uniform_real_sampler(6), 10000);
    const auto* ball = report.find(Property::BallContain);
    EXPECT_TRUE(ball->passed);
    EXPECT_EQ(ball->checked, 10000u);
}

TEST(CheckPropositions, CoincidentPointsTrivial) {
    EXPECT_TRUE(check_propositions(k2_max(abs_distance(), 4), constant_sampler(2.5), 200).all_passed());
}

TEST(CheckPropositions, SquaredMetricBreaksDerivedTriangle) {
    const auto report = check_propositions(squared_k2(3), uniform_real_sampler(4), 2000);
    EXPECT_FALSE(report.find(Property::DerivedMetric)->passed);
}

TEST(CheckSymmetry, DetectsAsymmetry) {
    const auto anchored = GnMetric<double>(3, [](std::span<const double> x) {
        return std::abs(x[1] - x[0]) + std::abs(x[2] - x[0]);
    });
    const auto report = check_symmetry(anchored, uniform_real_sampler(2), 100);
    EXPECT_FALSE(report.all_passed());
    const auto& w = *report.verdicts[0].witness;
    EXPECT_EQ(g_one_many(anchored, w.points[0], w.points[1]), w.values[0].value);
    EXPECT_EQ(g_many_one(anchored, w.points[0], w.points[1]), w.values[1].value);
}

TEST(ConvergenceEquivalence, GeometricSequenceVanishesInAllThree) {
    std::vector<double> seq;
    for (int m = 0; m <= 60; ++m) seq.push_back(std::ldexp(1.0, -m));
    const auto k2 = k2_max(abs_distance(), 3);
    const auto report = check_convergence_equivalence(k2, seq, 0.0);
    EXPECT_TRUE(report.all_passed());
    const auto tail = convergence_tail(k2, seq.back(), 0.0);
    EXPECT_EQ(tail.one_many, std::ldexp(1.0, -60));
    EXPECT_EQ(tail.many_one, std::ldexp(1.0, -60));
    EXPECT_EQ(tail.derived, std::ldexp(1.0, -59));
}

TEST(ConvergenceEquivalence, ConstantAtLimit) {
    const auto k1 = k1_sum(abs_distance(), 3);
    const std::vector<double> seq(5, 3.0);
    EXPECT_TRUE(check_convergence_equivalence(k1, seq, 3.0).all_passed());
    const auto tail = convergence_tail(k1, 3.0, 3.0);
    EXPECT_EQ(tail.derived, 0.0);
    EXPECT_EQ(tail.many_one, 0.0);
    EXPECT_EQ(tail.one_many, 0.0);
}

TEST(ConvergenceEquivalence, ConstantAwayFromLimitIsCoNonvanishing) {
    const auto k2 = k2_max(abs_distance(), 3);
    const std::vector<double> seq(10, 1.0);
    const auto report = check_convergence_equivalence(k2, seq, 0.0);
    EXPECT_TRUE(report.all_passed());
    const auto tail = convergence_tail(k2, 1.0, 0.0);
    EXPECT_EQ(tail.one_many, 1.0);
    EXPECT_EQ(tail.many_one, 1.0);
    EXPECT_EQ(tail.derived, 2.0);
}

TEST(ConvergenceEquivalence, DisagreementIsWitnessed) {
    const std::vector<double> seq{1.0, 0.5, 0.25};
    const auto report = check_convergence_equivalence(first_pair_only(), seq, 0.0);
    ASSERT_FALSE(report.all_passed());
    const auto& w = *report.verdicts[0].witness;
    EXPECT_EQ(w.trial, 2u);
    EXPECT_EQ(w.points, (std::vector<double>{0.25, 0.0}));
}

TEST(ConvergenceEquivalence, EmptySequenceIsUsageError) {
    EXPECT_THROW(check_convergence_equivalence(rho_max(3), std::vector<double>{}, 0.0), UsageError);
}

TEST(VerifierDeterminism, SameSeedSameBytes) {
    const auto m = k1_sum(euclidean_distance<2>(), 4);
    auto run = [&](std::uint64_t seed) {
        const auto s = uniform_box_sampler<2>(seed);
        return csv_of(std::vector{check_axioms(m, s, 3000), check_propositions(m, s, 3000)});
    };
    EXPECT_EQ(run(21), run(21));

    auto failing = [](std::uint64_t seed) {
        const auto s = uniform_real_sampler(seed);
        return csv_of(std::vector{check_axioms(squared_k2(3), s, 500)});
    };
    EXPECT_EQ(failing(4), failing(4));
    EXPECT_NE(failing(4), failing(5));
}

TEST(ReportIo, CsvLayout) {
    const auto report = check_axioms(signed_difference(), uniform_real_sampler(3), 50);
    const std::string csv = csv_of(std::vector{report});
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "property,checked,failures,passed,witness_trial,witness_points,witness_values");
    std::getline(in, line);
    EXPECT_EQ(line.rfind("NONNEG,50,", 0), 0u);
    EXPECT_NE(line.find(",0,"), std::string::npos);
    EXPECT_NE(line.find("G="), std::string::npos);
    std::getline(in, line);
    EXPECT_EQ(line, "G1,50,0,1,,,");
}
