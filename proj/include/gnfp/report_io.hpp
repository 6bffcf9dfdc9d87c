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

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "gnfp/dp_solver.hpp"
#include "gnfp/fixed_point.hpp"
#include "gnfp/point.hpp"
#include "gnfp/verifier.hpp"

// Text and CSV renderings. Reals are written with 17 significant digits.

namespace gnfp {

namespace detail {
inline std::string opt_real(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

inline std::string format_values(const std::vector<NamedValue>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ';';
        out += values[i].label + "=" + format_real(values[i].value);
    }
    return out;
}
}  // namespace detail

template <Carrier P>
void write_verification_csv(std::ostream& os, const std::vector<VerificationReport<P>>& reports) {
    os << "property,checked,failures,passed,witness_trial,witness_points,witness_values\n";
    for (const auto& report : reports) {
        for (const auto& v : report.verdicts) {
            os << property_name(v.id) << ',' << v.checked << ',' << v.failures << ',' << (v.passed ? 1 : 0) << ',';
            if (v.witness)
                os << v.witness->trial << ',' << format_tuple(v.witness->points) << ','
                   << detail::format_values(v.witness->values);
            else
                os << ",,";
            os << '\n';
        }
    }
}

template <Carrier P>
std::string format_verification_summary(const VerificationReport<P>& report) {
    std::string out = fmt::format("trials={} seed={} tol={}\n", report.trials, report.seed, format_real(report.tolerance));
    for (const auto& v : report.verdicts) {
        out += fmt::format("  {:<12} {:<4} checked={} failures={}\n", property_name(v.id), v.passed ? "PASS" : "FAIL",
                           v.checked, v.failures);
        if (v.witness)
            out += fmt::format("    witness trial={} points={} {}\n", v.witness->trial, format_tuple(v.witness->points),
                               detail::format_values(v.witness->values));
    }
    return out;
}

template <Carrier P>
void write_trace_csv(std::ostream& os, const IterationTrace<P>& trace) {
    os << "m,residual,a_priori_bound,a_posteriori_bound\n";
    for (const auto& s : trace.steps)
        os << s.m << ',' << format_real(s.residual) << ',' << detail::opt_real(s.a_priori) << ','
           << detail::opt_real(s.a_posteriori) << '\n';
}

template <Carrier P>
std::string format_trace_summary(const IterationTrace<P>& trace) {
    std::string out = fmt::format("picard: status={} steps={}", status_name(trace.status), trace.steps.size());
    if (!trace.steps.empty()) out += " final_residual=" + format_real(trace.steps.back().residual);
    if (trace.fixed_point) out += " fixed_point=" + format_point(*trace.fixed_point);
    if (trace.modulus) out += " modulus=" + format_real(*trace.modulus);
    return out + "\n";
}

template <Carrier P>
std::string format_certificate_summary(const ContractionCertificate<P>& c) {
    std::string out = fmt::format("contraction: verdict={} samples_used={}/{}", verdict_name(c.verdict),
                                  c.samples_used, c.trials);
    if (c.k_hat)
        out += fmt::format(" k_hat={} witness_trial={} witness={}", format_real(*c.k_hat), c.witness_trial,
                           format_tuple(c.max_ratio_witness));
    return out + "\n";
}

template <Carrier P>
std::string format_suzuki_summary(const SuzukiReport<P>& s) {
    std::string out = fmt::format("suzuki (empirical): r={} theta={} trials={} antecedent_hits={} violations={}",
                                  format_real(s.r), format_real(s.theta), s.trials, s.antecedent_hits,
                                  s.violation_count);
    out += " minimal_feasible_r=" + (s.minimal_feasible_r ? format_real(*s.minimal_feasible_r) : std::string("none"));
    if (!s.violations.empty()) {
        const auto& w = s.violations.front();
        out += fmt::format("\n  first violation trial={} u={} v={} gate={} G(u,v..v)={} G(Tu,Tv..Tv)={}", w.trial,
                           format_point(w.u), format_point(w.v), format_real(w.gate), format_real(w.distance),
                           format_real(w.image));
    }
    return out + "\n";
}

template <Carrier P>
void write_suzuki_csv(std::ostream& os, const SuzukiReport<P>& s) {
    os << "trial,u,v,gate,distance,image\n";
    for (const auto& w : s.violations)
        os << w.trial << ',' << format_point(w.u) << ',' << format_point(w.v) << ',' << format_real(w.gate) << ','
           << format_real(w.distance) << ',' << format_real(w.image) << '\n';
}

template <Carrier P>
std::string format_uniqueness_summary(const UniquenessCheck<P>& u) {
    std::string out = "uniqueness: " + u.notice;
    if (u.second_start) out += " second_start=" + format_point(*u.second_start);
    if (u.second_fixed_point) out += " second_limit=" + format_point(*u.second_fixed_point);
    if (u.distance) out += " d_G=" + format_real(*u.distance);
    return out + "\n";
}

inline std::string format_lipschitz_summary(const LipschitzReport& l) {
    std::string out = fmt::format("lipschitz: r={} {} mode={} checks={} violations={} interval=[-{},{}]",
                                  format_real(l.r), l.passed ? "PASS" : "FAIL", l.exact ? "exact" : "sampled",
                                  l.checks, l.violation_count, format_real(l.half_width), format_real(l.half_width));
    if (l.witness)
        out += fmt::format("\n  witness state={} decision={} a={} b={} |dM|={} r|da|={}", l.witness->state,
                           l.witness->decision, format_real(l.witness->a), format_real(l.witness->b),
                           format_real(l.witness->lhs), format_real(l.witness->rhs));
    return out + "\n";
}

/// state,value,argmax_decision. The decision column is a convenience readout of the maximiser.
inline void write_value_csv(std::ostream& os, const DpProblem& problem, const DpSolution& solution) {
    os << "state,value,argmax_decision\n";
    if (!solution.value) return;
    const auto& f = solution.value->f;
    for (std::size_t x = 0; x < f.size(); ++x)
        os << format_real((*problem.grid())[x]) << ',' << format_real(f[x]) << ','
           << format_real(problem.decisions()[solution.policy[x]]) << '\n';
}

}  // namespace gnfp
