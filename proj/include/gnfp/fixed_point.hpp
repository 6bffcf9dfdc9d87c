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
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gnfp/error.hpp"
#include "gnfp/gn_metric.hpp"
#include "gnfp/point.hpp"
#include "gnfp/sampling.hpp"

namespace gnfp {

namespace detail {
inline void require_unit_interval(double r, const char* what) {
    if (!(r >= 0.0 && r < 1.0)) throw UsageError(fmt::format("{} must lie in [0, 1), got {}", what, format_real(r)));
}
}  // namespace detail

/// theta(r) = 1 / (1 + r), the gate used by the Suzuki-type condition in G_n spaces.
inline double theta(double r) {
    detail::require_unit_interval(r, "r");
    return 1.0 / (1.0 + r);
}

inline const double kGoldenConjugate = (std::sqrt(5.0) - 1.0) / 2.0;
inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

/**
 * Suzuki's original nonincreasing gate on [0,1):
 *   1                  for r <= (sqrt5 - 1)/2
 *   (1 - r) / r^2      for (sqrt5 - 1)/2 <= r <= 2^{-1/2}
 *   1 / (1 + r)        for r >= 2^{-1/2}
 * The branches agree at both break points.
 */
inline double theta_suzuki(double r) {
    detail::require_unit_interval(r, "r");
    if (r <= kGoldenConjugate) return 1.0;
    if (r <= kInvSqrt2) return (1.0 - r) / (r * r);
    return 1.0 / (1.0 + r);
}

template <Carrier P>
using Mapping = std::function<P(const P&)>;

enum class IterationStatus { Converged, MaxIterations, Diverged, NumericFailure };

inline const char* status_name(IterationStatus s) {
    switch (s) {
        case IterationStatus::Converged: return "converged";
        case IterationStatus::MaxIterations: return "max_iterations";
        case IterationStatus::Diverged: return "diverged";
        case IterationStatus::NumericFailure: return "numeric_failure";
    }
    return "?";
}

/**
 * One Picard step. `residual` is G(y_m, y_{m+1}, ..., y_{m+1}).
 *
 * With a modulus k the step also carries
 *   a_priori     = k^m / (1-k) * residual(0), a bound on G(y_m, y*, ..., y*),
 *   a_posteriori = k / (1-k) * residual(m),   a bound on G(y_{m+1}, y*, ..., y*).
 */
template <Carrier P>
struct IterationStep {
    std::size_t m = 0;
    P iterate;
    double residual = 0.0;
    std::optional<double> a_priori;
    std::optional<double> a_posteriori;
};

template <Carrier P>
struct IterationTrace {
    std::vector<IterationStep<P>> steps;
    bool converged = false;
    IterationStatus status = IterationStatus::MaxIterations;
    /// y_{M+1}, the last computed iterate, when residual(M) <= tol.
    std::optional<P> fixed_point;
    std::optional<double> modulus;
};

/// Consecutive residual increases after which iteration is abandoned.
inline constexpr std::size_t kDivergenceWindow = 20;

/**
 * Picard iteration y_{m+1} = T(y_m) stopped on the two-index residual.
 *
 * `max_iter` bounds the number of applications of T. Running out of
 * iterations or diverging is reported through the trace status; a
 * non-finite iterate or residual yields NumericFailure.
 */
template <Carrier P>
IterationTrace<P> picard_iterate(const Mapping<P>& T, const P& y0, const GnMetric<P>& metric, double tol,
                                 std::size_t max_iter, std::optional<double> modulus = std::nullopt) {
    if (!(tol > 0.0)) throw UsageError("tolerance must be positive");
    if (max_iter < 1) throw UsageError("max_iter must be >= 1");
    if (modulus) detail::require_unit_interval(*modulus, "contraction modulus");

    IterationTrace<P> trace;
    trace.modulus = modulus;
    P y = y0;
    double first_residual = 0.0;
    double previous = 0.0;
    std::size_t growth = 0;

    for (std::size_t m = 0; m < max_iter; ++m) {
        P next = T(y);
        const double residual =
            PointTraits<P>::finite(next) ? evaluate(metric, one_then_many(y, next, metric.arity())) : std::numeric_limits<double>::quiet_NaN();
        if (!std::isfinite(residual)) {
            trace.status = IterationStatus::NumericFailure;
            return trace;
        }
        if (m == 0) first_residual = residual;

        IterationStep<P> step{m, y, residual, std::nullopt, std::nullopt};
        if (modulus) {
            const double k = *modulus;
            step.a_priori = std::pow(k, static_cast<double>(m)) / (1.0 - k) * first_residual;
            step.a_posteriori = k / (1.0 - k) * residual;
        }
        trace.steps.push_back(std::move(step));

        if (residual <= tol) {
            trace.converged = true;
            trace.status = IterationStatus::Converged;
            trace.fixed_point = std::move(next);
            return trace;
        }
        growth = (m > 0 && residual > previous) ? growth + 1 : 0;
        if (growth >= kDivergenceWindow) {
            trace.status = IterationStatus::Diverged;
            return trace;
        }
        previous = residual;
        y = std::move(next);
    }
    trace.status = IterationStatus::MaxIterations;
    return trace;
}

enum class CertificateVerdict { Contractive, NotContractive, Inconclusive };

inline const char* verdict_name(CertificateVerdict v) {
    switch (v) {
        case CertificateVerdict::Contractive: return "contractive";
        case CertificateVerdict::NotContractive: return "not_contractive";
        case CertificateVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

/// Empirical contraction modulus: the largest sampled G(Tx)/G(x).
template <Carrier P>
struct ContractionCertificate {
    CertificateVerdict verdict = CertificateVerdict::Inconclusive;
    std::optional<double> k_hat;
    std::size_t trials = 0;
    std::size_t samples_used = 0;  // tuples with G(x) > 0
    std::size_t witness_trial = 0;
    std::vector<P> max_ratio_witness;
};

template <Carrier P>
ContractionCertificate<P> estimate_contraction_modulus(const Mapping<P>& T, const GnMetric<P>& metric,
                                                       const Sampler<P>& sampler, std::size_t trials) {
    if (trials < 1) throw UsageError("trials must be >= 1");
    constexpr std::uint64_t kStream = 101;
    ContractionCertificate<P> cert;
    cert.trials = trials;
    const std::size_t n = metric.arity();
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = make_rng(sampler.seed, kStream, t);
        auto x = draw_tuple(sampler, rng, n);
        const double denom = evaluate(metric, x);
        if (!(denom > 0.0)) continue;
        std::vector<P> image;
        image.reserve(n);
        for (const auto& p : x) image.push_back(T(p));
        const double ratio = evaluate(metric, image) / denom;
        ++cert.samples_used;
        if (!cert.k_hat || ratio > *cert.k_hat) {
            cert.k_hat = ratio;
            cert.witness_trial = t;
            cert.max_ratio_witness = std::move(x);
        }
    }
    if (!cert.k_hat)
        cert.verdict = CertificateVerdict::Inconclusive;
    else if (*cert.k_hat < 1.0)
        cert.verdict = CertificateVerdict::Contractive;
    else
        cert.verdict = CertificateVerdict::NotContractive;
    return cert;
}

/// A sampled pair (u, v) for which the gate held but the contraction did not.
template <Carrier P>
struct SuzukiViolation {
    std::size_t trial = 0;
    P u;
    P v;
    double gate = 0.0;       // theta(r) G(u, Tu, ..., Tu)
    double distance = 0.0;   // G(u, v, ..., v)
    double image = 0.0;      // G(Tu, Tv, ..., Tv)
};

template <Carrier P>
struct SuzukiReport {
    double r = 0.0;
    double theta = 1.0;
    std::size_t trials = 0;
    std::size_t antecedent_hits = 0;
    std::size_t violation_count = 0;
    std::vector<SuzukiViolation<P>> violations;  // first kMaxSuzukiWitnesses, by trial index
    /// Smallest r (to 1e-6) for which the sampled pair set shows no violation.
    /// Empirical: only the sampled pairs are considered.
    std::optional<double> minimal_feasible_r;

    bool holds() const { return violation_count == 0; }
};

inline constexpr std::size_t kMaxSuzukiWitnesses = 32;
inline constexpr double kFeasibleRPrecision = 1e-6;

namespace detail {

struct SuzukiSample {
    double self = 0.0;      // G(u, Tu, ..., Tu)
    double distance = 0.0;  // G(u, v, ..., v)
    double image = 0.0;     // G(Tu, Tv, ..., Tv)
};

inline bool suzuki_gate(double r, const SuzukiSample& s, double tol) {
    return theta(r) * s.self <= s.distance + tol;
}

inline bool suzuki_consequent(double r, const SuzukiSample& s, double tol) {
    return s.image <= r * s.distance + tol;
}

inline bool suzuki_feasible(double r, const std::vector<SuzukiSample>& samples, double tol) {
    for (const auto& s : samples)
        if (suzuki_gate(r, s, tol) && !suzuki_consequent(r, s, tol)) return false;
    return true;
}

/// Bisection on [0, 1 - precision]. Feasibility need not be monotone in r for
/// arbitrary maps; the result is the boundary bisection lands on.
inline std::optional<double> minimal_feasible_r(const std::vector<SuzukiSample>& samples, double tol) {
    if (suzuki_feasible(0.0, samples, tol)) return 0.0;
    double hi = 1.0 - kFeasibleRPrecision;
    if (!suzuki_feasible(hi, samples, tol)) return std::nullopt;
    double lo = 0.0;
    while (hi - lo > kFeasibleRPrecision) {
        const double mid = 0.5 * (lo + hi);
        (suzuki_feasible(mid, samples, tol) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace detail

/**
 * Samples pairs (u, v) and checks
 *   theta(r) G(u,Tu,...,Tu) <= G(u,v,...,v) + tol
 *     implies  G(Tu,Tv,...,Tv) <= r G(u,v,...,v) + tol.
 */
template <Carrier P>
SuzukiReport<P> check_suzuki(const Mapping<P>& T, const GnMetric<P>& metric, double r, const Sampler<P>& sampler,
                             std::size_t trials, double tol = kDefaultTolerance) {
    detail::require_unit_interval(r, "r");
    if (trials < 1) throw UsageError("trials must be >= 1");
    constexpr std::uint64_t kStream = 102;
    const std::size_t n = metric.arity();

    SuzukiReport<P> report;
    report.r = r;
    report.theta = theta(r);
    report.trials = trials;
    std::vector<detail::SuzukiSample> samples;
    samples.reserve(trials);

    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = make_rng(sampler.seed, kStream, t);
        P u = sampler(rng);
        P v = sampler(rng);
        const P tu = T(u);
        const P tv = T(v);
        detail::SuzukiSample s{evaluate(metric, one_then_many(u, tu, n)), evaluate(metric, one_then_many(u, v, n)),
                               evaluate(metric, one_then_many(tu, tv, n))};
        samples.push_back(s);
        if (!detail::suzuki_gate(r, s, tol)) continue;
        ++report.antecedent_hits;
        if (detail::suzuki_consequent(r, s, tol)) continue;
        ++report.violation_count;
        if (report.violations.size() < kMaxSuzukiWitnesses)
            report.violations.push_back({t, std::move(u), std::move(v), report.theta * s.self, s.distance, s.image});
    }
    report.minimal_feasible_r = detail::minimal_feasible_r(samples, tol);
    return report;
}

template <Carrier P>
struct UniquenessCheck {
    bool performed = false;
    std::string notice;
    std::optional<P> second_start;
    std::optional<P> second_fixed_point;
    std::optional<double> distance;  // d_G between the two limits
    bool agreed = false;
};

template <Carrier P>
struct CertifiedSolution {
    IterationTrace<P> trace;
    ContractionCertificate<P> certificate;
    std::optional<SuzukiReport<P>> suzuki;
    UniquenessCheck<P> uniqueness;

    /// Converged, and no sampled condition contradicted.
    bool ok() const {
        return trace.converged && (!suzuki || suzuki->holds()) && (!uniqueness.performed || uniqueness.agreed);
    }
};

template <Carrier P>
struct CertifiedSolveOptions {
    double tol = 1e-9;
    std::size_t max_iter = 1000;
    std::size_t trials = 10000;
    double suzuki_tol = kDefaultTolerance;
    std::optional<P> second_start;  // drawn from the sampler when absent
};

/**
 * Modulus estimate, Suzuki check at r = k_hat (when k_hat < 1), Picard
 * iteration with bounds, and an empirical uniqueness check: a second run
 * from another start must land within 10 tol of the first under d_G.
 */
template <Carrier P>
CertifiedSolution<P> solve_with_certificate(const Mapping<P>& T, const P& y0, const GnMetric<P>& metric,
                                            const Sampler<P>& sampler, const CertifiedSolveOptions<P>& options) {
    CertifiedSolution<P> out;
    out.certificate = estimate_contraction_modulus(T, metric, sampler, options.trials);
    const bool certified = out.certificate.verdict == CertificateVerdict::Contractive;
    std::optional<double> modulus;
    if (certified) {
        modulus = *out.certificate.k_hat;
        out.suzuki = check_suzuki(T, metric, *modulus, sampler, options.trials, options.suzuki_tol);
    }
    out.trace = picard_iterate(T, y0, metric, options.tol, options.max_iter, modulus);

    auto& uq = out.uniqueness;
    if (!certified) {
        uq.notice = fmt::format("skipped: contraction certificate is {}", verdict_name(out.certificate.verdict));
        return out;
    }
    if (!out.trace.converged) {
        uq.notice = "skipped: primary iteration did not converge";
        return out;
    }
    if (options.second_start) {
        uq.second_start = options.second_start;
    } else {
        Rng rng = make_rng(sampler.seed, 103, 0);
        uq.second_start = sampler(rng);
    }
    auto second = picard_iterate(T, *uq.second_start, metric, options.tol, options.max_iter, modulus);
    uq.performed = true;
    if (!second.converged) {
        uq.notice = fmt::format("second start did not converge ({})", status_name(second.status));
        return out;
    }
    uq.second_fixed_point = second.fixed_point;
    uq.distance = derived_metric(metric, *out.trace.fixed_point, *second.fixed_point);
    uq.agreed = *uq.distance <= 10.0 * options.tol;
    uq.notice = uq.agreed ? "limits agree" : "limits differ";
    return out;
}

}  // namespace gnfp
