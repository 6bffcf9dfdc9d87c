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
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "gnfp/error.hpp"
#include "gnfp/point.hpp"

namespace gnfp {

/**
 * A generalized n-metric: a fixed-arity functional G_n : X^n -> [0, inf).
 *
 * The object is immutable after construction and holds no mutable state, so
 * a single instance may be evaluated concurrently. Whether a given
 * evaluation function actually satisfies the axioms is not assumed here; that
 * is what the verifier is for.
 */
template <Carrier P>
class GnMetric {
public:
    using Point = P;
    using Eval = std::function<double(std::span<const P>)>;

    GnMetric(std::size_t arity, Eval eval, std::string name = "G_n")
        : arity_(arity), eval_(std::move(eval)), name_(std::move(name)) {
        if (arity_ < 3) throw UsageError("arity must be >= 3");
        if (!eval_) throw UsageError("metric requires an evaluation function");
    }

    std::size_t arity() const { return arity_; }
    const std::string& name() const { return name_; }

    double operator()(std::span<const P> points) const {
        if (points.size() != arity_)
            throw UsageError(fmt::format("{} expects {} points, got {}", name_, arity_, points.size()));
        return eval_(points);
    }

private:
    std::size_t arity_;
    Eval eval_;
    std::string name_;
};

template <Carrier P>
double evaluate(const GnMetric<P>& metric, std::span<const P> points) {
    return metric(points);
}

template <Carrier P>
double evaluate(const GnMetric<P>& metric, const std::vector<P>& points) {
    return metric(std::span<const P>(points));
}

/// (x, y, ..., y) with n entries.
template <class P>
std::vector<P> one_then_many(const P& x, const P& y, std::size_t n) {
    std::vector<P> t(n, y);
    t.front() = x;
    return t;
}

/// (x, ..., x, y) with n entries.
template <class P>
std::vector<P> many_then_one(const P& x, const P& y, std::size_t n) {
    std::vector<P> t(n, x);
    t.back() = y;
    return t;
}

/// G(x, y, ..., y)
template <Carrier P>
double g_one_many(const GnMetric<P>& metric, const P& x, const P& y) {
    return evaluate(metric, one_then_many(x, y, metric.arity()));
}

/// G(x, ..., x, y)
template <Carrier P>
double g_many_one(const GnMetric<P>& metric, const P& x, const P& y) {
    return evaluate(metric, many_then_one(x, y, metric.arity()));
}

/// The ordinary metric induced by G: d_G(x,y) = G(x,y,...,y) + G(x,...,x,y).
template <Carrier P>
double derived_metric(const GnMetric<P>& metric, const P& x, const P& y) {
    return g_one_many(metric, x, y) + g_many_one(metric, x, y);
}

/// |G(x,y,...,y) - G(x,...,x,y)| <= tol
template <Carrier P>
bool is_symmetric_at(const GnMetric<P>& metric, const P& x, const P& y, double tol = kDefaultTolerance) {
    return std::abs(g_one_many(metric, x, y) - g_many_one(metric, x, y)) <= tol;
}

/// Membership in the G-ball B_G(center, radius) = { y : G(center, y, ..., y) < radius }.
template <Carrier P>
bool ball_contains(const GnMetric<P>& metric, const P& center, double radius, const P& y) {
    if (!(radius > 0.0)) throw UsageError("ball radius must be positive, got " + format_real(radius));
    return g_one_many(metric, center, y) < radius;
}

}  // namespace gnfp
