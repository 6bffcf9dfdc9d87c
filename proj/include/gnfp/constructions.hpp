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
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gnfp/error.hpp"
#include "gnfp/gn_metric.hpp"
#include "gnfp/point.hpp"

namespace gnfp {

/// An ordinary metric d on the carrier.
template <Carrier P>
struct BaseMetric {
    std::string name;
    std::function<double(const P&, const P&)> dist;

    double operator()(const P& a, const P& b) const { return dist(a, b); }
};

inline BaseMetric<double> abs_distance() {
    return {"abs", [](double a, double b) { return std::abs(a - b); }};
}

template <std::size_t D>
BaseMetric<Vec<D>> euclidean_distance() {
    return {fmt::format("euclidean{}", D), [](const Vec<D>& a, const Vec<D>& b) {
                double s = 0.0;
                for (std::size_t i = 0; i < D; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
                return std::sqrt(s);
            }};
}

/// sup_x |a(x) - b(x)|; both tables must live on the same grid.
inline BaseMetric<BoundedFunctionPoint> sup_distance() {
    return {"sup", [](const BoundedFunctionPoint& a, const BoundedFunctionPoint& b) {
                if (!same_grid(a.grid(), b.grid()))
                    throw UsageError("sup distance between functions on different state grids");
                double m = 0.0;
                for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
                return m;
            }};
}

namespace detail {

inline void require_arity(std::size_t n) {
    if (n < 3) throw UsageError(fmt::format("arity must be >= 3, got {}", n));
}

/// d(x_r, x_s) for r < s.
template <Carrier P>
std::vector<double> pairwise(const BaseMetric<P>& d, std::span<const P> x) {
    std::vector<double> out;
    out.reserve(x.size() * (x.size() - 1) / 2);
    for (std::size_t r = 0; r < x.size(); ++r)
        for (std::size_t s = r + 1; s < x.size(); ++s) out.push_back(d(x[r], x[s]));
    return out;
}

}  // namespace detail

/// rho(x_1..x_n) = max_{r != s} |x_r - x_s| on the real line, computed as max - min.
inline GnMetric<double> rho_max(std::size_t n) {
    detail::require_arity(n);
    return GnMetric<double>(
        n,
        [](std::span<const double> x) {
            auto [lo, hi] = std::minmax_element(x.begin(), x.end());
            return *hi - *lo;
        },
        fmt::format("rho_max(n={})", n));
}

/**
 * K1^d(x_1..x_n) = sum_r sum_s d(x_r, x_s) over all ordered index pairs.
 *
 * Each unordered pair therefore contributes twice. The pairwise terms are
 * summed in ascending order so the value is bit-identical under any
 * permutation of the arguments.
 */
template <Carrier P>
GnMetric<P> k1_sum(BaseMetric<P> d, std::size_t n) {
    detail::require_arity(n);
    std::string name = fmt::format("k1_sum({},n={})", d.name, n);
    return GnMetric<P>(
        n,
        [d = std::move(d)](std::span<const P> x) {
            auto terms = detail::pairwise(d, x);
            std::sort(terms.begin(), terms.end());
            double s = 0.0;
            for (double t : terms) s += t;
            return 2.0 * s;
        },
        std::move(name));
}

/// K2^d(x_1..x_n) = max_{r != s} d(x_r, x_s).
template <Carrier P>
GnMetric<P> k2_max(BaseMetric<P> d, std::size_t n) {
    detail::require_arity(n);
    std::string name = fmt::format("k2_max({},n={})", d.name, n);
    return GnMetric<P>(
        n,
        [d = std::move(d)](std::span<const P> x) {
            double m = 0.0;
            for (std::size_t r = 0; r < x.size(); ++r)
                for (std::size_t s = r + 1; s < x.size(); ++s) m = std::max(m, d(x[r], x[s]));
            return m;
        },
        std::move(name));
}

/// max over pairs of the sup distance, restricted to functions on `grid`.
inline GnMetric<BoundedFunctionPoint> sup_metric_gn(GridPtr grid, std::size_t n) {
    detail::require_arity(n);
    if (!grid) throw UsageError("sup metric requires a state grid");
    auto inner = k2_max(sup_distance(), n);
    return GnMetric<BoundedFunctionPoint>(
        n,
        [grid = std::move(grid), inner = std::move(inner)](std::span<const BoundedFunctionPoint> x) {
            for (const auto& p : x)
                if (!same_grid(p.grid(), grid))
                    throw UsageError("function point is not defined on the metric's state grid");
            return inner(x);
        },
        fmt::format("sup_metric_gn(n={})", n));
}

}  // namespace gnfp
