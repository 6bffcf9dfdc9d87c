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
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "gnfp/error.hpp"

namespace gnfp {

/// Absolute tolerance used by every predicate unless the caller overrides it.
inline constexpr double kDefaultTolerance = 1e-12;

/// Distinctness threshold for real carriers.
inline constexpr double kPointEqualityTolerance = 1e-12;

template <std::size_t D>
using Vec = std::array<double, D>;

/// Shortest decimal that round-trips is not guaranteed by %g; 17 significant
/// digits always is.
inline std::string format_real(double x) { return fmt::format("{:.17g}", x); }

/// Finite ordered set of states. Points over a grid are compared by index.
class StateGrid {
public:
    explicit StateGrid(std::vector<double> states) : states_(std::move(states)) {
        if (states_.empty()) throw UsageError("state grid must be non-empty");
        for (double s : states_)
            if (!std::isfinite(s)) throw UsageError("state grid entries must be finite");
        for (std::size_t i = 0; i < states_.size(); ++i)
            for (std::size_t j = i + 1; j < states_.size(); ++j)
                if (states_[i] == states_[j])
                    throw UsageError("state grid contains duplicate state " + format_real(states_[i]));
    }

    std::size_t size() const { return states_.size(); }
    double operator[](std::size_t i) const { return states_[i]; }
    const std::vector<double>& states() const { return states_; }

    /// Exact lookup; grid members are identified by value, not by tolerance.
    std::optional<std::size_t> index_of(double state) const {
        auto it = std::find(states_.begin(), states_.end(), state);
        if (it == states_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - states_.begin());
    }

    friend bool operator==(const StateGrid&, const StateGrid&) = default;

private:
    std::vector<double> states_;
};

using GridPtr = std::shared_ptr<const StateGrid>;

inline bool same_grid(const GridPtr& a, const GridPtr& b) {
    return a == b || (a && b && *a == *b);
}

/// A bounded real function on a finite state grid, stored as its value table.
class BoundedFunctionPoint {
public:
    BoundedFunctionPoint() = default;

    BoundedFunctionPoint(GridPtr grid, std::vector<double> values)
        : grid_(std::move(grid)), values_(std::move(values)) {
        if (!grid_) throw UsageError("function point requires a state grid");
        if (values_.size() != grid_->size())
            throw UsageError(fmt::format("function table has {} entries but the grid has {} states",
                                         values_.size(), grid_->size()));
        for (double v : values_)
            if (!std::isfinite(v)) throw UsageError("function table entries must be finite");
    }

    static BoundedFunctionPoint constant(GridPtr grid, double value) {
        const std::size_t n = grid ? grid->size() : 0;
        return BoundedFunctionPoint(std::move(grid), std::vector<double>(n, value));
    }

    const GridPtr& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    GridPtr grid_;
    std::vector<double> values_;
};

/// Per-carrier equality, finiteness and text rendering.
template <class P>
struct PointTraits;

template <>
struct PointTraits<double> {
    static bool equal(double a, double b) { return std::abs(a - b) <= kPointEqualityTolerance; }
    static bool finite(double a) { return std::isfinite(a); }
    static std::string format(double a) { return format_real(a); }
};

template <std::size_t D>
struct PointTraits<Vec<D>> {
    static bool equal(const Vec<D>& a, const Vec<D>& b) {
        for (std::size_t i = 0; i < D; ++i)
            if (std::abs(a[i] - b[i]) > kPointEqualityTolerance) return false;
        return true;
    }
    static bool finite(const Vec<D>& a) {
        return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
    }
    static std::string format(const Vec<D>& a) {
        std::string out = "(";
        for (std::size_t i = 0; i < D; ++i) {
            if (i) out += ';';
            out += format_real(a[i]);
        }
        return out + ")";
    }
};

template <>
struct PointTraits<BoundedFunctionPoint> {
    static bool equal(const BoundedFunctionPoint& a, const BoundedFunctionPoint& b) {
        return same_grid(a.grid(), b.grid()) && a.values() == b.values();
    }
    static bool finite(const BoundedFunctionPoint& a) {
        return std::all_of(a.values().begin(), a.values().end(), [](double v) { return std::isfinite(v); });
    }
    static std::string format(const BoundedFunctionPoint& a) {
        std::string out = "[";
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i) out += ';';
            out += format_real(a[i]);
        }
        return out + "]";
    }
};

template <class P>
concept Carrier = requires(const P& a, const P& b) {
    { PointTraits<P>::equal(a, b) } -> std::convertible_to<bool>;
    { PointTraits<P>::finite(a) } -> std::convertible_to<bool>;
    { PointTraits<P>::format(a) } -> std::convertible_to<std::string>;
};

template <Carrier P>
bool points_equal(const P& a, const P& b) { return PointTraits<P>::equal(a, b); }

template <Carrier P>
std::string format_point(const P& p) { return PointTraits<P>::format(p); }

/// Renders a tuple as "p1|p2|...", safe to embed in a CSV field.
template <Carrier P>
std::string format_tuple(const std::vector<P>& points) {
    std::string out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) out += '|';
        out += format_point(points[i]);
    }
    return out;
}

}  // namespace gnfp
