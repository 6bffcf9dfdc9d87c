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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "gnfp/point.hpp"

namespace gnfp {

namespace detail {
// splitmix64 finaliser
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

/// SplitMix64. Seeding is a single word, which matters because every trial
/// gets a fresh generator; mt19937_64 spends more time seeding than sampling.
class Rng {
public:
    using result_type = std::uint64_t;
    explicit constexpr Rng(std::uint64_t seed) : state_(seed) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    constexpr result_type operator()() { return detail::mix64(state_ += 0x9e3779b97f4a7c15ULL); }

private:
    std::uint64_t state_;
};

/// Independent generator for (seed, stream, index). Every sampled trial gets
/// its own stream so results do not depend on evaluation order.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    using detail::mix64;
    return Rng(mix64(mix64(mix64(seed + 0x9e3779b97f4a7c15ULL) ^ (stream + 0x632be59bd9b4e019ULL)) ^ index));
}

// std::uniform_real_distribution is implementation-defined; these are not.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)) % n;
}

/// Random point source plus the seed that makes a run reproducible.
template <Carrier P>
struct Sampler {
    std::function<P(Rng&)> draw;
    std::uint64_t seed = 0;

    P operator()(Rng& rng) const { return draw(rng); }
};

inline Sampler<double> uniform_real_sampler(std::uint64_t seed, double lo = -10.0, double hi = 10.0) {
    return {[lo, hi](Rng& rng) { return uniform(rng, lo, hi); }, seed};
}

template <std::size_t D>
Sampler<Vec<D>> uniform_box_sampler(std::uint64_t seed, double lo = -10.0, double hi = 10.0) {
    return {[lo, hi](Rng& rng) {
                Vec<D> v{};
                for (auto& c : v) c = uniform(rng, lo, hi);
                return v;
            },
            seed};
}

inline Sampler<BoundedFunctionPoint> uniform_table_sampler(GridPtr grid, std::uint64_t seed,
                                                           double lo = -10.0, double hi = 10.0) {
    return {[grid = std::move(grid), lo, hi](Rng& rng) {
                std::vector<double> values(grid->size());
                for (auto& v : values) v = uniform(rng, lo, hi);
                return BoundedFunctionPoint(grid, std::move(values));
            },
            seed};
}

template <Carrier P>
Sampler<P> constant_sampler(P value, std::uint64_t seed = 0) {
    return {[value = std::move(value)](Rng&) { return value; }, seed};
}

/// n draws; a quarter of the tuples get one entry overwritten by an earlier
/// one so that coincident points are exercised too.
template <Carrier P>
std::vector<P> draw_tuple(const Sampler<P>& sampler, Rng& rng, std::size_t n) {
    std::vector<P> t;
    t.reserve(n);
    for (std::size_t i = 0; i < n; ++i) t.push_back(sampler(rng));
    if (uniform01(rng) < 0.25) {
        const std::size_t dst = 1 + uniform_index(rng, n - 1);
        t[dst] = t[uniform_index(rng, dst)];
    }
    return t;
}

/// Fisher-Yates with the portable index draw.
template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

}  // namespace gnfp
