#pragma once

#include "hyperreal/geometry.hpp"
#include "hyperreal/moebius.hpp"

#include <cmath>
#include <random>

namespace hyperreal::fixtures {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

/// Random orientation-preserving map with entries of order one.
inline MoebiusMap random_map(Rng& rng)
{
    for (;;) {
        const double a = uniform(rng, -3, 3), b = uniform(rng, -3, 3);
        const double c = uniform(rng, -3, 3), d = uniform(rng, -3, 3);
        const double det = a * d - b * c;
        if (std::abs(det) < 0.2) {
            continue;
        }
        return det > 0 ? make_map(a, b, c, d) : make_map(b, a, d, c);
    }
}

/// Rotation, dilation and translation of moderate size. Long products of
/// conjugated generators lose digits with the square of the conjugator's
/// condition number, so tuple-level checks use these.
inline MoebiusMap random_moderate_map(Rng& rng)
{
    const double phi = uniform(rng, 0.0, 3.14159), s = uniform(rng, -1.0, 1.0), t = uniform(rng, -2.0, 2.0);
    const MoebiusMap rot = make_map(std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi));
    return rot * make_map(std::exp(s), t, 0.0, std::exp(-s));
}

inline MoebiusMap random_any_orientation(Rng& rng)
{
    const MoebiusMap m = random_map(rng);
    return std::bernoulli_distribution(0.5)(rng) ? m : make_map(m.a(), -m.b(), m.c(), -m.d());
}

inline HPoint random_hpoint(Rng& rng) { return {uniform(rng, -4, 4), uniform(rng, 0.2, 4)}; }

inline double random_shift(Rng& rng)
{
    const double l = std::exp(uniform(rng, 0.1, 3.0));
    return std::bernoulli_distribution(0.5)(rng) ? l : 1.0 / l;
}

/// Random geodesic; roughly one in ten has an endpoint at infinity.
inline Geodesic random_geodesic(Rng& rng)
{
    const double u = uniform(rng, -5, 5);
    double v = uniform(rng, -5, 5);
    while (std::abs(v - u) < 0.05) {
        v = uniform(rng, -5, 5);
    }
    if (std::uniform_int_distribution<int>(0, 9)(rng) == 0) {
        return make_geodesic(u, INFINITY);
    }
    return make_geodesic(u, v);
}

} // namespace hyperreal::fixtures
