#pragma once

// Test-only reference computations. These deliberately avoid the library's
// builders and Eigen: matrices are plain row-major arrays filled the way the
// blend is usually written in engine code (build both endpoint matrices,
// blend every entry, then overwrite shear and infinite-depth entries).

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "genproj/projection.hpp"

namespace oracle {

using Rows = std::array<std::array<double, 4>, 4>;

inline Rows zero()
{
    Rows m{};
    for (auto& r : m)
        r.fill(0.0);
    return m;
}

inline Rows perspective(double theta, double alpha, double n, double f)
{
    Rows m = zero();
    const double c = std::cos(theta / 2) / std::sin(theta / 2);
    m[0][0] = c / alpha;
    m[1][1] = c;
    m[2][2] = -(f + n) / (f - n);
    m[2][3] = 2 * f * n / (n - f);
    m[3][2] = -1;
    return m;
}

inline Rows ortho(double r, double t, double n, double f)
{
    Rows m = zero();
    m[0][0] = 1 / r;
    m[1][1] = 1 / t;
    m[2][2] = -2 / (f - n);
    m[2][3] = -(f + n) / (f - n);
    m[3][3] = 1;
    return m;
}

// Blend with an already-mapped q. far <= 0 selects the infinite variant.
inline Rows blended(double theta, double alpha, double n, double f, double q, double d, double sh, double sv,
                    double eps)
{
    const double t = std::tan(theta / 2) * d;
    const double r = t * alpha;
    const double fin = f > 0 ? f : 2 * n;
    const Rows pm = perspective(theta, alpha, n, fin);
    const Rows om = ortho(r, t, n, fin);
    Rows m = zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m[i][j] = (1 - q) * pm[i][j] + q * om[i][j];
    m[0][2] = (1 - q) * sh + q * (sh / d);
    m[1][2] = (1 - q) * sv + q * (sv / d);
    if (f <= 0) {
        m[2][2] = (1 - q) * (eps - 1);
        m[2][3] = (1 - q) * ((eps - 2) * n) + q * (eps - 1);
    }
    return m;
}

/// Random parameter sets inside the valid region, finite far plane.
struct ParamSampler
{
    std::mt19937_64 rng;
    bool with_shear = true;

    explicit ParamSampler(std::uint64_t seed, bool shear = true) : rng(seed), with_shear(shear) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

    genproj::ProjectionParamsd next()
    {
        genproj::ProjectionParamsd p;
        p.theta = uniform(0.05, std::numbers::pi - 0.05);
        p.alpha = uniform(0.25, 4.0);
        p.near = uniform(0.01, 10.0);
        p.far = genproj::FiniteFar<double>{p.near + uniform(0.5, 1000.0)};
        p.p = uniform(0.0, 1.0);
        p.d = uniform(0.1, 100.0);
        if (with_shear) {
            p.shear_h = uniform(-2.0, 2.0);
            p.shear_v = uniform(-2.0, 2.0);
        }
        return p;
    }
};

inline double far_of(const genproj::ProjectionParamsd& p)
{
    return std::get<genproj::FiniteFar<double>>(p.far).distance;
}

} // namespace oracle
