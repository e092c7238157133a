#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <variant>

#include "genproj/errors.hpp"
#include "genproj/linalg.hpp"

namespace genproj {

// ---------------------------------------------------------------------------
// Parameter types
// ---------------------------------------------------------------------------

template <typename Scalar>
struct FiniteFar
{
    Scalar distance;
};

/// Far plane at infinity. epsilon = 0 is the exact limit; a small positive
/// epsilon trades a sliver of depth range for precision.
template <typename Scalar>
struct InfiniteFar
{
    Scalar epsilon = Scalar(0);
};

template <typename Scalar>
using FarMode = std::variant<FiniteFar<Scalar>, InfiniteFar<Scalar>>;

struct IdentityMapping
{
};

/// m(x) = x^(1/c), c > 0.
template <typename Scalar>
struct PowerMapping
{
    Scalar c;
};

template <typename Scalar>
using MappingFunction = std::variant<IdentityMapping, PowerMapping<Scalar>>;

/// Half extents of a symmetric orthographic box.
template <typename Scalar>
struct OrthoExtents
{
    Scalar r; ///< center to right edge
    Scalar t; ///< center to top edge
};

/// Everything needed to build a generalized projection.
///
/// `theta` is the vertical field of view in radians, `alpha` the aspect
/// ratio, `p` the orthographic fraction before mapping, and `d` the eye-space
/// distance at which the perspective and orthographic cross-sections agree.
/// Shear moves the far face: a vertical shear of 1 lifts it by half its height.
template <typename Scalar>
struct ProjectionParams
{
    Scalar theta = std::numbers::pi_v<Scalar> / Scalar(3);
    Scalar alpha = Scalar(1);
    Scalar near = Scalar(1);
    FarMode<Scalar> far = FiniteFar<Scalar>{Scalar(100)};
    Scalar p = Scalar(0);
    Scalar d = Scalar(1);
    Scalar shear_h = Scalar(0);
    Scalar shear_v = Scalar(0);
    MappingFunction<Scalar> mapping = IdentityMapping{};
};

using ProjectionParamsd = ProjectionParams<double>;

/// Below this a nonzero epsilon is likely to be lost to float depth precision.
inline constexpr double kMinRecommendedEpsilon = 0x1p-21;

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace detail {

// Comparisons are written so that NaN fails every check.
template <typename Scalar>
bool positive(Scalar x)
{
    return x > Scalar(0) && std::isfinite(x);
}

template <typename Scalar>
bool open_angle(Scalar theta)
{
    return theta > Scalar(0) && theta < std::numbers::pi_v<Scalar>;
}

inline void violate(ValidationReport& report, const char* param, const char* text)
{
    report.violations.push_back({param, text});
}

inline void warn(ValidationReport& report, const char* param, const char* text)
{
    report.warnings.push_back({param, text});
}

} // namespace detail

/// Checks every parameter restriction. Each restriction contributes at most
/// one violation, so a parameter broken in isolation is reported exactly once.
template <typename Scalar>
ValidationReport validate(const ProjectionParams<Scalar>& params)
{
    using namespace detail;
    ValidationReport report;

    if (!open_angle(params.theta))
        violate(report, "theta", "0 < theta < pi (0 < theta < 180 in degrees)");
    if (!positive(params.alpha))
        violate(report, "alpha", "alpha > 0");
    if (!(params.p >= Scalar(0) && params.p <= Scalar(1)))
        violate(report, "p", "0 <= p <= 1");
    if (!positive(params.d))
        violate(report, "d", "d > 0");
    if (!positive(params.near))
        violate(report, "near", "near > 0");
    if (!std::isfinite(params.shear_h))
        violate(report, "shear_h", "shear_h must be finite");
    if (!std::isfinite(params.shear_v))
        violate(report, "shear_v", "shear_v must be finite");

    if (const auto* finite = std::get_if<FiniteFar<Scalar>>(&params.far)) {
        const Scalar f = finite->distance;
        if (!positive(f))
            violate(report, "far", "far > 0");
        else if (!(params.near < f) && positive(params.near))
            violate(report, "far", "near < far");
        else if (positive(params.d) && positive(params.near) && (params.d < params.near || params.d > f))
            warn(report, "d", "d lies outside [near, far]; allowed, but the equivalence plane is not drawn");
    } else {
        const Scalar eps = std::get<InfiniteFar<Scalar>>(params.far).epsilon;
        if (!(eps >= Scalar(0) && std::isfinite(eps)))
            violate(report, "epsilon", "epsilon >= 0");
        else if (eps > Scalar(0) && eps < Scalar(kMinRecommendedEpsilon))
            warn(report, "epsilon", "epsilon below 2^-21 may be lost to depth precision");
        if (positive(params.d) && positive(params.near) && params.d < params.near)
            warn(report, "d", "d lies outside [near, far]; allowed, but the equivalence plane is not drawn");
    }

    if (const auto* power = std::get_if<PowerMapping<Scalar>>(&params.mapping)) {
        if (!positive(power->c))
            violate(report, "mapping", "power mapping constant c > 0");
    }
    return report;
}

template <typename Scalar>
void require_valid(const ProjectionParams<Scalar>& params)
{
    auto report = validate(params);
    if (!report.ok())
        throw InvalidParams(std::move(report));
}

// ---------------------------------------------------------------------------
// Parameterization helpers
// ---------------------------------------------------------------------------

template <typename Scalar>
Scalar apply_mapping(const MappingFunction<Scalar>& mapping, Scalar p)
{
    if (!(p >= Scalar(0) && p <= Scalar(1)))
        throw InvalidParams("p", "0 <= p <= 1");
    if (const auto* power = std::get_if<PowerMapping<Scalar>>(&mapping)) {
        if (!detail::positive(power->c))
            throw InvalidParams("mapping", "power mapping constant c > 0");
        // pow(0, k) and pow(1, k) are exact for k > 0, so the endpoints hold.
        return std::pow(p, Scalar(1) / power->c);
    }
    return p;
}

template <typename Scalar>
OrthoExtents<Scalar> ortho_extents_from_fov(Scalar theta, Scalar alpha, Scalar d)
{
    ValidationReport report;
    if (!detail::open_angle(theta))
        detail::violate(report, "theta", "0 < theta < pi");
    if (!detail::positive(alpha))
        detail::violate(report, "alpha", "alpha > 0");
    if (!detail::positive(d))
        detail::violate(report, "d", "d > 0");
    if (!report.ok())
        throw InvalidParams(std::move(report));

    const Scalar t = std::tan(theta / Scalar(2)) * d;
    return {alpha * t, t};
}

/// Aspect ratio implied by a vertical and a horizontal field of view.
template <typename Scalar>
Scalar alpha_from_fovs(Scalar theta, Scalar theta_h)
{
    if (!detail::open_angle(theta))
        throw InvalidParams("theta", "0 < theta < pi");
    if (!detail::open_angle(theta_h))
        throw InvalidParams("theta_h", "0 < theta_h < pi");
    return theta_h / theta;
}

/// Vertical field of view from a horizontal one and an aspect ratio.
template <typename Scalar>
Scalar theta_from_horizontal(Scalar theta_h, Scalar alpha)
{
    if (!detail::open_angle(theta_h))
        throw InvalidParams("theta_h", "0 < theta_h < pi");
    if (!detail::positive(alpha))
        throw InvalidParams("alpha", "alpha > 0");
    const Scalar theta = theta_h / alpha;
    if (!detail::open_angle(theta))
        throw InvalidParams("theta", "theta_h / alpha must lie in (0, pi)");
    return theta;
}

// ---------------------------------------------------------------------------
// Classical builders
// ---------------------------------------------------------------------------

namespace detail {

template <typename Scalar>
void require_depth_range(ValidationReport& report, Scalar n, Scalar f)
{
    if (!positive(n))
        violate(report, "near", "near > 0");
    if (!positive(f))
        violate(report, "far", "far > 0");
    else if (positive(n) && !(n < f))
        violate(report, "far", "near < far");
}

template <typename Scalar>
Scalar cot_half(Scalar theta)
{
    return Scalar(1) / std::tan(theta / Scalar(2));
}

} // namespace detail

/// GL-style perspective projection, right-handed eye space looking down -z,
/// depth mapped to [-1, 1].
template <typename Scalar>
Mat4<Scalar> perspective(Scalar theta, Scalar alpha, Scalar n, Scalar f)
{
    ValidationReport report;
    if (!detail::open_angle(theta))
        detail::violate(report, "theta", "0 < theta < pi");
    if (!detail::positive(alpha))
        detail::violate(report, "alpha", "alpha > 0");
    detail::require_depth_range(report, n, f);
    if (!report.ok())
        throw InvalidParams(std::move(report));

    const Scalar cot = detail::cot_half(theta);
    Mat4<Scalar> m = Mat4<Scalar>::Zero();
    m(0, 0) = cot / alpha;
    m(1, 1) = cot;
    m(2, 2) = -(f + n) / (f - n);
    m(2, 3) = -Scalar(2) * f * n / (f - n);
    m(3, 2) = Scalar(-1);
    return m;
}

/// GL-style symmetric orthographic projection.
template <typename Scalar>
Mat4<Scalar> orthographic(const OrthoExtents<Scalar>& extents, Scalar n, Scalar f)
{
    ValidationReport report;
    if (!detail::positive(extents.r))
        detail::violate(report, "r", "r > 0");
    if (!detail::positive(extents.t))
        detail::violate(report, "t", "t > 0");
    detail::require_depth_range(report, n, f);
    if (!report.ok())
        throw InvalidParams(std::move(report));

    Mat4<Scalar> m = Mat4<Scalar>::Zero();
    m(0, 0) = Scalar(1) / extents.r;
    m(1, 1) = Scalar(1) / extents.t;
    m(2, 2) = Scalar(-2) / (f - n);
    m(2, 3) = -(f + n) / (f - n);
    m(3, 3) = Scalar(1);
    return m;
}

// ---------------------------------------------------------------------------
// Generalized builder
// ---------------------------------------------------------------------------

/// Orthographic fraction after the mapping function, used by every blend.
template <typename Scalar>
Scalar blend_factor(const ProjectionParams<Scalar>& params)
{
    return apply_mapping(params.mapping, params.p);
}

/// Single projection matrix that blends perspective (q = 0) into
/// orthographic (q = 1), where q is p passed through the mapping function.
///
/// The x/y scales interpolate between cot(theta/2) and the reciprocal of the
/// orthographic extents taken at distance d, which keeps the cross-section at
/// depth -d fixed for every q. Shear entries interpolate between s and s/d so
/// the far-face center lands in the same place at both endpoints. With an
/// infinite far plane the depth row is the f -> inf limit, optionally
/// perturbed by epsilon.
template <typename Scalar>
Mat4<Scalar> generalized(const ProjectionParams<Scalar>& params)
{
    require_valid(params);

    const Scalar q = blend_factor(params);
    const Scalar n = params.near;
    const Scalar d = params.d;
    const Scalar cot = detail::cot_half(params.theta);
    const auto extents = ortho_extents_from_fov(params.theta, params.alpha, d);

    Mat4<Scalar> m = Mat4<Scalar>::Zero();
    m(0, 0) = lerp(cot / params.alpha, Scalar(1) / extents.r, q);
    m(1, 1) = lerp(cot, Scalar(1) / extents.t, q);
    m(0, 2) = lerp(params.shear_h, params.shear_h / d, q);
    m(1, 2) = lerp(params.shear_v, params.shear_v / d, q);

    if (const auto* finite = std::get_if<FiniteFar<Scalar>>(&params.far)) {
        const Scalar f = finite->distance;
        m(2, 2) = lerp(-(f + n) / (f - n), Scalar(-2) / (f - n), q);
        m(2, 3) = lerp(-Scalar(2) * f * n / (f - n), -(f + n) / (f - n), q);
    } else {
        const Scalar eps = std::get<InfiniteFar<Scalar>>(params.far).epsilon;
        m(2, 2) = lerp(eps - Scalar(1), Scalar(0), q);
        m(2, 3) = lerp((eps - Scalar(2)) * n, eps - Scalar(1), q);
    }

    m(3, 2) = q - Scalar(1);
    m(3, 3) = q;
    return m;
}

} // namespace genproj
