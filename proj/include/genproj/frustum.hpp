#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "genproj/errors.hpp"
#include "genproj/linalg.hpp"

namespace genproj {

inline constexpr double kDegenerateW = 1e-12;

template <typename Scalar>
struct ProjectedPoint
{
    NdcPoint<Scalar> ndc;
    Scalar w_clip;
};

/// Eight eye-space corners of the volume that maps onto the NDC cube.
///
/// Corner index bits: bit 2 selects near (0) / far (1), bit 1 bottom (0) /
/// top (1), bit 0 left (0) / right (1). So corners[0] is near-bottom-left and
/// corners[7] is far-top-right.
template <typename Scalar>
struct Frustum
{
    std::array<Vec3<Scalar>, 8> corners;

    static constexpr std::size_t index(bool far, bool top, bool right)
    {
        return (far ? 4u : 0u) | (top ? 2u : 0u) | (right ? 1u : 0u);
    }

    const Vec3<Scalar>& corner(bool far, bool top, bool right) const
    {
        return corners[index(far, top, right)];
    }

    Vec3<Scalar> centroid() const
    {
        Vec3<Scalar> sum = Vec3<Scalar>::Zero();
        for (const auto& c : corners)
            sum += c;
        return sum / Scalar(8);
    }
};

/// NDC cube corner matching Frustum::index ordering.
template <typename Scalar>
NdcPoint<Scalar> ndc_cube_corner(std::size_t i)
{
    return {(i & 1u) ? Scalar(1) : Scalar(-1),
            (i & 2u) ? Scalar(1) : Scalar(-1),
            (i & 4u) ? Scalar(1) : Scalar(-1)};
}

template <typename Scalar>
ProjectedPoint<Scalar> project_point(const Mat4<Scalar>& m, const Vec3<Scalar>& eye)
{
    const Vec4<Scalar> clip = m * eye.homogeneous();
    if (!(std::abs(clip.w()) >= Scalar(kDegenerateW)))
        throw DegenerateW();
    return {clip.template head<3>() / clip.w(), clip.w()};
}

/// Eye-space point that projects to `ndc`, via the inverse matrix.
template <typename Scalar>
Vec3<Scalar> unproject(const Mat4<Scalar>& inverse, const NdcPoint<Scalar>& ndc)
{
    const Vec4<Scalar> eye = inverse * ndc.homogeneous();
    if (!(std::abs(eye.w()) >= Scalar(kDegenerateW)))
        throw DegenerateW();
    return eye.template head<3>() / eye.w();
}

/// Throws Singular for non-invertible matrices (for example an infinite far
/// plane at q = 1) and DegenerateW when a cube corner maps to infinity (an
/// infinite far plane at q < 1).
template <typename Scalar>
Frustum<Scalar> frustum_corners(const Mat4<Scalar>& m)
{
    const Mat4<Scalar> inverse = mat4_inverse(m);
    Frustum<Scalar> out;
    for (std::size_t i = 0; i < 8; ++i)
        out.corners[i] = unproject(inverse, ndc_cube_corner<Scalar>(i));
    return out;
}

/// Clip-space containment: w > 0 and |x|, |y|, |z| <= w. Valid for every
/// blend factor because it never divides by w.
template <typename Scalar>
bool contains(const Mat4<Scalar>& m, const Vec3<Scalar>& eye)
{
    const Vec4<Scalar> clip = m * eye.homogeneous();
    const Scalar w = clip.w();
    return w > Scalar(0) && std::abs(clip.x()) <= w && std::abs(clip.y()) <= w && std::abs(clip.z()) <= w;
}

} // namespace genproj
