#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "genproj/errors.hpp"

namespace genproj {

// Fixed-size dense types. Mat4 is stored row-major and indexed M(row, col),
// matching the way projection matrices are written out on paper.
template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;

template <typename Scalar>
using Mat4 = Eigen::Matrix<Scalar, 4, 4, Eigen::RowMajor>;

using Vec3d = Vec3<double>;
using Vec4d = Vec4<double>;
using Mat4d = Mat4<double>;

/// Point after the perspective divide.
template <typename Scalar>
using NdcPoint = Vec3<Scalar>;

inline constexpr double kSingularDeterminant = 1e-12;

/// l(x, y, z) = x(1 - z) + yz, evaluated exactly in that form so the
/// endpoints z = 0 and z = 1 reproduce x and y bit-for-bit.
template <typename Scalar>
constexpr Scalar lerp(Scalar x, Scalar y, Scalar z)
{
    return x * (Scalar(1) - z) + y * z;
}

template <typename Scalar>
Vec4<Scalar> mat4_mul_vec4(const Mat4<Scalar>& m, const Vec4<Scalar>& v)
{
    return m * v;
}

/// Inverse of a 4x4 matrix; throws Singular when |det| < 1e-12.
template <typename Scalar>
Mat4<Scalar> mat4_inverse(const Mat4<Scalar>& m)
{
    Mat4<Scalar> inv;
    Scalar det{};
    bool invertible = false;
    m.computeInverseAndDetWithCheck(inv, det, invertible, Scalar(kSingularDeterminant));
    if (!invertible || !std::isfinite(det))
        throw Singular();
    return inv;
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& x)
{
    return x.allFinite();
}

} // namespace genproj
