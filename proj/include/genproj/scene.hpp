#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "genproj/errors.hpp"
#include "genproj/linalg.hpp"

namespace genproj {

struct Color
{
    std::uint8_t r = 0, g = 0, b = 0;

    bool operator==(const Color&) const = default;
};

struct Box
{
    Vec3d center;
    Vec3d half_extents;
    Color color;
};

/// Quad origin + s*u_axis + t*v_axis, s, t in [0, 1], split into
/// cells x cells squares of alternating color.
struct CheckerPlane
{
    Vec3d origin;
    Vec3d u_axis;
    Vec3d v_axis;
    int cells = 1;
    Color color_a;
    Color color_b;
};

struct Segment
{
    Vec3d a;
    Vec3d b;
    Color color;
};

using Primitive = std::variant<Box, CheckerPlane, Segment>;

/// Rigid camera pose. Eye space is right-handed with the camera looking down -z.
struct Camera
{
    Vec3d position = Vec3d::Zero();
    Vec3d forward = -Vec3d::UnitZ();
    Vec3d up = Vec3d::UnitY();

    /// Orthonormal basis check, tolerance 1e-9.
    bool orthonormal() const;

    /// World-to-eye transform.
    Mat4d view() const;

    /// Camera at `eye` looking at `target`, with `up` re-orthogonalized.
    static Camera look_at(const Vec3d& eye, const Vec3d& target, const Vec3d& up);
};

struct Scene
{
    std::vector<Primitive> primitives;
    Camera camera;
};

/// Thrown on malformed scene text; carries the 1-based line number.
class SceneParseError : public Error
{
public:
    SceneParseError(std::size_t line, const std::string& what)
        : Error("scene line " + std::to_string(line) + ": " + what), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Parses the line-oriented scene format:
///
///     box cx cy cz hx hy hz r g b
///     plane ox oy oz ux uy uz vx vy vz cells r1 g1 b1 r2 g2 b2
///     segment ax ay az bx by bz r g b
///     camera px py pz fx fy fz ux uy uz
///
/// `#` starts a comment. Colors are 0..255.
Scene parse_scene(std::istream& in);
Scene parse_scene_string(std::string_view text);
Scene load_scene_file(const std::string& path);

/// A scene that ships with the library together with view settings that
/// frame it sensibly.
struct BuiltinScene
{
    Scene scene;
    double fov_deg;
    double near;
    double far;
    double d;
};

/// "paper-fig1": checkerboard ground plane viewed edge-on plus boxes at
/// several depths. Returns nullopt for unknown names.
std::optional<BuiltinScene> builtin_scene(std::string_view name);

} // namespace genproj
