#include "genproj/scene.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace genproj {

bool Camera::orthonormal() const
{
    constexpr double tol = 1e-9;
    return std::abs(forward.norm() - 1.0) < tol && std::abs(up.norm() - 1.0) < tol &&
           std::abs(forward.dot(up)) < tol;
}

Mat4d Camera::view() const
{
    const Vec3d right = forward.cross(up);
    Mat4d v = Mat4d::Identity();
    v.block<1, 3>(0, 0) = right.transpose();
    v.block<1, 3>(1, 0) = up.transpose();
    v.block<1, 3>(2, 0) = -forward.transpose();
    v(0, 3) = -right.dot(position);
    v(1, 3) = -up.dot(position);
    v(2, 3) = forward.dot(position);
    return v;
}

Camera Camera::look_at(const Vec3d& eye, const Vec3d& target, const Vec3d& up)
{
    Camera cam;
    cam.position = eye;
    cam.forward = (target - eye).normalized();
    const Vec3d right = cam.forward.cross(up).normalized();
    cam.up = right.cross(cam.forward).normalized();
    return cam;
}

namespace {

class LineReader
{
public:
    LineReader(std::string_view line, std::size_t number) : number_(number)
    {
        std::istringstream tokens{std::string(line)};
        std::string tok;
        while (tokens >> tok)
            tokens_.push_back(tok);
    }

    bool empty() const { return tokens_.empty(); }
    const std::string& keyword() const { return tokens_.front(); }

    void expect_count(std::size_t n) const
    {
        if (tokens_.size() != n + 1)
            throw SceneParseError(number_, "'" + keyword() + "' expects " + std::to_string(n) + " numbers, got " +
                                               std::to_string(tokens_.size() - 1));
    }

    double number()
    {
        const std::string& tok = tokens_.at(next_++);
        double value = 0;
        const char* end = tok.data() + tok.size();
        auto [ptr, ec] = std::from_chars(tok.data(), end, value);
        if (ec != std::errc{} || ptr != end || !std::isfinite(value))
            throw SceneParseError(number_, "not a finite decimal: '" + tok + "'");
        return value;
    }

    Vec3d vec3()
    {
        const double x = number();
        const double y = number();
        const double z = number();
        return {x, y, z};
    }

    Color color()
    {
        std::uint8_t c[3];
        for (auto& channel : c) {
            const double v = number();
            if (v < 0 || v > 255)
                throw SceneParseError(number_, "color channel outside [0, 255]");
            channel = static_cast<std::uint8_t>(std::lround(v));
        }
        return {c[0], c[1], c[2]};
    }

    std::size_t line() const { return number_; }

private:
    std::vector<std::string> tokens_;
    std::size_t next_ = 1;
    std::size_t number_;
};

} // namespace

Scene parse_scene(std::istream& in)
{
    Scene scene;
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (const auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        LineReader line(raw, number);
        if (line.empty())
            continue;

        const std::string kw = line.keyword();
        if (kw == "box") {
            line.expect_count(9);
            Box box{line.vec3(), line.vec3(), line.color()};
            if ((box.half_extents.array() <= 0.0).any())
                throw SceneParseError(number, "box half-extents must be positive");
            scene.primitives.emplace_back(box);
        } else if (kw == "plane") {
            line.expect_count(16);
            CheckerPlane plane;
            plane.origin = line.vec3();
            plane.u_axis = line.vec3();
            plane.v_axis = line.vec3();
            const double cells = line.number();
            if (cells < 1 || cells != std::floor(cells) || cells > 4096)
                throw SceneParseError(number, "plane cells must be an integer in [1, 4096]");
            plane.cells = static_cast<int>(cells);
            plane.color_a = line.color();
            plane.color_b = line.color();
            scene.primitives.emplace_back(plane);
        } else if (kw == "segment") {
            line.expect_count(9);
            Segment seg{line.vec3(), line.vec3(), line.color()};
            scene.primitives.emplace_back(seg);
        } else if (kw == "camera") {
            line.expect_count(9);
            const Vec3d pos = line.vec3();
            const Vec3d fwd = line.vec3();
            const Vec3d up = line.vec3();
            if (fwd.norm() == 0 || fwd.cross(up).norm() < 1e-12)
                throw SceneParseError(number, "camera forward and up must be non-zero and not parallel");
            scene.camera = Camera::look_at(pos, pos + fwd, up);
        } else {
            throw SceneParseError(number, "unknown primitive '" + kw + "'");
        }
    }
    return scene;
}

Scene parse_scene_string(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_scene(in);
}

Scene load_scene_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open scene file '" + path + "'");
    return parse_scene(in);
}

std::optional<BuiltinScene> builtin_scene(std::string_view name)
{
    if (name != "paper-fig1")
        return std::nullopt;

    BuiltinScene out;
    Scene& s = out.scene;
    // Ground plane at y = 0 under a camera that looks horizontally, so the
    // view direction is parallel to the plane.
    s.camera.position = {0.0, 1.5, 6.0};
    s.camera.forward = -Vec3d::UnitZ();
    s.camera.up = Vec3d::UnitY();

    s.primitives.emplace_back(CheckerPlane{{-8.0, 0.0, 2.0}, {16.0, 0.0, 0.0}, {0.0, 0.0, -32.0}, 16,
                                           {230, 230, 230}, {60, 60, 60}});
    s.primitives.emplace_back(Box{{-2.5, 0.75, -1.0}, {0.75, 0.75, 0.75}, {200, 40, 40}});
    s.primitives.emplace_back(Box{{2.0, 1.0, -6.0}, {1.0, 1.0, 1.0}, {40, 160, 60}});
    s.primitives.emplace_back(Box{{-1.0, 0.5, -12.0}, {0.5, 0.5, 0.5}, {40, 80, 200}});
    s.primitives.emplace_back(Box{{4.0, 1.5, -18.0}, {1.5, 1.5, 1.5}, {230, 150, 30}});

    out.fov_deg = 60.0;
    out.near = 0.5;
    out.far = 60.0;
    out.d = 12.0;
    return out;
}

} // namespace genproj
