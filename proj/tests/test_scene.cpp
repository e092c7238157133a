#include <doctest.h>

#include <sstream>

#include "genproj/image.hpp"
#include "genproj/scene.hpp"

using namespace genproj;

TEST_CASE("scene text format")
{
    const Scene s = parse_scene_string(R"(# a comment
box 0 1 -5   0.5 0.5 0.5   255 0 0
plane -1 0 0  2 0 0  0 0 -2  4  10 10 10 200 200 200  # trailing comment

segment 0 0 0 1 1 1 0 128 255
)");
    REQUIRE(s.primitives.size() == 3);
    const auto& box = std::get<Box>(s.primitives[0]);
    CHECK(box.center == Vec3d(0, 1, -5));
    CHECK(box.color == Color{255, 0, 0});
    const auto& plane = std::get<CheckerPlane>(s.primitives[1]);
    CHECK(plane.cells == 4);
    CHECK(plane.v_axis == Vec3d(0, 0, -2));
    CHECK(plane.color_b == Color{200, 200, 200});
    const auto& seg = std::get<Segment>(s.primitives[2]);
    CHECK(seg.b == Vec3d(1, 1, 1));
    CHECK(s.camera.orthonormal());
}

TEST_CASE("scene parse errors carry line numbers")
{
    auto line_of = [](const char* text) {
        try {
            parse_scene_string(text);
        } catch (const SceneParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("\nbox 0 0 0 1 1 1 255 0") == 2);
    CHECK(line_of("sphere 0 0 0 1") == 1);
    CHECK(line_of("box 0 0 0 0 1 1 255 0 0") == 1);
    CHECK(line_of("box 0 0 0 1 1 1 256 0 0") == 1);
    CHECK(line_of("plane 0 0 0 1 0 0 0 0 1 0 1 1 1 2 2 2") == 1);
    CHECK(line_of("segment 0 0 x 1 1 1 0 0 0") == 1);
    CHECK(line_of("# nothing\n\n") == 0);
    CHECK(parse_scene_string("").primitives.empty());
}

TEST_CASE("camera view transform")
{
    const Scene s = parse_scene_string("camera 0 2 5  0 0 -1  0 1 0\n");
    const Mat4d v = s.camera.view();
    const Vec4d eye = v * Vec4d(1, 2, 0, 1);
    CHECK((eye - Vec4d(1, 0, -5, 1)).norm() < 1e-12);

    const Camera c = Camera::look_at({3, 3, 3}, {0, 0, 0}, {0, 1, 0});
    CHECK(c.orthonormal());
    const Vec4d target = c.view() * Vec4d(0, 0, 0, 1);
    CHECK(std::abs(target.x()) < 1e-12);
    CHECK(std::abs(target.y()) < 1e-12);
    CHECK(target.z() == doctest::Approx(-std::sqrt(27.0)));
}

TEST_CASE("builtin scene")
{
    const auto fig = builtin_scene("paper-fig1");
    REQUIRE(fig);
    CHECK(fig->scene.camera.orthonormal());
    CHECK(fig->near < fig->d);
    CHECK(fig->d < fig->far);
    CHECK_FALSE(builtin_scene("nope"));
}

TEST_CASE("ppm round trip")
{
    Image img(3, 2, {1, 2, 3});
    img.set(2, 1, {250, 0, 7});
    std::stringstream buf;
    write_ppm(buf, img);
    CHECK(buf.str().rfind("P6\n3 2\n255\n", 0) == 0);
    CHECK(read_ppm(buf) == img);
}
