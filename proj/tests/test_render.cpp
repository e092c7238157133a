#include <doctest.h>

#include <random>
#include <regex>

#include "genproj/render.hpp"

using namespace genproj;

namespace {

const Color kWhite{255, 255, 255};

ProjectionParamsd view_params(double p)
{
    ProjectionParamsd params;
    params.theta = 1.0;
    params.alpha = 4.0 / 3.0;
    params.near = 1;
    params.far = FiniteFar<double>{30};
    params.d = 6;
    params.p = p;
    return params;
}

Scene one_box(const Vec3d& center, const Vec3d& half = Vec3d(0.4, 0.4, 0.4))
{
    Scene s;
    s.primitives.emplace_back(Box{center, half, {200, 30, 30}});
    return s;
}

bool inside_clip(const Vec4d& v)
{
    const double slack = 1e-9 * std::max(1.0, std::abs(v.w()));
    return v.w() > 0 && std::abs(v.x()) <= v.w() + slack && std::abs(v.y()) <= v.w() + slack &&
           std::abs(v.z()) <= v.w() + slack;
}

} // namespace

TEST_CASE("clip_segment examples")
{
    const Vec4d a(0.1, 0.2, -0.3, 1), b(-0.5, 0.4, 0.9, 2);
    auto r = clip_segment(a, b);
    REQUIRE(r);
    CHECK(r->first == a);
    CHECK(r->second == b);

    CHECK_FALSE(clip_segment(Vec4d(0, 0, 2, 1), Vec4d(0.5, 0, 3, 1)));
    CHECK_FALSE(clip_segment(Vec4d(0, 0, 0, -1), Vec4d(0.5, 0, 0, -2)));

    r = clip_segment(Vec4d(0, 0, -3, 1), Vec4d(0, 0, 0.5, 1));
    REQUIRE(r);
    CHECK(std::abs(r->first.z() + r->first.w()) < 1e-9);
    CHECK(r->second == Vec4d(0, 0, 0.5, 1));
}

TEST_CASE("clip_segment matches brute-force sampling")
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 2000; ++i) {
        const Vec4d a(u(rng), u(rng), u(rng), u(rng));
        const Vec4d b(u(rng), u(rng), u(rng), u(rng));

        double t_min = 2, t_max = -1;
        constexpr int kSamples = 2000;
        for (int k = 0; k <= kSamples; ++k) {
            const double t = static_cast<double>(k) / kSamples;
            const Vec4d v = a + t * (b - a);
            if (v.w() > 0 && std::abs(v.x()) <= v.w() && std::abs(v.y()) <= v.w() && std::abs(v.z()) <= v.w()) {
                t_min = std::min(t_min, t);
                t_max = std::max(t_max, t);
            }
        }

        const auto r = clip_segment(a, b);
        if (!r) {
            // Anything inside must be a sliver narrower than the sample step.
            REQUIRE(t_max < t_min);
            continue;
        }
        REQUIRE(inside_clip(r->first));
        REQUIRE(inside_clip(r->second));
        if (t_max >= t_min) {
            // Recover the parameter of each endpoint along a -> b.
            const Vec4d ab = b - a;
            const double t0 = (r->first - a).dot(ab) / ab.squaredNorm();
            const double t1 = (r->second - a).dot(ab) / ab.squaredNorm();
            REQUIRE(t0 <= t_min + 1e-9);
            REQUIRE(t1 >= t_max - 1e-9);
            REQUIRE(t_min - t0 < 1.0 / kSamples + 1e-9);
            REQUIRE(t1 - t_max < 1.0 / kSamples + 1e-9);
        }
    }
}

TEST_CASE("clip_polygon keeps points inside the clip volume")
{
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 500; ++i) {
        std::vector<Vec4d> poly;
        for (int k = 0; k < 4; ++k)
            poly.emplace_back(u(rng), u(rng), u(rng), u(rng));
        for (const auto& v : clip_polygon(poly))
            REQUIRE(inside_clip(v));
    }
    const std::vector<Vec4d> inside{{-0.5, -0.5, 0, 1}, {0.5, -0.5, 0, 1}, {0.5, 0.5, 0, 1}};
    CHECK(clip_polygon(inside) == inside);
}

TEST_CASE("empty scene renders background only")
{
    const Image img = render(Scene{}, view_params(0.3), 64, 48);
    CHECK(img.count_not(kWhite) == 0);
    CHECK(img.width() == 64);
    CHECK(img.height() == 48);

    ProjectionParamsd bad = view_params(0.3);
    bad.alpha = -1;
    CHECK_THROWS_AS(render(Scene{}, bad, 64, 48), InvalidParams);
}

TEST_CASE("orthographic end ignores depth, perspective end does not")
{
    for (RenderMode mode : {RenderMode::Wireframe, RenderMode::Filled}) {
        RenderOptions opt;
        opt.mode = mode;
        const Scene near_box = one_box({0.5, 0.3, -4});
        const Scene far_box = one_box({0.5, 0.3, -12});

        const Image a = render(near_box, view_params(1), 160, 120, opt);
        const Image b = render(far_box, view_params(1), 160, 120, opt);
        CHECK(a.count_not(kWhite) > 0);
        CHECK(a == b);

        const Image c = render(near_box, view_params(0), 160, 120, opt);
        const Image d = render(far_box, view_params(0), 160, 120, opt);
        CHECK(d.count_not(kWhite) < c.count_not(kWhite));
    }
}

TEST_CASE("edge-on checkerboard vanishes at the orthographic end")
{
    const auto fig = builtin_scene("paper-fig1");
    REQUIRE(fig);
    Scene plane_only;
    plane_only.camera = fig->scene.camera;
    plane_only.primitives.push_back(fig->scene.primitives.front());
    REQUIRE(std::holds_alternative<CheckerPlane>(plane_only.primitives.front()));

    ProjectionParamsd params;
    params.theta = fig->fov_deg * std::numbers::pi / 180;
    params.alpha = 4.0 / 3.0;
    params.near = fig->near;
    params.far = FiniteFar<double>{fig->far};
    params.d = fig->d;

    RenderOptions filled;
    filled.mode = RenderMode::Filled;
    params.p = 1;
    CHECK(render(plane_only, params, 320, 240, filled).count_not(kWhite) == 0);
    params.p = 0;
    CHECK(render(plane_only, params, 320, 240, filled).count_not(kWhite) > 1000);
}

TEST_CASE("apparent size follows the fixed plane at distance d")
{
    RenderOptions filled;
    filled.mode = RenderMode::Filled;
    // d = 6 in view_params: one box beyond it, one in front of it. The boxes
    // are thin in z; a deep off-axis box also shows a side face whose visible
    // area shrinks toward the orthographic end regardless of distance.
    const Scene beyond = one_box({1.5, 0.5, -22}, {0.8, 0.8, 0.01});
    const Scene before = one_box({0.8, 0.3, -3}, {0.3, 0.3, 0.01});
    std::size_t prev_beyond = 0, prev_before = SIZE_MAX;
    for (int k = 0; k <= 10; ++k) {
        const double q = k / 10.0;
        const auto nb = render(beyond, view_params(q), 400, 300, filled).count_not(kWhite);
        const auto nf = render(before, view_params(q), 400, 300, filled).count_not(kWhite);
        CHECK(nb >= prev_beyond);
        CHECK(nf <= prev_before);
        prev_beyond = nb;
        prev_before = nf;
    }
    CHECK(render(beyond, view_params(1), 200, 150, filled).count_not(kWhite) >
          render(beyond, view_params(0), 200, 150, filled).count_not(kWhite));
}

TEST_CASE("render is deterministic")
{
    const auto fig = builtin_scene("paper-fig1");
    ProjectionParamsd params = view_params(0.4);
    params.far = FiniteFar<double>{60};
    for (RenderMode mode : {RenderMode::Wireframe, RenderMode::Filled}) {
        RenderOptions opt;
        opt.mode = mode;
        const Image a = render(fig->scene, params, 200, 150, opt);
        const Image b = render(fig->scene, params, 200, 150, opt);
        CHECK(a.bytes() == b.bytes());
    }
}

TEST_CASE("sweep layout")
{
    const auto fig = builtin_scene("paper-fig1");
    ProjectionParamsd base = view_params(0);
    base.alpha = 1.5;
    base.far = FiniteFar<double>{fig->far};
    base.near = fig->near;
    base.d = fig->d;

    SweepSpec spec = default_sweep(fig->scene, base);
    spec.panel_width = 90;
    spec.panel_height = 60;
    REQUIRE(spec.mappings.size() == 5);
    REQUIRE(spec.p_values.size() == 3);

    const Image grid = render_sweep(spec);
    CHECK(grid.width() == 3 * 90 + 2 * kSweepGutter);
    CHECK(grid.height() == 5 * 60 + 4 * kSweepGutter);

    for (int row = 0; row < 5; ++row)
        for (int col = 0; col < 3; ++col) {
            ProjectionParamsd params = base;
            params.mapping = spec.mappings[row];
            params.p = spec.p_values[col];
            const Image panel = render(fig->scene, params, 90, 60);
            const auto [x0, y0] = sweep_panel_origin(spec, row, col);
            bool same = true;
            for (int y = 0; y < 60 && same; ++y)
                for (int x = 0; x < 90 && same; ++x)
                    same = grid.at(x0 + x, y0 + y) == panel.at(x, y);
            CHECK(same);
        }
    // Gutter columns are black.
    for (int y = 0; y < grid.height(); ++y)
        CHECK(grid.at(90, y) == Color{0, 0, 0});

    SUBCASE("single panel equals render")
    {
        SweepSpec one;
        one.mappings = {IdentityMapping{}};
        one.p_values = {0.0};
        one.base = base;
        one.scene = fig->scene;
        one.panel_width = 90;
        one.panel_height = 60;
        CHECK(render_sweep(one) == render(fig->scene, base, 90, 60));
    }

    SUBCASE("power 1 matches identity")
    {
        SweepSpec two;
        two.mappings = {IdentityMapping{}, PowerMapping<double>{1}};
        two.p_values = {0.5};
        two.base = base;
        two.scene = fig->scene;
        two.panel_width = 90;
        two.panel_height = 60;
        const Image g = render_sweep(two);
        bool same = true;
        for (int y = 0; y < 60; ++y)
            for (int x = 0; x < 90; ++x)
                same = same && g.at(x, y) == g.at(x, y + 60 + kSweepGutter);
        CHECK(same);
    }

    SUBCASE("empty lists are rejected")
    {
        SweepSpec empty = spec;
        empty.p_values.clear();
        CHECK_THROWS_AS(render_sweep(empty), Error);
    }
}

TEST_CASE("svg export")
{
    const auto fig = builtin_scene("paper-fig1");
    ProjectionParamsd params = view_params(0.5);
    params.far = FiniteFar<double>{60};
    const std::string svg = render_svg(fig->scene, params, 320, 240);
    const auto lines = wireframe_lines(fig->scene, params, 320, 240);

    std::size_t count = 0;
    for (std::size_t pos = 0; (pos = svg.find("<line ", pos)) != std::string::npos; ++pos)
        ++count;
    CHECK(count == lines.size());
    CHECK(count > 0);
    CHECK(svg.find("viewBox=\"0 0 320 240\"") != std::string::npos);

    RenderOptions filled;
    filled.mode = RenderMode::Filled;
    CHECK_THROWS_AS(render_svg(fig->scene, params, 320, 240, filled), Error);
}

TEST_CASE("camera basis must be orthonormal")
{
    Scene s = one_box({0, 0, -5});
    s.camera.up = Vec3d(0, 2, 0);
    CHECK_THROWS_AS(render(s, view_params(0), 32, 32), Error);
}
