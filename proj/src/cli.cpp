#include "genproj/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "genproj/frustum.hpp"
#include "genproj/projection.hpp"
#include "genproj/render.hpp"
#include "genproj/scene.hpp"

namespace genproj::cli {

namespace {

using nlohmann::json;

// Usage-level failure: bad flag values, unreadable files, missing inputs.
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

double deg_to_rad(double deg)
{
    return deg * std::numbers::pi / 180.0;
}

std::optional<double> parse_double(std::string_view text)
{
    double value = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        return std::nullopt;
    return value;
}

MappingFunction<double> parse_mapping(const std::string& text)
{
    if (text == "identity")
        return IdentityMapping{};
    if (text.rfind("pow:", 0) == 0) {
        if (auto c = parse_double(std::string_view(text).substr(4)))
            return PowerMapping<double>{*c};
    }
    throw UsageError("--mapping expects 'identity' or 'pow:<c>', got '" + text + "'");
}

std::string mapping_name(const MappingFunction<double>& m)
{
    if (const auto* power = std::get_if<PowerMapping<double>>(&m))
        return "pow:" + format_number(power->c, 17);
    return "identity";
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

// Flags shared by every subcommand that builds a projection.
struct ParamFlags
{
    std::optional<double> fov_deg;
    std::optional<double> fov_rad;
    std::optional<double> hfov_deg;
    std::optional<double> aspect;
    std::optional<double> near;
    std::optional<std::string> far;
    double p = 0.0;
    std::optional<double> d;
    double shear_h = 0.0;
    double shear_v = 0.0;
    double epsilon = 0.0;
    std::string mapping = "identity";

    void attach(CLI::App& app)
    {
        auto* deg = app.add_option("--fov-deg", fov_deg, "vertical field of view in degrees");
        auto* rad = app.add_option("--fov-rad", fov_rad, "vertical field of view in radians");
        deg->excludes(rad);
        app.add_option("--hfov-deg", hfov_deg,
                       "horizontal field of view in degrees; with --fov-* it sets the aspect ratio, "
                       "otherwise it sets the vertical FOV from --aspect");
        app.add_option("--aspect", aspect, "aspect ratio width/height");
        app.add_option("--near", near, "near plane distance");
        app.add_option("--far", far, "far plane distance, or 'inf' for an infinite far plane")
            ->allow_extra_args(false);
        app.add_option("--p", p, "orthographic fraction in [0, 1] before mapping");
        app.add_option("--d", d, "distance at which perspective and orthographic cross-sections agree");
        app.add_option("--shear-h", shear_h, "horizontal shear");
        app.add_option("--shear-v", shear_v, "vertical shear");
        app.add_option("--epsilon", epsilon, "infinite far plane depth tweak");
        app.add_option("--mapping", mapping, "identity | pow:<c>");
    }
};

// Values a subcommand falls back on when a flag is absent.
struct ParamDefaults
{
    std::optional<double> fov_deg;
    double aspect = 1.0;
    std::optional<double> near;
    std::optional<double> far;
    std::optional<double> d;
};

struct ResolvedParams
{
    ProjectionParamsd params;
    // Conversion failures (e.g. horizontal FOV that yields theta >= pi) are
    // reported alongside the regular validation.
    ValidationReport conversion;
};

ResolvedParams resolve(const ParamFlags& flags, const ParamDefaults& defaults, std::ostream& err)
{
    ResolvedParams out;
    ProjectionParamsd& params = out.params;

    std::optional<double> theta;
    if (flags.fov_deg)
        theta = deg_to_rad(*flags.fov_deg);
    else if (flags.fov_rad)
        theta = *flags.fov_rad;

    params.alpha = flags.aspect.value_or(defaults.aspect);
    if (flags.hfov_deg) {
        const double theta_h = deg_to_rad(*flags.hfov_deg);
        try {
            if (theta) {
                if (flags.aspect)
                    throw UsageError("--hfov-deg with --fov-* derives the aspect ratio; drop --aspect");
                params.alpha = alpha_from_fovs(*theta, theta_h);
            } else {
                theta = theta_from_horizontal(theta_h, params.alpha);
            }
        } catch (const InvalidParams& e) {
            for (const auto& v : e.report().violations)
                out.conversion.violations.push_back(v);
            if (!theta)
                theta = std::numeric_limits<double>::quiet_NaN();
        }
    }
    if (!theta && defaults.fov_deg)
        theta = deg_to_rad(*defaults.fov_deg);
    if (!theta)
        throw UsageError("a field of view is required (--fov-deg, --fov-rad or --hfov-deg)");
    params.theta = *theta;

    if (!flags.near && !defaults.near)
        throw UsageError("--near is required");
    params.near = flags.near ? *flags.near : *defaults.near;

    if (flags.far) {
        const std::string& f = *flags.far;
        if (f == "inf" || f == "infinity") {
            params.far = InfiniteFar<double>{flags.epsilon};
        } else if (auto v = parse_double(f)) {
            if (*v == -1.0) {
                err << "note: '--far -1' is deprecated; use '--far inf'\n";
                params.far = InfiniteFar<double>{flags.epsilon};
            } else {
                params.far = FiniteFar<double>{*v};
            }
        } else {
            throw UsageError("--far expects a number or 'inf', got '" + f + "'");
        }
    } else if (defaults.far) {
        params.far = FiniteFar<double>{*defaults.far};
    } else {
        throw UsageError("--far is required");
    }
    if (std::holds_alternative<FiniteFar<double>>(params.far) && flags.epsilon != 0.0)
        err << "note: --epsilon only applies to an infinite far plane; ignored\n";

    params.p = flags.p;
    params.shear_h = flags.shear_h;
    params.shear_v = flags.shear_v;
    params.mapping = parse_mapping(flags.mapping);

    if (flags.d) {
        params.d = *flags.d;
    } else {
        // d only matters once the blend factor leaves 0. When it is 0 (or p is
        // invalid and validation will reject anyway) any positive d works.
        bool q_zero = true;
        try {
            q_zero = blend_factor(params) == 0.0;
        } catch (const InvalidParams&) {
        }
        if (defaults.d) {
            params.d = *defaults.d;
        } else if (!q_zero) {
            throw UsageError("--d is required when the orthographic fraction (after mapping) is nonzero");
        } else if (const auto* finite = std::get_if<FiniteFar<double>>(&params.far)) {
            params.d = (params.near + finite->distance) / 2.0;
        } else {
            params.d = params.near;
        }
    }
    return out;
}

ValidationReport full_report(const ResolvedParams& resolved)
{
    ValidationReport report = resolved.conversion;
    ValidationReport regular = validate(resolved.params);
    for (auto& v : regular.violations) {
        // A NaN theta from a failed conversion is already explained.
        if (v.param == "theta" && !resolved.conversion.violations.empty())
            continue;
        report.violations.push_back(std::move(v));
    }
    for (auto& w : regular.warnings)
        report.warnings.push_back(std::move(w));
    return report;
}

void print_report(std::ostream& os, const ValidationReport& report)
{
    for (const auto& v : report.violations)
        os << "VIOLATION " << v.param << ": " << v.text << '\n';
    for (const auto& w : report.warnings)
        os << "WARNING " << w.param << ": " << w.text << '\n';
}

// Validates, printing warnings/violations to `err`. Returns false on violation.
bool check(const ResolvedParams& resolved, std::ostream& err)
{
    const ValidationReport report = full_report(resolved);
    print_report(err, report);
    return report.ok();
}

json number_json(double v)
{
    return v == 0.0 ? json(0.0) : json(v);
}

json params_to_json(const ProjectionParamsd& params)
{
    json j;
    j["theta"] = number_json(params.theta);
    j["alpha"] = number_json(params.alpha);
    j["near"] = number_json(params.near);
    if (const auto* finite = std::get_if<FiniteFar<double>>(&params.far)) {
        j["far"] = number_json(finite->distance);
        j["epsilon"] = 0.0;
    } else {
        j["far"] = "inf";
        j["epsilon"] = number_json(std::get<InfiniteFar<double>>(params.far).epsilon);
    }
    j["p"] = number_json(params.p);
    j["d"] = number_json(params.d);
    j["shear_h"] = number_json(params.shear_h);
    j["shear_v"] = number_json(params.shear_v);
    j["mapping"] = mapping_name(params.mapping);
    return j;
}

ProjectionParamsd params_from_json(const json& root)
{
    const json& j = root.contains("params") ? root.at("params") : root;
    try {
        ProjectionParamsd params;
        params.theta = j.at("theta").get<double>();
        params.alpha = j.at("alpha").get<double>();
        params.near = j.at("near").get<double>();
        const double eps = j.value("epsilon", 0.0);
        if (j.at("far").is_string()) {
            if (j.at("far").get<std::string>() != "inf")
                throw UsageError("params.far must be a number or \"inf\"");
            params.far = InfiniteFar<double>{eps};
        } else {
            params.far = FiniteFar<double>{j.at("far").get<double>()};
        }
        params.p = j.value("p", 0.0);
        params.d = j.at("d").get<double>();
        params.shear_h = j.value("shear_h", 0.0);
        params.shear_v = j.value("shear_v", 0.0);
        params.mapping = parse_mapping(j.value("mapping", std::string("identity")));
        return params;
    } catch (const json::exception& e) {
        throw UsageError(std::string("bad params JSON: ") + e.what());
    }
}

void print_matrix(std::ostream& out, const Mat4d& m, const ProjectionParamsd& params, const std::string& format)
{
    if (format == "json") {
        json rows = json::array();
        for (int r = 0; r < 4; ++r) {
            json row = json::array();
            for (int c = 0; c < 4; ++c)
                row.push_back(number_json(m(r, c)));
            rows.push_back(row);
        }
        json doc;
        doc["rows"] = rows;
        doc["params"] = params_to_json(params);
        out << doc.dump(2) << '\n';
        return;
    }
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c)
            out << (c ? " " : "") << format_number(m(r, c), 17);
        out << '\n';
    }
}

struct SceneSource
{
    Scene scene;
    ParamDefaults defaults;
};

SceneSource load_scene(const std::string& name, double aspect)
{
    SceneSource src;
    src.defaults.aspect = aspect;
    src.defaults.fov_deg = 60.0;
    src.defaults.near = 0.1;
    src.defaults.far = 100.0;
    if (auto builtin = builtin_scene(name)) {
        src.scene = builtin->scene;
        src.defaults.fov_deg = builtin->fov_deg;
        src.defaults.near = builtin->near;
        src.defaults.far = builtin->far;
        src.defaults.d = builtin->d;
        return src;
    }
    try {
        src.scene = load_scene_file(name);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    return src;
}

void write_output(const std::string& path, const std::string& format, const Image* image, const std::string* svg)
{
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw UsageError("cannot open output file '" + path + "'");
    if (format == "svg")
        file << *svg;
    else
        write_ppm(file, *image);
    if (!file)
        throw UsageError("failed writing '" + path + "'");
}

std::string output_format(const std::string& flag, const std::string& path)
{
    if (!flag.empty())
        return flag;
    const auto dot = path.rfind('.');
    if (dot != std::string::npos && path.substr(dot) == ".svg")
        return "svg";
    return "ppm";
}

RenderMode resolve_mode(const std::string& mode, const std::string& format)
{
    if (mode.empty())
        return format == "svg" ? RenderMode::Wireframe : RenderMode::Filled;
    const RenderMode m = mode == "wireframe" ? RenderMode::Wireframe : RenderMode::Filled;
    if (format == "svg" && m != RenderMode::Wireframe)
        throw UsageError("SVG output supports --mode wireframe only");
    return m;
}

} // namespace

std::string format_number(double value, int significant_digits)
{
    if (value == 0.0)
        return "0";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, significant_digits);
    if (ec != std::errc{})
        return "nan";
    return std::string(buf, ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Generalized perspective/orthographic projection matrices"};
    app.name("genproj");
    app.require_subcommand(1);

    // matrix
    ParamFlags matrix_flags;
    std::string matrix_format = "text";
    std::string from_json;
    auto* matrix = app.add_subcommand("matrix", "print the generalized projection matrix");
    matrix_flags.attach(*matrix);
    matrix->add_option("--format", matrix_format, "text | json")->check(CLI::IsMember({"text", "json"}));
    matrix->add_option("--from-json", from_json, "read parameters from a JSON file ('-' for stdin)");

    // validate
    ParamFlags validate_flags;
    auto* validate_cmd = app.add_subcommand("validate", "check parameters against the value restrictions");
    validate_flags.attach(*validate_cmd);

    // frustum
    ParamFlags frustum_flags;
    auto* frustum = app.add_subcommand("frustum", "print the 8 eye-space frustum corners");
    frustum_flags.attach(*frustum);

    // render
    ParamFlags render_flags;
    std::string render_scene = "paper-fig1", render_out, render_format, render_mode;
    int width = 640, height = 480;
    auto* render_cmd = app.add_subcommand("render", "render a scene to PPM or SVG");
    render_flags.attach(*render_cmd);
    render_cmd->add_option("--scene", render_scene, "scene file or built-in name (paper-fig1)");
    render_cmd->add_option("--out", render_out, "output image path")->required();
    render_cmd->add_option("--format", render_format, "ppm | svg (default: from --out extension)")
        ->check(CLI::IsMember({"ppm", "svg"}));
    render_cmd->add_option("--mode", render_mode, "filled | wireframe")
        ->check(CLI::IsMember({"filled", "wireframe"}));
    render_cmd->add_option("--width", width, "image width")->check(CLI::Range(1, 16384));
    render_cmd->add_option("--height", height, "image height")->check(CLI::Range(1, 16384));

    // sweep
    ParamFlags sweep_flags;
    std::string sweep_scene = "paper-fig1", sweep_out, sweep_format, sweep_mode;
    std::string sweep_p = "0.25,0.5,0.75";
    std::string sweep_mappings = "pow:1,pow:3,pow:5,pow:7,pow:9";
    int panel_w = 240, panel_h = 160;
    auto* sweep = app.add_subcommand("sweep", "render a mapping x p grid of panels");
    sweep_flags.attach(*sweep);
    sweep->add_option("--scene", sweep_scene, "scene file or built-in name (paper-fig1)");
    sweep->add_option("--out", sweep_out, "output image path")->required();
    sweep->add_option("--format", sweep_format, "ppm | svg")->check(CLI::IsMember({"ppm", "svg"}));
    sweep->add_option("--mode", sweep_mode, "filled | wireframe")->check(CLI::IsMember({"filled", "wireframe"}));
    sweep->add_option("--p-values", sweep_p, "comma-separated columns");
    sweep->add_option("--mappings", sweep_mappings, "comma-separated rows (identity | pow:<c>)");
    sweep->add_option("--panel-width", panel_w, "panel width")->check(CLI::Range(1, 4096));
    sweep->add_option("--panel-height", panel_h, "panel height")->check(CLI::Range(1, 4096));

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("genproj");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (matrix->parsed()) {
            ProjectionParamsd params;
            if (!from_json.empty()) {
                json doc;
                try {
                    if (from_json == "-") {
                        doc = json::parse(std::cin);
                    } else {
                        std::ifstream in(from_json);
                        if (!in)
                            throw UsageError("cannot open '" + from_json + "'");
                        doc = json::parse(in);
                    }
                } catch (const json::exception& e) {
                    throw UsageError(std::string("bad JSON: ") + e.what());
                }
                params = params_from_json(doc);
                if (!check(ResolvedParams{params, {}}, err))
                    return kExitInvalid;
            } else {
                const auto resolved = resolve(matrix_flags, {}, err);
                if (!check(resolved, err))
                    return kExitInvalid;
                params = resolved.params;
            }
            print_matrix(out, generalized(params), params, matrix_format);
            return kExitOk;
        }

        if (validate_cmd->parsed()) {
            const auto report = full_report(resolve(validate_flags, {}, err));
            if (report.violations.empty() && report.warnings.empty())
                out << "OK\n";
            print_report(out, report);
            return report.ok() ? kExitOk : kExitInvalid;
        }

        if (frustum->parsed()) {
            const auto resolved = resolve(frustum_flags, {}, err);
            if (!check(resolved, err))
                return kExitInvalid;
            if (std::holds_alternative<InfiniteFar<double>>(resolved.params.far)) {
                err << "error: frustum corners undefined for infinite far plane\n";
                return kExitInvalid;
            }
            const auto corners = frustum_corners(generalized(resolved.params));
            for (const auto& c : corners.corners)
                out << format_number(c.x(), 12) << ' ' << format_number(c.y(), 12) << ' '
                    << format_number(c.z(), 12) << '\n';
            return kExitOk;
        }

        if (render_cmd->parsed()) {
            const std::string format = output_format(render_format, render_out);
            RenderOptions options;
            options.mode = resolve_mode(render_mode, format);
            auto src = load_scene(render_scene, static_cast<double>(width) / height);
            const auto resolved = resolve(render_flags, src.defaults, err);
            if (!check(resolved, err))
                return kExitInvalid;
            if (format == "svg") {
                const auto svg = render_svg(src.scene, resolved.params, width, height, options);
                write_output(render_out, format, nullptr, &svg);
            } else {
                const auto image = render(src.scene, resolved.params, width, height, options);
                write_output(render_out, format, &image, nullptr);
            }
            return kExitOk;
        }

        if (sweep->parsed()) {
            const std::string format = output_format(sweep_format, sweep_out);
            auto src = load_scene(sweep_scene, static_cast<double>(panel_w) / panel_h);
            if (!sweep_flags.d && !src.defaults.d)
                throw UsageError("--d is required for sweep: every panel blends toward orthographic");
            const auto resolved = resolve(sweep_flags, src.defaults, err);
            if (!check(resolved, err))
                return kExitInvalid;

            SweepSpec spec;
            spec.base = resolved.params;
            spec.scene = src.scene;
            spec.panel_width = panel_w;
            spec.panel_height = panel_h;
            spec.options.mode = resolve_mode(sweep_mode, format);
            for (const auto& m : split_list(sweep_mappings))
                spec.mappings.push_back(parse_mapping(m));
            for (const auto& p : split_list(sweep_p)) {
                auto v = parse_double(p);
                if (!v)
                    throw UsageError("--p-values: not a number: '" + p + "'");
                spec.p_values.push_back(*v);
            }
            if (spec.mappings.empty() || spec.p_values.empty())
                throw UsageError("sweep needs at least one mapping and one p value");
            for (const auto& m : spec.mappings)
                for (double p : spec.p_values) {
                    ProjectionParamsd panel = spec.base;
                    panel.mapping = m;
                    panel.p = p;
                    const auto report = validate(panel);
                    if (!report.ok()) {
                        print_report(err, report);
                        return kExitInvalid;
                    }
                }

            if (format == "svg") {
                const auto svg = render_sweep_svg(spec);
                write_output(sweep_out, format, nullptr, &svg);
            } else {
                const auto image = render_sweep(spec);
                write_output(sweep_out, format, &image, nullptr);
            }
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidParams& e) {
        print_report(err, e.report());
        return kExitInvalid;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace genproj::cli
