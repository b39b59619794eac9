#include "weakconv/scene.hpp"

#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>

#include "weakconv/space_modulus.hpp"
#include "weakconv/surfaces.hpp"

namespace weakconv {

using nlohmann::json;

namespace {

void check_fields(const json& j, const std::vector<std::string>& allowed,
                  const std::string& context) {
    if (!j.is_object()) throw SceneError(context + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw SceneError(context + ": unknown field \"" + it.key() + "\"");
    }
}

double get_number(const json& j, const std::string& key, const std::string& context) {
    if (!j.contains(key) || !j[key].is_number())
        throw SceneError(context + ": missing numeric field \"" + key + "\"");
    return j[key].get<double>();
}

Vec get_point(const json& j, const std::string& key, int dim, const std::string& context) {
    if (!j.contains(key) || !j[key].is_array())
        throw SceneError(context + ": missing point field \"" + key + "\"");
    Vec v = j[key].get<Vec>();
    if (static_cast<int>(v.size()) != dim)
        throw SceneError(context + ": point \"" + key + "\" has wrong dimension");
    return v;
}

std::vector<Vec> get_points(const json& arr, int dim, const std::string& context) {
    if (!arr.is_array()) throw SceneError(context + ": expected an array of points");
    std::vector<Vec> pts;
    for (const auto& item : arr) {
        Vec v = item.get<Vec>();
        if (static_cast<int>(v.size()) != dim)
            throw SceneError(context + ": point with wrong dimension");
        pts.push_back(std::move(v));
    }
    return pts;
}

std::vector<Vec> read_points_csv(const std::string& path, int dim) {
    std::ifstream f(path);
    if (!f) throw SceneError("cannot open points file: " + path);
    std::vector<Vec> pts;
    std::string line;
    int line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        Vec v;
        std::string cell_text;
        while (std::getline(ss, cell_text, ',')) {
            try {
                v.push_back(std::stod(cell_text));
            } catch (...) {
                if (line_no == 1) {
                    v.clear();
                    break;  // header row
                }
                throw SceneError(path + ":" + std::to_string(line_no) +
                                 ": cannot parse number \"" + cell_text + "\"");
            }
        }
        if (v.empty()) continue;
        if (static_cast<int>(v.size()) != dim)
            throw SceneError(path + ":" + std::to_string(line_no) + ": wrong dimension");
        pts.push_back(std::move(v));
    }
    return pts;
}

Curve2D parse_curve(const PNormSpace& space, const json& j, const std::string& context) {
    if (space.dim != 2) throw SceneError(context + ": curve2d requires dim 2");
    const std::string kind = j.value("kind", "");
    if (kind == "circle") {
        check_fields(j, {"type", "kind", "center", "radius", "angle_range", "side"}, context);
        const Vec center = j.contains("center") ? get_point(j, "center", 2, context)
                                                : Vec{0.0, 0.0};
        const double radius = get_number(j, "radius", context);
        if (j.contains("angle_range")) {
            const auto range = j["angle_range"].get<std::vector<double>>();
            if (range.size() != 2) throw SceneError(context + ": angle_range needs 2 values");
            return Curve2D::arc(center, radius, range[0], range[1]);
        }
        return Curve2D::circle(center, radius);
    }
    if (kind == "ellipse") {
        check_fields(j, {"type", "kind", "center", "a", "b", "rotation", "side"}, context);
        const Vec center = j.contains("center") ? get_point(j, "center", 2, context)
                                                : Vec{0.0, 0.0};
        return Curve2D::ellipse(center, get_number(j, "a", context),
                                get_number(j, "b", context), j.value("rotation", 0.0));
    }
    if (kind == "samples") {
        check_fields(j, {"type", "kind", "points", "side"}, context);
        if (!j.contains("points")) throw SceneError(context + ": samples kind needs points");
        return Curve2D::from_samples(get_points(j["points"], 2, context));
    }
    throw SceneError(context + ": curve2d kind must be circle, ellipse or samples");
}

CurveSide parse_side(const json& j, const std::string& context) {
    const std::string side = j.value("side", "boundary");
    if (side == "boundary") return CurveSide::Boundary;
    if (side == "inside") return CurveSide::Inside;
    if (side == "outside") return CurveSide::Outside;
    throw SceneError(context + ": side must be boundary, inside or outside");
}

}  // namespace

OraclePtr parse_set(const PNormSpace& space, const json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw SceneError("set: missing \"type\" field");
    const std::string type = j["type"].get<std::string>();
    if (type == "ball") {
        check_fields(j, {"type", "center", "radius"}, "ball");
        return make_ball(space, get_point(j, "center", space.dim, "ball"),
                         get_number(j, "radius", "ball"));
    }
    if (type == "polytope") {
        check_fields(j, {"type", "vertices"}, "polytope");
        if (!j.contains("vertices")) throw SceneError("polytope: missing vertices");
        return make_polytope(space, get_points(j["vertices"], space.dim, "polytope"));
    }
    if (type == "points") {
        check_fields(j, {"type", "points", "csv"}, "points");
        if (j.contains("points"))
            return make_point_cloud(space, get_points(j["points"], space.dim, "points"));
        if (j.contains("csv"))
            return make_point_cloud(space,
                                    read_points_csv(j["csv"].get<std::string>(), space.dim));
        throw SceneError("points: needs inline points or a csv path");
    }
    if (type == "curve2d") {
        const Curve2D curve = parse_curve(space, j, "curve2d");
        return make_curve_set(space, curve, parse_side(j, "curve2d"));
    }
    if (type == "cavern") {
        check_fields(j, {"type", "body", "clip"}, "cavern");
        if (!j.contains("body") || !j.contains("clip"))
            throw SceneError("cavern: needs body and clip");
        return make_cavern(space, parse_set(space, j["body"]), parse_set(space, j["clip"]));
    }
    if (type == "union" || type == "intersection") {
        check_fields(j, {"type", "parts"}, type);
        if (!j.contains("parts") || !j["parts"].is_array())
            throw SceneError(type + ": needs a parts array");
        std::vector<OraclePtr> parts;
        for (const auto& p : j["parts"]) parts.push_back(parse_set(space, p));
        return type == "union" ? make_union(space, std::move(parts))
                               : make_intersection(space, std::move(parts));
    }
    if (type == "minkowski_sum") {
        check_fields(j, {"type", "a", "b"}, "minkowski_sum");
        if (!j.contains("a") || !j.contains("b"))
            throw SceneError("minkowski_sum: needs a and b");
        return make_minkowski_sum(space, parse_set(space, j["a"]), parse_set(space, j["b"]));
    }
    throw SceneError("set: unknown type \"" + type + "\"");
}

namespace {

SetValuedMap parse_map(const PNormSpace& space, const json& j) {
    check_fields(j, {"kind", "base", "params"}, "map");
    const std::string kind = j.value("kind", "");
    const json params = j.value("params", json::object());
    if (kind == "translate") {
        check_fields(params, {"direction", "t_range"}, "map.params");
        if (!j.contains("base")) throw SceneError("map: translate needs a base set");
        const Vec dir = get_point(params, "direction", space.dim, "map.params");
        std::vector<double> range =
            params.value("t_range", std::vector<double>{0.0, 1.0});
        if (range.size() != 2) throw SceneError("map: t_range needs 2 values");
        return translate_map(parse_set(space, j["base"]), dir, range[0], range[1],
                             SetValuedMap::Class::UniformlyConvex,
                             [](double) { return 0.0; }, 1.0);
    }
    if (kind == "inflate") {
        check_fields(params, {"center", "r0", "t_range"}, "map.params");
        const Vec center = get_point(params, "center", space.dim, "map.params");
        std::vector<double> range =
            params.value("t_range", std::vector<double>{0.0, 1.0});
        if (range.size() != 2) throw SceneError("map: t_range needs 2 values");
        return inflate_map(space, center, get_number(params, "r0", "map.params"), range[0],
                           range[1]);
    }
    if (kind == "custom_grid") {
        check_fields(params, {"entries"}, "map.params");
        if (!params.contains("entries") || !params["entries"].is_array())
            throw SceneError("map: custom_grid needs entries");
        auto table = std::make_shared<std::vector<std::pair<double, OraclePtr>>>();
        for (const auto& e : params["entries"]) {
            check_fields(e, {"t", "set"}, "map.entries");
            table->emplace_back(get_number(e, "t", "map.entries"),
                                parse_set(space, e["set"]));
        }
        std::sort(table->begin(), table->end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (table->empty()) throw SceneError("map: custom_grid needs at least one entry");
        SetValuedMap f;
        f.t_lo = table->front().first;
        f.t_hi = table->back().first;
        f.evaluate = [table](double t) {
            // nearest tabulated parameter
            std::size_t best = 0;
            for (std::size_t i = 1; i < table->size(); ++i)
                if (std::fabs((*table)[i].first - t) < std::fabs((*table)[best].first - t))
                    best = i;
            return (*table)[best].second;
        };
        f.omega = [](double) { return 0.0; };
        return f;
    }
    throw SceneError("map: unknown kind \"" + kind + "\"");
}

}  // namespace

Scene parse_scene(const json& j) {
    check_fields(j, {"space", "set", "map"}, "scene");
    if (!j.contains("space")) throw SceneError("scene: missing \"space\"");
    check_fields(j["space"], {"dim", "p"}, "space");
    Scene scene;
    scene.space = make_space(j["space"].value("dim", 2), j["space"].value("p", 2.0));
    if (j.contains("set")) scene.set = parse_set(scene.space, j["set"]);
    if (j.contains("map")) scene.map = parse_map(scene.space, j["map"]);
    return scene;
}

Scene load_scene_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw SceneError("cannot open scene file: " + path);
    json j;
    try {
        f >> j;
    } catch (const json::parse_error& e) {
        throw SceneError(path + ": " + e.what());
    }
    return parse_scene(j);
}

// ---------------------------------------------------------------------------
// experiment runner

namespace {

std::vector<double> grid_param(const json& params, const std::string& key) {
    if (!params.contains(key)) throw SceneError("params: missing grid \"" + key + "\"");
    return params[key].get<std::vector<double>>();
}

Report moduli_schema_report(const std::string& name,
                            const std::vector<std::array<std::string, 5>>& rows) {
    Report rep;
    rep.name = name;
    rep.columns = {"eps", "value", "bound_lower", "bound_upper", "pass"};
    for (const auto& r : rows) rep.add_row({r[0], r[1], r[2], r[3], r[4]});
    return rep;
}

using OpHandler = Report (*)(const Scene&, const json&, std::uint64_t);

Report op_gamma(const Scene& scene, const json& params, std::uint64_t seed) {
    if (!scene.set) throw SceneError("gamma: scene needs a set");
    PairSweepOptions opts;
    opts.seed = seed;
    if (params.contains("pairs")) opts.pairs = params["pairs"].get<int>();
    std::vector<std::array<std::string, 5>> rows;
    for (double eps : grid_param(params, "eps_grid")) {
        const double v = modulus_nonconvexity(*scene.set, eps, opts);
        rows.push_back({cell(eps), cell(v), "", "", cell(true)});
    }
    return moduli_schema_report("gamma", rows);
}

Report op_delta_set(const Scene& scene, const json& params, std::uint64_t seed) {
    if (!scene.set) throw SceneError("delta-set: scene needs a set");
    PairSweepOptions opts;
    opts.seed = seed;
    if (params.contains("pairs")) opts.pairs = params["pairs"].get<int>();
    std::vector<std::array<std::string, 5>> rows;
    for (double eps : grid_param(params, "eps_grid")) {
        const double v = modulus_convexity(*scene.set, eps, opts);
        rows.push_back({cell(eps), cell(v), "", "", cell(true)});
    }
    return moduli_schema_report("delta_set", rows);
}

Report op_space_delta(const Scene& scene, const json& params, std::uint64_t) {
    const int density = params.value("density", 10000);
    std::vector<std::array<std::string, 5>> rows;
    for (double eps : grid_param(params, "eps_grid")) {
        const double v = space_modulus_delta(scene.space, eps, density);
        rows.push_back({cell(eps), cell(v), "", cell(eps * eps / 4.0), cell(true)});
    }
    return moduli_schema_report("space_delta", rows);
}

Report op_day_nordlander(const Scene& scene, const json& params, std::uint64_t) {
    return check_day_nordlander(scene.space, grid_param(params, "eps_grid"),
                                params.value("tol", kModulusTol),
                                params.value("density", 10000));
}

Report op_cavern_bounds(const Scene& scene, const json& params, std::uint64_t seed) {
    PairSweepOptions opts;
    opts.seed = seed;
    if (!params.contains("body_set") || !params.contains("clip_set"))
        throw SceneError("cavern-bounds: params need body_set and clip_set");
    auto body = parse_set(scene.space, params["body_set"]);
    auto clip = parse_set(scene.space, params["clip_set"]);
    return check_cavern_bounds(body, clip, get_number(params, "r", "params"),
                               get_number(params, "R", "params"),
                               grid_param(params, "eps_grid"),
                               params.value("tol", 2e-3), opts);
}

Report op_sigma(const Scene& scene, const json& params, std::uint64_t seed) {
    if (!scene.set) throw SceneError("sigma: scene needs the reference body");
    PairSweepOptions opts;
    opts.seed = seed;
    auto unit = make_ball(scene.space, zero_vec(scene.space.dim), 1.0);
    auto a = params.contains("a_set") ? parse_set(scene.space, params["a_set"]) : unit;
    auto b = params.contains("b_set") ? parse_set(scene.space, params["b_set"]) : unit;
    std::vector<std::array<std::string, 5>> rows;
    for (double eps : grid_param(params, "eps_grid")) {
        const double v = sigma_modulus(a, b, scene.set, eps, opts);
        rows.push_back({cell(eps), cell(v), "", "", cell(true)});
    }
    return moduli_schema_report("sigma", rows);
}

const Curve2D& require_curve(const Scene& scene, const std::string& op) {
    if (!scene.set) throw SceneError(op + ": scene needs a curve2d set");
    const Curve2D* c = curve_of(*scene.set);
    if (!c) throw SceneError(op + ": scene set must be curve2d");
    return *c;
}

Report op_alpha(const Scene& scene, const json& params, std::uint64_t) {
    auto smooth = SmoothCurve2D::validated(require_curve(scene, "alpha"));
    auto alpha = estimate_alpha(smooth, grid_param(params, "t_grid"),
                                params.value("samples", 1024));
    std::vector<std::array<std::string, 5>> rows;
    for (const auto& [t, v] : alpha.samples())
        if (t > 0.0) rows.push_back({cell(t), cell(v), "", "", cell(true)});
    return moduli_schema_report("alpha", rows);
}

Report op_surface_gamma(const Scene& scene, const json& params, std::uint64_t seed) {
    auto smooth = SmoothCurve2D::validated(require_curve(scene, "surface-gamma"));
    SurfaceGammaOptions opts;
    opts.sweep.seed = seed;
    if (params.contains("tol")) opts.tol = params["tol"].get<double>();
    return check_surface_gamma_bound(smooth, grid_param(params, "eps_grid"), opts);
}

Report op_epsilon0(const Scene& scene, const json& params, std::uint64_t) {
    auto smooth = SmoothCurve2D::validated(require_curve(scene, "epsilon0"));
    const double hi = params.value("t_max", 2.0);
    auto alpha = estimate_alpha(smooth, linspace(hi / 256.0, hi, 256),
                                params.value("samples", 1024));
    Report rep;
    rep.name = "epsilon0";
    rep.columns = {"epsilon0"};
    rep.add_row({cell(epsilon0(alpha))});
    return rep;
}

Report op_curvature(const Scene& scene, const json& params, std::uint64_t) {
    auto smooth = SmoothCurve2D::validated(require_curve(scene, "curvature"));
    Report rep;
    rep.name = "curvature";
    rep.columns = {"s", "radius"};
    for (double s : grid_param(params, "s_grid"))
        rep.add_row({cell(s), cell(curvature_radius(smooth, s))});
    return rep;
}

Report op_simplicity(const Scene& scene, const json& params, std::uint64_t) {
    auto smooth = SmoothCurve2D::validated(require_curve(scene, "simplicity"));
    Report rep;
    rep.name = "simplicity";
    rep.columns = {"r"};
    rep.add_row({cell(simplicity_parameter_probe(smooth, grid_param(params, "candidates")))});
    return rep;
}

Report op_hausdorff(const Scene& scene, const json& params, std::uint64_t) {
    if (!scene.set) throw SceneError("hausdorff: scene needs a set");
    if (!params.contains("other")) throw SceneError("hausdorff: params need other");
    auto other = parse_set(scene.space, params["other"]);
    Report rep;
    rep.name = "hausdorff";
    rep.columns = {"h"};
    rep.add_row({cell(hausdorff_distance(*scene.set, *other, params.value("tol", 1e-6)))});
    return rep;
}

Report op_gauge(const Scene& scene, const json& params, std::uint64_t) {
    if (!scene.set) throw SceneError("gauge: scene needs a body");
    const Vec x = get_point(params, "x", scene.space.dim, "gauge");
    Report rep;
    rep.name = "gauge";
    rep.columns = {"mu"};
    rep.add_row({cell(minkowski_gauge(*scene.set, x))});
    return rep;
}

Report op_continuity_modulus(const Scene& scene, const json& params, std::uint64_t) {
    if (!scene.map) throw SceneError("continuity-modulus: scene needs a map");
    auto curve = estimate_continuity_modulus(*scene.map, grid_param(params, "t_grid"),
                                             params.value("tol", 1e-4));
    Report rep;
    rep.name = "continuity_modulus";
    rep.columns = {"rho", "omega"};
    for (const auto& [rho, v] : curve.samples())
        if (rho > 0.0) rep.add_row({cell(rho), cell(v)});
    return rep;
}

Report op_roots(const Scene& scene, const json& params, std::uint64_t) {
    const double d = params.value("d", 1.0);
    std::function<double(double)> gamma = [](double) { return 0.0; };
    if (params.contains("gamma_samples")) {
        auto pairs = params["gamma_samples"].get<std::vector<std::vector<double>>>();
        std::vector<std::pair<double, double>> samples;
        for (const auto& pr : pairs) {
            if (pr.size() != 2) throw SceneError("roots: gamma_samples rows need 2 values");
            samples.emplace_back(pr[0], pr[1]);
        }
        gamma = ModulusCurve::from_samples(std::move(samples), true).as_function();
    }
    auto prob = ball_condition_problem(scene.space, d, gamma);
    Report rep;
    rep.name = "roots";
    rep.columns = {"s", "t_s", "t", "branch_verified"};
    for (double s : grid_param(params, "s_grid")) {
        const auto roots = solve_condition_roots(prob, s);
        rep.add_row({cell(s), cell(roots.t_s), cell(roots.t_of_s),
                     cell(roots.branch_verified)});
    }
    rep.note = "s0 = " + fmt_double(detect_s0(prob));
    return rep;
}

const std::map<std::string, OpHandler>& op_registry() {
    static const std::map<std::string, OpHandler> registry = {
        {"gamma", op_gamma},
        {"delta-set", op_delta_set},
        {"space-delta", op_space_delta},
        {"day-nordlander", op_day_nordlander},
        {"cavern-bounds", op_cavern_bounds},
        {"sigma", op_sigma},
        {"alpha", op_alpha},
        {"surface-gamma", op_surface_gamma},
        {"epsilon0", op_epsilon0},
        {"curvature", op_curvature},
        {"simplicity", op_simplicity},
        {"hausdorff", op_hausdorff},
        {"gauge", op_gauge},
        {"continuity-modulus", op_continuity_modulus},
        {"roots", op_roots},
    };
    return registry;
}

}  // namespace

std::vector<std::string> experiment_operation_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : op_registry()) names.push_back(name);
    return names;
}

Report run_experiment_file(const std::string& config_path,
                           const ExperimentOverrides& overrides) {
    std::ifstream f(config_path);
    if (!f) throw SceneError("cannot open config file: " + config_path);
    json doc;
    try {
        f >> doc;
    } catch (const json::parse_error& e) {
        throw SceneError(config_path + ": " + e.what());
    }
    check_fields(doc, {"scene", "operation", "params", "output", "seed"}, "config");
    if (!doc.contains("operation"))
        throw SceneError("config: missing \"operation\"");
    const std::string op = doc["operation"].get<std::string>();
    auto it = op_registry().find(op);
    if (it == op_registry().end()) throw SceneError("unknown operation \"" + op + "\"");

    Scene scene;
    scene.space = make_space(2, 2.0);
    if (doc.contains("scene")) {
        if (doc["scene"].is_string()) {
            scene = load_scene_file(doc["scene"].get<std::string>());
        } else {
            scene = parse_scene(doc["scene"]);
        }
    }
    json params = doc.value("params", json::object());
    if (overrides.tol) params["tol"] = *overrides.tol;
    if (overrides.density) {
        params["density"] = *overrides.density;
        params["pairs"] = *overrides.density;
    }
    std::uint64_t seed = doc.value("seed", 42ULL);
    if (overrides.seed) seed = *overrides.seed;

    Report rep = it->second(scene, params, seed);
    std::string out = overrides.output.empty() ? doc.value("output", "") : overrides.output;
    if (!out.empty()) write_file(out, rep.to_csv());
    return rep;
}

}  // namespace weakconv
