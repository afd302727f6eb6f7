#pragma once

// Half-plane pictures of generator systems as deterministic SVG.

#include "hyperreal/real_structures.hpp"
#include "hyperreal/sequential.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

namespace hyperreal {

enum class Stroke { axis, wall, mirror };

struct SceneGeodesic {
    Geodesic geodesic;
    Stroke stroke = Stroke::axis;
    bool arrow = false;
    std::string label;
};

struct SceneDot {
    double x = 0.0;
    std::string label;
};

struct Viewport {
    double x_min = -1.0;
    double x_max = 1.0;
    double y_max = 1.0;
};

struct Scene {
    std::vector<SceneGeodesic> geodesics;
    std::vector<SceneDot> dots;
    Viewport view;

    bool empty() const { return geodesics.empty() && dots.empty(); }
};

namespace detail {

/// Real value, or infinity for points within boundary tolerance of it.
inline double finite_value(const BoundaryPoint& p) { return p.is_infinite() ? INFINITY : p.value(); }

} // namespace detail

/// Fits the viewport around every finite endpoint and dot, with a margin.
inline void auto_fit(Scene& s)
{
    std::vector<double> xs;
    double y = 0.0;
    for (const SceneGeodesic& g : s.geodesics) {
        const double a = detail::finite_value(g.geodesic.from), b = detail::finite_value(g.geodesic.to);
        for (double v : {a, b}) {
            if (std::isfinite(v)) {
                xs.push_back(v);
            }
        }
        if (std::isfinite(a) && std::isfinite(b)) {
            y = std::max(y, 0.5 * std::abs(b - a));
        }
    }
    for (const SceneDot& d : s.dots) {
        xs.push_back(d.x);
    }
    if (xs.empty()) {
        s.view = Viewport{};
        return;
    }
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    const double span = std::max(*hi - *lo, 1.0);
    s.view.x_min = *lo - 0.1 * span;
    s.view.x_max = *hi + 0.1 * span;
    s.view.y_max = std::max(y, 0.25 * span) * 1.15;
}

namespace detail {

inline void add_axis(Scene& s, const MoebiusMap& m, const std::string& role)
{
    const IsometryClass k = classify(m);
    if (k.kind == IsometryKind::hyperbolic) {
        s.geodesics.push_back({Geodesic{k.beta, k.alpha}, Stroke::axis, true, role});
    } else if (k.kind == IsometryKind::parabolic && !k.alpha.is_infinite()) {
        s.dots.push_back({k.alpha.value(), role});
    }
}

} // namespace detail

/// Oriented axes of hyperbolic generators, fixed points of parabolic ones,
/// reflection walls and the mirror of sigma.
inline Scene scene_from_system(const GeneratorSystem& sys)
{
    Scene s;
    for (std::size_t j = 0; j < sys.walls.size(); ++j) {
        s.geodesics.push_back({sys.walls[j], Stroke::wall, false, "l" + std::to_string(j + 1)});
    }
    for (const Generator& g : sys.gens) {
        detail::add_axis(s, g.map, g.role);
    }
    for (const Geodesic& m : sys.mirrors) {
        s.geodesics.push_back({m, Stroke::mirror, false, ""});
    }
    auto_fit(s);
    return s;
}

inline Scene scene_from_set(const SequentialSetOfType& set)
{
    Scene s;
    for (std::size_t i = 0; i < set.cs.size(); ++i) {
        detail::add_axis(s, set.cs[i], "C" + std::to_string(i + 1));
    }
    for (std::size_t i = 0; i < set.as.size(); ++i) {
        detail::add_axis(s, set.as[i], "A" + std::to_string(i + 1));
        detail::add_axis(s, set.bs[i], "B" + std::to_string(i + 1));
    }
    auto_fit(s);
    return s;
}

inline Scene scene_from_maps(const std::vector<MoebiusMap>& maps)
{
    Scene s;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        detail::add_axis(s, maps[i], "C" + std::to_string(i + 1));
    }
    auto_fit(s);
    return s;
}

namespace detail {

/// Fixed 6-digit decimals, locale independent, no negative zero.
inline std::string fixed6(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
    std::string out(buf, res.ptr);
    if (out == "-0.000000") {
        out = "0.000000";
    }
    return out;
}

inline std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Canvas {
    Viewport view;
    double width = 800.0;
    double scale = 1.0;
    double height = 0.0;
    double baseline = 0.0;

    explicit Canvas(const Viewport& v) : view(v)
    {
        scale = width / (v.x_max - v.x_min);
        baseline = v.y_max * scale + 20.0;
        height = baseline + 20.0;
    }
    double sx(double x) const { return (x - view.x_min) * scale; }
    double sy(double y) const { return baseline - y * scale; }
};

inline const char* stroke_class(Stroke s)
{
    switch (s) {
    case Stroke::axis: return "axis";
    case Stroke::wall: return "wall";
    case Stroke::mirror: return "mirror";
    }
    return "axis";
}

} // namespace detail

inline std::string render_svg(const Scene& scene)
{
    using detail::fixed6;
    const detail::Canvas cv(scene.view);
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fixed6(cv.width) + "\" height=\"" + fixed6(cv.height) +
           "\" viewBox=\"0 0 " + fixed6(cv.width) + " " + fixed6(cv.height) + "\">\n";
    out += "<style>.axis{fill:none;stroke:#1f4e9c;stroke-width:1.5}.wall{fill:none;stroke:#555555;stroke-width:1}"
           ".mirror{fill:none;stroke:#b03030;stroke-width:1.5;stroke-dasharray:6 4}.arrow{fill:#1f4e9c}"
           ".dot{fill:#1f4e9c}text{font-family:sans-serif;font-size:12px}</style>\n";
    out += "<line class=\"wall\" x1=\"0.000000\" y1=\"" + fixed6(cv.baseline) + "\" x2=\"" + fixed6(cv.width) + "\" y2=\"" +
           fixed6(cv.baseline) + "\"/>\n";
    const double top = 0.0;
    for (const SceneGeodesic& g : scene.geodesics) {
        const double a = detail::finite_value(g.geodesic.from), b = detail::finite_value(g.geodesic.to);
        const char* cls = detail::stroke_class(g.stroke);
        double lx = 0.0, ly = 0.0; // label anchor in screen coordinates
        if (std::isfinite(a) && std::isfinite(b)) {
            const double r = 0.5 * std::abs(b - a) * cv.scale;
            const double x1 = cv.sx(a), x2 = cv.sx(b), y0 = cv.sy(0.0);
            // upper half circle from a to b; the sweep flag picks the upper arc
            out += "<path class=\"" + std::string(cls) + "\" d=\"M " + fixed6(x1) + " " + fixed6(y0) + " A " + fixed6(r) + " " + fixed6(r) +
                   " 0 0 " + (a < b ? "1" : "0") + " " + fixed6(x2) + " " + fixed6(y0) + "\"/>\n";
            const double ax = 0.5 * (x1 + x2), ay = y0 - r;
            if (g.arrow) {
                const double d = a < b ? 1.0 : -1.0;
                out += "<polygon class=\"arrow\" points=\"" + fixed6(ax + 6.0 * d) + "," + fixed6(ay) + " " + fixed6(ax - 4.0 * d) + "," +
                       fixed6(ay - 4.0) + " " + fixed6(ax - 4.0 * d) + "," + fixed6(ay + 4.0) + "\"/>\n";
            }
            lx = ax;
            ly = ay - 8.0;
        } else {
            // vertical ray from the finite endpoint
            const bool up = std::isinf(b);
            const double x = cv.sx(up ? a : b);
            out += "<line class=\"" + std::string(cls) + "\" x1=\"" + fixed6(x) + "\" y1=\"" + fixed6(cv.sy(0.0)) + "\" x2=\"" + fixed6(x) +
                   "\" y2=\"" + fixed6(top) + "\"/>\n";
            const double my = 0.5 * (cv.sy(0.0) + top);
            if (g.arrow) {
                const double d = up ? -1.0 : 1.0;
                out += "<polygon class=\"arrow\" points=\"" + fixed6(x) + "," + fixed6(my + 6.0 * d) + " " + fixed6(x - 4.0) + "," +
                       fixed6(my - 4.0 * d) + " " + fixed6(x + 4.0) + "," + fixed6(my - 4.0 * d) + "\"/>\n";
            }
            lx = x + 6.0;
            ly = my;
        }
        if (!g.label.empty()) {
            out += "<text x=\"" + fixed6(lx) + "\" y=\"" + fixed6(ly) + "\" text-anchor=\"middle\">" + detail::escape(g.label) + "</text>\n";
        }
    }
    for (const SceneDot& d : scene.dots) {
        const double x = cv.sx(d.x), y = cv.sy(0.0);
        out += "<circle class=\"dot\" cx=\"" + fixed6(x) + "\" cy=\"" + fixed6(y) + "\" r=\"3.000000\"/>\n";
        if (!d.label.empty()) {
            out += "<text x=\"" + fixed6(x) + "\" y=\"" + fixed6(y + 16.0) + "\" text-anchor=\"middle\">" + detail::escape(d.label) + "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

} // namespace hyperreal
