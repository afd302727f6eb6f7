#pragma once

// JSON encodings shared by the CLI and the tests. Maps are {"m":[a,b,c,d],"o":+-1};
// boundary points are numbers or "inf"; words are [[index, exponent], ...].

#include "hyperreal/gluing.hpp"
#include "hyperreal/moduli.hpp"
#include "hyperreal/real_structures.hpp"
#include "hyperreal/sequential.hpp"

#include <json.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace hyperreal::io {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

[[noreturn]] inline void malformed(const std::string& what) { throw Error(ErrorCode::MalformedInput, what); }

inline Json parse_text(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
}

inline const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        malformed(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

inline double number(const Json& j)
{
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "+inf") {
            return INFINITY;
        }
        if (s == "-inf") {
            return -INFINITY;
        }
    }
    malformed("expected a number, \"inf\" or \"-inf\", got " + j.dump());
}

inline int integer(const Json& j)
{
    if (!j.is_number_integer()) {
        malformed("expected an integer, got " + j.dump());
    }
    return j.get<int>();
}

inline Json number_json(double v)
{
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return v;
}

// maps

inline Json to_json(const MoebiusMap& m) { return Json{{"m", {m.a(), m.b(), m.c(), m.d()}}, {"o", m.orientation()}}; }

/// Accepts {"m":[a,b,c,d]}, [a,b,c,d] or [[a,b],[c,d]].
inline MoebiusMap map_from_json(const Json& j)
{
    std::vector<double> e;
    const Json& body = j.is_object() ? field(j, "m") : j;
    if (!body.is_array()) {
        malformed("matrix must be an array");
    }
    if (body.size() == 2 && body[0].is_array() && body[1].is_array() && body[0].size() == 2 && body[1].size() == 2) {
        e = {number(body[0][0]), number(body[0][1]), number(body[1][0]), number(body[1][1])};
    } else if (body.size() == 4) {
        for (const Json& x : body) {
            e.push_back(number(x));
        }
    } else {
        malformed("matrix must have four entries");
    }
    for (double x : e) {
        if (!std::isfinite(x)) {
            malformed("matrix entries must be finite");
        }
    }
    // stored maps are already normalized; rescaling again would move the last bits
    const double det = e[0] * e[3] - e[1] * e[2];
    const MoebiusMap m = j.is_object() && std::abs(std::abs(det) - 1.0) <= 1e-12
                             ? MoebiusMap::from_unimodular(Mat2{e[0], e[1], e[2], e[3]}, det > 0.0 ? 1 : -1)
                             : make_map(e[0], e[1], e[2], e[3]);
    if (j.is_object() && j.contains("o") && integer(j.at("o")) != m.orientation()) {
        malformed("orientation field disagrees with the determinant sign");
    }
    return m;
}

inline Json to_json(const BoundaryPoint& p) { return number_json(p.value()); }

inline Json to_json(const Geodesic& g) { return Json::array({to_json(g.from), to_json(g.to)}); }

inline Geodesic geodesic_from_json(const Json& j)
{
    if (!j.is_array() || j.size() != 2) {
        malformed("geodesic must be [from, to]");
    }
    return make_geodesic(number(j[0]), number(j[1]));
}

inline Json to_json(const IsometryClass& k)
{
    Json j{{"kind", std::string(to_string(k.kind))}};
    switch (k.kind) {
    case IsometryKind::hyperbolic:
        j["alpha"] = to_json(k.alpha);
        j["beta"] = to_json(k.beta);
        j["lambda"] = k.lambda;
        j["positive"] = k.positive;
        break;
    case IsometryKind::parabolic:
        j["alpha"] = to_json(k.alpha);
        j["lambda"] = k.lambda;
        j["positive"] = k.positive;
        break;
    case IsometryKind::elliptic:
        j["center"] = {k.center.re, k.center.im};
        j["angle"] = k.angle;
        break;
    default:
        break;
    }
    return j;
}

inline IsometryKind kind_from_string(const std::string& s)
{
    for (IsometryKind k : {IsometryKind::identity, IsometryKind::hyperbolic, IsometryKind::parabolic, IsometryKind::elliptic,
                           IsometryKind::orientation_reversing}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    malformed("unknown isometry kind '" + s + "'");
}

// words and types

inline Json to_json(const GroupWord& w)
{
    Json j = Json::array();
    for (const Letter& l : w) {
        j.push_back({l.index, l.exponent});
    }
    return j;
}

inline GroupWord word_from_json(const Json& j)
{
    if (!j.is_array()) {
        malformed("word must be an array of [index, exponent]");
    }
    GroupWord w;
    for (const Json& l : j) {
        if (!l.is_array() || l.size() != 2) {
            malformed("letter must be [index, exponent]");
        }
        w.push_back({integer(l[0]), integer(l[1])});
    }
    return w;
}

inline Json to_json(const SurfaceType& t) { return Json{{"g", t.g}, {"n", t.n}, {"m", t.m}}; }

inline SurfaceType surface_type_from_json(const Json& j)
{
    return {integer(field(j, "g")), integer(field(j, "n")), integer(field(j, "m"))};
}

inline Json to_json(const RealCurveType& t)
{
    Json ovals = Json::array();
    for (const OvalType& o : t.ovals) {
        ovals.push_back(o.str());
    }
    return Json{{"g", t.g}, {"k", t.k}, {"eps", t.eps}, {"n_I", t.n_I}, {"m_I", t.m_I}, {"ovals", ovals}};
}

/// "ovals" may be omitted for k plain ovals.
inline RealCurveType curve_type_from_json(const Json& j)
{
    RealCurveType t;
    t.g = integer(field(j, "g"));
    t.k = integer(field(j, "k"));
    t.eps = integer(field(j, "eps"));
    t.n_I = j.contains("n_I") ? integer(j.at("n_I")) : 0;
    t.m_I = j.contains("m_I") ? integer(j.at("m_I")) : 0;
    if (j.contains("ovals")) {
        if (!j.at("ovals").is_array()) {
            malformed("ovals must be an array of strings");
        }
        for (const Json& o : j.at("ovals")) {
            if (!o.is_string()) {
                malformed("oval must be a string of h and p");
            }
            t.ovals.push_back(OvalType::parse(o.get<std::string>()));
        }
    } else {
        t.ovals.assign(std::max(t.k, 0), OvalType{});
    }
    return t;
}

inline Json to_json(const Dimensions& d)
{
    return Json{{"teich_dim", d.teich_dim},         {"closed_dim", d.closed_dim},   {"surface_dim", d.surface_dim},
                {"genus_zero_dim", d.genus_zero_dim}, {"oval_factor", d.oval_factor}, {"h", d.h},
                {"oval_factor_consistent", d.oval_factor_consistent}};
}

// systems

inline Json to_json(const GeneratorSystem& sys)
{
    Json gens = Json::array();
    for (const Generator& g : sys.gens) {
        gens.push_back({{"role", g.role}, {"map", to_json(g.map)}, {"expected", std::string(to_string(g.expected))}});
    }
    Json words = Json::array();
    for (const auto& w : sys.sigma_words) {
        words.push_back(w ? to_json(*w) : Json(nullptr));
    }
    Json relators = Json::array();
    for (const GroupWord& w : sys.relators) {
        relators.push_back(to_json(w));
    }
    Json pairs = Json::array();
    for (const auto& [a, b] : sys.nonreal_pairs) {
        pairs.push_back({a, b});
    }
    auto geodesics = [](const std::vector<Geodesic>& ls) {
        Json out = Json::array();
        for (const Geodesic& l : ls) {
            out.push_back(to_json(l));
        }
        return out;
    };
    Json j;
    j["schema"] = schema_version;
    j["provenance"] = sys.provenance;
    j["generators"] = gens;
    j["sigma"] = to_json(sys.sigma);
    j["sigma_squared"] = to_json(sys.sigma_squared);
    j["sigma_words"] = words;
    j["relators"] = relators;
    j["nonreal_pairs"] = pairs;
    j["reference"] = sys.reference ? to_json(*sys.reference) : Json(nullptr);
    j["mirrors"] = geodesics(sys.mirrors);
    j["walls"] = geodesics(sys.walls);
    j["sequential"] = sys.sequential;
    j["surface"] = sys.surface ? to_json(*sys.surface) : Json(nullptr);
    j["type"] = sys.type ? to_json(*sys.type) : Json(nullptr);
    return j;
}

inline GeneratorSystem system_from_json(const Json& j)
{
    if (!j.is_object()) {
        malformed("system must be a JSON object");
    }
    if (j.contains("schema") && integer(j.at("schema")) != schema_version) {
        malformed("unsupported schema version " + j.at("schema").dump());
    }
    GeneratorSystem sys;
    for (const Json& g : field(j, "generators")) {
        const IsometryKind expected = g.contains("expected") ? kind_from_string(g.at("expected").get<std::string>()) : IsometryKind::hyperbolic;
        sys.add(field(g, "role").get<std::string>(), map_from_json(field(g, "map")), expected);
    }
    const int n = static_cast<int>(sys.gens.size());
    auto check_word = [&](const GroupWord& w) {
        for (const Letter& l : w) {
            if (l.index < 0 || l.index >= n) {
                malformed("word letter " + std::to_string(l.index) + " out of range");
            }
        }
        return w;
    };
    sys.sigma = map_from_json(field(j, "sigma"));
    if (j.contains("sigma_squared")) {
        sys.sigma_squared = check_word(word_from_json(j.at("sigma_squared")));
    }
    if (j.contains("sigma_words")) {
        const Json& ws = j.at("sigma_words");
        if (!ws.is_array() || static_cast<int>(ws.size()) != n) {
            malformed("sigma_words needs one entry per generator");
        }
        for (int i = 0; i < n; ++i) {
            if (!ws[i].is_null()) {
                sys.sigma_words[i] = check_word(word_from_json(ws[i]));
            }
        }
    }
    if (j.contains("relators")) {
        for (const Json& w : j.at("relators")) {
            sys.relators.push_back(check_word(word_from_json(w)));
        }
    }
    if (j.contains("nonreal_pairs")) {
        for (const Json& p : j.at("nonreal_pairs")) {
            if (!p.is_array() || p.size() != 2) {
                malformed("non-real pair must be [a, b]");
            }
            const int a = integer(p[0]), b = integer(p[1]);
            if (a < 0 || a >= n || b < 0 || b >= n) {
                malformed("non-real pair index out of range");
            }
            sys.nonreal_pairs.push_back({a, b});
        }
    }
    if (j.contains("reference") && !j.at("reference").is_null()) {
        sys.reference = geodesic_from_json(j.at("reference"));
    }
    for (const char* key : {"mirrors", "walls"}) {
        if (j.contains(key)) {
            auto& dst = std::string(key) == "mirrors" ? sys.mirrors : sys.walls;
            for (const Json& g : j.at(key)) {
                dst.push_back(geodesic_from_json(g));
            }
        }
    }
    if (j.contains("sequential")) {
        for (const Json& i : j.at("sequential")) {
            const int v = integer(i);
            if (v < 0 || v >= n) {
                malformed("sequential index out of range");
            }
            sys.sequential.push_back(v);
        }
    }
    if (j.contains("surface") && !j.at("surface").is_null()) {
        sys.surface = surface_type_from_json(j.at("surface"));
    }
    if (j.contains("type") && !j.at("type").is_null()) {
        sys.type = curve_type_from_json(j.at("type"));
    }
    if (j.contains("provenance")) {
        sys.provenance = j.at("provenance").get<std::string>();
    }
    return sys;
}

inline Json to_json(const SigmaReport& r)
{
    Json entries = Json::array();
    for (const SigmaEntry& e : r.entries) {
        entries.push_back({{"index", e.index},
                           {"role", e.role},
                           {"ok", e.ok},
                           {"class_ok", e.class_ok},
                           {"source", e.source},
                           {"word", to_json(e.word)},
                           {"defect", e.defect}});
    }
    return Json{{"passed", r.passed()},
                {"sigma_orientation_ok", r.sigma_orientation_ok},
                {"sigma_squared_ok", r.sigma_squared_ok},
                {"sigma_squared_defect", r.sigma_squared_defect},
                {"entries", entries}};
}

/// Wraps library and JSON type errors into MalformedInput.
template <class F>
auto guarded(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        malformed(std::string("bad JSON value: ") + e.what());
    }
}

} // namespace hyperreal::io
