// hyperreal: command-line access to the library. JSON arguments may be given
// inline or as a file path. Exit 0 on success, 1 when validation fails, 2 on
// malformed input or a failed construction.

#include "hyperreal/hyperreal.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace hyperreal;
using io::Json;

namespace {

Json load_json(const std::string& arg)
{
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
        return io::parse_text(arg);
    }
    std::ifstream in(arg);
    if (!in) {
        io::malformed("cannot read " + arg);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return io::parse_text(ss.str());
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<double> numbers(const Json& j)
{
    if (!j.is_array()) {
        io::malformed("expected an array of numbers");
    }
    std::vector<double> out;
    for (const Json& x : j) {
        out.push_back(io::number(x));
    }
    return out;
}

int cmd_classify(const std::string& matrix)
{
    const MoebiusMap m = io::map_from_json(load_json(matrix));
    Json j = io::to_json(classify(m));
    j["map"] = io::to_json(m);
    print(j);
    return 0;
}

int cmd_genus0(const std::string& ovals, const std::string& placement)
{
    const OvalType t = OvalType::parse(ovals);
    const std::vector<double> p = placement.empty() ? default_placement(t) : numbers(load_json(placement));
    print(io::to_json(build_genus_zero(t, p)));
    return 0;
}

int cmd_real(const std::string& type, const std::string& params)
{
    const RealCurveType t = io::curve_type_from_json(load_json(type));
    print(io::to_json(build_real_curve(t, numbers(load_json(params)))));
    return 0;
}

int cmd_symmetric(double lambda_pair, double lambda_real)
{
    print(io::to_json(build_symmetric_three_holes(lambda_pair, lambda_real)));
    return 0;
}

int cmd_validate(const std::string& system, double eps)
{
    const GeneratorSystem sys = io::system_from_json(load_json(system));
    Json out;
    const double defect = relator_defect(sys);
    out["relation_defect"] = defect;
    bool ok = defect <= eps;
    if (sequential_part(sys)) {
        const std::vector<std::string> violations = sequential_violations(sys);
        out["sequential"] = violations.empty();
        out["sequential_violations"] = violations;
        ok = ok && violations.empty();
    }
    const SigmaReport rep = verify_real_structure(sys, eps);
    out["sigma"] = io::to_json(rep);
    ok = ok && rep.passed();
    out["passed"] = ok;
    print(out);
    if (!ok) {
        std::cerr << "validation failed: relation defect " << defect << ", sigma report " << (rep.passed() ? "passed" : "failed") << "\n";
    }
    return ok ? 0 : 1;
}

/// {"host": system | {"type":..., "params":[...]}, "hole": role,
///  "piece": system | {"lambda_real": x}, "theta": t}
int cmd_glue(const std::string& recipe)
{
    const Json r = load_json(recipe);
    const Json& h = io::field(r, "host");
    const GeneratorSystem host = h.contains("generators") ? io::system_from_json(h)
                                                          : build_real_curve(io::curve_type_from_json(io::field(h, "type")), numbers(io::field(h, "params")));
    const std::string hole = io::field(r, "hole").get<std::string>();
    const Json& p = io::field(r, "piece");
    GeneratorSystem piece;
    if (p.contains("generators")) {
        piece = io::system_from_json(p);
    } else {
        const auto i = host.index_of(hole);
        if (!i) {
            throw Error(ErrorCode::RoleNotFound, "host has no generator with role " + hole);
        }
        piece = build_symmetric_three_holes(classify(host.gens[*i].map).lambda, io::number(io::field(p, "lambda_real")));
    }
    const double theta = r.contains("theta") ? io::number(r.at("theta")) : 0.0;
    print(io::to_json(glue(host, hole, piece, theta)));
    return 0;
}

int cmd_dim(const std::string& type)
{
    const RealCurveType t = io::curve_type_from_json(load_json(type));
    Json j = io::to_json(dimensions(t));
    j["type"] = io::to_json(t);
    print(j);
    return 0;
}

int cmd_render(const std::string& system, const std::string& out)
{
    const std::string svg = render_svg(scene_from_system(io::system_from_json(load_json(system))));
    if (out.empty() || out == "-") {
        std::cout << svg;
        return 0;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) {
        io::malformed("cannot write " + out);
    }
    f << svg;
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fuchsian groups, sequential sets and real structures"};
    app.require_subcommand(1);
    int code = 0;
    std::string matrix, ovals, placement, type, params, system, recipe, out;
    double lambda_pair = 0.0, lambda_real = 0.0, eps = tol::relation;

    auto* classify_cmd = app.add_subcommand("classify", "classify a matrix, e.g. '[[1,3],[0,1]]'");
    classify_cmd->add_option("matrix", matrix, "matrix JSON or file")->required();

    auto* build = app.add_subcommand("build", "build a generator system");
    build->require_subcommand(1);
    auto* genus0 = build->add_subcommand("genus0", "genus-zero system for one oval");
    genus0->add_option("--ovals", ovals, "oval type, letters h and p")->required();
    genus0->add_option("--placement", placement, "2r endpoints as JSON or file");
    auto* real = build->add_subcommand("real", "curve without real boundary");
    real->add_option("--type", type, "RealCurveType JSON or file")->required();
    real->add_option("--params", params, "sequential-set parameters JSON or file")->required();
    auto* symmetric = build->add_subcommand("symmetric", "pair of pants with two exchanged holes");
    symmetric->add_option("--lambda-pair", lambda_pair)->required();
    symmetric->add_option("--lambda-real", lambda_real)->required();

    auto* validate = app.add_subcommand("validate", "relation defect, sequential checks and sigma report");
    validate->add_option("system", system, "system JSON or file")->required();
    validate->add_option("--tolerance", eps, "relation tolerance");

    auto* glue_cmd = app.add_subcommand("glue", "glue a symmetric piece into a non-real hole pair");
    glue_cmd->add_option("recipe", recipe, "recipe JSON or file")->required();

    auto* dim = app.add_subcommand("dim", "moduli dimensions of a type");
    dim->add_option("--type", type, "RealCurveType JSON or file")->required();

    auto* render = app.add_subcommand("render", "SVG picture of a system");
    render->add_option("system", system, "system JSON or file")->required();
    render->add_option("-o,--output", out, "output file, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*classify_cmd) {
            code = cmd_classify(matrix);
        } else if (*genus0) {
            code = cmd_genus0(ovals, placement);
        } else if (*real) {
            code = cmd_real(type, params);
        } else if (*symmetric) {
            code = cmd_symmetric(lambda_pair, lambda_real);
        } else if (*validate) {
            code = cmd_validate(system, eps);
        } else if (*glue_cmd) {
            code = cmd_glue(recipe);
        } else if (*dim) {
            code = cmd_dim(type);
        } else if (*render) {
            code = cmd_render(system, out);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: bad JSON value: " << e.what() << "\n";
        return 2;
    }
    return code;
}
