#include "impulsive/problem_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "impulsive/toml.hpp"

namespace impulsive {

namespace {

void reject_unknown_keys(const toml::Table& table, const std::string& where,
                         const std::set<std::string>& allowed) {
    for (const auto& [key, _] : table)
        if (!allowed.count(key))
            throw SchemaError("unknown key \"" + key + "\" in " + where);
}

std::vector<double> number_array(const toml::Value& v, const std::string& key) {
    if (!v.is_array()) throw SchemaError("key \"" + key + "\" must be an array of numbers");
    std::vector<double> out;
    for (const auto& item : v.as_array()) {
        if (!item.is_number())
            throw SchemaError("key \"" + key + "\" must contain only numbers");
        out.push_back(item.as_double());
    }
    return out;
}

const toml::Value* find(const toml::Table& t, const std::string& key) {
    auto it = t.find(key);
    return it == t.end() ? nullptr : &it->second;
}

} // namespace

LoadedProblem parse_problem_text(const std::string& text) {
    const toml::Table root = toml::parse(text);
    reject_unknown_keys(root, "problem file",
                        {"mesh", "coefficients", "nonlinearity", "solver", "certificate"});

    const toml::Value* mesh_section = find(root, "mesh");
    if (!mesh_section) throw SchemaError("missing [mesh] section");
    const toml::Table& mesh_table = mesh_section->as_table();
    reject_unknown_keys(mesh_table, "[mesh]", {"points"});
    const toml::Value* points = find(mesh_table, "points");
    if (!points) throw SchemaError("missing key \"points\" in [mesh]");
    ImpulseMesh mesh = build_mesh(number_array(*points, "points"));
    const std::size_t m = mesh.interior_count();

    const toml::Value* coef_section = find(root, "coefficients");
    if (!coef_section) throw SchemaError("missing [coefficients] section");
    const toml::Table& coef = coef_section->as_table();
    reject_unknown_keys(coef, "[coefficients]", {"a", "b"});
    const toml::Value* av = find(coef, "a");
    const toml::Value* bv = find(coef, "b");
    if (!av) throw SchemaError("missing key \"a\" in [coefficients]");
    if (!bv) throw SchemaError("missing key \"b\" in [coefficients]");
    std::vector<double> a = number_array(*av, "a");
    std::vector<double> b = number_array(*bv, "b");
    if (a.size() != m + 1)
        throw SchemaError("key \"a\" must have length m + 1 = " + std::to_string(m + 1) +
                          ", got " + std::to_string(a.size()));
    if (b.size() != m)
        throw SchemaError("key \"b\" must have length m = " + std::to_string(m) +
                          ", got " + std::to_string(b.size()));

    GTerm g;
    std::vector<NonlinearityEntry> h;
    std::string g_name = "none";
    std::vector<std::string> h_names(m, "none");

    if (const toml::Value* nl_section = find(root, "nonlinearity")) {
        const toml::Table& nl = nl_section->as_table();
        reject_unknown_keys(nl, "[nonlinearity]", {"g", "g_params", "h"});
        if (const toml::Value* gv = find(nl, "g")) {
            g_name = gv->as_string();
            try {
                g.entry = catalog_entry(g_name);
            } catch (const std::invalid_argument& e) {
                throw SchemaError(std::string("key \"g\": ") + e.what());
            }
        }
        if (const toml::Value* gp = find(nl, "g_params")) {
            const toml::Table& params = gp->as_table();
            reject_unknown_keys(params, "g_params", {"scale", "scale_by_a"});
            if (const toml::Value* s = find(params, "scale")) g.scale = s->as_double();
            if (const toml::Value* s = find(params, "scale_by_a"))
                g.scale_by_a = s->as_bool();
        }
        if (const toml::Value* hv = find(nl, "h")) {
            std::vector<std::string> names;
            if (hv->is_string()) {
                names.assign(m, hv->as_string());
            } else if (hv->is_array()) {
                for (const auto& item : hv->as_array()) names.push_back(item.as_string());
                if (names.size() == 1) names.assign(m, names.front());
            } else {
                throw SchemaError("key \"h\" must be a name or an array of names");
            }
            if (names.size() != m)
                throw SchemaError("key \"h\" must have length m = " + std::to_string(m) +
                                  ", got " + std::to_string(names.size()));
            h_names = names;
            for (const auto& name : names) {
                try {
                    h.push_back(catalog_entry(name));
                } catch (const std::invalid_argument& e) {
                    throw SchemaError(std::string("key \"h\": ") + e.what());
                }
            }
        }
    }

    LoadedProblem loaded{make_problem(std::move(mesh), std::move(a), std::move(b),
                                      std::move(g), std::move(h)),
                         SolverOptions{},
                         12,
                         0,
                         true,
                         g_name,
                         h_names};

    if (const toml::Value* solver_section = find(root, "solver")) {
        const toml::Table& s = solver_section->as_table();
        reject_unknown_keys(s, "[solver]",
                            {"modes", "quad_order", "gradient_tol", "max_iters", "radii",
                             "seed", "refine_modes"});
        if (const toml::Value* v = find(s, "modes")) {
            const auto modes = v->as_integer();
            if (modes < 1) throw SchemaError("key \"modes\" must be >= 1");
            loaded.modes = static_cast<std::size_t>(modes);
        }
        if (const toml::Value* v = find(s, "quad_order")) {
            const auto q = v->as_integer();
            if (q < 2) throw SchemaError("key \"quad_order\" must be >= 2");
            loaded.quad_order = static_cast<std::size_t>(q);
        }
        if (const toml::Value* v = find(s, "gradient_tol")) {
            loaded.solver.gradient_tol = v->as_double();
            if (!(loaded.solver.gradient_tol > 0.0))
                throw SchemaError("key \"gradient_tol\" must be > 0");
        }
        if (const toml::Value* v = find(s, "max_iters")) {
            const auto iters = v->as_integer();
            if (iters < 1) throw SchemaError("key \"max_iters\" must be >= 1");
            loaded.solver.max_iters = static_cast<std::size_t>(iters);
        }
        if (const toml::Value* v = find(s, "radii")) {
            loaded.solver.radii = number_array(*v, "radii");
            if (loaded.solver.radii.empty())
                throw SchemaError("key \"radii\" must not be empty");
        }
        if (const toml::Value* v = find(s, "seed"))
            loaded.solver.seed = static_cast<std::uint64_t>(v->as_integer());
        if (const toml::Value* v = find(s, "refine_modes")) {
            const auto rm = v->as_integer();
            if (rm < 1) throw SchemaError("key \"refine_modes\" must be >= 1");
            loaded.solver.refine_modes = static_cast<std::size_t>(rm);
        }
    }

    if (const toml::Value* cert_section = find(root, "certificate")) {
        const toml::Table& c = cert_section->as_table();
        reject_unknown_keys(c, "[certificate]", {"check"});
        if (const toml::Value* v = find(c, "check")) loaded.certificate_check = v->as_bool();
    }

    return loaded;
}

LoadedProblem parse_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open problem file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_text(buf.str());
}

} // namespace impulsive
