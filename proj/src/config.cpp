#include "fracsub/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>
#include <toml.hpp>

#include "fracsub/error.hpp"

namespace fracsub {

namespace {

using nlohmann::json;

json to_json(const toml::node& node) {
    if (const auto* t = node.as_table()) {
        json out = json::object();
        for (const auto& [k, v] : *t) out[std::string(k.str())] = to_json(v);
        return out;
    }
    if (const auto* a = node.as_array()) {
        json out = json::array();
        for (const auto& v : *a) out.push_back(to_json(v));
        return out;
    }
    if (const auto* v = node.as_integer()) return v->get();
    if (const auto* v = node.as_floating_point()) return v->get();
    if (const auto* v = node.as_boolean()) return v->get();
    if (const auto* v = node.as_string()) return v->get();
    throw ConfigError("unsupported TOML value (dates and times are not accepted)");
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be a table");
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

double number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
    return v.get<double>();
}

int integer(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
    return v.get<int>();
}

std::string text(const json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
    return v.get<std::string>();
}

template <class T, class F>
std::vector<T> list(const json& v, const std::string& key, F item) {
    if (!v.is_array()) throw ConfigError("'" + key + "' must be an array");
    std::vector<T> out;
    for (const auto& x : v) out.push_back(item(x, key));
    return out;
}

ProjectionRule projection(const json& v, const std::string& key) {
    const std::string s = text(v, key);
    if (s == "l2") return ProjectionRule::L2;
    if (s == "interpolation") return ProjectionRule::Interpolation;
    throw ConfigError("'" + key + "' must be 'l2' or 'interpolation'");
}

RunConfig from_json(const json& root) {
    check_keys(root,
               {"kind", "scheme", "alpha", "exponents", "lambda", "T", "dimension", "mass", "meshes", "steps", "case",
                "comparison", "output", "source", "initial"},
               "configuration");
    RunConfig cfg;
    if (root.contains("kind")) {
        const std::string k = text(root["kind"], "kind");
        if (k == "fode") cfg.kind = StudyKind::Fode;
        else if (k == "pde") cfg.kind = StudyKind::PdeTime;
        else if (k == "space") cfg.kind = StudyKind::Space;
        else throw ConfigError("'kind' must be 'fode', 'pde' or 'space'");
    }
    if (root.contains("scheme")) cfg.scheme = parse_scheme(text(root["scheme"], "scheme"));
    if (root.contains("alpha")) cfg.alpha = number(root["alpha"], "alpha");
    if (root.contains("exponents")) cfg.exponents = list<double>(root["exponents"], "exponents", number);
    if (root.contains("lambda")) cfg.lambda = number(root["lambda"], "lambda");
    if (root.contains("T")) cfg.T = number(root["T"], "T");
    if (root.contains("dimension")) cfg.dimension = integer(root["dimension"], "dimension");
    if (root.contains("mass")) {
        const std::string m = text(root["mass"], "mass");
        if (m == "lumped") cfg.mass = MassTreatment::Lumped;
        else if (m == "galerkin") cfg.mass = MassTreatment::Galerkin;
        else throw ConfigError("'mass' must be 'lumped' or 'galerkin'");
    }
    if (root.contains("meshes")) cfg.subdivisions = list<int>(root["meshes"], "meshes", integer);
    if (root.contains("steps")) cfg.steps = list<int>(root["steps"], "steps", integer);
    if (root.contains("case")) {
        const std::string c = text(root["case"], "case");
        if (c != "a" && c != "b") throw ConfigError("'case' must be 'a' or 'b'");
        cfg.example_case = c[0];
    }
    if (root.contains("comparison")) {
        const std::string c = text(root["comparison"], "comparison");
        if (c == "restrict") cfg.comparison = MeshComparison::RestrictToCoarse;
        else if (c == "interpolate") cfg.comparison = MeshComparison::InterpolateToFine;
        else throw ConfigError("'comparison' must be 'restrict' or 'interpolate'");
    }
    if (root.contains("output")) cfg.output = text(root["output"], "output");

    if (root.contains("source")) {
        const json& s = root["source"];
        check_keys(s, {"projection", "term"}, "[source]");
        cfg.custom_data = true;
        if (s.contains("projection")) cfg.rules.source = projection(s["projection"], "source.projection");
        if (s.contains("term")) {
            if (!s["term"].is_array()) throw ConfigError("'source.term' must be an array of tables");
            for (const auto& t : s["term"]) {
                check_keys(t, {"c", "mu", "profile"}, "[[source.term]]");
                if (!t.contains("mu")) throw ConfigError("source term without 'mu'");
                const double c = t.contains("c") ? number(t["c"], "c") : 1.0;
                const SpatialProfile g = t.contains("profile") ? SpatialProfile::parse(text(t["profile"], "profile"))
                                                               : SpatialProfile::constant(1.0);
                cfg.source.terms.push_back(SourceTerm::power(c, number(t["mu"], "mu"), g));
            }
        }
    }
    if (root.contains("initial")) {
        const json& i = root["initial"];
        check_keys(i, {"profile", "projection"}, "[initial]");
        cfg.custom_data = true;
        if (i.contains("profile")) cfg.initial.profile = SpatialProfile::parse(text(i["profile"], "initial.profile"));
        if (i.contains("projection")) cfg.rules.initial = projection(i["projection"], "initial.projection");
    }
    if (cfg.custom_data && cfg.kind == StudyKind::Fode) throw ConfigError("explicit data applies to pde and space studies");
    cfg.validate();
    return cfg;
}

}  // namespace

RunConfig parse_config_toml(std::string_view text) {
    toml::table tbl;
    try {
        tbl = toml::parse(text);
    } catch (const toml::parse_error& e) {
        std::ostringstream msg;
        msg << "TOML parse error: " << e.description() << " at line " << e.source().begin.line;
        throw ConfigError(msg.str());
    }
    return from_json(to_json(tbl));
}

RunConfig parse_config_json(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("JSON parse error: ") + e.what());
    }
    return from_json(root);
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read configuration '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    return is_json ? parse_config_json(ss.str()) : parse_config_toml(ss.str());
}

}  // namespace fracsub
