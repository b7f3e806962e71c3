#include "run_config.hpp"

#include <fstream>

#include "surfcap/errors.hpp"

namespace surfcap::cli {

namespace {

using nlohmann::json;

double number(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(std::string("config: missing '") + key + "'", 0);
    if (!it->is_number()) throw ParseError(std::string("config: '") + key + "' must be a number", 0);
    return it->get<double>();
}

std::optional<double> optional_number(const json& obj, const char* key) {
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    return number(obj, key);
}

double tolerance(const json& obj, const char* key, double fallback) {
    const auto v = optional_number(obj, key);
    if (!v) return fallback;
    if (!(*v >= 1e-15 && *v <= 1e-3))
        throw InvalidParameter(std::string("config: tolerance '") + key + "' must lie in [1e-15, 1e-3]");
    return *v;
}

MaterialParams parse_material(const json& m) {
    if (!m.is_object()) throw ParseError("config: 'material' must be an object", 0);
    const std::string units = m.value("units", std::string("si"));
    if (units == "reduced") {
        return MaterialParams::make(number(m, "n_d"), number(m, "n_s"), number(m, "E_F"),
                                    number(m, "kappa"), optional_number(m, "alpha"));
    }
    if (units != "si") throw ParseError("config: material units must be 'si' or 'reduced'", 0);
    SiMaterial si;
    si.n_d_per_cm3 = number(m, "n_d_per_cm3");
    si.n_s_per_cm2_per_V = number(m, "n_s_per_cm2_per_V");
    si.E_F_V = number(m, "E_F_V");
    si.kappa = number(m, "kappa");
    si.alpha_reduced = optional_number(m, "alpha_reduced");
    return reduce_units(si);
}

} // namespace

RunConfig parse_run_config(const json& j) {
    if (!j.is_object()) throw ParseError("config: top level must be an object", 0);
    RunConfig cfg;
    if (j.contains("material")) cfg.material = parse_material(j.at("material"));
    if (j.contains("plate")) {
        const auto& p = j.at("plate");
        const auto n = p.value("n_semiconducting_plates", 1);
        cfg.plate = PlateConfig::make(number(p, "d0_nm"), n);
    }
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        cfg.solver.root_tol = tolerance(t, "root_tol", cfg.solver.root_tol);
        cfg.solver.neutrality_tol = tolerance(t, "neutrality_tol", cfg.solver.neutrality_tol);
        cfg.fit.gtol = tolerance(t, "fit_gtol", cfg.fit.gtol);
        cfg.fit.xtol = tolerance(t, "fit_xtol", cfg.fit.xtol);
    }
    if (j.contains("presets")) {
        for (const auto& [name, p] : j.at("presets").items()) {
            DebyeInputs in;
            in.temperature = number(p, "temperature_K");
            in.carrier_density = number(p, "carrier_density_per_cm3");
            in.kappa = number(p, "kappa");
            in.two_carrier = p.value("two_carrier", false);
            cfg.presets[name] = in;
        }
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config '" + path + "'", 0);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what(), 0);
    }
    return parse_run_config(j);
}

DebyeInputs resolve_preset(const RunConfig& cfg, const std::string& name) {
    if (const auto it = cfg.presets.find(name); it != cfg.presets.end()) return it->second;
    return find_screening_preset(name).inputs;
}

} // namespace surfcap::cli
