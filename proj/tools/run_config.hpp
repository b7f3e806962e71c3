#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "surfcap/equilibrium.hpp"
#include "surfcap/fit.hpp"
#include "surfcap/material.hpp"
#include "surfcap/screening.hpp"

namespace surfcap::cli {

/**
 * Parsed `--config` file.
 *
 * {
 *   "material": { "n_d_per_cm3": .., "n_s_per_cm2_per_V": .., "E_F_V": ..,
 *                 "kappa": .., "alpha_reduced": .. (optional) }
 *            or { "units": "reduced", "n_d": .., "n_s": .., "E_F": ..,
 *                 "kappa": .., "alpha": .. (optional) },
 *   "plate": { "d0_nm": .., "n_semiconducting_plates": 1 },
 *   "tolerances": { "root_tol", "neutrality_tol", "fit_gtol", "fit_xtol" },
 *   "presets": { "<name>": { "temperature_K", "carrier_density_per_cm3",
 *                            "kappa", "two_carrier" } }
 * }
 *
 * Every section is optional; commands check for what they need.
 */
struct RunConfig {
    std::optional<MaterialParams> material;
    std::optional<PlateConfig> plate;
    SolverOptions solver;
    FitOptions fit;
    std::map<std::string, DebyeInputs> presets;
};

/// Throws ParseError or InvalidParameter.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

/// Config preset first, then the built-in table.
DebyeInputs resolve_preset(const RunConfig& cfg, const std::string& name);

} // namespace surfcap::cli
