#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "run_config.hpp"
#include "surfcap/calib_model.hpp"
#include "surfcap/capacitance.hpp"
#include "surfcap/casimir.hpp"
#include "surfcap/equilibrium.hpp"
#include "surfcap/errors.hpp"
#include "surfcap/fit.hpp"
#include "surfcap/format.hpp"
#include "surfcap/measurement.hpp"
#include "surfcap/screening.hpp"
#include "surfcap/synthetic.hpp"
#include "surfcap/units.hpp"

namespace surfcap::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

/// Error raised for bad command-line usage; maps to exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

struct GlobalOptions {
    std::string config_path;
    std::string output_path;
    std::string format; // empty: per-command default (csv for curve, json otherwise)
};

double num(double x) { return round_significant(x); }

RunConfig load_config(const GlobalOptions& g) {
    return g.config_path.empty() ? RunConfig{} : load_run_config(g.config_path);
}

// Writes the payload to --output, or to `out` when no path is given.
void emit(const GlobalOptions& g, std::ostream& out, const std::string& payload) {
    if (g.output_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream f(g.output_path, std::ios::binary);
    if (!f) throw UsageError("cannot open output '" + g.output_path + "'");
    f << payload;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json state_json(const EquilibriumState& s) {
    return ordered_json{{"sigma0", num(s.sigma0)},
                        {"sigma1", num(s.sigma1)},
                        {"V1", num(s.V1)},
                        {"d1", num(s.d1)},
                        {"V0", num(s.V0)},
                        {"residual_neutrality", num(s.residual_neutrality)}};
}

ordered_json breakdown_json(const CapacitanceBreakdown& b) {
    return ordered_json{{"c_gap", num(b.c_gap)},
                        {"c_surface", num(b.c_surface)},
                        {"c_bulk", num(b.c_bulk)},
                        {"c_total", num(b.c_total)},
                        {"d_offset", num(b.d_offset)}};
}

// ---------------------------------------------------------------- equilibrium

struct EquilibriumArgs {
    double V0 = 0.0;
};

int cmd_equilibrium(const GlobalOptions& g, const EquilibriumArgs& a, std::ostream& out) {
    if (!(a.V0 > 0.0) || !std::isfinite(a.V0)) throw UsageError("--V0 must be > 0");
    const RunConfig cfg = load_config(g);
    if (!cfg.material || !cfg.plate) throw UsageError("equilibrium needs a config with material and plate");

    const auto st = solve_equilibrium(a.V0, *cfg.material, *cfg.plate, cfg.solver);
    std::optional<CapacitanceBreakdown> cap;
    if (st.V1 > kFlatBandThreshold) cap = capacitance_breakdown(st, *cfg.material, *cfg.plate);

    if (g.format == "csv") {
        std::ostringstream os;
        os << "sigma0,sigma1,V1,d1,V0,residual_neutrality";
        if (cap) os << ",c_gap,c_surface,c_bulk,c_total,d_offset";
        os << '\n'
           << format_number(st.sigma0) << ',' << format_number(st.sigma1) << ','
           << format_number(st.V1) << ',' << format_number(st.d1) << ','
           << format_number(st.V0) << ',' << format_number(st.residual_neutrality);
        if (cap) {
            os << ',' << format_number(cap->c_gap) << ',' << format_number(cap->c_surface) << ','
               << format_number(cap->c_bulk) << ',' << format_number(cap->c_total) << ','
               << format_number(cap->d_offset);
        }
        os << '\n';
        emit(g, out, os.str());
    } else {
        ordered_json j = state_json(st);
        j["units"] = "reduced (eps0 = e = 1, volts, nm)";
        if (cap) j["capacitance"] = breakdown_json(*cap);
        emit(g, out, dump(j));
    }
    return kExitOk;
}

// ---------------------------------------------------------------------- curve

struct CurveArgs {
    double d0_min = 0.0;
    double d0_max = 0.0;
    std::size_t n_points = 0;
    std::optional<double> V0;
    std::optional<double> fixed_V1;
};

int cmd_curve(const GlobalOptions& g, const CurveArgs& a, std::ostream& out, std::ostream& err) {
    if (!(a.d0_min > 0.0 && a.d0_max > a.d0_min)) throw UsageError("need 0 < --d0-min < --d0-max");
    if (a.n_points < 2) throw UsageError("--n-points must be >= 2");
    if (!a.fixed_V1 && !a.V0) throw UsageError("curve needs --V0 or --fixed-V1");
    if (a.V0 && !(*a.V0 > 0.0)) throw UsageError("--V0 must be > 0");
    const RunConfig cfg = load_config(g);
    if (!cfg.material) throw UsageError("curve needs a config with material");
    const int n_plates = cfg.plate ? cfg.plate->n_semiconducting_plates : 1;

    struct Row {
        double d0;
        std::optional<CapacitanceBreakdown> cap;
        std::string error;
    };
    std::vector<Row> rows;
    const double ratio = std::log(a.d0_max / a.d0_min) / static_cast<double>(a.n_points - 1);
    for (std::size_t i = 0; i < a.n_points; ++i) {
        const double d0 = i + 1 == a.n_points ? a.d0_max : a.d0_min * std::exp(ratio * static_cast<double>(i));
        const PlateConfig plate = PlateConfig::make(d0, n_plates);
        Row row{d0, std::nullopt, {}};
        try {
            if (a.fixed_V1) {
                row.cap = capacitance_at_band_bending(*a.fixed_V1, *cfg.material, plate);
            } else {
                const auto st = solve_equilibrium(*a.V0, *cfg.material, plate, cfg.solver);
                row.cap = capacitance_breakdown(st, *cfg.material, plate);
            }
        } catch (const Error& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }

    std::size_t failures = 0;
    if (g.format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json j{{"d0", num(r.d0)}};
            if (r.cap) {
                j["c_total"] = num(r.cap->c_total);
                j["d_offset"] = num(r.cap->d_offset);
                j["inv_c_total"] = num(1.0 / r.cap->c_total);
            } else {
                j["error"] = r.error;
                ++failures;
            }
            arr.push_back(j);
        }
        emit(g, out, dump(arr));
    } else {
        std::ostringstream os;
        os << "# mode: " << (a.fixed_V1 ? "fixed_V1 " + format_number(*a.fixed_V1)
                                        : "fixed_V0 " + format_number(*a.V0))
           << '\n';
        os << "d0,c_total,d_offset,inv_c_total\n";
        for (const auto& r : rows) {
            if (!r.cap) {
                os << "# d0=" << format_number(r.d0) << " failed: " << r.error << '\n';
                ++failures;
                continue;
            }
            os << format_number(r.d0) << ',' << format_number(r.cap->c_total) << ','
               << format_number(r.cap->d_offset) << ',' << format_number(1.0 / r.cap->c_total) << '\n';
        }
        emit(g, out, os.str());
    }
    if (failures) err << failures << " of " << rows.size() << " sweep points failed\n";
    return failures == rows.size() ? kExitRuntime : kExitOk;
}

// ---------------------------------------------------------------------- debye

struct DebyeArgs {
    std::string preset;
    std::optional<double> temperature;
    std::optional<double> carrier_density;
    std::optional<double> kappa;
    bool two_carrier = false;
    int plates = 1;
};

int cmd_debye(const GlobalOptions& g, const DebyeArgs& a, std::ostream& out) {
    const RunConfig cfg = load_config(g);
    DebyeInputs in;
    if (!a.preset.empty()) {
        in = resolve_preset(cfg, a.preset);
        if (a.temperature) in.temperature = *a.temperature;
    } else {
        if (!a.temperature || !a.carrier_density || !a.kappa)
            throw UsageError("debye needs --preset or all of --temperature, --carrier-density, --kappa");
        in.temperature = *a.temperature;
        in.carrier_density = *a.carrier_density;
        in.kappa = *a.kappa;
        in.two_carrier = a.two_carrier;
    }
    if (a.plates != 1 && a.plates != 2) throw UsageError("--plates must be 1 or 2");
    if (!(in.temperature > 0.0 && in.carrier_density > 0.0 && in.kappa >= 1.0))
        throw UsageError("temperature and carrier density must be > 0, kappa >= 1");

    const double lambda = debye_length(in);
    const double per_plate = debye_offset(lambda, in.kappa, 1);
    const double total = debye_offset(lambda, in.kappa, a.plates);

    if (g.format == "csv") {
        std::ostringstream os;
        os << "temperature_K,carrier_density_per_cm3,kappa,two_carrier,debye_length_nm,"
              "offset_per_plate_nm,n_plates,offset_total_nm\n"
           << format_number(in.temperature) << ',' << format_number(in.carrier_density) << ','
           << format_number(in.kappa) << ',' << (in.two_carrier ? 1 : 0) << ','
           << format_number(lambda) << ',' << format_number(per_plate) << ',' << a.plates << ','
           << format_number(total) << '\n';
        emit(g, out, os.str());
    } else {
        ordered_json j;
        if (!a.preset.empty()) j["preset"] = a.preset;
        j["temperature_K"] = num(in.temperature);
        j["carrier_density_per_cm3"] = num(in.carrier_density);
        j["kappa"] = num(in.kappa);
        j["two_carrier"] = in.two_carrier;
        j["debye_length_nm"] = num(lambda);
        j["debye_length_um"] = num(lambda * 1e-3);
        j["offset_per_plate_nm"] = num(per_plate);
        j["n_plates"] = a.plates;
        j["offset_total_nm"] = num(total);
        emit(g, out, dump(j));
    }
    return kExitOk;
}

// ---------------------------------------------------------- geometry helpers

struct GeometryArgs {
    std::string kind;
    std::optional<double> area_nm2;
    std::optional<double> radius_nm;
};

std::optional<Geometry> geometry_from_args(const GeometryArgs& a) {
    if (a.kind.empty()) {
        if (a.area_nm2 || a.radius_nm) throw UsageError("--area-nm2/--radius-nm need --geometry");
        return std::nullopt;
    }
    if (a.kind == "parallel") {
        if (!a.area_nm2) throw UsageError("parallel geometry needs --area-nm2");
        return ParallelPlate{*a.area_nm2};
    }
    if (a.kind == "sphere") {
        if (!a.radius_nm) throw UsageError("sphere geometry needs --radius-nm");
        return SpherePlate{*a.radius_nm};
    }
    throw UsageError("--geometry must be 'parallel' or 'sphere'");
}

ordered_json geometry_json(const Geometry& g) {
    ordered_json j{{"type", geometry_name(g)}};
    if (const auto* p = std::get_if<ParallelPlate>(&g))
        j["area_nm2"] = num(p->area_nm2);
    else
        j["radius_nm"] = num(std::get<SpherePlate>(g).radius_nm);
    return j;
}

// ------------------------------------------------------------------------ fit

struct FitArgs {
    std::string data_path;
    GeometryArgs geometry;
    std::optional<double> init_b;
    std::optional<double> init_d_contact;
    double init_scale = 1.0;
    double init_c_stray = 0.0;
    std::vector<std::string> fix{"d_contact"};
    std::optional<double> roughness_nm;
    std::string residuals_path;
};

ordered_json fit_report(const FitResult& r, const MeasurementSeries& data, const Geometry& geom) {
    ordered_json j;
    j["model"] = ordered_json{{"d_contact", num(r.model.d_contact)},
                              {"b", num(r.model.b)},
                              {"scale", num(r.model.scale)},
                              {"c_stray", num(r.model.c_stray)}};
    ordered_json names = ordered_json::array();
    for (const auto p : r.free_parameters) names.push_back(param_name(p));
    j["free_parameters"] = names;
    ordered_json cov = ordered_json::array();
    for (const auto& row : r.covariance) {
        ordered_json jr = ordered_json::array();
        for (const double v : row) jr.push_back(num(v));
        cov.push_back(jr);
    }
    j["covariance"] = cov;
    ordered_json se = ordered_json::object();
    for (std::size_t i = 0; i < r.free_parameters.size(); ++i)
        se[param_name(r.free_parameters[i])] = num(r.standard_errors[i]);
    j["standard_errors"] = se;
    j["rms_residual"] = num(r.rms_residual);
    j["converged"] = r.converged;
    j["n_iterations"] = r.n_iterations;
    j["warnings"] = r.warnings;
    j["geometry"] = geometry_json(geom);
    j["units"] = "lengths nm, capacitance pF";
    ordered_json md = ordered_json::object();
    for (const auto& [k, v] : data.metadata) md[k] = v;
    j["metadata"] = md;
    ordered_json fit_md = ordered_json::object();
    for (const auto& [k, v] : r.metadata) fit_md[k] = v;
    j["fit_metadata"] = fit_md;
    return j;
}

void write_residuals(const std::string& path, const FitResult& r, const MeasurementSeries& data,
                     const Geometry& geom) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open residuals output '" + path + "'");
    f << "stage_nm,capacitance_pF,model_pF,residual_pF\n";
    for (const auto& p : data.points) {
        const double m = model_capacitance(p.stage_nm, r.model, geom);
        f << format_number(p.stage_nm) << ',' << format_number(p.capacitance_pF) << ','
          << format_number(m) << ',' << format_number(p.capacitance_pF - m) << '\n';
    }
}

int cmd_fit(const GlobalOptions& g, const FitArgs& a, std::ostream& out, std::ostream& err) {
    const RunConfig cfg = load_config(g);
    const MeasurementSeries data = read_measurement_csv_file(a.data_path);
    std::optional<Geometry> geom = geometry_from_args(a.geometry);
    if (!geom) geom = data.geometry;
    if (!geom) throw UsageError("no geometry: pass --geometry or add geometry metadata to the data file");

    std::set<CalibParam> fixed;
    for (const auto& name : a.fix) {
        if (name.empty() || name == "none") continue;
        try {
            fixed.insert(param_from_name(name));
        } catch (const InvalidParameter& e) {
            throw UsageError(e.what());
        }
    }

    CalibModel init;
    init.scale = a.init_scale;
    init.c_stray = a.init_c_stray;
    const auto ci = data.contact_index();
    if (a.init_d_contact) {
        init.d_contact = *a.init_d_contact;
    } else if (ci) {
        init.d_contact = data.points[*ci].stage_nm;
    } else {
        init.d_contact = std::min(data.points.front().stage_nm, data.points.back().stage_nm);
    }
    if (a.init_b) {
        init.b = *a.init_b;
    } else if (const auto* pp = std::get_if<ParallelPlate>(&*geom)) {
        // Offset implied by the point nearest contact.
        const auto& near = data.points.front().stage_nm < data.points.back().stage_nm
                               ? data.points.front()
                               : data.points.back();
        const double implied = max_capacitance_offset(near.capacitance_pF / init.scale, pp->area_nm2) -
                               (near.stage_nm - init.d_contact);
        init.b = std::max(implied, 1.0);
    } else {
        init.b = 100.0;
    }

    FitOptions opts = cfg.fit;
    opts.roughness_nm = a.roughness_nm;

    FitResult result;
    int code = kExitOk;
    try {
        result = fit_offset(data, *geom, init, fixed, opts);
    } catch (const FitConvergenceError& e) {
        result = e.best();
        code = kExitRuntime;
    }

    emit(g, out, dump(fit_report(result, data, *geom)));
    if (!a.residuals_path.empty()) write_residuals(a.residuals_path, result, data, *geom);

    const auto se = result.standard_error(CalibParam::b);
    err << "offset b = " << format_number(result.model.b) << " nm";
    if (se) err << " +/- " << format_number(*se) << " nm";
    if (result.b_roughness_corrected)
        err << " (roughness corrected: " << format_number(*result.b_roughness_corrected) << " nm)";
    err << (result.converged ? "" : " [not converged]") << '\n';
    return code;
}

// ---------------------------------------------------------------------- synth

struct SynthArgs {
    GeometryArgs geometry;
    double b_nm = 62.0;
    double d_contact_nm = 0.0;
    double scale = 1.0;
    double c_stray_pF = 0.0;
    double d0_min = 0.0;
    double d0_max = 5000.0;
    std::size_t n_points = 50;
    double noise_frac = 0.01;
    double noise_floor_pF = 0.0;
    bool no_sigma = false;
    bool no_contact = false;
    std::uint64_t seed = 1;
};

int cmd_synth(const GlobalOptions& g, const SynthArgs& a, std::ostream& out) {
    const auto geom = geometry_from_args(a.geometry);
    if (!geom) throw UsageError("synth needs --geometry");
    if (!(a.d0_min >= 0.0 && a.d0_max > a.d0_min)) throw UsageError("need 0 <= --d0-min < --d0-max");
    if (a.n_points < 2) throw UsageError("--n-points must be >= 2");

    CalibModel truth{a.d_contact_nm, a.b_nm, a.scale, a.c_stray_pF};
    std::vector<double> grid = linear_grid(a.d0_min, a.d0_max, a.n_points);
    for (auto& x : grid) x += a.d_contact_nm;
    NoiseSpec noise{a.noise_frac, a.noise_floor_pF, !a.no_sigma};

    const auto series = generate_synthetic(truth, *geom, grid, noise, a.seed, !a.no_contact);
    std::ostringstream os;
    write_measurement_csv(os, series);
    emit(g, out, os.str());
    return kExitOk;
}

// -------------------------------------------------------------------- correct

struct CorrectArgs {
    std::string series_path;
    double offset_nm = 0.0;
    double power_law = 4.0;
    std::string mode = "linear";
};

int cmd_correct(const GlobalOptions& g, const CorrectArgs& a, std::ostream& out, std::ostream& err) {
    std::ifstream in(a.series_path);
    if (!in) throw ParseError("cannot open '" + a.series_path + "'", 0);
    const auto samples = read_force_csv(in);
    CorrectionMode mode;
    if (a.mode == "linear")
        mode = CorrectionMode::linear;
    else if (a.mode == "exact")
        mode = CorrectionMode::exact;
    else
        throw UsageError("--mode must be 'linear' or 'exact'");
    CorrectionSpec spec{a.power_law, a.offset_nm};
    try {
        spec.validate();
    } catch (const InvalidParameter& e) {
        throw UsageError(e.what());
    }

    const auto corrected = apply_correction_series(samples, spec, mode);
    std::ostringstream os;
    write_corrected_csv(os, corrected);
    emit(g, out, os.str());

    if (corrected.linearization_warnings) {
        err << "warning: " << corrected.linearization_warnings
            << " rows have |offset|/d > " << kLinearizationLimit
            << "; consider --mode exact\n";
    }
    if (!corrected.errors.empty()) {
        ordered_json rows = ordered_json::array();
        for (const auto& e : corrected.errors)
            rows.push_back(ordered_json{{"row", e.index}, {"message", e.message}});
        err << ordered_json{{"error", {{"kind", "row_errors"}, {"rows", rows}}}}.dump() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

void report_error(std::ostream& err, const char* kind, const std::string& message,
                  std::size_t line = 0) {
    ordered_json e{{"kind", kind}, {"message", message}};
    if (line) e["line"] = line;
    err << ordered_json{{"error", e}}.dump() << '\n';
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Surface-screening capacitance model, offset calibration and Casimir corrections",
                 "surfcap"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--config", g.config_path, "JSON run configuration");
    app.add_option("--output", g.output_path, "Write results to this file instead of stdout");
    app.add_option("--format", g.format, "Output format for equilibrium/curve/debye")
        ->check(CLI::IsMember({"csv", "json"}));

    EquilibriumArgs eq;
    auto* eq_cmd = app.add_subcommand("equilibrium", "Solve the equilibrium charge balance at V0");
    eq_cmd->add_option("--V0", eq.V0, "Applied potential (V)")->required();

    CurveArgs cv;
    double cv_V0 = 0.0, cv_V1 = 0.0;
    auto* cv_cmd = app.add_subcommand("curve", "Sweep capacitance over log-spaced gaps d0");
    cv_cmd->add_option("--d0-min", cv.d0_min, "Smallest gap (nm)")->required();
    cv_cmd->add_option("--d0-max", cv.d0_max, "Largest gap (nm)")->required();
    cv_cmd->add_option("--n-points", cv.n_points, "Number of sweep points")->required();
    auto* v0_opt = cv_cmd->add_option("--V0", cv_V0, "Applied potential (fixed-V0 mode)");
    auto* v1_opt = cv_cmd->add_option("--fixed-V1", cv_V1, "Band bending held fixed (V)");

    DebyeArgs db;
    double db_T = 0.0, db_n = 0.0, db_k = 0.0;
    auto* db_cmd = app.add_subcommand("debye", "Debye length and the offset it implies");
    db_cmd->add_option("--preset", db.preset, "Si-intrinsic, Ge-intrinsic or a config preset");
    auto* t_opt = db_cmd->add_option("--temperature", db_T, "Temperature (K)");
    auto* n_opt = db_cmd->add_option("--carrier-density", db_n, "Carrier density (cm^-3)");
    auto* k_opt = db_cmd->add_option("--kappa", db_k, "Bare dielectric constant");
    db_cmd->add_flag("--two-carrier", db.two_carrier, "Electrons and holes at equal density");
    db_cmd->add_option("--plates", db.plates, "Number of semiconducting plates (1 or 2)");

    FitArgs ft;
    double ft_b = 0.0, ft_dc = 0.0, ft_rough = 0.0, ft_area = 0.0, ft_radius = 0.0;
    auto* ft_cmd = app.add_subcommand("fit", "Fit offset and contact position to capacitance data");
    ft_cmd->add_option("data", ft.data_path, "Measurement CSV")->required();
    ft_cmd->add_option("--geometry", ft.geometry.kind, "parallel or sphere (default: file metadata)");
    auto* fa_opt = ft_cmd->add_option("--area-nm2", ft_area, "Plate area (nm^2)");
    auto* fr_opt = ft_cmd->add_option("--radius-nm", ft_radius, "Sphere radius (nm)");
    auto* fb_opt = ft_cmd->add_option("--init-b", ft_b, "Initial offset (nm)");
    auto* fdc_opt = ft_cmd->add_option("--init-d-contact", ft_dc, "Initial contact position (nm)");
    ft_cmd->add_option("--init-scale", ft.init_scale, "Initial geometry scale");
    ft_cmd->add_option("--init-c-stray", ft.init_c_stray, "Initial stray capacitance (pF)");
    ft_cmd->add_option("--fix", ft.fix, "Pinned parameters (d_contact,b,scale,c_stray or none)")
        ->delimiter(',');
    auto* rough_opt = ft_cmd->add_option("--roughness-nm", ft_rough, "Roughness subtracted from b");
    ft_cmd->add_option("--residuals", ft.residuals_path, "Write residuals CSV here");

    SynthArgs sy;
    double sy_area = 1e14, sy_radius = 0.0;
    auto* sy_cmd = app.add_subcommand("synth", "Generate a synthetic measurement series");
    sy_cmd->add_option("--geometry", sy.geometry.kind, "parallel or sphere");
    auto* sa_opt = sy_cmd->add_option("--area-nm2", sy_area, "Plate area (nm^2), default 1 cm^2");
    auto* sr_opt = sy_cmd->add_option("--radius-nm", sy_radius, "Sphere radius (nm)");
    sy_cmd->add_option("--b-nm", sy.b_nm, "True offset (nm)");
    sy_cmd->add_option("--d-contact-nm", sy.d_contact_nm, "Contact stage position (nm)");
    sy_cmd->add_option("--scale", sy.scale, "Geometry scale");
    sy_cmd->add_option("--c-stray-pF", sy.c_stray_pF, "Stray capacitance (pF)");
    sy_cmd->add_option("--d0-min", sy.d0_min, "Smallest gap (nm)");
    sy_cmd->add_option("--d0-max", sy.d0_max, "Largest gap (nm)");
    sy_cmd->add_option("--n-points", sy.n_points, "Number of points");
    sy_cmd->add_option("--noise-frac", sy.noise_frac, "Fractional Gaussian noise");
    sy_cmd->add_option("--noise-floor-pF", sy.noise_floor_pF, "Additive Gaussian noise (pF)");
    sy_cmd->add_flag("--no-sigma", sy.no_sigma, "Omit the sigma_pF column");
    sy_cmd->add_flag("--no-contact", sy.no_contact, "Do not flag the contact point");
    sy_cmd->add_option("--seed", sy.seed, "RNG seed");

    CorrectArgs co;
    auto* co_cmd = app.add_subcommand("correct", "Apply the distance offset to a force series");
    co_cmd->add_option("series", co.series_path, "Series CSV (d_nm,force_arb)")->required();
    co_cmd->add_option("--offset-nm", co.offset_nm, "Total distance offset (nm)")->required();
    co_cmd->add_option("--power-law", co.power_law, "Local exponent p in F ~ d^-p");
    co_cmd->add_option("--mode", co.mode, "linear or exact")->check(CLI::IsMember({"linear", "exact"}));

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        report_error(err, "usage", e.what());
        return kExitUsage;
    }

    try {
        if (*eq_cmd) return cmd_equilibrium(g, eq, out);
        if (*cv_cmd) {
            if (*v0_opt) cv.V0 = cv_V0;
            if (*v1_opt) cv.fixed_V1 = cv_V1;
            return cmd_curve(g, cv, out, err);
        }
        if (*db_cmd) {
            if (*t_opt) db.temperature = db_T;
            if (*n_opt) db.carrier_density = db_n;
            if (*k_opt) db.kappa = db_k;
            return cmd_debye(g, db, out);
        }
        if (*ft_cmd) {
            if (*fa_opt) ft.geometry.area_nm2 = ft_area;
            if (*fr_opt) ft.geometry.radius_nm = ft_radius;
            if (*fb_opt) ft.init_b = ft_b;
            if (*fdc_opt) ft.init_d_contact = ft_dc;
            if (*rough_opt) ft.roughness_nm = ft_rough;
            return cmd_fit(g, ft, out, err);
        }
        if (*sy_cmd) {
            if (sy.geometry.kind.empty()) sy.geometry.kind = "parallel";
            if (sy.geometry.kind == "sphere") {
                if (*sa_opt) throw UsageError("--area-nm2 does not apply to sphere geometry");
                sy.geometry.area_nm2.reset();
            } else {
                sy.geometry.area_nm2 = sy_area;
            }
            if (*sr_opt) sy.geometry.radius_nm = sy_radius;
            return cmd_synth(g, sy, out);
        }
        if (*co_cmd) return cmd_correct(g, co, out, err);
    } catch (const UsageError& e) {
        report_error(err, "usage", e.what());
        return kExitUsage;
    } catch (const ParseError& e) {
        report_error(err, "parse", e.what(), e.line());
        return kExitUsage;
    } catch (const InvalidParameter& e) {
        report_error(err, "invalid_parameter", e.what());
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        report_error(err, "parse", e.what());
        return kExitUsage;
    } catch (const DepletionViolation& e) {
        report_error(err, "depletion_violation", e.what());
        return kExitRuntime;
    } catch (const ConvergenceError& e) {
        report_error(err, "convergence", e.what());
        return kExitRuntime;
    } catch (const Error& e) {
        report_error(err, "runtime", e.what());
        return kExitRuntime;
    }
    return kExitUsage;
}

} // namespace surfcap::cli
