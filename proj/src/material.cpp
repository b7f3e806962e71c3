#include "surfcap/material.hpp"

#include <cmath>
#include <string>

#include "surfcap/errors.hpp"
#include "surfcap/units.hpp"

namespace surfcap {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidParameter(what);
}

} // namespace

MaterialParams MaterialParams::make(double n_d, double n_s, double E_F, double kappa,
                                    std::optional<double> alpha) {
    MaterialParams p;
    p.n_d = n_d;
    p.n_s = n_s;
    p.E_F = E_F;
    p.kappa = kappa;
    p.alpha = alpha ? *alpha : n_d / kappa;
    p.validate();
    return p;
}

void MaterialParams::validate() const {
    require(std::isfinite(n_d) && n_d > 0.0, "n_d must be finite and > 0");
    require(std::isfinite(n_s) && n_s >= 0.0, "n_s must be finite and >= 0");
    require(std::isfinite(E_F), "E_F must be finite");
    require(std::isfinite(kappa) && kappa >= 1.0, "kappa must be finite and >= 1");
    require(std::isfinite(alpha) && alpha > 0.0, "alpha must be finite and > 0");
}

PlateConfig PlateConfig::make(double d0, int n_semiconducting_plates) {
    PlateConfig p{d0, n_semiconducting_plates};
    p.validate();
    return p;
}

void PlateConfig::validate() const {
    require(std::isfinite(d0) && d0 > 0.0, "d0 must be finite and > 0");
    require(n_semiconducting_plates == 1 || n_semiconducting_plates == 2,
            "n_semiconducting_plates must be 1 or 2");
}

MaterialParams reduce_units(const SiMaterial& si) {
    require(std::isfinite(si.n_d_per_cm3) && si.n_d_per_cm3 > 0.0,
            "n_d_per_cm3 must be finite and > 0");
    require(std::isfinite(si.n_s_per_cm2_per_V) && si.n_s_per_cm2_per_V >= 0.0,
            "n_s_per_cm2_per_V must be finite and >= 0");
    return MaterialParams::make(units::volume_density_to_reduced(si.n_d_per_cm3),
                                units::surface_states_to_reduced(si.n_s_per_cm2_per_V),
                                si.E_F_V, si.kappa, si.alpha_reduced);
}

SiMaterial to_si(const MaterialParams& params) {
    params.validate();
    SiMaterial si;
    si.n_d_per_cm3 = units::volume_density_from_reduced(params.n_d);
    si.n_s_per_cm2_per_V = units::surface_states_from_reduced(params.n_s);
    si.E_F_V = params.E_F;
    si.kappa = params.kappa;
    si.alpha_reduced = params.alpha;
    return si;
}

} // namespace surfcap
