#include "surfcap/screening.hpp"

#include <cmath>

#include "surfcap/errors.hpp"
#include "surfcap/units.hpp"

namespace surfcap {

double debye_length(const DebyeInputs& inp) {
    if (!(std::isfinite(inp.temperature) && inp.temperature > 0.0) ||
        !(std::isfinite(inp.carrier_density) && inp.carrier_density > 0.0) ||
        !(std::isfinite(inp.kappa) && inp.kappa > 0.0)) {
        throw DomainError("debye_length: temperature, carrier density and kappa must be > 0");
    }
    using namespace units;
    const double n_per_m3 = inp.carrier_density * 1e6 * (inp.two_carrier ? 2.0 : 1.0);
    const double lambda_m = std::sqrt(kEpsilon0 * inp.kappa * kBoltzmann * inp.temperature /
                                      (kElementaryCharge * kElementaryCharge * n_per_m3));
    return lambda_m / kNanometre;
}

double debye_offset(double lambda_d, double kappa, int n_plates) {
    if (!(std::isfinite(lambda_d) && lambda_d > 0.0))
        throw DomainError("debye_offset: lambda_d must be > 0");
    if (!(std::isfinite(kappa) && kappa >= 1.0))
        throw DomainError("debye_offset: kappa must be >= 1");
    if (n_plates != 1 && n_plates != 2)
        throw DomainError("debye_offset: n_plates must be 1 or 2");
    return n_plates * 2.0 * lambda_d / kappa;
}

double metal_offset(int n_plates, double per_plate_nm) {
    if (n_plates != 1 && n_plates != 2)
        throw DomainError("metal_offset: n_plates must be 1 or 2");
    if (!(std::isfinite(per_plate_nm) && per_plate_nm > 0.0))
        throw DomainError("metal_offset: per-plate offset must be > 0");
    return n_plates * per_plate_nm;
}

const std::vector<ScreeningPreset>& builtin_screening_presets() {
    static const std::vector<ScreeningPreset> presets{
        {"Si-intrinsic", {300.0, 1.45e10, 11.7, true}, "n_i = 1.45e10 cm^-3, kappa = 11.7"},
        {"Ge-intrinsic", {300.0, 2.4e13, 16.0, true}, "n_i = 2.4e13 cm^-3, kappa = 16.0"},
    };
    return presets;
}

const ScreeningPreset& find_screening_preset(const std::string& name) {
    for (const auto& p : builtin_screening_presets())
        if (p.name == name) return p;
    throw InvalidParameter("unknown screening preset '" + name + "'");
}

} // namespace surfcap
