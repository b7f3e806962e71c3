#pragma once

#include <string>
#include <vector>

namespace surfcap {

/// Inputs to the bulk Debye length. carrier_density is per cm^3.
struct DebyeInputs {
    double temperature = 300.0;
    double carrier_density = 0.0;
    double kappa = 1.0;
    /// Count electrons and holes at equal density (intrinsic material).
    bool two_carrier = false;
};

/// sqrt(eps0 kappa kB T / (e^2 N)) in nm, with N = carrier_density, or
/// 2 * carrier_density when two_carrier is set.
double debye_length(const DebyeInputs& inp);

/// n_plates * 2 lambda_d / kappa, same length unit as lambda_d.
double debye_offset(double lambda_d, double kappa, int n_plates);

/// Space-charge offset of a metal with a parabolic conduction band, per plate.
inline constexpr double kMetalOffsetPerPlateNm = 0.1;

/// n_plates * per_plate_nm.
double metal_offset(int n_plates, double per_plate_nm = kMetalOffsetPerPlateNm);

/// Named intrinsic-material screening inputs at 300 K.
struct ScreeningPreset {
    std::string name;
    DebyeInputs inputs;
    std::string source;
};

/// Built-in presets "Si-intrinsic" and "Ge-intrinsic". Intrinsic densities
/// are the textbook values 1.45e10 cm^-3 (Si) and 2.4e13 cm^-3 (Ge).
const std::vector<ScreeningPreset>& builtin_screening_presets();

/// Throws InvalidParameter for an unknown name.
const ScreeningPreset& find_screening_preset(const std::string& name);

} // namespace surfcap
