#include "surfcap/units.hpp"

namespace surfcap::units {

namespace {

constexpr double kPerCm2ToPerM2 = 1e4;
constexpr double kPerCm3ToPerM3 = 1e6;

} // namespace

double reduced_capacitance_per_area_si() { return kEpsilon0 / kNanometre; }

double reduced_charge_per_area_si() { return kEpsilon0 / kNanometre; }

// e * n_s [C/(m^2 V)] divided by eps0 / L.
double surface_states_to_reduced(double per_cm2_per_volt) {
    return kElementaryCharge * per_cm2_per_volt * kPerCm2ToPerM2 * kNanometre / kEpsilon0;
}

double surface_states_from_reduced(double reduced) {
    return reduced * kEpsilon0 / (kElementaryCharge * kNanometre * kPerCm2ToPerM2);
}

// e * n_d [C/m^3] divided by eps0 * 1 V / L^2.
double volume_density_to_reduced(double per_cm3) {
    return kElementaryCharge * per_cm3 * kPerCm3ToPerM3 * kNanometre * kNanometre / kEpsilon0;
}

double volume_density_from_reduced(double reduced) {
    return reduced * kEpsilon0 / (kElementaryCharge * kNanometre * kNanometre * kPerCm3ToPerM3);
}

} // namespace surfcap::units
