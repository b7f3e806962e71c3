#pragma once

// Physical constants (CODATA 2018, exact where defined) and the scale
// factors between SI and the reduced system used by the core model.
//
// Reduced system: eps0 = 1, e = 1, potentials in volts, lengths in nm.
// Derived reduced units:
//   charge per area        eps0 * 1 V / 1 nm
//   capacitance per area   eps0 / 1 nm
//   volume charge density  eps0 * 1 V / (1 nm)^2
//   alpha                  V / nm^2

namespace surfcap::units {

inline constexpr double kEpsilon0 = 8.8541878128e-12;       // F/m
inline constexpr double kElementaryCharge = 1.602176634e-19; // C
inline constexpr double kBoltzmann = 1.380649e-23;           // J/K
inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double kNanometre = 1e-9; // m

/// eps0 expressed in pF/nm, the unit pair used by the calibration module.
inline constexpr double kEpsilon0PicofaradPerNm = kEpsilon0 * 1e12 * kNanometre;

/// SI value of one reduced unit of capacitance per area (F/m^2).
double reduced_capacitance_per_area_si();

/// SI value of one reduced unit of charge per area (C/m^2).
double reduced_charge_per_area_si();

/// Reduced n_s from states per cm^2 per volt.
double surface_states_to_reduced(double per_cm2_per_volt);
double surface_states_from_reduced(double reduced);

/// Reduced n_d from carriers per cm^3.
double volume_density_to_reduced(double per_cm3);
double volume_density_from_reduced(double reduced);

} // namespace surfcap::units
