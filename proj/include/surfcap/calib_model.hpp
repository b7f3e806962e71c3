#pragma once

#include <array>
#include <string>
#include <variant>

// Calibration quantities use lengths in nm, areas in nm^2 and
// capacitances in pF.

namespace surfcap {

struct ParallelPlate {
    double area_nm2 = 0.0;
};

struct SpherePlate {
    double radius_nm = 0.0;
};

using Geometry = std::variant<ParallelPlate, SpherePlate>;

std::string geometry_name(const Geometry& g);
void validate_geometry(const Geometry& g);

/// Measurement model: gap d0 = stage - d_contact, effective gap d0 + b.
struct CalibModel {
    double d_contact = 0.0; // nm
    double b = 0.0;         // nm, total offset
    double scale = 1.0;     // multiplier on the geometric capacitance
    double c_stray = 0.0;   // pF

    void validate() const;
};

enum class CalibParam { d_contact = 0, b = 1, scale = 2, c_stray = 3 };
inline constexpr std::size_t kCalibParamCount = 4;

const char* param_name(CalibParam p);
/// Throws InvalidParameter on an unknown name.
CalibParam param_from_name(const std::string& name);
double get_param(const CalibModel& m, CalibParam p);
void set_param(CalibModel& m, CalibParam p, double value);

/// scale * eps0 A / (d0 + b) + c_stray; finite at contact when b > 0.
/// Throws ThroughContact when stage < d_contact.
double model_capacitance_parallel(double stage_nm, const CalibModel& model, double area_nm2);

/// scale * 2 pi eps0 R ln(R / (d0 + b)) + c_stray (proximity-force form).
/// Throws PfaInvalid when d0 + b >= R.
double model_capacitance_sphere(double stage_nm, const CalibModel& model, double radius_nm);

double model_capacitance(double stage_nm, const CalibModel& model, const Geometry& g);

/// dC/dparam for all four parameters, ordered as CalibParam.
std::array<double, kCalibParamCount> model_gradient(double stage_nm, const CalibModel& model,
                                                    const Geometry& g);

/// eps0 * area / c_max: offset implied by the capacitance at contact.
/// Pass c_max with stray capacitance already removed.
double max_capacitance_offset(double c_max_pF, double area_nm2);

} // namespace surfcap
