#include "surfcap/calib_model.hpp"

#include <cmath>

#include "surfcap/errors.hpp"
#include "surfcap/units.hpp"

namespace surfcap {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kEps0 = units::kEpsilon0PicofaradPerNm;

double effective_gap(double stage_nm, const CalibModel& m) {
    const double d0 = stage_nm - m.d_contact;
    if (d0 < 0.0) throw ThroughContact("stage position lies beyond the contact point");
    const double g = d0 + m.b;
    if (!(g > 0.0)) throw DomainError("effective gap d0 + b must be > 0");
    return g;
}

double sphere_prefactor(double radius_nm) { return 2.0 * units::kPi * kEps0 * radius_nm; }

} // namespace

std::string geometry_name(const Geometry& g) {
    return std::holds_alternative<ParallelPlate>(g) ? "parallel_plate" : "sphere_plate";
}

void validate_geometry(const Geometry& g) {
    std::visit(overloaded{
                   [](const ParallelPlate& p) {
                       if (!(std::isfinite(p.area_nm2) && p.area_nm2 > 0.0))
                           throw InvalidParameter("plate area must be > 0");
                   },
                   [](const SpherePlate& s) {
                       if (!(std::isfinite(s.radius_nm) && s.radius_nm > 0.0))
                           throw InvalidParameter("sphere radius must be > 0");
                   },
               },
               g);
}

void CalibModel::validate() const {
    if (!std::isfinite(d_contact)) throw InvalidParameter("d_contact must be finite");
    if (!(std::isfinite(b) && b >= 0.0)) throw InvalidParameter("offset b must be >= 0");
    if (!(std::isfinite(scale) && scale > 0.0)) throw InvalidParameter("scale must be > 0");
    if (!std::isfinite(c_stray)) throw InvalidParameter("c_stray must be finite");
}

const char* param_name(CalibParam p) {
    switch (p) {
    case CalibParam::d_contact: return "d_contact";
    case CalibParam::b: return "b";
    case CalibParam::scale: return "scale";
    case CalibParam::c_stray: return "c_stray";
    }
    return "?";
}

CalibParam param_from_name(const std::string& name) {
    for (std::size_t i = 0; i < kCalibParamCount; ++i) {
        const auto p = static_cast<CalibParam>(i);
        if (name == param_name(p)) return p;
    }
    throw InvalidParameter("unknown calibration parameter '" + name + "'");
}

double get_param(const CalibModel& m, CalibParam p) {
    switch (p) {
    case CalibParam::d_contact: return m.d_contact;
    case CalibParam::b: return m.b;
    case CalibParam::scale: return m.scale;
    case CalibParam::c_stray: return m.c_stray;
    }
    return 0.0;
}

void set_param(CalibModel& m, CalibParam p, double value) {
    switch (p) {
    case CalibParam::d_contact: m.d_contact = value; break;
    case CalibParam::b: m.b = value; break;
    case CalibParam::scale: m.scale = value; break;
    case CalibParam::c_stray: m.c_stray = value; break;
    }
}

double model_capacitance_parallel(double stage_nm, const CalibModel& model, double area_nm2) {
    const double g = effective_gap(stage_nm, model);
    return model.scale * kEps0 * area_nm2 / g + model.c_stray;
}

double model_capacitance_sphere(double stage_nm, const CalibModel& model, double radius_nm) {
    const double g = effective_gap(stage_nm, model);
    if (g >= radius_nm) throw PfaInvalid("d0 + b must be small against the sphere radius");
    return model.scale * sphere_prefactor(radius_nm) * std::log(radius_nm / g) + model.c_stray;
}

double model_capacitance(double stage_nm, const CalibModel& model, const Geometry& g) {
    return std::visit(overloaded{
                          [&](const ParallelPlate& p) {
                              return model_capacitance_parallel(stage_nm, model, p.area_nm2);
                          },
                          [&](const SpherePlate& s) {
                              return model_capacitance_sphere(stage_nm, model, s.radius_nm);
                          },
                      },
                      g);
}

std::array<double, kCalibParamCount> model_gradient(double stage_nm, const CalibModel& model,
                                                    const Geometry& geom) {
    const double g = effective_gap(stage_nm, model);
    double dC_dgap = 0.0;
    double dC_dscale = 0.0;
    if (const auto* p = std::get_if<ParallelPlate>(&geom)) {
        dC_dscale = kEps0 * p->area_nm2 / g;
        dC_dgap = -model.scale * dC_dscale / g;
    } else {
        const double R = std::get<SpherePlate>(geom).radius_nm;
        if (g >= R) throw PfaInvalid("d0 + b must be small against the sphere radius");
        dC_dscale = sphere_prefactor(R) * std::log(R / g);
        dC_dgap = -model.scale * sphere_prefactor(R) / g;
    }
    // gap = stage - d_contact + b
    return {-dC_dgap, dC_dgap, dC_dscale, 1.0};
}

double max_capacitance_offset(double c_max_pF, double area_nm2) {
    if (!(std::isfinite(c_max_pF) && c_max_pF > 0.0) ||
        !(std::isfinite(area_nm2) && area_nm2 > 0.0)) {
        throw DomainError("max_capacitance_offset: inputs must be > 0");
    }
    return kEps0 * area_nm2 / c_max_pF;
}

} // namespace surfcap
