#include "surfcap/capacitance.hpp"

#include <cmath>

#include "surfcap/errors.hpp"

namespace surfcap {

double series_capacitance(double c_a, double c_b) {
    if (!(c_a > 0.0) || !(c_b > 0.0))
        throw DomainError("series_capacitance: inputs must be > 0");
    return c_a * c_b / (c_a + c_b);
}

CapacitanceBreakdown capacitance_at_band_bending(double V1, const MaterialParams& params,
                                                 const PlateConfig& plate) {
    params.validate();
    plate.validate();
    if (!(V1 > kFlatBandThreshold)) {
        throw FlatBandSingularity("bulk capacitance is unbounded at flat band (V1 -> 0)");
    }
    CapacitanceBreakdown b;
    b.c_gap = 1.0 / plate.d0;
    b.c_surface = params.n_s;
    b.c_bulk = params.n_d / std::sqrt(4.0 * params.alpha * V1);
    const double c_sc = b.c_surface + b.c_bulk;
    b.c_total = c_sc / (1.0 / plate.d0 + c_sc) * (1.0 / plate.d0);
    b.d_offset = plate.n_semiconducting_plates / c_sc;
    return b;
}

CapacitanceBreakdown capacitance_breakdown(const EquilibriumState& state,
                                           const MaterialParams& params,
                                           const PlateConfig& plate) {
    return capacitance_at_band_bending(state.V1, params, plate);
}

} // namespace surfcap
