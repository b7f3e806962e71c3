#pragma once

#include "surfcap/equilibrium.hpp"
#include "surfcap/material.hpp"

namespace surfcap {

/// Differential capacitance per area and its series decomposition.
struct CapacitanceBreakdown {
    double c_gap = 0.0;     // 1/d0
    double c_surface = 0.0; // n_s
    double c_bulk = 0.0;    // n_d (4 alpha V1)^(-1/2)
    double c_total = 0.0;   // gap in series with (surface + bulk)
    double d_offset = 0.0;  // n_plates / (c_surface + c_bulk)
};

/// V1 below this (reduced) is treated as flat band.
inline constexpr double kFlatBandThreshold = 1e-15;

/// c_a c_b / (c_a + c_b). Throws DomainError for non-positive input.
double series_capacitance(double c_a, double c_b);

/**
 * Differential capacitance at a solved equilibrium.
 *
 * c_total is the small-signal d(sigma0)/dV0 of a single semiconducting
 * surface; n_semiconducting_plates only multiplies d_offset. Throws
 * FlatBandSingularity when V1 <= kFlatBandThreshold.
 */
CapacitanceBreakdown capacitance_breakdown(const EquilibriumState& state,
                                           const MaterialParams& params,
                                           const PlateConfig& plate);

/// Same as capacitance_breakdown but at a prescribed band bending V1,
/// without solving the equilibrium (fixed-V1 sweeps).
CapacitanceBreakdown capacitance_at_band_bending(double V1, const MaterialParams& params,
                                                 const PlateConfig& plate);

} // namespace surfcap
