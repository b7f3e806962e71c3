#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "surfcap/calib_model.hpp"
#include "surfcap/measurement.hpp"

namespace surfcap {

/// Noise on synthetic capacitance: C (1 + f z1) + floor z2, z ~ N(0, 1).
struct NoiseSpec {
    double fractional_sigma = 0.0;
    double additive_floor_pF = 0.0;
    /// Attach sigma = sqrt((f C)^2 + floor^2) to each point when noise is on.
    bool emit_sigma = true;
};

/// n evenly spaced values from lo to hi inclusive (n >= 2).
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

/**
 * Evaluate the forward model on `grid` (stage positions, nm) and add
 * reproducible noise from a 64-bit Mersenne Twister seeded with `seed`.
 * The point whose stage equals truth.d_contact is flagged as contact when
 * `mark_contact` is set.
 */
MeasurementSeries generate_synthetic(const CalibModel& truth, const Geometry& geometry,
                                     std::span<const double> grid, const NoiseSpec& noise,
                                     std::uint64_t seed, bool mark_contact = true);

} // namespace surfcap
