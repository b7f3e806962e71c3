#include "surfcap/synthetic.hpp"

#include <cmath>
#include <random>

#include "surfcap/errors.hpp"
#include "surfcap/format.hpp"

namespace surfcap {

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    if (n < 2) throw InvalidParameter("grid needs at least 2 points");
    if (!(std::isfinite(lo) && std::isfinite(hi) && hi > lo))
        throw InvalidParameter("grid bounds must be finite with hi > lo");
    std::vector<double> g(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo + step * static_cast<double>(i);
    g.back() = hi;
    return g;
}

MeasurementSeries generate_synthetic(const CalibModel& truth, const Geometry& geometry,
                                     std::span<const double> grid, const NoiseSpec& noise,
                                     std::uint64_t seed, bool mark_contact) {
    truth.validate();
    validate_geometry(geometry);
    if (!(noise.fractional_sigma >= 0.0) || !(noise.additive_floor_pF >= 0.0))
        throw InvalidParameter("noise levels must be >= 0");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const bool noisy = noise.fractional_sigma > 0.0 || noise.additive_floor_pF > 0.0;

    MeasurementSeries s;
    s.geometry = geometry;
    s.points.reserve(grid.size());
    for (const double x : grid) {
        const double c = model_capacitance(x, truth, geometry);
        MeasurementPoint p;
        p.stage_nm = x;
        p.capacitance_pF = c;
        if (noisy) {
            const double z1 = normal(rng);
            const double z2 = normal(rng);
            p.capacitance_pF = c * (1.0 + noise.fractional_sigma * z1) + noise.additive_floor_pF * z2;
            if (noise.emit_sigma) {
                p.sigma_pF = std::hypot(noise.fractional_sigma * c, noise.additive_floor_pF);
            }
        }
        p.contact = mark_contact && x == truth.d_contact;
        s.points.push_back(p);
    }

    s.metadata["source"] = "synthetic";
    s.metadata["seed"] = std::to_string(seed);
    s.metadata["truth_b_nm"] = format_number(truth.b);
    s.metadata["truth_d_contact_nm"] = format_number(truth.d_contact);
    s.metadata["truth_scale"] = format_number(truth.scale);
    s.metadata["truth_c_stray_pF"] = format_number(truth.c_stray);
    s.metadata["noise_fractional_sigma"] = format_number(noise.fractional_sigma);
    s.metadata["noise_floor_pF"] = format_number(noise.additive_floor_pF);
    return s;
}

} // namespace surfcap
