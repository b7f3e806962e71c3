#pragma once

#include <optional>

namespace surfcap {

/**
 * Bulk and surface electronic parameters of a semiconducting plate, in
 * reduced units (see units.hpp).
 *
 * n_d    depletion charge density
 * n_s    surface density of states (charge per area per volt)
 * E_F    Fermi level in volts, measured from the uncharged-surface level
 * kappa  bare dielectric constant
 * alpha  depletion curvature, V1 = alpha * d1^2
 */
struct MaterialParams {
    double n_d = 0.0;
    double n_s = 0.0;
    double E_F = 0.0;
    double kappa = 1.0;
    double alpha = 0.0;

    /// Validated construction. When `alpha` is empty it is set to n_d/kappa.
    static MaterialParams make(double n_d, double n_s, double E_F, double kappa,
                               std::optional<double> alpha = std::nullopt);

    /// Throws InvalidParameter unless n_d > 0, n_s >= 0, kappa >= 1,
    /// alpha > 0 and every field is finite.
    void validate() const;
};

/// Gap and number of semiconducting plates; d0 in reduced length (nm).
struct PlateConfig {
    double d0 = 1.0;
    int n_semiconducting_plates = 1;

    static PlateConfig make(double d0, int n_semiconducting_plates = 1);
    void validate() const;
};

/// SI-facing material description. `alpha_reduced` is in V/nm^2, which is
/// the reduced unit of alpha.
struct SiMaterial {
    double n_d_per_cm3 = 0.0;
    double n_s_per_cm2_per_V = 0.0;
    double E_F_V = 0.0;
    double kappa = 1.0;
    std::optional<double> alpha_reduced;
};

MaterialParams reduce_units(const SiMaterial& si);

/// Inverse of reduce_units. alpha is always emitted explicitly.
SiMaterial to_si(const MaterialParams& params);

} // namespace surfcap
