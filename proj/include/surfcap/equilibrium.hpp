#pragma once

#include <cstddef>

#include "surfcap/material.hpp"

namespace surfcap {

struct SolverOptions {
    /// Bound on |F(sigma0)| relative to the largest term of the balance.
    double root_tol = 1e-12;
    /// Bound on |sigma0 + sigma1 - n_d d1| relative to the same scale.
    double neutrality_tol = 1e-9;
    std::size_t max_iter = 200;
    /// Lower bracket end is -bracket_extension * V0/d0.
    double bracket_extension = 10.0;

    void validate() const;
};

/// Charge and potential configuration at applied potential V0 (reduced units).
struct EquilibriumState {
    double sigma0 = 0.0;
    double sigma1 = 0.0;
    double V1 = 0.0;
    double d1 = 0.0;
    double V0 = 0.0;
    double residual_neutrality = 0.0;
    std::size_t iterations = 0;
};

/// d1 = sqrt(V1 / alpha). Throws DomainError for V1 < 0.
double depletion_depth(double V1, const MaterialParams& params);

/// sigma1 = (E_F - V1) * n_s.
double surface_charge(double V1, const MaterialParams& params);

/// Charge balance sigma0 + (E_F - V1) n_s - n_d sqrt(V1/alpha) with
/// V1 = V0 - sigma0 d0. Strictly increasing in sigma0 where V1 >= 0.
double balance_residual(double sigma0, double V0, const MaterialParams& params,
                        const PlateConfig& plate);

/**
 * Solve energy conservation (sigma0 d0 + V1 = V0) together with charge
 * neutrality for sigma0.
 *
 * The search bracket is [-k V0/d0, V0/d0]; the upper end is flat band
 * (V1 = 0), negative sigma0 corresponds to V1 > V0. Throws
 * DepletionViolation when no root with V1 >= 0 lies in the bracket and
 * ConvergenceError when the iteration cap is reached.
 */
EquilibriumState solve_equilibrium(double V0, const MaterialParams& params,
                                   const PlateConfig& plate,
                                   const SolverOptions& opts = {});

/// Central difference (sigma0(V0+h) - sigma0(V0-h)) / 2h.
double finite_difference_capacitance(double V0, const MaterialParams& params,
                                     const PlateConfig& plate, double h,
                                     const SolverOptions& opts = {});

} // namespace surfcap
