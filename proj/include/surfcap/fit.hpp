#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "surfcap/calib_model.hpp"
#include "surfcap/errors.hpp"
#include "surfcap/measurement.hpp"

namespace surfcap {

struct FitOptions {
    double gtol = 1e-10;      // scaled gradient (cosine) criterion
    double xtol = 1e-12;      // relative step criterion
    std::size_t max_iter = 500;
    /// Surface roughness subtracted from the fitted offset (nm). Recorded in
    /// FitResult::metadata; the fitted model itself is left untouched.
    std::optional<double> roughness_nm;

    void validate() const;
};

struct FitResult {
    CalibModel model;
    std::vector<CalibParam> free_parameters;
    /// Row-major, over free_parameters in order.
    std::vector<std::vector<double>> covariance;
    std::vector<double> standard_errors;
    double rms_residual = 0.0; // pF, unweighted
    double chi_square = 0.0;   // weighted sum of squares at the solution
    double gradient_norm = 0.0;
    std::size_t n_iterations = 0;
    bool converged = false;
    std::vector<std::string> warnings;
    std::map<std::string, std::string> metadata;
    /// b minus roughness, when a roughness correction was supplied.
    std::optional<double> b_roughness_corrected;

    std::optional<double> standard_error(CalibParam p) const;
};

/// Fit did not converge within the iteration cap; carries the best iterate.
class FitConvergenceError : public Error {
public:
    FitConvergenceError(const std::string& what, FitResult best)
        : Error(what), best_(std::move(best)) {}
    const FitResult& best() const noexcept { return best_; }

private:
    FitResult best_;
};

/// Parameters pinned when the caller expresses no preference.
std::set<CalibParam> default_fixed_parameters();

/**
 * Weighted least-squares fit of the geometry's forward model to `data`.
 *
 * Damped Gauss-Newton with Marquardt column scaling: damping grows tenfold
 * on a rejected step and shrinks tenfold on an accepted one. Weights are
 * 1/sigma^2 when the series carries uncertainties. When the series has a
 * contact-flagged point, d_contact is set to its stage position and pinned.
 * Covariance is the inverse Gauss-Newton normal matrix, scaled by the
 * residual variance for unweighted data.
 *
 * Throws FitConvergenceError on hitting max_iter.
 */
FitResult fit_offset(const MeasurementSeries& data, const Geometry& geometry,
                     const CalibModel& init,
                     const std::set<CalibParam>& fixed = default_fixed_parameters(),
                     const FitOptions& opts = {});

} // namespace surfcap
