#include "surfcap/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "surfcap/errors.hpp"
#include "surfcap/root_finding.hpp"

namespace surfcap {

namespace {

// Magnitude of the individual terms of the balance; tolerances scale with it.
double balance_scale(double sigma0, double V1, const MaterialParams& p) {
    const double bulk = V1 > 0.0 ? p.n_d * std::sqrt(V1 / p.alpha) : 0.0;
    return std::max(1.0, std::abs(sigma0) + p.n_s * (std::abs(p.E_F) + std::abs(V1)) + bulk);
}

} // namespace

void SolverOptions::validate() const {
    if (!(root_tol >= 1e-15 && root_tol <= 1e-3))
        throw InvalidParameter("root_tol must lie in [1e-15, 1e-3]");
    if (!(neutrality_tol >= 1e-15 && neutrality_tol <= 1e-3))
        throw InvalidParameter("neutrality_tol must lie in [1e-15, 1e-3]");
    if (max_iter == 0) throw InvalidParameter("max_iter must be positive");
    if (!(std::isfinite(bracket_extension) && bracket_extension >= 0.0))
        throw InvalidParameter("bracket_extension must be finite and >= 0");
}

double depletion_depth(double V1, const MaterialParams& params) {
    if (!(V1 >= 0.0)) throw DomainError("depletion_depth: V1 must be >= 0");
    return std::sqrt(V1 / params.alpha);
}

double surface_charge(double V1, const MaterialParams& params) {
    return (params.E_F - V1) * params.n_s;
}

double balance_residual(double sigma0, double V0, const MaterialParams& params,
                        const PlateConfig& plate) {
    const double V1 = std::max(0.0, V0 - sigma0 * plate.d0);
    return sigma0 + surface_charge(V1, params) - params.n_d * std::sqrt(V1 / params.alpha);
}

EquilibriumState solve_equilibrium(double V0, const MaterialParams& params,
                                   const PlateConfig& plate, const SolverOptions& opts) {
    if (!(std::isfinite(V0) && V0 > 0.0))
        throw InvalidParameter("V0 must be finite and > 0");
    params.validate();
    plate.validate();
    opts.validate();

    auto F = [&](double s) { return balance_residual(s, V0, params, plate); };

    // Flat band: V1 = 0 exactly at the top of the bracket.
    const double hi = V0 / plate.d0;
    const double f_hi = F(hi);
    if (f_hi < 0.0) {
        throw DepletionViolation(
            "no equilibrium with V1 >= 0: surface states hold more charge than the gap "
            "supports (accumulation regime)");
    }

    double lo = 0.0;
    double f_lo = F(lo);
    if (f_lo > 0.0) {
        lo = -opts.bracket_extension * hi;
        f_lo = F(lo);
        if (f_lo > 0.0) {
            std::ostringstream os;
            os << "no equilibrium root in sigma0 bracket [" << lo << ", 0]";
            throw DepletionViolation(os.str());
        }
    }

    // Iterate to machine resolution; the tolerances below are post-checks.
    const BracketResult r = brent_zero(F, lo, hi, f_lo, f_hi, 0.0, opts.max_iter);
    if (!r.converged) {
        throw ConvergenceError("equilibrium solver reached its iteration cap", r.lo, r.hi);
    }

    EquilibriumState st;
    st.V0 = V0;
    st.sigma0 = r.root;
    st.V1 = std::max(0.0, V0 - r.root * plate.d0);
    st.d1 = depletion_depth(st.V1, params);
    st.sigma1 = surface_charge(st.V1, params);
    st.residual_neutrality = std::abs(st.sigma0 + st.sigma1 - params.n_d * st.d1);
    st.iterations = r.iterations;

    const double scale = balance_scale(st.sigma0, st.V1, params);
    if (std::abs(r.f_root) > opts.root_tol * scale ||
        st.residual_neutrality > opts.neutrality_tol * scale) {
        throw ConvergenceError("equilibrium residual above tolerance", r.lo, r.hi);
    }
    return st;
}

double finite_difference_capacitance(double V0, const MaterialParams& params,
                                     const PlateConfig& plate, double h,
                                     const SolverOptions& opts) {
    if (!(std::isfinite(h) && h > 0.0 && h < V0))
        throw InvalidParameter("finite difference step must satisfy 0 < h < V0");
    const double up = solve_equilibrium(V0 + h, params, plate, opts).sigma0;
    const double down = solve_equilibrium(V0 - h, params, plate, opts).sigma0;
    return (up - down) / (2.0 * h);
}

} // namespace surfcap
