#include "surfcap/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "surfcap/format.hpp"

namespace surfcap {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Problem {
    const MeasurementSeries& data;
    const Geometry& geometry;
    std::vector<CalibParam> free;
    CalibModel base;
    bool weighted = false;

    CalibModel model_at(const VectorXd& p) const {
        CalibModel m = base;
        for (std::size_t j = 0; j < free.size(); ++j) set_param(m, free[j], p[j]);
        return m;
    }

    double weight(std::size_t i) const {
        return weighted ? 1.0 / *data.points[i].sigma_pF : 1.0;
    }

    // Weighted residuals (model - data); empty optional outside the domain.
    std::optional<VectorXd> residuals(const VectorXd& p) const {
        const CalibModel m = model_at(p);
        if (!(m.b >= 0.0) || !(m.scale > 0.0)) return std::nullopt;
        VectorXd r(data.points.size());
        try {
            for (std::size_t i = 0; i < data.points.size(); ++i) {
                const auto& pt = data.points[i];
                r[i] = (model_capacitance(pt.stage_nm, m, geometry) - pt.capacitance_pF) * weight(i);
            }
        } catch (const DomainError&) {
            return std::nullopt;
        }
        if (!r.allFinite()) return std::nullopt;
        return r;
    }

    MatrixXd jacobian(const VectorXd& p) const {
        const CalibModel m = model_at(p);
        MatrixXd J(data.points.size(), free.size());
        for (std::size_t i = 0; i < data.points.size(); ++i) {
            const auto g = model_gradient(data.points[i].stage_nm, m, geometry);
            for (std::size_t j = 0; j < free.size(); ++j)
                J(i, j) = g[static_cast<std::size_t>(free[j])] * weight(i);
        }
        return J;
    }
};

VectorXd column_norms(const MatrixXd& J) {
    VectorXd d(J.cols());
    for (Eigen::Index j = 0; j < J.cols(); ++j) {
        const double n = J.col(j).norm();
        d[j] = n > 0.0 ? n : 1.0;
    }
    return d;
}

// Max over parameters of |J_j . r| / (|J_j| |r|).
double scaled_gradient(const MatrixXd& J, const VectorXd& r) {
    const double rn = r.norm();
    if (rn == 0.0) return 0.0;
    double g = 0.0;
    for (Eigen::Index j = 0; j < J.cols(); ++j) {
        const double cn = J.col(j).norm();
        if (cn > 0.0) g = std::max(g, std::abs(J.col(j).dot(r)) / (cn * rn));
    }
    return g;
}

void fill_statistics(FitResult& out, const Problem& prob, const VectorXd& p) {
    out.model = prob.model_at(p);
    const auto r = prob.residuals(p);
    const std::size_t n = prob.data.points.size();
    const std::size_t m = prob.free.size();

    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& pt = prob.data.points[i];
        const double res = model_capacitance(pt.stage_nm, out.model, prob.geometry) - pt.capacitance_pF;
        ss += res * res;
    }
    out.rms_residual = std::sqrt(ss / static_cast<double>(n));
    out.chi_square = r ? r->squaredNorm() : std::numeric_limits<double>::infinity();

    const MatrixXd J = prob.jacobian(p);
    out.gradient_norm = r ? scaled_gradient(J, *r) : std::numeric_limits<double>::infinity();

    // Invert in column-scaled coordinates; pseudo-inverse if rank deficient.
    const VectorXd D = column_norms(J);
    const MatrixXd Js = J * D.cwiseInverse().asDiagonal();
    const MatrixXd H = Js.transpose() * Js;
    Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(H);
    MatrixXd cov = D.cwiseInverse().asDiagonal() * cod.pseudoInverse() * D.cwiseInverse().asDiagonal();
    if (cod.rank() < static_cast<Eigen::Index>(m))
        out.warnings.push_back("normal matrix is rank deficient; covariance is a pseudo-inverse");
    if (!prob.weighted) {
        const double dof = n > m ? static_cast<double>(n - m) : 1.0;
        cov *= out.chi_square / dof;
    }

    out.covariance.assign(m, std::vector<double>(m, 0.0));
    out.standard_errors.assign(m, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t c = 0; c < m; ++c)
            out.covariance[a][c] = 0.5 * (cov(a, c) + cov(c, a));
        out.standard_errors[a] = std::sqrt(std::max(0.0, out.covariance[a][a]));
    }
}

} // namespace

void FitOptions::validate() const {
    if (!(gtol >= 1e-15 && gtol <= 1e-3)) throw InvalidParameter("gtol must lie in [1e-15, 1e-3]");
    if (!(xtol >= 1e-15 && xtol <= 1e-3)) throw InvalidParameter("xtol must lie in [1e-15, 1e-3]");
    if (max_iter == 0) throw InvalidParameter("max_iter must be positive");
    if (roughness_nm && !std::isfinite(*roughness_nm))
        throw InvalidParameter("roughness must be finite");
}

std::optional<double> FitResult::standard_error(CalibParam p) const {
    for (std::size_t j = 0; j < free_parameters.size(); ++j)
        if (free_parameters[j] == p) return standard_errors[j];
    return std::nullopt;
}

std::set<CalibParam> default_fixed_parameters() { return {CalibParam::d_contact}; }

FitResult fit_offset(const MeasurementSeries& data, const Geometry& geometry,
                     const CalibModel& init, const std::set<CalibParam>& fixed,
                     const FitOptions& opts) {
    data.validate();
    validate_geometry(geometry);
    init.validate();
    opts.validate();

    FitResult out;
    CalibModel base = init;
    std::set<CalibParam> pinned = fixed;

    if (const auto ci = data.contact_index()) {
        base.d_contact = data.points[*ci].stage_nm;
        if (!pinned.count(CalibParam::d_contact))
            out.warnings.push_back("d_contact pinned to the contact-flagged data point");
        pinned.insert(CalibParam::d_contact);
        out.metadata["d_contact_source"] = "contact datum";
    } else if (!pinned.count(CalibParam::d_contact) && !pinned.count(CalibParam::b)) {
        out.warnings.push_back(
            "identifiability: d_contact and b are both free without a contact datum; "
            "the data constrain only b - d_contact");
    }

    Problem prob{data, geometry, {}, base, data.has_sigma()};
    for (std::size_t i = 0; i < kCalibParamCount; ++i) {
        const auto p = static_cast<CalibParam>(i);
        if (!pinned.count(p)) prob.free.push_back(p);
    }
    out.free_parameters = prob.free;
    if (prob.free.size() >= data.points.size())
        throw InvalidParameter("more free parameters than data points");

    VectorXd p(prob.free.size());
    for (std::size_t j = 0; j < prob.free.size(); ++j) p[j] = get_param(base, prob.free[j]);

    auto r0 = prob.residuals(p);
    if (!r0) throw DomainError("initial model is outside the data's domain");
    VectorXd r = *r0;
    double cost = r.squaredNorm();

    double data_norm = 0.0;
    for (std::size_t i = 0; i < data.points.size(); ++i) {
        const double y = data.points[i].capacitance_pF * prob.weight(i);
        data_norm += y * y;
    }
    data_norm = std::sqrt(data_norm);

    constexpr double kResidualFloor = 1e-13; // relative to the data norm
    double lambda = 1e-3;
    bool converged = prob.free.empty();
    std::size_t iter = 0;

    while (!converged && iter < opts.max_iter) {
        ++iter;
        const MatrixXd J = prob.jacobian(p);
        if (std::sqrt(cost) <= kResidualFloor * data_norm || scaled_gradient(J, r) < opts.gtol) {
            converged = true;
            break;
        }

        const VectorXd D = column_norms(J);
        const MatrixXd Js = J * D.cwiseInverse().asDiagonal();
        const Eigen::Index n = Js.rows(), m = Js.cols();

        bool accepted = false;
        VectorXd step_scaled;
        while (lambda < 1e20) {
            MatrixXd A(n + m, m);
            A.topRows(n) = Js;
            A.bottomRows(m) = std::sqrt(lambda) * MatrixXd::Identity(m, m);
            VectorXd rhs = VectorXd::Zero(n + m);
            rhs.head(n) = -r;
            step_scaled = A.colPivHouseholderQr().solve(rhs);
            const VectorXd trial = p + D.cwiseInverse().cwiseProduct(step_scaled);

            const auto rt = prob.residuals(trial);
            if (rt && rt->squaredNorm() < cost) {
                p = trial;
                r = *rt;
                cost = r.squaredNorm();
                lambda = std::max(lambda * 0.1, 1e-15);
                accepted = true;
                break;
            }
            lambda *= 10.0;
        }

        const double p_scaled_norm = D.cwiseProduct(p).norm();
        if (!accepted || step_scaled.norm() <= opts.xtol * (p_scaled_norm + opts.xtol)) {
            // No descent direction left at working precision.
            converged = true;
        }
    }

    out.n_iterations = iter;
    fill_statistics(out, prob, p);
    out.converged = converged;
    if (converged && !prob.free.empty() && out.gradient_norm >= opts.gtol &&
        std::sqrt(out.chi_square) > kResidualFloor * data_norm) {
        out.warnings.push_back("stopped on step size with scaled gradient " +
                               format_number(out.gradient_norm));
    }

    if (opts.roughness_nm) {
        out.b_roughness_corrected = out.model.b - *opts.roughness_nm;
        out.metadata["roughness_nm"] = format_number(*opts.roughness_nm);
        out.metadata["b_roughness_corrected_nm"] = format_number(*out.b_roughness_corrected);
    }

    if (!converged) throw FitConvergenceError("fit did not converge within the iteration cap", out);
    return out;
}

} // namespace surfcap
