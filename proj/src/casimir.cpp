#include "surfcap/casimir.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "surfcap/errors.hpp"
#include "surfcap/format.hpp"

namespace surfcap {

void CorrectionSpec::validate() const {
    if (!(std::isfinite(power_law) && power_law > 0.0))
        throw InvalidParameter("power_law must be finite and > 0");
    if (!std::isfinite(d_offset)) throw InvalidParameter("d_offset must be finite");
}

ForceCorrection force_correction(double d, const CorrectionSpec& spec) {
    spec.validate();
    if (!(std::isfinite(d) && d > 0.0)) throw DomainError("force_correction: d must be > 0");
    // dF/F = -p dd/d with dd = -d_offset.
    ForceCorrection fc;
    fc.fraction = -spec.power_law * (-spec.d_offset) / d;
    fc.linearization_warning = std::abs(spec.d_offset) / d > kLinearizationLimit;
    return fc;
}

double exact_force_correction(double d, const CorrectionSpec& spec) {
    spec.validate();
    const double d_true = corrected_distance(d, spec.d_offset);
    return std::pow(d / d_true, spec.power_law) - 1.0;
}

double corrected_distance(double d_electrostatic, double d_offset) {
    if (!std::isfinite(d_electrostatic) || !std::isfinite(d_offset))
        throw DomainError("corrected_distance: inputs must be finite");
    if (!(d_electrostatic > d_offset))
        throw UnphysicalGap("electrostatic distance must exceed the offset");
    return d_electrostatic - d_offset;
}

CorrectedSeries apply_correction_series(std::span<const ForceSample> series,
                                        const CorrectionSpec& spec, CorrectionMode mode) {
    spec.validate();
    CorrectedSeries out;
    out.rows.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        try {
            CorrectedSample c;
            c.d_true = corrected_distance(s.d, spec.d_offset);
            c.force = s.force;
            if (mode == CorrectionMode::linear) {
                const auto fc = force_correction(s.d, spec);
                c.correction_frac = fc.fraction;
                if (fc.linearization_warning) ++out.linearization_warnings;
            } else {
                c.correction_frac = exact_force_correction(s.d, spec);
            }
            out.rows.push_back(c);
            out.source_index.push_back(i);
        } catch (const Error& e) {
            out.errors.push_back({i, e.what()});
        }
    }
    return out;
}

std::vector<ForceSample> read_force_csv(std::istream& in) {
    std::vector<ForceSample> out;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header) {
            if (line != "d_nm,force_arb" && line != "d_nm,force_arb,correction_frac")
                throw ParseError("expected header 'd_nm,force_arb[,correction_frac]'", line_no);
            header = true;
            continue;
        }
        std::stringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
            throw ParseError("expected d_nm and force_arb fields", line_no);
        try {
            std::size_t pa = 0, pb = 0;
            ForceSample s{std::stod(a, &pa), std::stod(b, &pb)};
            if (pa != a.size() || pb != b.size()) throw std::invalid_argument("trailing");
            out.push_back(s);
        } catch (const std::exception&) {
            throw ParseError("invalid number", line_no);
        }
    }
    if (!header) throw ParseError("missing header 'd_nm,force_arb[,correction_frac]'", 0);
    return out;
}

void write_corrected_csv(std::ostream& out, const CorrectedSeries& series) {
    out << "d_nm,force_arb,correction_frac\n";
    for (const auto& r : series.rows) {
        out << format_number(r.d_true) << ',' << format_number(r.force) << ','
            << format_number(r.correction_frac) << '\n';
    }
}

} // namespace surfcap
