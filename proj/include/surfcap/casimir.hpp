#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace surfcap {

/// Local power law F ~ d^-p and the total offset (nm, all plates). A
/// positive offset means the true gap is smaller than the electrostatic one.
struct CorrectionSpec {
    double power_law = 4.0;
    double d_offset = 0.0;

    void validate() const;
};

/// Above this |d_offset|/d the first-order correction is flagged.
inline constexpr double kLinearizationLimit = 0.2;

struct ForceCorrection {
    double fraction = 0.0;
    bool linearization_warning = false;
};

/// First-order fractional force change p * d_offset / d at electrostatic
/// distance d. Throws DomainError for d <= 0.
ForceCorrection force_correction(double d, const CorrectionSpec& spec);

/// (d / (d - d_offset))^p - 1. Throws UnphysicalGap when d <= d_offset.
double exact_force_correction(double d, const CorrectionSpec& spec);

/// d_electrostatic - d_offset. Throws UnphysicalGap when the result is <= 0.
double corrected_distance(double d_electrostatic, double d_offset);

enum class CorrectionMode { linear, exact };

struct ForceSample {
    double d = 0.0;
    double force = 0.0;
};

struct CorrectedSample {
    double d_true = 0.0;
    double force = 0.0;
    double correction_frac = 0.0;
};

struct RowError {
    std::size_t index = 0;
    std::string message;
};

/// Rows that fail are left out of `rows` and reported in `errors`;
/// `source_index[k]` is the input index of rows[k].
struct CorrectedSeries {
    std::vector<CorrectedSample> rows;
    std::vector<std::size_t> source_index;
    std::vector<RowError> errors;
    std::size_t linearization_warnings = 0;
};

CorrectedSeries apply_correction_series(std::span<const ForceSample> series,
                                        const CorrectionSpec& spec, CorrectionMode mode);

/// Reads `d_nm,force_arb[,correction_frac]`; a correction column is ignored.
std::vector<ForceSample> read_force_csv(std::istream& in);
void write_corrected_csv(std::ostream& out, const CorrectedSeries& series);

} // namespace surfcap
