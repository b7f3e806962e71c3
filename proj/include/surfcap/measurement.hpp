#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "surfcap/calib_model.hpp"

namespace surfcap {

struct MeasurementPoint {
    double stage_nm = 0.0;
    double capacitance_pF = 0.0;
    std::optional<double> sigma_pF;
    bool contact = false; // electrically detected contact
};

struct MeasurementSeries {
    std::vector<MeasurementPoint> points;
    std::optional<Geometry> geometry;
    std::map<std::string, std::string> metadata;

    /// At least 4 points, strictly monotone stage positions, positive finite
    /// capacitances, and either all or no uncertainties (all positive).
    void validate() const;

    bool has_sigma() const;
    /// Index of the first contact-flagged point, if any.
    std::optional<std::size_t> contact_index() const;
};

/**
 * Parse the measurement CSV:
 *
 *   # key: value          metadata comment (other # lines are ignored)
 *   stage_nm,capacitance_pF[,sigma_pF]
 *   0,14280.9,142.8,contact=1
 *
 * `geometry`, `area_nm2` and `radius_nm` metadata keys populate
 * MeasurementSeries::geometry. Throws ParseError naming the line.
 */
MeasurementSeries read_measurement_csv(std::istream& in);
MeasurementSeries read_measurement_csv_file(const std::string& path);

/// Writes the same schema; metadata (and geometry) as `# key: value` lines.
void write_measurement_csv(std::ostream& out, const MeasurementSeries& series);

} // namespace surfcap
