#include "surfcap/measurement.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "surfcap/errors.hpp"
#include "surfcap/format.hpp"

namespace surfcap {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& s, std::size_t line, const char* what) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || s.empty())
        throw ParseError(std::string("invalid ") + what + " '" + s + "'", line);
    return v;
}

std::optional<Geometry> geometry_from_metadata(const std::map<std::string, std::string>& md) {
    const auto it = md.find("geometry");
    if (it == md.end()) return std::nullopt;
    auto number = [&](const char* key) {
        const auto v = md.find(key);
        if (v == md.end()) throw ParseError(std::string("geometry metadata missing ") + key, 0);
        return parse_double(v->second, 0, key);
    };
    if (it->second == "parallel_plate") return ParallelPlate{number("area_nm2")};
    if (it->second == "sphere_plate") return SpherePlate{number("radius_nm")};
    throw ParseError("unknown geometry '" + it->second + "'", 0);
}

} // namespace

void MeasurementSeries::validate() const {
    if (points.size() < 4) throw InvalidParameter("measurement series needs at least 4 points");
    const bool rising = points[1].stage_nm > points[0].stage_nm;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (!std::isfinite(p.stage_nm))
            throw InvalidParameter("stage position must be finite (point " + std::to_string(i) + ")");
        if (!(std::isfinite(p.capacitance_pF) && p.capacitance_pF > 0.0))
            throw InvalidParameter("capacitance must be finite and > 0 (point " + std::to_string(i) + ")");
        if (p.sigma_pF.has_value() != points[0].sigma_pF.has_value())
            throw InvalidParameter("uncertainties must be given for all points or none");
        if (p.sigma_pF && !(std::isfinite(*p.sigma_pF) && *p.sigma_pF > 0.0))
            throw InvalidParameter("uncertainty must be finite and > 0 (point " + std::to_string(i) + ")");
        if (i > 0) {
            const double step = p.stage_nm - points[i - 1].stage_nm;
            if (rising ? !(step > 0.0) : !(step < 0.0))
                throw InvalidParameter("stage positions must be strictly monotone");
        }
    }
    if (geometry) validate_geometry(*geometry);
}

bool MeasurementSeries::has_sigma() const {
    return !points.empty() && points.front().sigma_pF.has_value();
}

std::optional<std::size_t> MeasurementSeries::contact_index() const {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i].contact) return i;
    return std::nullopt;
}

MeasurementSeries read_measurement_csv(std::istream& in) {
    MeasurementSeries series;
    std::string raw;
    std::size_t line_no = 0;
    bool header_seen = false;
    bool with_sigma = false;

    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            const std::string body = trim(std::string_view(line).substr(1));
            const auto colon = body.find(':');
            if (colon != std::string::npos && colon > 0 &&
                body.find(' ') > colon) {
                series.metadata[trim(body.substr(0, colon))] = trim(body.substr(colon + 1));
            }
            continue;
        }
        const auto fields = split_csv(line);
        if (!header_seen) {
            if (fields.size() == 2 && fields[0] == "stage_nm" && fields[1] == "capacitance_pF") {
                with_sigma = false;
            } else if (fields.size() == 3 && fields[0] == "stage_nm" &&
                       fields[1] == "capacitance_pF" && fields[2] == "sigma_pF") {
                with_sigma = true;
            } else {
                throw ParseError("expected header 'stage_nm,capacitance_pF[,sigma_pF]'", line_no);
            }
            header_seen = true;
            continue;
        }

        const std::size_t n_num = with_sigma ? 3 : 2;
        if (fields.size() < n_num || fields.size() > n_num + 1)
            throw ParseError("expected " + std::to_string(n_num) + " numeric fields", line_no);
        MeasurementPoint p;
        p.stage_nm = parse_double(fields[0], line_no, "stage_nm");
        p.capacitance_pF = parse_double(fields[1], line_no, "capacitance_pF");
        if (with_sigma) p.sigma_pF = parse_double(fields[2], line_no, "sigma_pF");
        if (fields.size() == n_num + 1) {
            if (fields[n_num] == "contact=1") {
                p.contact = true;
            } else if (fields[n_num] != "contact=0" && !fields[n_num].empty()) {
                throw ParseError("unexpected field '" + fields[n_num] + "'", line_no);
            }
        }
        series.points.push_back(p);
    }
    if (!header_seen) throw ParseError("missing header 'stage_nm,capacitance_pF[,sigma_pF]'", line_no ? 1 : 0);

    series.geometry = geometry_from_metadata(series.metadata);
    try {
        series.validate();
    } catch (const InvalidParameter& e) {
        throw ParseError(e.what(), 0);
    }
    return series;
}

MeasurementSeries read_measurement_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    return read_measurement_csv(in);
}

void write_measurement_csv(std::ostream& out, const MeasurementSeries& series) {
    auto md = series.metadata;
    if (series.geometry) {
        md["geometry"] = geometry_name(*series.geometry);
        if (const auto* p = std::get_if<ParallelPlate>(&*series.geometry))
            md["area_nm2"] = format_number(p->area_nm2);
        else
            md["radius_nm"] = format_number(std::get<SpherePlate>(*series.geometry).radius_nm);
    }
    for (const auto& [k, v] : md) out << "# " << k << ": " << v << '\n';

    const bool sigma = series.has_sigma();
    out << (sigma ? "stage_nm,capacitance_pF,sigma_pF\n" : "stage_nm,capacitance_pF\n");
    for (const auto& p : series.points) {
        out << format_number(p.stage_nm) << ',' << format_number(p.capacitance_pF);
        if (sigma) out << ',' << format_number(p.sigma_pF.value_or(0.0));
        if (p.contact) out << ",contact=1";
        out << '\n';
    }
}

} // namespace surfcap
