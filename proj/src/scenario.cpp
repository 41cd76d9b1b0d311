#include "vanet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vanet/errors.hpp"

namespace vanet {

double RoadScenario::total_length_m() const {
    double total = 0.0;
    for (const auto& s : streets) total += s.length_m;
    return total;
}

namespace detail {

void sample_positions(Rng& rng, double length_m, double density,
                      std::vector<double>& out) {
    const std::uint64_t n = rng.poisson(density * length_m);
    out.clear();
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(rng.next_double() * length_m);
    std::sort(out.begin(), out.end());
}

} // namespace detail

VehicleSet place_vehicles(const Street& street, double density, std::uint64_t seed,
                          double coverage_radius_m) {
    if (!(density > 0.0) || !std::isfinite(density))
        throw ValidationError("place_vehicles: density must be positive and finite");
    if (!(street.length_m > 0.0) || !std::isfinite(street.length_m))
        throw ValidationError("place_vehicles: street length must be positive and finite");
    if (!(coverage_radius_m > 0.0))
        throw ValidationError("place_vehicles: coverage radius must be positive");

    Rng rng(seed);
    std::vector<double> positions;
    detail::sample_positions(rng, street.length_m, density, positions);

    VehicleSet vs;
    vs.street_id = street.id;
    vs.vehicles.reserve(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i)
        vs.vehicles.push_back({static_cast<std::uint32_t>(i), positions[i], coverage_radius_m});
    return vs;
}

VehicleSet truncate_placement(const VehicleSet& vs, double new_length,
                              double original_length) {
    if (!(new_length > 0.0) || new_length > original_length)
        throw ValidationError("truncate_placement: new_length must lie in (0, L]");
    VehicleSet out;
    out.street_id = vs.street_id;
    for (const auto& v : vs.vehicles)
        if (v.position_m <= new_length) out.vehicles.push_back(v);
    return out;
}

namespace {

using nlohmann::json;

// Byte offset -> "line L, column C" for parse diagnostics.
std::string offset_to_line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    std::ostringstream oss;
    oss << "line " << line << ", column " << col;
    return oss.str();
}

void reject_unknown_fields(const json& obj, std::initializer_list<const char*> known,
                           const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::find_if(known.begin(), known.end(),
                         [&](const char* k) { return key == k; }) == known.end())
            throw ValidationError("scenario config: unknown field \"" + key + "\" in " + where);
    }
}

double require_positive_number(const json& obj, const char* field) {
    if (!obj.contains(field))
        throw ValidationError(std::string("scenario config: missing field \"") + field + "\"");
    const json& v = obj.at(field);
    if (!v.is_number())
        throw ValidationError(std::string("scenario config: \"") + field + "\" must be a number");
    const double x = v.get<double>();
    if (!(x > 0.0) || !std::isfinite(x))
        throw ValidationError(std::string("scenario config: \"") + field +
                              "\" must be strictly positive and finite");
    return x;
}

} // namespace

RoadScenario load_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError("scenario config: parse error at " +
                              offset_to_line_col(json_text, e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw ValidationError("scenario config: top level must be an object");
    reject_unknown_fields(doc, {"streets", "density_per_m", "coverage_radius_m", "seed"},
                          "top-level object");

    RoadScenario scenario;
    scenario.density_per_m = require_positive_number(doc, "density_per_m");
    scenario.coverage_radius_m = require_positive_number(doc, "coverage_radius_m");

    if (doc.contains("seed")) {
        const json& s = doc.at("seed");
        if (!s.is_number_unsigned())
            throw ValidationError("scenario config: \"seed\" must be a non-negative integer");
        scenario.seed = s.get<std::uint64_t>();
    }

    if (!doc.contains("streets") || !doc.at("streets").is_array())
        throw ValidationError("scenario config: \"streets\" must be an array");
    const json& streets = doc.at("streets");
    if (streets.empty())
        throw ValidationError("scenario config: streets must be non-empty (at least one street)");

    for (std::size_t i = 0; i < streets.size(); ++i) {
        const json& s = streets[i];
        const std::string where = "streets[" + std::to_string(i) + "]";
        if (!s.is_object()) throw ValidationError("scenario config: " + where + " must be an object");
        reject_unknown_fields(s, {"id", "length_m"}, where);
        if (!s.contains("id"))
            throw ValidationError("scenario config: " + where + " is missing \"id\"");
        std::string id;
        if (s.at("id").is_string())
            id = s.at("id").get<std::string>();
        else if (s.at("id").is_number_integer())
            id = std::to_string(s.at("id").get<long long>());
        else
            throw ValidationError("scenario config: " + where + ".id must be a string or integer");
        const double length = require_positive_number(s, "length_m");
        scenario.streets.push_back({id, length});
    }

    validate_scenario(scenario);
    return scenario;
}

RoadScenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scenario config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error reading scenario config: " + path);
    return load_scenario(buf.str());
}

void validate_scenario(const RoadScenario& scenario) {
    if (scenario.streets.empty())
        throw ValidationError("scenario: streets must be non-empty (at least one street)");
    if (!(scenario.density_per_m > 0.0) || !std::isfinite(scenario.density_per_m))
        throw ValidationError("scenario: density_per_m must be strictly positive and finite");
    if (!(scenario.coverage_radius_m > 0.0) || !std::isfinite(scenario.coverage_radius_m))
        throw ValidationError("scenario: coverage_radius_m must be strictly positive and finite");
    for (const auto& s : scenario.streets)
        if (!(s.length_m > 0.0) || !std::isfinite(s.length_m))
            throw ValidationError("scenario: street \"" + s.id +
                                  "\" length must be strictly positive and finite");
    for (std::size_t i = 0; i < scenario.streets.size(); ++i)
        for (std::size_t j = i + 1; j < scenario.streets.size(); ++j)
            if (scenario.streets[i].id == scenario.streets[j].id)
                throw ValidationError("scenario: duplicate street id \"" +
                                      scenario.streets[i].id + "\"");
}

} // namespace vanet
