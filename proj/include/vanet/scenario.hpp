#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vanet/rng.hpp"

namespace vanet {

/// One straight street segment. Millimeter-wave blockage isolates streets
/// from each other, so every street is handled independently.
struct Street {
    std::string id;
    double length_m = 0.0; // strictly positive
};

/// Road geometry plus the placement and radio parameters shared by the
/// whole run.
struct RoadScenario {
    std::vector<Street> streets;
    double density_per_m = 0.0;    // vehicles per meter, > 0
    double coverage_radius_m = 0.0; // uniform default radius, > 0
    std::uint64_t seed = 0;

    double total_length_m() const;
};

struct Vehicle {
    std::uint32_t id = 0;
    double position_m = 0.0;
    double coverage_radius_m = 0.0; // per-vehicle capability, > 0
};

/// Vehicles on one street, sorted ascending by position, ids unique.
struct VehicleSet {
    std::string street_id;
    std::vector<Vehicle> vehicles;

    std::size_t size() const { return vehicles.size(); }
};

/// Samples a Poisson placement on the street: count ~ Poisson(density * L),
/// positions iid uniform on [0, L), returned sorted with ids 0..n-1 in
/// position order. Identical (street, density, seed) inputs give identical
/// output on every platform.
VehicleSet place_vehicles(const Street& street, double density, std::uint64_t seed,
                          double coverage_radius_m);

/// Keeps exactly the vehicles with position <= new_length, order and ids
/// preserved. new_length must lie in (0, original length].
VehicleSet truncate_placement(const VehicleSet& vs, double new_length,
                              double original_length);

/// Parses and validates a scenario config document (see README for the
/// schema). Throws ValidationError naming the offending field or invariant.
RoadScenario load_scenario(const std::string& json_text);

/// Reads the file and delegates to load_scenario. Throws IoError if the
/// file cannot be read.
RoadScenario load_scenario_file(const std::string& path);

void validate_scenario(const RoadScenario& scenario);

namespace detail {
/// Placement core shared by place_vehicles and the Monte Carlo kernel:
/// appends nothing, overwrites `out` with sorted positions.
void sample_positions(Rng& rng, double length_m, double density,
                      std::vector<double>& out);
} // namespace detail

} // namespace vanet
