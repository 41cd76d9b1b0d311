#include "vanet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "vanet/clustering.hpp"
#include "vanet/connectivity.hpp"
#include "vanet/errors.hpp"
#include "vanet/rng.hpp"

namespace vanet {

namespace {

void validate_grid(const std::vector<double>& values, const char* what) {
    if (values.empty()) throw ValidationError(std::string(what) + " list must be non-empty");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v))
            throw ValidationError(std::string(what) + " values must be positive and finite");
}

struct CellStats {
    double sum_k = 0.0;
    double sum_m = 0.0;
    double sum_clustered = 0.0;
    double sum_noncluster = 0.0;
};

void fill_mc_columns(SweepRow& row, const RoadScenario& scenario, std::uint64_t trials,
                     std::uint64_t seed, int max_threads) {
    const ConnectivityReport report = mc_connectivity(scenario, trials, seed, max_threads);
    row.p_clustered_mc = report.mc_clustered.estimate;
    row.p_noncluster_mc = report.mc_noncluster.estimate;
    row.mc_halfwidth =
        std::max(report.mc_clustered.halfwidth_95, report.mc_noncluster.halfwidth_95);
}

} // namespace

SweepSpec default_sweep_spec(std::uint64_t master_seed) {
    SweepSpec spec;
    spec.lengths = {600.0, 800.0, 1000.0, 1200.0, 1400.0};
    spec.radii = {25.0, 50.0, 75.0, 100.0, 150.0, 200.0, 300.0};
    spec.density = 0.1;
    spec.seeds.reserve(20);
    for (std::uint64_t i = 0; i < 20; ++i)
        spec.seeds.push_back(derive_seed(master_seed, "sweep-seed", i));
    spec.trials = 10000;
    return spec;
}

std::vector<SweepRow> sweep_optimized_k(const SweepSpec& spec, int max_threads) {
    validate_grid(spec.lengths, "lengths");
    validate_grid(spec.radii, "radii");
    if (!(spec.density > 0.0) || !std::isfinite(spec.density))
        throw ValidationError("density must be positive and finite");
    if (spec.seeds.empty()) throw ValidationError("seeds list must be non-empty");
    if (spec.trials == 0) throw ValidationError("trials must be >= 1");

    const double longest = *std::max_element(spec.lengths.begin(), spec.lengths.end());
    const double radius_max = *std::max_element(spec.radii.begin(), spec.radii.end());
    const std::size_t cells = spec.lengths.size() * spec.radii.size();
    std::vector<CellStats> stats(cells);

    for (std::uint64_t seed : spec.seeds) {
        // One placement per seed at the longest length; shorter lengths see
        // its truncations, so per-seed counts are comparable across the row.
        const VehicleSet master =
            place_vehicles({"sweep", longest}, spec.density, seed, radius_max);
        for (std::size_t li = 0; li < spec.lengths.size(); ++li) {
            const double length = spec.lengths[li];
            const VehicleSet vs = truncate_placement(master, length, longest);
            for (std::size_t ri = 0; ri < spec.radii.size(); ++ri) {
                const double radius = spec.radii[ri];
                CellStats& cell = stats[li * spec.radii.size() + ri];
                if (vs.size() == 0) {
                    cell.sum_clustered += 1.0;
                    cell.sum_noncluster += 1.0;
                    continue;
                }
                const ClusterStructure cs = optimize_cluster_count(vs, radius);
                cell.sum_k += static_cast<double>(cs.k);
                cell.sum_m += static_cast<double>(cs.m);
                cell.sum_clustered += system_connection_probability(
                    {spec.density, radius, cs.n, cs.k, cs.m});
                cell.sum_noncluster +=
                    noncluster_connection_probability(spec.density, radius, cs.n);
            }
        }
    }

    const double seed_count = static_cast<double>(spec.seeds.size());
    std::vector<SweepRow> rows;
    rows.reserve(cells);
    for (std::size_t li = 0; li < spec.lengths.size(); ++li) {
        for (std::size_t ri = 0; ri < spec.radii.size(); ++ri) {
            const std::size_t index = li * spec.radii.size() + ri;
            const CellStats& cell = stats[index];
            SweepRow row;
            row.length_m = spec.lengths[li];
            row.radius_m = spec.radii[ri];
            row.mean_k = cell.sum_k / seed_count;
            row.mean_m = cell.sum_m / seed_count;
            row.p_clustered_analytic = cell.sum_clustered / seed_count;
            row.p_noncluster_analytic = cell.sum_noncluster / seed_count;

            RoadScenario cell_road;
            cell_road.streets = {{"street", spec.lengths[li]}};
            cell_road.density_per_m = spec.density;
            cell_road.coverage_radius_m = spec.radii[ri];
            cell_road.seed = spec.seeds.front();
            fill_mc_columns(row, cell_road, spec.trials,
                            derive_seed(spec.seeds.front(), "sweep-mc", index), max_threads);
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<SweepRow> sweep_connection_probability(const RoadScenario& road,
                                                   const std::vector<double>& radii,
                                                   const std::vector<std::uint64_t>& seeds,
                                                   std::uint64_t trials, int max_threads) {
    validate_scenario(road);
    validate_grid(radii, "radii");
    if (seeds.empty()) throw ValidationError("seeds list must be non-empty");
    if (trials == 0) throw ValidationError("trials must be >= 1");

    // Placements do not depend on the radius, so draw them once per
    // (seed, street) and reuse across every row.
    std::vector<std::vector<VehicleSet>> placements(seeds.size());
    for (std::size_t si = 0; si < seeds.size(); ++si) {
        placements[si].reserve(road.streets.size());
        for (std::size_t st = 0; st < road.streets.size(); ++st)
            placements[si].push_back(place_vehicles(road.streets[st], road.density_per_m,
                                                    derive_seed(seeds[si], "street", st),
                                                    road.coverage_radius_m));
    }

    std::vector<SweepRow> rows;
    rows.reserve(radii.size());
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
        const double radius = radii[ri];
        CellStats cell;
        for (std::size_t si = 0; si < seeds.size(); ++si) {
            std::vector<double> clustered, baseline;
            for (const VehicleSet& vs : placements[si]) {
                if (vs.size() == 0) continue;
                const ClusterStructure cs = optimize_cluster_count(vs, radius);
                cell.sum_k += static_cast<double>(cs.k);
                cell.sum_m += static_cast<double>(cs.m);
                clustered.push_back(system_connection_probability(
                    {road.density_per_m, radius, cs.n, cs.k, cs.m}));
                baseline.push_back(noncluster_connection_probability(road.density_per_m,
                                                                     radius, cs.n));
            }
            cell.sum_clustered += road_connection_probability(clustered);
            cell.sum_noncluster += road_connection_probability(baseline);
        }

        const double seed_count = static_cast<double>(seeds.size());
        SweepRow row;
        row.length_m = road.total_length_m();
        row.radius_m = radius;
        row.mean_k = cell.sum_k / seed_count;
        row.mean_m = cell.sum_m / seed_count;
        row.p_clustered_analytic = cell.sum_clustered / seed_count;
        row.p_noncluster_analytic = cell.sum_noncluster / seed_count;

        RoadScenario scenario = road;
        scenario.coverage_radius_m = radius;
        scenario.seed = seeds.front();
        fill_mc_columns(row, scenario, trials, derive_seed(seeds.front(), "sweep-mc", ri),
                        max_threads);
        rows.push_back(row);
    }
    return rows;
}

std::string render_table(const std::vector<SweepRow>& rows) {
    std::string out =
        "length_m,radius_m,mean_k,mean_m,p_clustered_analytic,p_noncluster_analytic,"
        "p_clustered_mc,p_noncluster_mc,mc_halfwidth\n";
    char buf[32];
    for (const SweepRow& row : rows) {
        const double fields[] = {row.length_m,
                                 row.radius_m,
                                 row.mean_k,
                                 row.mean_m,
                                 row.p_clustered_analytic,
                                 row.p_noncluster_analytic,
                                 row.p_clustered_mc,
                                 row.p_noncluster_mc,
                                 row.mc_halfwidth};
        for (std::size_t i = 0; i < std::size(fields); ++i) {
            std::snprintf(buf, sizeof buf, "%.6g", fields[i]);
            out += buf;
            out += (i + 1 < std::size(fields)) ? ',' : '\n';
        }
    }
    return out;
}

void emit_table(const std::vector<SweepRow>& rows, const std::string& path) {
    if (rows.empty()) throw ValidationError("emit_table: table must be non-empty");
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("emit_table: cannot open " + path + " for writing");
    const std::string text = render_table(rows);
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!file) throw IoError("emit_table: write failed for " + path);
}

} // namespace vanet
