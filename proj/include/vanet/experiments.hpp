#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vanet/scenario.hpp"

namespace vanet {

/// Grid for the cluster-count sweep: every (length, radius) pair, averaged
/// over the listed seeds. trials sizes the Monte Carlo columns.
struct SweepSpec {
    std::vector<double> lengths;
    std::vector<double> radii;
    double density = 0.0;
    std::vector<std::uint64_t> seeds;
    std::uint64_t trials = 0;
};

/// One emitted grid point. Field order matches the CSV column order.
struct SweepRow {
    double length_m = 0.0;
    double radius_m = 0.0;
    double mean_k = 0.0;
    double mean_m = 0.0;
    double p_clustered_analytic = 0.0;
    double p_noncluster_analytic = 0.0;
    double p_clustered_mc = 0.0;
    double p_noncluster_mc = 0.0;
    double mc_halfwidth = 0.0; // larger of the two modes' halfwidths
};

/// Default grid: street lengths 600 to 1400 m, radii from well above the
/// 10 m mean gap up to near-full-street coverage, density 0.1 per meter,
/// 20 seeds derived from the master seed, 10^4 Monte Carlo trials.
SweepSpec default_sweep_spec(std::uint64_t master_seed);

/// Cluster-count sweep over the (length, radius) grid.
///
/// Per seed, one master placement is drawn at the longest length and
/// truncated to each shorter one, so rows at the same seed describe nested
/// placements: cluster counts are then comparable across lengths as well
/// as radii. mean_k and mean_m average the optimized structure over seeds;
/// analytic columns average the per-seed closed forms; MC columns treat
/// each grid point as a single-street road seeded from the first seed.
/// Rows come out length-major, then radius, in the listed order.
std::vector<SweepRow> sweep_optimized_k(const SweepSpec& spec, int max_threads = 0);

/// Connection-probability sweep over radii for a fixed multi-street road.
///
/// Per radius and seed, each street is placed (placements are reused
/// across radii; they do not depend on R), clustered, and fed through the
/// closed forms; street probabilities multiply into road probabilities and
/// average over seeds. mean_k and mean_m report road totals. MC columns
/// run both modes on the whole road. One row per radius, in the listed
/// order; length_m reports the total road length.
std::vector<SweepRow> sweep_connection_probability(const RoadScenario& road,
                                                   const std::vector<double>& radii,
                                                   const std::vector<std::uint64_t>& seeds,
                                                   std::uint64_t trials, int max_threads = 0);

/// Renders the table as CSV: fixed header, one row per grid point, numbers
/// with 6 significant digits. Byte-identical output for equal tables.
std::string render_table(const std::vector<SweepRow>& rows);

/// Writes render_table(rows) to the given path.
void emit_table(const std::vector<SweepRow>& rows, const std::string& path);

} // namespace vanet
