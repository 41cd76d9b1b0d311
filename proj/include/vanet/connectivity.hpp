#pragma once

#include <cstdint>
#include <span>

#include "vanet/scenario.hpp"

namespace vanet {

/// Inputs to the closed-form system connection probability.
struct AnalyticParams {
    double density = 0.0;    // vehicles per meter
    double radius = 0.0;     // coverage radius, meters
    std::uint64_t n = 0;     // vehicles on the street
    std::uint64_t k = 0;     // multi-vehicle clusters
    std::uint64_t m = 0;     // singletons
};

/// Monte Carlo estimate for one connectivity mode.
struct ModeEstimate {
    double estimate = 0.0;
    double halfwidth_95 = 0.0; // 1.96 * sqrt(p(1-p)/trials)
};

/// Closed-form probabilities for the scenario's own placement plus Monte
/// Carlo estimates over fresh placements, for both modes. The analytic
/// fields describe the cluster structures realized at the scenario seed;
/// the MC fields aggregate over the trial ensemble.
struct ConnectivityReport {
    double p_vehicle = 0.0;           // single-link probability 1 - e^(-rho R)
    double p_system_clustered = 0.0;  // product of per-street clustered formulas
    double p_system_noncluster = 0.0; // product of per-street baselines
    ModeEstimate mc_clustered;
    ModeEstimate mc_noncluster;
    std::uint64_t trials = 0;
};

/// P(nearest neighbor within R) = 1 - e^(-rho R). Rejects non-positive
/// density or radius.
double vehicle_connection_probability(double density, double radius);

/// Clustered-street formula: with q = k/n,
/// [(1-q)(1-e^(-rho R)) + q(1-e^(-2 rho R))]^(m+k).
/// The empty product (m + k = 0) is 1. Rejects n = 0.
double system_connection_probability(const AnalyticParams& params);

/// Baseline without clustering: (1-e^(-rho R))^n. Equals the clustered
/// formula at k = 0, m = n, bit for bit. n = 0 gives 1.
double noncluster_connection_probability(double density, double radius, std::uint64_t n);

/// Probability that every street connects, streets independent:
/// the product of the per-street probabilities. Each input must be in
/// [0, 1]. The empty product is 1.
double road_connection_probability(std::span<const double> street_probabilities);

/// Closed-form report for the scenario's own placement: places vehicles at
/// the scenario seed, clusters each street at the scenario radius, and
/// aggregates both formulas across streets. MC fields are left zero.
ConnectivityReport analytic_road_report(const RoadScenario& scenario);

/// Monte Carlo connectivity estimate in both modes.
///
/// Each trial draws a fresh placement per street from a seed derived from
/// (seed, trial, street), shared between the modes. Clustered mode forms
/// the optimized cluster structure and walks the effective nodes, gateways
/// at threshold 2R and singletons at R; non-clustered mode walks every
/// vehicle at threshold R. A street passes when every effective node's gap
/// to the next one is within its own threshold (the last node has no next
/// and is exempt; an empty street passes). A trial succeeds when all
/// streets pass.
///
/// Analytic fields are filled as in analytic_road_report. Deterministic
/// given (scenario, trials, seed) and independent of max_threads; trials
/// may run concurrently because per-trial seeds are derived, not streamed.
/// max_threads = 0 uses the runtime default.
ConnectivityReport mc_connectivity(const RoadScenario& scenario, std::uint64_t trials,
                                   std::uint64_t seed, int max_threads = 0);

/// Sequential reference for mc_connectivity: one thread, plain loop.
/// Produces bit-identical reports; kept as the comparison baseline for
/// tests and benchmarks.
ConnectivityReport mc_connectivity_serial(const RoadScenario& scenario, std::uint64_t trials,
                                          std::uint64_t seed);

} // namespace vanet
