#include "vanet/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <omp.h>

#include "vanet/clustering.hpp"
#include "vanet/errors.hpp"
#include "vanet/rng.hpp"

namespace vanet {

namespace {

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw ValidationError(std::string(what) + " must be positive and finite");
}

// bracket^exponent with the bracket clamped to [0, 1]; the empty product
// is 1. Evaluated as exp(e ln b) so large exponents underflow gracefully
// to 0 instead of losing precision in repeated multiplication.
double power_of_bracket(double bracket, std::uint64_t exponent) {
    if (exponent == 0) return 1.0;
    if (bracket <= 0.0) return 0.0;
    if (bracket >= 1.0) return 1.0;
    return std::exp(static_cast<double>(exponent) * std::log(bracket));
}

} // namespace

double vehicle_connection_probability(double density, double radius) {
    require_positive(density, "density");
    require_positive(radius, "radius");
    return -std::expm1(-density * radius);
}

double system_connection_probability(const AnalyticParams& params) {
    require_positive(params.density, "density");
    require_positive(params.radius, "radius");
    if (params.n == 0) throw ValidationError("system_connection_probability: n must be >= 1");
    if (params.k > params.n)
        throw ValidationError("system_connection_probability: k must not exceed n");
    const double q = static_cast<double>(params.k) / static_cast<double>(params.n);
    const double single = -std::expm1(-params.density * params.radius);
    const double doubled = -std::expm1(-2.0 * params.density * params.radius);
    const double bracket = (1.0 - q) * single + q * doubled;
    return power_of_bracket(bracket, params.m + params.k);
}

double noncluster_connection_probability(double density, double radius, std::uint64_t n) {
    if (n == 0) return 1.0;
    return system_connection_probability({density, radius, n, 0, n});
}

double road_connection_probability(std::span<const double> street_probabilities) {
    double product = 1.0;
    for (double p : street_probabilities) {
        if (!(p >= 0.0 && p <= 1.0))
            throw ValidationError("road_connection_probability: inputs must lie in [0, 1]");
        product *= p;
    }
    return product;
}

ConnectivityReport analytic_road_report(const RoadScenario& scenario) {
    validate_scenario(scenario);
    ConnectivityReport report;
    report.p_vehicle =
        vehicle_connection_probability(scenario.density_per_m, scenario.coverage_radius_m);

    std::vector<double> clustered, baseline;
    for (std::size_t s = 0; s < scenario.streets.size(); ++s) {
        const auto vs = place_vehicles(scenario.streets[s], scenario.density_per_m,
                                       derive_seed(scenario.seed, "street", s),
                                       scenario.coverage_radius_m);
        if (vs.size() == 0) continue; // empty street connects vacuously
        const auto cs = optimize_cluster_count(vs, scenario.coverage_radius_m);
        clustered.push_back(system_connection_probability(
            {scenario.density_per_m, scenario.coverage_radius_m, cs.n, cs.k, cs.m}));
        baseline.push_back(noncluster_connection_probability(
            scenario.density_per_m, scenario.coverage_radius_m, cs.n));
    }
    report.p_system_clustered = road_connection_probability(clustered);
    report.p_system_noncluster = road_connection_probability(baseline);
    return report;
}

namespace {

// An effective node is a whole cluster (threshold 2R) or a singleton
// (threshold R). Clusters occupy the position interval of their members,
// so the gap between consecutive effective nodes is the empty-road gap
// between the last member of one and the first member of the next. Those
// inter-node gaps follow the same nearest-neighbor law as plain vehicle
// gaps, which is what makes the per-node thresholds comparable to the
// closed-form bracket factors.
struct EffectiveNode {
    double first;
    double last;
    double threshold;
};

bool street_passes_noncluster(const VehicleSet& vs, double radius) {
    for (std::size_t i = 0; i + 1 < vs.size(); ++i)
        if (vs.vehicles[i + 1].position_m - vs.vehicles[i].position_m > radius) return false;
    return true;
}

bool street_passes_clustered(const VehicleSet& vs, double radius,
                             std::vector<EffectiveNode>& nodes) {
    if (vs.size() == 0) return true;
    const ClusterStructure cs = optimize_cluster_count(vs, radius);
    nodes.clear();
    for (const Cluster& c : cs.clusters)
        nodes.push_back({vs.vehicles[c.member_ids.front()].position_m,
                         vs.vehicles[c.member_ids.back()].position_m, 2.0 * radius});
    for (std::uint32_t id : cs.singleton_ids) {
        const double p = vs.vehicles[id].position_m;
        nodes.push_back({p, p, radius});
    }
    std::sort(nodes.begin(), nodes.end(), [](const EffectiveNode& a, const EffectiveNode& b) {
        return a.first < b.first || (a.first == b.first && a.threshold < b.threshold);
    });
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (nodes[i + 1].first - nodes[i].last > nodes[i].threshold) return false;
    return true;
}

// One trial: fresh placements, both modes evaluated on the same placements.
// Returns {clustered pass, non-clustered pass}.
std::pair<bool, bool> run_trial(const RoadScenario& scenario, std::uint64_t seed,
                                std::uint64_t trial, std::vector<EffectiveNode>& nodes) {
    const std::uint64_t trial_seed = derive_seed(seed, "mc-trial", trial);
    bool clustered = true, noncluster = true;
    for (std::size_t s = 0; s < scenario.streets.size(); ++s) {
        const auto vs = place_vehicles(scenario.streets[s], scenario.density_per_m,
                                       derive_seed(trial_seed, "street", s),
                                       scenario.coverage_radius_m);
        if (noncluster) noncluster = street_passes_noncluster(vs, scenario.coverage_radius_m);
        if (clustered) clustered = street_passes_clustered(vs, scenario.coverage_radius_m, nodes);
        if (!clustered && !noncluster) break;
    }
    return {clustered, noncluster};
}

ModeEstimate finish(std::uint64_t successes, std::uint64_t trials) {
    const double p = static_cast<double>(successes) / static_cast<double>(trials);
    const double halfwidth = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return {p, halfwidth};
}

} // namespace

ConnectivityReport mc_connectivity_serial(const RoadScenario& scenario, std::uint64_t trials,
                                          std::uint64_t seed) {
    validate_scenario(scenario);
    if (trials == 0) throw ValidationError("mc_connectivity: trials must be >= 1");

    std::uint64_t succ_clustered = 0, succ_noncluster = 0;
    std::vector<EffectiveNode> nodes;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto [c, nc] = run_trial(scenario, seed, t, nodes);
        succ_clustered += c ? 1 : 0;
        succ_noncluster += nc ? 1 : 0;
    }

    ConnectivityReport report = analytic_road_report(scenario);
    report.mc_clustered = finish(succ_clustered, trials);
    report.mc_noncluster = finish(succ_noncluster, trials);
    report.trials = trials;
    return report;
}

ConnectivityReport mc_connectivity(const RoadScenario& scenario, std::uint64_t trials,
                                   std::uint64_t seed, int max_threads) {
    validate_scenario(scenario);
    if (trials == 0) throw ValidationError("mc_connectivity: trials must be >= 1");

    const int threads = max_threads > 0 ? max_threads : omp_get_max_threads();
    std::uint64_t succ_clustered = 0, succ_noncluster = 0;
    // Successes are integer counts, so the reduction is order-independent
    // and the result matches mc_connectivity_serial bit for bit.
#pragma omp parallel num_threads(threads)
    {
        std::vector<EffectiveNode> nodes;
#pragma omp for schedule(static) reduction(+ : succ_clustered, succ_noncluster)
        for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
            const auto [c, nc] =
                run_trial(scenario, seed, static_cast<std::uint64_t>(t), nodes);
            succ_clustered += c ? 1 : 0;
            succ_noncluster += nc ? 1 : 0;
        }
    }

    ConnectivityReport report = analytic_road_report(scenario);
    report.mc_clustered = finish(succ_clustered, trials);
    report.mc_noncluster = finish(succ_noncluster, trials);
    report.trials = trials;
    return report;
}

} // namespace vanet
