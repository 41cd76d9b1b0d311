#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vanet/scenario.hpp"

namespace vanet {

/// One multi-vehicle cluster: a star topology centered on its gateway.
struct Cluster {
    std::vector<std::uint32_t> member_ids; // position order, never empty
    double centroid_m = 0.0;               // mean member position
    std::uint32_t gateway_id = 0;          // member nearest the centroid
    double span_m = 0.0;                   // max minus min member position
};

/// Clustering outcome for one street. Clusters hold the k multi-vehicle
/// groups; vehicles that ended up alone are singletons, counted in m.
/// Clusters and singletons together partition the street's vehicles.
struct ClusterStructure {
    std::string street_id;
    std::vector<Cluster> clusters;             // position order
    std::vector<std::uint32_t> singleton_ids;  // position order
    std::size_t n = 0;                         // total vehicles
    std::size_t k = 0;                         // |clusters|
    std::size_t m = 0;                         // |singleton_ids|
};

/// Picks the member nearest the centroid. Ties go to the smaller position,
/// then the smaller id. member_positions must be sorted ascending and
/// aligned index-wise with member_ids.
std::uint32_t elect_gateway(std::span<const double> member_positions,
                            std::span<const std::uint32_t> member_ids,
                            double centroid_m);

/// True iff every member can reach the gateway directly: distance to the
/// gateway at most min(member radius, gateway radius). Both spans are
/// indexed by vehicle id.
bool check_feasibility(const Cluster& cluster,
                       std::span<const double> positions_by_id,
                       std::span<const double> radii_by_id);

/// Searches for the smallest k whose K-means grouping is entirely feasible
/// at coverage radius R, then reports that grouping with one-member groups
/// reclassified as singletons. The reported k counts multi-member clusters
/// only. k = n is always feasible, so the search terminates.
ClusterStructure optimize_cluster_count(const VehicleSet& vs, double coverage_radius_m,
                                        int max_iter = 100, double tol = 1e-6);

namespace detail {

/// Fewest intervals of the given diameter that cover all positions
/// (greedy left-to-right). Any grouping in which every group is feasible
/// at radius R has at least cover_lower_bound(positions, 2R) groups, since
/// a feasible group spans at most 2R around its gateway. The search in
/// optimize_cluster_count starts there instead of at k = 1.
std::size_t cover_lower_bound(std::span<const double> positions, double diameter);

} // namespace detail

} // namespace vanet
