#include "vanet/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vanet/errors.hpp"
#include "vanet/kmeans.hpp"

namespace vanet {

std::uint32_t elect_gateway(std::span<const double> member_positions,
                            std::span<const std::uint32_t> member_ids,
                            double centroid_m) {
    if (member_positions.empty() || member_positions.size() != member_ids.size())
        throw ValidationError("elect_gateway: empty or mismatched member arrays");
    std::size_t best = 0;
    double best_dist = std::abs(member_positions[0] - centroid_m);
    for (std::size_t i = 1; i < member_positions.size(); ++i) {
        const double d = std::abs(member_positions[i] - centroid_m);
        if (d < best_dist ||
            (d == best_dist && (member_positions[i] < member_positions[best] ||
                                (member_positions[i] == member_positions[best] &&
                                 member_ids[i] < member_ids[best])))) {
            best = i;
            best_dist = d;
        }
    }
    return member_ids[best];
}

bool check_feasibility(const Cluster& cluster, std::span<const double> positions_by_id,
                       std::span<const double> radii_by_id) {
    const double gw_pos = positions_by_id[cluster.gateway_id];
    const double gw_radius = radii_by_id[cluster.gateway_id];
    for (std::uint32_t id : cluster.member_ids) {
        const double reach = std::min(radii_by_id[id], gw_radius);
        if (std::abs(positions_by_id[id] - gw_pos) > reach) return false;
    }
    return true;
}

namespace detail {

std::size_t cover_lower_bound(std::span<const double> positions, double diameter) {
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < positions.size()) {
        const double edge = positions[i] + diameter;
        ++count;
        while (i < positions.size() && positions[i] <= edge) ++i;
    }
    return count;
}

} // namespace detail

namespace {

// Gateway election over the contiguous run [lo, hi) of the sorted street
// positions, returning the index of the elected member. Same tie rules as
// elect_gateway: smaller distance, then smaller position, then smaller id.
std::size_t elect_in_run(std::span<const double> positions, std::span<const std::uint32_t> ids,
                         std::size_t lo, std::size_t hi, double centroid) {
    std::size_t best = lo;
    double best_dist = std::abs(positions[lo] - centroid);
    for (std::size_t i = lo + 1; i < hi; ++i) {
        const double d = std::abs(positions[i] - centroid);
        if (d < best_dist ||
            (d == best_dist && (positions[i] < positions[best] ||
                                (positions[i] == positions[best] && ids[i] < ids[best])))) {
            best = i;
            best_dist = d;
        }
    }
    return best;
}

} // namespace

ClusterStructure optimize_cluster_count(const VehicleSet& vs, double coverage_radius_m,
                                        int max_iter, double tol) {
    const std::size_t n = vs.size();
    if (n == 0) throw ValidationError("optimize_cluster_count: empty vehicle set");
    if (!(coverage_radius_m > 0.0) || !std::isfinite(coverage_radius_m))
        throw ValidationError("optimize_cluster_count: coverage radius must be positive");

    std::vector<double> positions(n);
    std::vector<std::uint32_t> ids(n);
    for (std::size_t i = 0; i < n; ++i) {
        positions[i] = vs.vehicles[i].position_m;
        ids[i] = vs.vehicles[i].id;
    }

    const double R = coverage_radius_m;
    detail::KMeansScratch scratch;
    scratch.bind(positions);

    const std::size_t k_start =
        std::min(n, std::max<std::size_t>(1, detail::cover_lower_bound(positions, 2.0 * R)));

    for (std::size_t k_try = k_start;; ++k_try) {
        detail::far_init_centers(scratch, positions, k_try);
        detail::run_lloyd(scratch, positions, k_try, max_iter, tol);

        bool all_feasible = true;
        for (std::size_t g = 0; g < k_try && all_feasible; ++g) {
            const std::size_t lo = scratch.bounds[g], hi = scratch.bounds[g + 1];
            if (hi - lo < 2) continue; // empty or singleton group: nothing to link
            const std::size_t gw = elect_in_run(positions, ids, lo, hi, scratch.centers[g]);
            const double reach_left = positions[gw] - positions[lo];
            const double reach_right = positions[hi - 1] - positions[gw];
            if (reach_left > R || reach_right > R) all_feasible = false;
        }
        if (!all_feasible && k_try < n) continue;

        ClusterStructure out;
        out.street_id = vs.street_id;
        out.n = n;
        for (std::size_t g = 0; g < k_try; ++g) {
            const std::size_t lo = scratch.bounds[g], hi = scratch.bounds[g + 1];
            if (lo == hi) continue;
            if (hi - lo == 1) {
                out.singleton_ids.push_back(ids[lo]);
                continue;
            }
            Cluster c;
            c.member_ids.assign(ids.begin() + static_cast<std::ptrdiff_t>(lo),
                                ids.begin() + static_cast<std::ptrdiff_t>(hi));
            c.centroid_m = scratch.centers[g];
            c.gateway_id = ids[elect_in_run(positions, ids, lo, hi, scratch.centers[g])];
            c.span_m = positions[hi - 1] - positions[lo];
            out.clusters.push_back(std::move(c));
        }
        out.k = out.clusters.size();
        out.m = out.singleton_ids.size();
        return out;
    }
}

} // namespace vanet
