#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace vanet {

struct KMeansResult {
    std::vector<std::uint32_t> assignments; // center index for each input position
    std::vector<double> centers;            // sorted ascending
    int iterations = 0;
    double wcss = 0.0;              // within-cluster sum of squares, final
    std::vector<double> wcss_trace; // wcss after each Lloyd iteration
};

/// Lloyd's iteration on sorted 1-D positions.
///
/// Initial centers are chosen by farthest-point selection: the first is the
/// position farthest from the mean of the data, each next one maximizes the
/// distance to the centers already chosen. Optional extra restarts draw
/// random initial centers from seeds derived from `seed`; the best run by
/// wcss wins (earliest run on ties). Ties in nearest-center assignment go
/// to the center with the smaller position. Converges when the largest
/// center movement is <= tol, or stops at max_iter.
KMeansResult kmeans_1d(std::span<const double> positions, std::size_t k,
                       int max_iter = 100, double tol = 1e-6, int restarts = 0,
                       std::uint64_t seed = 0);

/// Globally wcss-optimal contiguous partition by interval dynamic
/// programming. Optimal 1-D clusters are contiguous runs of the sorted
/// input, so the DP over run boundaries is exact. O(k n^2).
KMeansResult kmeans_1d_exact(std::span<const double> positions, std::size_t k);

namespace detail {

/// Reusable buffers for repeated k-means runs over the same positions.
/// bind() must be called whenever the positions change; the farthest-point
/// selection order is extended lazily as larger k values are requested.
struct KMeansScratch {
    std::vector<double> prefix; // prefix[i] = positions[0] + ... + positions[i-1]
    std::vector<std::uint32_t> far_order;
    std::vector<double> far_min_dist;
    std::vector<double> centers;
    std::vector<double> new_centers;
    std::vector<std::uint32_t> bounds; // cluster i covers [bounds[i], bounds[i+1])
    std::vector<double> trace;
    std::vector<double> survivors;
    std::vector<std::uint32_t> pick;
    int iterations = 0;

    void bind(std::span<const double> positions);
};

void far_extend(KMeansScratch& s, std::span<const double> positions, std::size_t k);

/// Loads the first k farthest-point selections into s.centers (sorted).
void far_init_centers(KMeansScratch& s, std::span<const double> positions, std::size_t k);

/// Runs Lloyd from the centers currently in s.centers. Fills s.bounds,
/// s.iterations, s.trace; returns the final wcss.
double run_lloyd(KMeansScratch& s, std::span<const double> positions, std::size_t k,
                 int max_iter, double tol);

inline double range_mean(const std::vector<double>& prefix, std::size_t lo, std::size_t hi) {
    return (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
}

} // namespace detail

} // namespace vanet
