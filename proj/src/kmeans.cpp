#include "vanet/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vanet/errors.hpp"
#include "vanet/rng.hpp"

namespace vanet {

namespace detail {

void KMeansScratch::bind(std::span<const double> positions) {
    const std::size_t n = positions.size();
    prefix.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + positions[i];
    far_order.clear();
    far_min_dist.clear();
}

void far_extend(KMeansScratch& s, std::span<const double> positions, std::size_t k) {
    const std::size_t n = positions.size();
    if (s.far_order.empty()) {
        const double mean = s.prefix[n] / static_cast<double>(n);
        std::size_t first = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = std::abs(positions[i] - mean);
            if (d > best) {
                best = d;
                first = i;
            }
        }
        s.far_order.push_back(static_cast<std::uint32_t>(first));
        s.far_min_dist.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            s.far_min_dist[i] = std::abs(positions[i] - positions[first]);
        s.far_min_dist[first] = -1.0; // chosen marker
    }
    while (s.far_order.size() < k) {
        std::size_t next = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (s.far_min_dist[i] > best) {
                best = s.far_min_dist[i];
                next = i;
            }
        }
        s.far_order.push_back(static_cast<std::uint32_t>(next));
        for (std::size_t i = 0; i < n; ++i) {
            const double d = std::abs(positions[i] - positions[next]);
            if (d < s.far_min_dist[i]) s.far_min_dist[i] = d;
        }
        s.far_min_dist[next] = -1.0;
    }
}

void far_init_centers(KMeansScratch& s, std::span<const double> positions, std::size_t k) {
    far_extend(s, positions, k);
    s.centers.clear();
    for (std::size_t i = 0; i < k; ++i) s.centers.push_back(positions[s.far_order[i]]);
    std::sort(s.centers.begin(), s.centers.end());
}

namespace {

// Nearest-center assignment for sorted positions and sorted centers.
// A point exactly on a midpoint is equidistant; it goes to the left
// (smaller-position) center.
void assign_contiguous(KMeansScratch& s, std::span<const double> positions, std::size_t k) {
    const std::size_t n = positions.size();
    s.bounds.resize(k + 1);
    s.bounds[0] = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        const double mid = 0.5 * (s.centers[i] + s.centers[i + 1]);
        while (j < n && positions[j] <= mid) ++j;
        s.bounds[i + 1] = static_cast<std::uint32_t>(j);
    }
    s.bounds[k] = static_cast<std::uint32_t>(n);
}

// Re-seeds every empty center to the point farthest from its nearest
// surviving center, treating freshly re-seeded centers as survivors so two
// empty cells never land on the same point.
void reseed_empty_cells(KMeansScratch& s, std::span<const double> positions, std::size_t k) {
    s.survivors.clear();
    for (std::size_t i = 0; i < k; ++i)
        if (s.bounds[i] < s.bounds[i + 1]) s.survivors.push_back(s.centers[i]);
    for (std::size_t i = 0; i < k; ++i) {
        if (s.bounds[i] < s.bounds[i + 1]) continue;
        std::size_t pick = 0;
        double best = -1.0;
        for (std::size_t p = 0; p < positions.size(); ++p) {
            auto it = std::lower_bound(s.survivors.begin(), s.survivors.end(), positions[p]);
            double d = std::numeric_limits<double>::infinity();
            if (it != s.survivors.end()) d = *it - positions[p];
            if (it != s.survivors.begin()) d = std::min(d, positions[p] - *(it - 1));
            if (d > best) {
                best = d;
                pick = p;
            }
        }
        s.centers[i] = positions[pick];
        s.survivors.insert(
            std::lower_bound(s.survivors.begin(), s.survivors.end(), positions[pick]),
            positions[pick]);
    }
    std::sort(s.centers.begin(), s.centers.end());
}

bool has_empty_cell(const KMeansScratch& s, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i)
        if (s.bounds[i] == s.bounds[i + 1]) return true;
    return false;
}

} // namespace

double run_lloyd(KMeansScratch& s, std::span<const double> positions, std::size_t k,
                 int max_iter, double tol) {
    s.trace.clear();
    s.new_centers.resize(k);
    double wcss = 0.0;
    int iter = 0;
    while (iter < max_iter) {
        ++iter;
        assign_contiguous(s, positions, k);
        if (has_empty_cell(s, k)) {
            reseed_empty_cells(s, positions, k);
            assign_contiguous(s, positions, k);
        }
        double movement = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t lo = s.bounds[i], hi = s.bounds[i + 1];
            const double c = (lo < hi) ? range_mean(s.prefix, lo, hi) : s.centers[i];
            s.new_centers[i] = c;
            movement = std::max(movement, std::abs(c - s.centers[i]));
        }
        // Per-group subtotals added left to right. The exact DP accumulates
        // run costs the same way, so identical partitions produce identical
        // wcss values bit for bit and the heuristic can never report a value
        // below the exact optimum.
        wcss = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double c = s.new_centers[i];
            double g = 0.0;
            for (std::size_t j = s.bounds[i]; j < s.bounds[i + 1]; ++j) {
                const double d = positions[j] - c;
                g += d * d;
            }
            wcss += g;
        }
        s.trace.push_back(wcss);
        s.centers.swap(s.new_centers);
        if (movement <= tol) break;
    }
    s.iterations = iter;
    return wcss;
}

} // namespace detail

namespace {

void validate_input(std::span<const double> positions, std::size_t k) {
    if (positions.empty()) throw ValidationError("kmeans: positions must be non-empty");
    if (k < 1 || k > positions.size())
        throw ValidationError("kmeans: k must satisfy 1 <= k <= number of positions");
    for (std::size_t i = 0; i + 1 < positions.size(); ++i)
        if (positions[i + 1] < positions[i])
            throw ValidationError("kmeans: positions must be sorted ascending");
}

KMeansResult materialize(const detail::KMeansScratch& s, std::size_t n, std::size_t k,
                         double wcss) {
    KMeansResult r;
    r.assignments.resize(n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = s.bounds[i]; j < s.bounds[i + 1]; ++j)
            r.assignments[j] = static_cast<std::uint32_t>(i);
    r.centers = s.centers;
    r.iterations = s.iterations;
    r.wcss = wcss;
    r.wcss_trace = s.trace;
    return r;
}

} // namespace

KMeansResult kmeans_1d(std::span<const double> positions, std::size_t k, int max_iter,
                       double tol, int restarts, std::uint64_t seed) {
    validate_input(positions, k);
    if (max_iter < 1) throw ValidationError("kmeans: max_iter must be >= 1");

    detail::KMeansScratch s;
    s.bind(positions);
    detail::far_init_centers(s, positions, k);
    double best_wcss = detail::run_lloyd(s, positions, k, max_iter, tol);
    KMeansResult best = materialize(s, positions.size(), k, best_wcss);

    const std::size_t n = positions.size();
    for (int r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, "kmeans-restart", static_cast<std::uint64_t>(r)));
        s.pick.resize(n);
        for (std::size_t i = 0; i < n; ++i) s.pick[i] = static_cast<std::uint32_t>(i);
        s.centers.clear();
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.bounded(n - i));
            std::swap(s.pick[i], s.pick[j]);
            s.centers.push_back(positions[s.pick[i]]);
        }
        std::sort(s.centers.begin(), s.centers.end());
        const double wcss = detail::run_lloyd(s, positions, k, max_iter, tol);
        if (wcss < best_wcss) {
            best_wcss = wcss;
            best = materialize(s, n, k, wcss);
        }
    }
    return best;
}

KMeansResult kmeans_1d_exact(std::span<const double> positions, std::size_t k) {
    validate_input(positions, k);
    const std::size_t n = positions.size();

    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + positions[i];
    // wcss of the run [lo, hi), evaluated by the same direct summation the
    // Lloyd path uses. The DP therefore minimizes exactly the floating-point
    // functional the heuristic reports, not a prefix-of-squares approximation
    // of it, which is what makes the oracle-bound comparison exact. Cost is
    // O(n) per call, so the whole search is O(k n^3): acceptable for an
    // oracle, not meant for production-size inputs.
    auto cost = [&](std::size_t lo, std::size_t hi) {
        const double c = detail::range_mean(prefix, lo, hi);
        double g = 0.0;
        for (std::size_t j = lo; j < hi; ++j) {
            const double d = positions[j] - c;
            g += d * d;
        }
        return g;
    };

    constexpr double inf = std::numeric_limits<double>::infinity();
    // best[t][j]: optimal cost of splitting positions[0..j] into t+1 runs
    std::vector<std::vector<double>> best(k, std::vector<double>(n, inf));
    std::vector<std::vector<std::uint32_t>> split(k, std::vector<std::uint32_t>(n, 0));
    for (std::size_t j = 0; j < n; ++j) best[0][j] = cost(0, j + 1);
    for (std::size_t t = 1; t < k; ++t) {
        for (std::size_t j = t; j < n; ++j) {
            for (std::size_t s2 = t; s2 <= j; ++s2) {
                const double c = best[t - 1][s2 - 1] + cost(s2, j + 1);
                if (c < best[t][j]) {
                    best[t][j] = c;
                    split[t][j] = static_cast<std::uint32_t>(s2);
                }
            }
        }
    }

    std::vector<std::uint32_t> bounds(k + 1);
    bounds[k] = static_cast<std::uint32_t>(n);
    std::size_t j = n - 1;
    for (std::size_t t = k; t-- > 1;) {
        bounds[t] = split[t][j];
        j = bounds[t] - 1;
    }
    bounds[0] = 0;

    KMeansResult r;
    r.assignments.resize(n);
    r.centers.resize(k);
    r.wcss = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        r.centers[i] = detail::range_mean(prefix, bounds[i], bounds[i + 1]);
        for (std::size_t p = bounds[i]; p < bounds[i + 1]; ++p)
            r.assignments[p] = static_cast<std::uint32_t>(i);
        r.wcss += cost(bounds[i], bounds[i + 1]);
    }
    r.iterations = 0;
    r.wcss_trace = {r.wcss};
    return r;
}

} // namespace vanet
