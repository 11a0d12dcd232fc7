#pragma once

// Density-based clustering engines over 2-D encodings: DBSCAN, flat-kernel
// Mean Shift, and Boosted Mean Shift Clustering (BMSC), which runs Mean
// Shift per grid cell, resamples cells around the intermediate modes and
// groups the modes with DBSCAN until the cluster count stabilizes.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "monosplit/model.hpp"
#include "monosplit/rng.hpp"

namespace monosplit {

inline constexpr int kNoise = -1;

/// Output of a clustering run. `modes` is set by the mean-shift family;
/// `iterations` is 0 for plain DBSCAN, the slowest seed's iteration count
/// for mean shift, and the boost-loop count for BMSC.
struct ClusterResult {
    std::vector<int> labels;
    std::optional<std::vector<Point2>> modes;
    int iterations = 0;
};

inline double distance(const Point2& a, const Point2& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return std::sqrt(dx * dx + dy * dy);
}

/// Classic DBSCAN. A core point has at least min_pts points (itself
/// included) within eps. Seeds are visited in index order, so a border
/// point reachable from several clusters joins the lowest cluster id.
inline ClusterResult dbscan(const std::vector<Point2>& points, double eps,
                            int min_pts) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
    if (min_pts < 1) throw std::invalid_argument("min_pts must be >= 1");
    const std::size_t n = points.size();
    std::vector<std::vector<std::size_t>> neighbors(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (distance(points[i], points[j]) <= eps) neighbors[i].push_back(j);
    std::vector<bool> core(n, false);
    for (std::size_t i = 0; i < n; ++i)
        core[i] = neighbors[i].size() >= static_cast<std::size_t>(min_pts);

    ClusterResult result;
    result.labels.assign(n, kNoise);
    int next_id = 0;
    for (std::size_t seed = 0; seed < n; ++seed) {
        if (result.labels[seed] != kNoise || !core[seed]) continue;
        result.labels[seed] = next_id;
        std::queue<std::size_t> frontier;
        frontier.push(seed);
        while (!frontier.empty()) {
            const std::size_t p = frontier.front();
            frontier.pop();
            for (std::size_t q : neighbors[p]) {
                if (result.labels[q] != kNoise) continue;
                result.labels[q] = next_id;
                if (core[q]) frontier.push(q);
            }
        }
        ++next_id;
    }
    return result;
}

/// Median of all pairwise Euclidean distances (even count: mean of the two
/// middle values). Throws when fewer than two distinct points exist or when
/// the median itself is zero; a zero bandwidth is unusable downstream.
inline double estimate_bandwidth(const std::vector<Point2>& points) {
    const std::size_t n = points.size();
    std::vector<double> dists;
    dists.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            dists.push_back(distance(points[i], points[j]));
    if (dists.empty())
        throw std::invalid_argument("bandwidth needs at least 2 points");
    std::sort(dists.begin(), dists.end());
    if (dists.back() == 0.0)
        throw std::invalid_argument("all points coincide");
    const std::size_t m = dists.size();
    const double median = m % 2 == 1
                              ? dists[m / 2]
                              : 0.5 * (dists[m / 2 - 1] + dists[m / 2]);
    if (median == 0.0)
        throw std::invalid_argument("median pairwise distance is zero");
    return median;
}

/// Flat-kernel mean shift. Every point seeds a window of radius
/// `bandwidth`; the center moves to the window mean until the shift drops
/// below 1e-4 * bandwidth or 300 iterations. Converged centers closer than
/// bandwidth/2 merge into one mode (first seed wins); labels point to the
/// nearest mode.
inline ClusterResult mean_shift(const std::vector<Point2>& points,
                                double bandwidth) {
    if (!(bandwidth > 0.0))
        throw std::invalid_argument("bandwidth must be > 0");
    const std::size_t n = points.size();
    const double tol = 1e-4 * bandwidth;
    std::vector<Point2> centers(points);
    int worst_iters = 0;
    for (std::size_t s = 0; s < n; ++s) {
        Point2 c = points[s];
        int it = 0;
        while (it < 300) {
            double sx = 0.0, sy = 0.0;
            std::size_t count = 0;
            for (const Point2& p : points)
                if (distance(c, p) <= bandwidth) {
                    sx += p[0];
                    sy += p[1];
                    ++count;
                }
            if (count == 0) break;  // cannot happen for a window mean; guard
            const Point2 next{sx / static_cast<double>(count),
                              sy / static_cast<double>(count)};
            const double shift = distance(c, next);
            c = next;
            ++it;
            if (shift < tol) break;
        }
        centers[s] = c;
        worst_iters = std::max(worst_iters, it);
    }

    std::vector<Point2> modes;
    for (const Point2& c : centers) {
        bool merged = false;
        for (const Point2& m : modes)
            if (distance(c, m) <= bandwidth / 2.0) {
                merged = true;
                break;
            }
        if (!merged) modes.push_back(c);
    }

    ClusterResult result;
    result.labels.assign(n, kNoise);
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < modes.size(); ++m) {
            const double d = distance(points[i], modes[m]);
            if (d < best) {
                best = d;
                result.labels[i] = static_cast<int>(m);
            }
        }
    }
    result.modes = std::move(modes);
    result.iterations = worst_iters;
    return result;
}

/// Boosting grid for BMSC: row-major cells holding point indices, plus the
/// neighborhood structure used during resampling.
struct Grid {
    int rows = 0;
    int cols = 0;
    Neighborhood structure = Neighborhood::linear5;
    std::vector<std::vector<std::size_t>> cells;  // row-major, rows*cols

    std::size_t cell_count() const {
        return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    }

    /// Even, order-free initial distribution: a seeded shuffle of the point
    /// indices dealt round-robin, so cell sizes differ by at most 1.
    static Grid distribute(std::size_t n_points, int rows, int cols,
                           Neighborhood structure, std::mt19937_64& rng) {
        if (rows < 1 || cols < 1)
            throw std::invalid_argument("grid dimensions must be >= 1");
        Grid g;
        g.rows = rows;
        g.cols = cols;
        g.structure = structure;
        g.cells.assign(g.cell_count(), {});
        std::vector<std::size_t> order(n_points);
        std::iota(order.begin(), order.end(), 0);
        deterministic_shuffle(order, rng);
        for (std::size_t k = 0; k < order.size(); ++k)
            g.cells[k % g.cell_count()].push_back(order[k]);
        return g;
    }

    /// Cells reachable from `cell` under the configured structure, clipped
    /// at the borders. Always contains the cell itself, first.
    std::vector<std::size_t> neighborhood_cells(std::size_t cell) const {
        static constexpr std::array<std::array<int, 2>, 4> kCross1{
            {{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
        static constexpr std::array<std::array<int, 2>, 4> kCross2{
            {{-2, 0}, {2, 0}, {0, -2}, {0, 2}}};
        const int r = static_cast<int>(cell) / cols;
        const int c = static_cast<int>(cell) % cols;
        std::vector<std::array<int, 2>> offsets{{0, 0}};
        switch (structure) {
            case Neighborhood::linear5:
                offsets.insert(offsets.end(), kCross1.begin(), kCross1.end());
                break;
            case Neighborhood::linear9:
                offsets.insert(offsets.end(), kCross1.begin(), kCross1.end());
                offsets.insert(offsets.end(), kCross2.begin(), kCross2.end());
                break;
            case Neighborhood::compact9:
                for (int dr = -1; dr <= 1; ++dr)
                    for (int dc = -1; dc <= 1; ++dc)
                        if (dr != 0 || dc != 0) offsets.push_back({dr, dc});
                break;
            case Neighborhood::compact13:
                for (int dr = -1; dr <= 1; ++dr)
                    for (int dc = -1; dc <= 1; ++dc)
                        if (dr != 0 || dc != 0) offsets.push_back({dr, dc});
                offsets.insert(offsets.end(), kCross2.begin(), kCross2.end());
                break;
        }
        std::vector<std::size_t> out;
        for (const auto& [dr, dc] : offsets) {
            const int nr = r + dr;
            const int nc = c + dc;
            if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
            out.push_back(static_cast<std::size_t>(nr) *
                              static_cast<std::size_t>(cols) +
                          static_cast<std::size_t>(nc));
        }
        return out;
    }
};

namespace bmsc_detail {

/// Bandwidth for one cell: the override if given, else the median pairwise
/// distance, else (degenerate cells) the smallest positive distance, else 1
/// (all points coincide; any window works).
inline double cell_bandwidth(const std::vector<Point2>& cell_points,
                             const std::optional<double>& override_bw) {
    if (override_bw) return *override_bw;
    try {
        return estimate_bandwidth(cell_points);
    } catch (const std::invalid_argument&) {
        double smallest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < cell_points.size(); ++i)
            for (std::size_t j = i + 1; j < cell_points.size(); ++j) {
                const double d = distance(cell_points[i], cell_points[j]);
                if (d > 0.0 && d < smallest) smallest = d;
            }
        return std::isfinite(smallest) ? smallest : 1.0;
    }
}

/// Distance from a point to the nearest of a cell's iModes.
inline double nearest_mode_distance(const Point2& p,
                                    const std::vector<Point2>& modes) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point2& m : modes) best = std::min(best, distance(p, m));
    return best;
}

}  // namespace bmsc_detail

/// Boosted Mean Shift Clustering. One boost iteration: run mean shift in
/// every grid cell (bandwidth per cell), collect the intermediate modes
/// (iModes), refill every cell with the points of its neighborhood closest
/// to the cell's own iModes (cell sizes are preserved exactly; each point
/// ends up in exactly one cell), then group the iModes with DBSCAN. Points
/// take the label of their globally nearest iMode. The loop stops when the
/// DBSCAN cluster count is identical for three consecutive iterations or
/// after params.max_bmsc_iters iterations.
inline ClusterResult bmsc(const std::vector<Point2>& points,
                          const HyperParams& params,
                          std::vector<std::string>* warnings = nullptr) {
    params.validate();
    const std::size_t n = points.size();
    if (n == 0) throw std::invalid_argument("empty input");
    std::mt19937_64 rng(params.seed);
    Grid grid = Grid::distribute(n, params.grid_rows, params.grid_cols,
                                 params.neighborhood, rng);
    if (grid.cell_count() > n && warnings)
        warnings->push_back("grid has more cells than points; " +
                            std::to_string(grid.cell_count() - n) +
                            " cells stay empty");

    ClusterResult result;
    std::vector<int> counts;  // cluster-count history for the stop rule
    for (int iter = 1; iter <= params.max_bmsc_iters; ++iter) {
        // (2) per-cell mean shift
        std::vector<Point2> imodes;
        std::vector<std::vector<Point2>> cell_modes(grid.cell_count());
        for (std::size_t c = 0; c < grid.cell_count(); ++c) {
            if (grid.cells[c].empty()) continue;
            std::vector<Point2> cell_points;
            cell_points.reserve(grid.cells[c].size());
            for (std::size_t idx : grid.cells[c])
                cell_points.push_back(points[idx]);
            const double bw =
                bmsc_detail::cell_bandwidth(cell_points, params.bandwidth);
            ClusterResult ms = mean_shift(cell_points, bw);
            cell_modes[c] = *ms.modes;
            for (const Point2& m : cell_modes[c]) imodes.push_back(m);
        }

        // (3) resample cells around their own iModes, preserving sizes.
        // Cells claim in row-major order from their neighborhood's still
        // unclaimed points, ranked by distance to the cell's iModes (ties:
        // lowest point index); cells left short are topped up afterwards
        // from the leftover pool with the same ranking.
        std::vector<std::vector<std::size_t>> next_cells(grid.cell_count());
        std::vector<bool> claimed(n, false);
        std::vector<std::size_t> deficit_cells;
        for (std::size_t c = 0; c < grid.cell_count(); ++c) {
            const std::size_t want = grid.cells[c].size();
            if (want == 0) continue;
            std::vector<std::size_t> pool;
            for (std::size_t nc : grid.neighborhood_cells(c))
                for (std::size_t idx : grid.cells[nc])
                    if (!claimed[idx]) pool.push_back(idx);
            std::sort(pool.begin(), pool.end(),
                      [&](std::size_t a, std::size_t b) {
                          const double da = bmsc_detail::nearest_mode_distance(
                              points[a], cell_modes[c]);
                          const double db = bmsc_detail::nearest_mode_distance(
                              points[b], cell_modes[c]);
                          if (da != db) return da < db;
                          return a < b;
                      });
            const std::size_t take = std::min(want, pool.size());
            for (std::size_t k = 0; k < take; ++k) {
                next_cells[c].push_back(pool[k]);
                claimed[pool[k]] = true;
            }
            if (take < want) deficit_cells.push_back(c);
        }
        std::vector<std::size_t> leftovers;
        for (std::size_t idx = 0; idx < n; ++idx)
            if (!claimed[idx]) leftovers.push_back(idx);
        for (std::size_t c : deficit_cells) {
            const std::size_t want = grid.cells[c].size();
            std::sort(leftovers.begin(), leftovers.end(),
                      [&](std::size_t a, std::size_t b) {
                          const double da = bmsc_detail::nearest_mode_distance(
                              points[a], cell_modes[c]);
                          const double db = bmsc_detail::nearest_mode_distance(
                              points[b], cell_modes[c]);
                          if (da != db) return da < db;
                          return a < b;
                      });
            while (next_cells[c].size() < want && !leftovers.empty()) {
                next_cells[c].push_back(leftovers.front());
                leftovers.erase(leftovers.begin());
            }
        }

        // (4) group iModes; points inherit their nearest iMode's label
        ClusterResult imode_result =
            dbscan(imodes, params.eps, params.min_pts_imodes);
        int k = 0;
        for (int l : imode_result.labels) k = std::max(k, l + 1);
        counts.push_back(k);

        result.labels.assign(n, kNoise);
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t m = 0; m < imodes.size(); ++m) {
                const double d = distance(points[i], imodes[m]);
                if (d < best) {
                    best = d;
                    result.labels[i] = imode_result.labels[m];
                }
            }
        }
        result.modes = std::move(imodes);
        result.iterations = iter;

        const std::size_t h = counts.size();
        if (h >= 3 && counts[h - 1] == counts[h - 2] &&
            counts[h - 2] == counts[h - 3])
            break;
        grid.cells = std::move(next_cells);
    }

    // iMode clusters that attracted no point would leave gaps; remap the
    // surviving ids to a contiguous range.
    std::set<int> used;
    for (int l : result.labels)
        if (l >= 0) used.insert(l);
    std::map<int, int> remap;
    int next = 0;
    for (int id : used) remap[id] = next++;
    for (int& l : result.labels)
        if (l >= 0) l = remap[l];
    return result;
}

}  // namespace monosplit
