#pragma once

#include <cstddef>
#include <vector>

namespace milnorlab {

// Single-linkage partition: connected components of the graph joining pairs
// at distance <= h. Output is canonical: member indices inside a cluster are
// sorted by (point coordinates, then index) and clusters are ordered by their
// lexicographically smallest member point, so any permutation of the input
// yields the same clusters up to the index relabeling.
std::vector<std::vector<std::size_t>> single_linkage(
    const std::vector<std::vector<double>>& points, double h);

// Median over all points of the distance to the nearest other point.
// Zero when fewer than two points exist.
double median_nn_distance(const std::vector<std::vector<double>>& points);

// Local intrinsic dimension of a cluster: for each point, PCA of its k
// nearest neighbors (centered); the point's estimate counts eigenvalues
// >= max(rel_threshold * largest, abs_floor). The cluster dimension is the
// majority vote (ties resolved toward the smaller dimension).
std::size_t local_dim(const std::vector<std::vector<double>>& cluster, std::size_t k,
                      double rel_threshold = 0.1, double abs_floor = 1e-10);

}  // namespace milnorlab
