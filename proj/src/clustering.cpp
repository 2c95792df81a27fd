#include "caj/clustering.hpp"

#include <cmath>
#include <queue>

namespace caj {

ClusterAssignment dbscan(const DistanceMatrix& dist, Scalar eps, int min_samples) {
    if (dist.kind == DistanceKind::original)
        throw std::invalid_argument(
            "dbscan: expects a jaccard-like distance matrix, got kind 'original'");
    if (dist.rows() != dist.cols())
        throw std::invalid_argument("dbscan: distance matrix must be square");
    if (!(eps > 0.0)) throw std::invalid_argument("dbscan: eps must be positive");
    if (min_samples < 1) throw std::invalid_argument("dbscan: min_samples must be >= 1");

    const Matrix& d = dist.data;
    const int n = static_cast<int>(d.rows());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(d(i, j) - d(j, i)) > 1e-6)
                throw std::invalid_argument("dbscan: distance matrix is not symmetric");

    // Core points count themselves among their eps-neighbors.
    std::vector<char> core(n, 0);
    for (int i = 0; i < n; ++i) {
        int count = 0;
        for (int j = 0; j < n; ++j)
            if (d(i, j) <= eps) ++count;
        core[i] = count >= min_samples;
    }

    ClusterAssignment out;
    out.labels.assign(n, ClusterAssignment::kNoise);

    // Clusters are connected components of core points, grown in index
    // order so cluster ids follow each component's smallest core index.
    for (int i = 0; i < n; ++i) {
        if (!core[i] || out.labels[i] != ClusterAssignment::kNoise) continue;
        const int cluster = out.num_clusters++;
        std::queue<int> frontier;
        out.labels[i] = cluster;
        frontier.push(i);
        while (!frontier.empty()) {
            const int u = frontier.front();
            frontier.pop();
            for (int v = 0; v < n; ++v) {
                if (core[v] && out.labels[v] == ClusterAssignment::kNoise && d(u, v) <= eps) {
                    out.labels[v] = cluster;
                    frontier.push(v);
                }
            }
        }
    }

    // Border points join the cluster of their smallest-index core neighbor.
    for (int i = 0; i < n; ++i) {
        if (core[i]) continue;
        for (int j = 0; j < n; ++j) {
            if (core[j] && d(i, j) <= eps) {
                out.labels[i] = out.labels[j];
                break;
            }
        }
    }
    return out;
}

}  // namespace caj
