#ifndef CAJ_CLUSTERING_HPP
#define CAJ_CLUSTERING_HPP

#include "caj/types.hpp"

namespace caj {

/// Cluster id per sample; kNoise marks noise points. Cluster ids are
/// contiguous from 0, ordered by each cluster's smallest core-point index.
struct ClusterAssignment {
    static constexpr int kNoise = -1;
    std::vector<int> labels;
    int num_clusters = 0;
};

/// DBSCAN over a precomputed Jaccard-like distance matrix.
///
/// A sample is a core point when at least `min_samples` samples (itself
/// included) lie within `eps`. Clusters are the connected components of
/// core points; a non-core sample within eps of some core point joins the
/// cluster of its smallest-index such core. Rejects matrices of kind
/// `original` and non-square or asymmetric input.
ClusterAssignment dbscan(const DistanceMatrix& dist, Scalar eps, int min_samples);

}  // namespace caj

#endif
