#pragma once

#include <string>
#include <utility>
#include <vector>

#include "namegauge/evaluate.hpp"

namespace namegauge {

enum class Linkage { Average, Single, Complete };

// Symmetric pairwise distance matrix over a block's instances.
class DistanceMatrix {
  public:
    explicit DistanceMatrix(std::vector<std::string> ids);

    std::size_t size() const { return ids_.size(); }
    const std::vector<std::string>& ids() const { return ids_; }

    void set(std::size_t i, std::size_t j, double d);
    double at(std::size_t i, std::size_t j) const { return d_[i * ids_.size() + j]; }

  private:
    std::vector<std::string> ids_;
    std::vector<double> d_;
};

// Agglomerative clustering: repeatedly merge the closest pair of clusters
// while the linkage distance is <= threshold. Ties are broken by the
// lexicographically smallest member ids, so results do not depend on
// input order.
Clustering hac(const DistanceMatrix& distances, double threshold,
               Linkage linkage = Linkage::Average);

struct ThresholdChoice {
    Clustering clustering;
    double threshold = 0.0;
    B3Score score;
};

// Tries thresholds 0.00, 0.01, ..., 1.00 and returns the clustering that
// maximizes B-cubed F1 against the truth, preferring the lowest threshold
// on ties. The dendrogram is built once; each threshold is a prefix of
// its merge sequence.
ThresholdChoice sweep_threshold(const DistanceMatrix& distances, const Clustering& truth,
                                Linkage linkage = Linkage::Average);

// Exact-string-match baseline: one cluster per distinct name string.
// Takes (instance_id, rendered name) pairs.
Clustering heuristic_cluster(const std::vector<std::pair<std::string, std::string>>& members);

}  // namespace namegauge
