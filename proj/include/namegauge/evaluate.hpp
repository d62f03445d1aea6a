#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace namegauge {

// Instance id -> cluster id. Cluster ids are opaque strings.
struct Clustering {
    std::unordered_map<std::string, std::string> assignment;
};

struct B3Score {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// B-cubed scores of a predicted clustering against the truth. Both must
// cover exactly the same instances; a mismatch is an error that names the
// missing ids. Uses the contingency form: precision is the mean over
// instances of |pred ∩ truth| / |pred| for the instance's own clusters.
B3Score b3(const Clustering& predicted, const Clustering& truth);

// Independent per-instance reference implementation used to cross-check
// b3. Deliberately follows the textbook definition instance by instance.
B3Score b3_bruteforce(const Clustering& predicted, const Clustering& truth);

struct ScoreStats {
    B3Score mean;
    B3Score stddev;  // sample standard deviation; zero when n < 2
};

ScoreStats mean_scores(std::span<const B3Score> scores);

namespace detail {

// Core on dense integer labels (index-aligned vectors). The string API
// maps onto this; the clustering sweep calls it directly.
B3Score b3_labels(const std::vector<int>& predicted, const std::vector<int>& truth);

}  // namespace detail

}  // namespace namegauge
