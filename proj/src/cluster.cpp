#include "namegauge/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace namegauge {

DistanceMatrix::DistanceMatrix(std::vector<std::string> ids) : ids_(std::move(ids)) {
    if (ids_.empty()) throw std::invalid_argument("DistanceMatrix: no instances");
    d_.assign(ids_.size() * ids_.size(), 0.0);
}

void DistanceMatrix::set(std::size_t i, std::size_t j, double d) {
    d_[i * ids_.size() + j] = d;
    d_[j * ids_.size() + i] = d;
}

namespace {

struct Merge {
    double height;
    std::size_t a;  // member indices identifying the two clusters
    std::size_t b;
};

// Full merge sequence down to one cluster, in the order an unconstrained
// agglomeration would perform them. A thresholded run is the prefix of
// this sequence up to the first merge above the threshold.
std::vector<Merge> dendrogram(const DistanceMatrix& dm, Linkage linkage) {
    const std::size_t n = dm.size();
    // Rank of each member id in lexicographic order, for tie-breaking.
    std::vector<std::size_t> order(n), rank(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return dm.ids()[a] < dm.ids()[b];
    });
    for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;

    std::vector<double> d(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i * n + j] = dm.at(i, j);
    std::vector<bool> active(n, true);
    std::vector<std::size_t> size(n, 1), rep(n), member(n);
    std::iota(rep.begin(), rep.end(), 0);      // member index with smallest id
    std::iota(member.begin(), member.end(), 0);

    std::vector<Merge> merges;
    merges.reserve(n ? n - 1 : 0);
    for (std::size_t step = 1; step < n; ++step) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        bool found = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!active[j]) continue;
                double dist = d[i * n + j];
                std::size_t lo = std::min(rank[rep[i]], rank[rep[j]]);
                std::size_t hi = std::max(rank[rep[i]], rank[rep[j]]);
                bool better = false;
                if (!found || dist < best) {
                    better = true;
                } else if (dist == best) {
                    std::size_t cur_lo = std::min(rank[rep[bi]], rank[rep[bj]]);
                    std::size_t cur_hi = std::max(rank[rep[bi]], rank[rep[bj]]);
                    better = lo < cur_lo || (lo == cur_lo && hi < cur_hi);
                }
                if (better) {
                    best = dist;
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        }
        merges.push_back({best, rep[bi], rep[bj]});
        // Lance-Williams update into slot bi.
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == bi || k == bj) continue;
            double dik = d[bi * n + k];
            double djk = d[bj * n + k];
            double nd;
            switch (linkage) {
                case Linkage::Single: nd = std::min(dik, djk); break;
                case Linkage::Complete: nd = std::max(dik, djk); break;
                case Linkage::Average:
                default:
                    nd = (double(size[bi]) * dik + double(size[bj]) * djk) /
                         double(size[bi] + size[bj]);
                    break;
            }
            d[bi * n + k] = d[k * n + bi] = nd;
        }
        active[bj] = false;
        size[bi] += size[bj];
        if (rank[rep[bj]] < rank[rep[bi]]) rep[bi] = rep[bj];
    }
    return merges;
}

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Cluster labels (0-based, dense) after applying the first n_merges merges.
std::vector<int> labels_after(const DistanceMatrix& dm, const std::vector<Merge>& merges,
                              std::size_t n_merges) {
    UnionFind uf(dm.size());
    for (std::size_t i = 0; i < n_merges; ++i) uf.unite(merges[i].a, merges[i].b);
    std::vector<int> labels(dm.size());
    std::map<std::size_t, int> roots;
    for (std::size_t i = 0; i < dm.size(); ++i)
        labels[i] = roots.emplace(uf.find(i), int(roots.size())).first->second;
    return labels;
}

Clustering clustering_from_labels(const DistanceMatrix& dm, const std::vector<int>& labels) {
    // Cluster id = "c:" + smallest member id, stable across input orders.
    std::map<int, std::string> names;
    for (std::size_t i = 0; i < dm.size(); ++i) {
        auto [it, inserted] = names.emplace(labels[i], dm.ids()[i]);
        if (!inserted && dm.ids()[i] < it->second) it->second = dm.ids()[i];
    }
    Clustering out;
    for (std::size_t i = 0; i < dm.size(); ++i)
        out.assignment.emplace(dm.ids()[i], "c:" + names[labels[i]]);
    return out;
}

// Number of merges a thresholded run performs: stop at the first merge in
// the sequence whose height exceeds the threshold.
std::size_t prefix_length(const std::vector<Merge>& merges, double threshold) {
    for (std::size_t i = 0; i < merges.size(); ++i)
        if (merges[i].height > threshold) return i;
    return merges.size();
}

}  // namespace

Clustering hac(const DistanceMatrix& distances, double threshold, Linkage linkage) {
    std::vector<Merge> merges = dendrogram(distances, linkage);
    std::size_t p = prefix_length(merges, threshold);
    return clustering_from_labels(distances, labels_after(distances, merges, p));
}

ThresholdChoice sweep_threshold(const DistanceMatrix& distances, const Clustering& truth,
                                Linkage linkage) {
    const auto& ids = distances.ids();
    std::vector<int> truth_labels(ids.size());
    std::map<std::string, int> truth_ids;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        auto it = truth.assignment.find(ids[i]);
        if (it == truth.assignment.end())
            throw std::invalid_argument("sweep_threshold: truth misses instance " + ids[i]);
        truth_labels[i] = truth_ids.emplace(it->second, int(truth_ids.size())).first->second;
    }
    std::vector<Merge> merges = dendrogram(distances, linkage);

    std::map<std::size_t, B3Score> scores;  // prefix length -> score
    ThresholdChoice choice;
    bool have = false;
    for (int grid = 0; grid <= 100; ++grid) {
        double t = double(grid) / 100.0;
        std::size_t p = prefix_length(merges, t);
        auto it = scores.find(p);
        if (it == scores.end()) {
            B3Score s = detail::b3_labels(labels_after(distances, merges, p), truth_labels);
            it = scores.emplace(p, s).first;
        }
        if (!have || it->second.f1 > choice.score.f1) {
            have = true;
            choice.score = it->second;
            choice.threshold = t;
            choice.clustering =
                clustering_from_labels(distances, labels_after(distances, merges, p));
        }
    }
    return choice;
}

Clustering heuristic_cluster(const std::vector<std::pair<std::string, std::string>>& members) {
    // Group by exact rendered name; cluster id from the smallest member id.
    std::map<std::string, std::string> reps;
    for (const auto& [id, name] : members) {
        auto [it, inserted] = reps.emplace(name, id);
        if (!inserted && id < it->second) it->second = id;
    }
    Clustering out;
    for (const auto& [id, name] : members)
        out.assignment.emplace(id, "h:" + reps[name]);
    return out;
}

}  // namespace namegauge
