#include "namegauge/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace namegauge {

namespace detail {

B3Score b3_labels(const std::vector<int>& predicted, const std::vector<int>& truth) {
    if (predicted.size() != truth.size())
        throw std::invalid_argument("b3_labels: size mismatch");
    std::size_t n = predicted.size();
    if (n == 0) throw std::invalid_argument("b3_labels: empty clustering");
    std::vector<std::size_t> pred_size, truth_size;
    for (std::size_t i = 0; i < n; ++i) {
        if (predicted[i] >= static_cast<int>(pred_size.size()))
            pred_size.resize(predicted[i] + 1, 0);
        if (truth[i] >= static_cast<int>(truth_size.size()))
            truth_size.resize(truth[i] + 1, 0);
        ++pred_size[predicted[i]];
        ++truth_size[truth[i]];
    }
    // Each (pred cluster, truth cluster) cell with k shared instances
    // contributes k * (k/|pred|) to precision and k * (k/|truth|) to
    // recall, summed over instances.
    std::map<std::pair<int, int>, std::size_t> cells;
    for (std::size_t i = 0; i < n; ++i) ++cells[{predicted[i], truth[i]}];
    double precision = 0.0, recall = 0.0;
    for (const auto& [cell, k] : cells) {
        double kk = double(k) * double(k);
        precision += kk / double(pred_size[cell.first]);
        recall += kk / double(truth_size[cell.second]);
    }
    precision /= double(n);
    recall /= double(n);
    B3Score score;
    score.precision = precision;
    score.recall = recall;
    score.f1 = (precision + recall) > 0.0
                   ? 2.0 * precision * recall / (precision + recall)
                   : 0.0;
    return score;
}

}  // namespace detail

namespace {

void check_coverage(const Clustering& predicted, const Clustering& truth) {
    std::vector<std::string> missing_in_pred, missing_in_truth;
    for (const auto& [id, _] : truth.assignment)
        if (!predicted.assignment.count(id)) missing_in_pred.push_back(id);
    for (const auto& [id, _] : predicted.assignment)
        if (!truth.assignment.count(id)) missing_in_truth.push_back(id);
    if (missing_in_pred.empty() && missing_in_truth.empty()) return;
    std::sort(missing_in_pred.begin(), missing_in_pred.end());
    std::sort(missing_in_truth.begin(), missing_in_truth.end());
    std::string msg = "b3: clusterings cover different instances;";
    auto append = [&msg](const char* what, const std::vector<std::string>& ids) {
        if (ids.empty()) return;
        msg += std::string(" ") + what + ":";
        std::size_t shown = std::min<std::size_t>(ids.size(), 10);
        for (std::size_t i = 0; i < shown; ++i) msg += " " + ids[i];
        if (ids.size() > shown)
            msg += " (+" + std::to_string(ids.size() - shown) + " more)";
    };
    append("missing from prediction", missing_in_pred);
    append("missing from truth", missing_in_truth);
    throw std::invalid_argument(msg);
}

}  // namespace

B3Score b3(const Clustering& predicted, const Clustering& truth) {
    check_coverage(predicted, truth);
    if (truth.assignment.empty()) throw std::invalid_argument("b3: empty clustering");
    std::vector<std::string> ids;
    ids.reserve(truth.assignment.size());
    for (const auto& [id, _] : truth.assignment) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    std::map<std::string, int> pred_ids, truth_ids;
    std::vector<int> pred(ids.size()), tru(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const std::string& pc = predicted.assignment.at(ids[i]);
        const std::string& tc = truth.assignment.at(ids[i]);
        pred[i] = pred_ids.emplace(pc, int(pred_ids.size())).first->second;
        tru[i] = truth_ids.emplace(tc, int(truth_ids.size())).first->second;
    }
    return detail::b3_labels(pred, tru);
}

B3Score b3_bruteforce(const Clustering& predicted, const Clustering& truth) {
    check_coverage(predicted, truth);
    if (truth.assignment.empty()) throw std::invalid_argument("b3: empty clustering");
    std::vector<const std::string*> ids;
    for (const auto& [id, _] : truth.assignment) ids.push_back(&id);
    double precision_sum = 0.0, recall_sum = 0.0;
    for (const std::string* id : ids) {
        const std::string& pc = predicted.assignment.at(*id);
        const std::string& tc = truth.assignment.at(*id);
        std::size_t pred_size = 0, truth_size = 0, overlap = 0;
        for (const std::string* other : ids) {
            bool same_pred = predicted.assignment.at(*other) == pc;
            bool same_truth = truth.assignment.at(*other) == tc;
            if (same_pred) ++pred_size;
            if (same_truth) ++truth_size;
            if (same_pred && same_truth) ++overlap;
        }
        precision_sum += double(overlap) / double(pred_size);
        recall_sum += double(overlap) / double(truth_size);
    }
    double n = double(ids.size());
    B3Score score;
    score.precision = precision_sum / n;
    score.recall = recall_sum / n;
    score.f1 = (score.precision + score.recall) > 0.0
                   ? 2.0 * score.precision * score.recall / (score.precision + score.recall)
                   : 0.0;
    return score;
}

ScoreStats mean_scores(std::span<const B3Score> scores) {
    if (scores.empty()) throw std::invalid_argument("mean_scores: no scores");
    ScoreStats st;
    for (const auto& s : scores) {
        st.mean.precision += s.precision;
        st.mean.recall += s.recall;
        st.mean.f1 += s.f1;
    }
    double n = double(scores.size());
    st.mean.precision /= n;
    st.mean.recall /= n;
    st.mean.f1 /= n;
    if (scores.size() > 1) {
        double vp = 0.0, vr = 0.0, vf = 0.0;
        for (const auto& s : scores) {
            vp += (s.precision - st.mean.precision) * (s.precision - st.mean.precision);
            vr += (s.recall - st.mean.recall) * (s.recall - st.mean.recall);
            vf += (s.f1 - st.mean.f1) * (s.f1 - st.mean.f1);
        }
        st.stddev.precision = std::sqrt(vp / (n - 1.0));
        st.stddev.recall = std::sqrt(vr / (n - 1.0));
        st.stddev.f1 = std::sqrt(vf / (n - 1.0));
    }
    return st;
}

}  // namespace namegauge
