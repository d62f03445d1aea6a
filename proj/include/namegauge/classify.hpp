#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "namegauge/features.hpp"

namespace namegauge {

enum class ClassifierKind { RandomForest, LogisticRegression, GaussianNB };

const char* classifier_name(ClassifierKind kind);

// One labeled in-block candidate pair: match = same author.
struct TrainingPair {
    FeatureVector features;
    bool match = false;
};

// Binary decision tree in preorder layout: a node's left child is the
// next node, only the right child index is stored. Leaves have
// feature == -1 and carry the match probability in value.
struct TreeNode {
    double value = 0.0;  // split threshold, or leaf probability
    std::int32_t right = -1;
    std::int16_t feature = -1;
};

struct DecisionTree {
    std::vector<TreeNode> nodes;

    double predict(const std::array<double, 4>& x) const;
};

struct RandomForestParams {
    int n_trees = 500;
    int features_per_split = 2;
};

struct RandomForestModel {
    RandomForestParams params;
    std::uint64_t seed = 0;
    std::vector<DecisionTree> trees;
    // Mean decrease in Gini impurity per feature, rescaled to sum to 1
    // (all zero if no tree ever split).
    std::array<double, 4> importances{};

    double predict_proba(const FeatureVector& fv) const;
};

// Bagged trees grown to purity on bootstrap samples, Gini criterion,
// 2 of 4 features tried per split.
RandomForestModel train_random_forest(std::span<const TrainingPair> pairs, std::uint64_t seed,
                                      RandomForestParams params = {});

struct LogisticRegressionModel {
    std::array<double, 4> weights{};
    double bias = 0.0;
    double lambda = 1.0;
    int iterations = 0;

    double predict_proba(const FeatureVector& fv) const;
};

// L2-regularized logistic regression minimizing
//   0.5*lambda*|w|^2 + sum_i log(1 + exp(-y_i z_i)),
// bias unpenalized, by damped Newton iteration until the gradient norm
// drops to 1e-8 (or 1000 iterations).
LogisticRegressionModel train_logistic_regression(std::span<const TrainingPair> pairs,
                                                  double lambda = 1.0);

// Objective and gradient of the training problem, exposed so optimizer
// correctness can be checked by finite differences. Gradient layout:
// d/dw0..d/dw3, then d/db.
double logistic_loss(std::span<const TrainingPair> pairs, const std::array<double, 4>& w,
                     double bias, double lambda);
std::array<double, 5> logistic_gradient(std::span<const TrainingPair> pairs,
                                        const std::array<double, 4>& w, double bias,
                                        double lambda);

struct GaussianNbModel {
    std::array<double, 2> log_prior{};             // [non-match, match]
    std::array<std::array<double, 4>, 2> mean{};
    std::array<std::array<double, 4>, 2> var{};    // ML variance, floored at 1e-9

    double predict_proba(const FeatureVector& fv) const;
};

GaussianNbModel train_gaussian_nb(std::span<const TrainingPair> pairs);

// Uniform front end over the three model families, with JSON
// serialization for reuse across runs.
class PairClassifier {
  public:
    static PairClassifier train(ClassifierKind kind, std::span<const TrainingPair> pairs,
                                std::uint64_t seed);

    double predict_proba(const FeatureVector& fv) const;
    ClassifierKind kind() const;

    // Random forest only; other kinds have no defined importance here.
    std::array<double, 4> feature_importance() const;

    void save(const std::string& path) const;
    static PairClassifier load(const std::string& path);

    const RandomForestModel& forest() const;
    const LogisticRegressionModel& logistic() const;
    const GaussianNbModel& naive_bayes() const;

    explicit PairClassifier(RandomForestModel m) : model_(std::move(m)) {}
    explicit PairClassifier(LogisticRegressionModel m) : model_(std::move(m)) {}
    explicit PairClassifier(GaussianNbModel m) : model_(std::move(m)) {}

  private:
    std::variant<RandomForestModel, LogisticRegressionModel, GaussianNbModel> model_;
};

}  // namespace namegauge
