#include "namegauge/classify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

#include "namegauge/rng.hpp"

namespace namegauge {

const char* classifier_name(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::RandomForest: return "rf";
        case ClassifierKind::LogisticRegression: return "lr";
        case ClassifierKind::GaussianNB: return "gnb";
    }
    return "?";
}

double DecisionTree::predict(const std::array<double, 4>& x) const {
    std::size_t i = 0;
    while (nodes[i].feature >= 0)
        i = x[nodes[i].feature] <= nodes[i].value ? i + 1 : std::size_t(nodes[i].right);
    return nodes[i].value;
}

double RandomForestModel::predict_proba(const FeatureVector& fv) const {
    std::array<double, 4> x = fv.as_array();
    double sum = 0.0;
    for (const auto& tree : trees) sum += tree.predict(x);
    return trees.empty() ? 0.0 : sum / double(trees.size());
}

namespace {

constexpr std::uint64_t kTreeSeedSalt = 0xf0e1d2c3b4a59687ULL;

// Grows one tree on a bootstrap sample. Columns are argsorted once; each
// node is a contiguous range of all four order arrays, re-partitioned in
// place on the way down, so no per-node sorting is needed.
class TreeBuilder {
  public:
    TreeBuilder(const std::vector<std::array<double, 4>>& x, const std::vector<char>& y,
                int features_per_split, Rng& rng, std::array<double, 4>& importance)
        : x_(x), y_(y), features_per_split_(features_per_split), rng_(rng),
          importance_(importance), n_(x.size()) {
        for (int f = 0; f < 4; ++f) {
            order_[f].resize(n_);
            std::iota(order_[f].begin(), order_[f].end(), std::size_t(0));
            std::stable_sort(order_[f].begin(), order_[f].end(),
                             [&](std::size_t a, std::size_t b) { return x_[a][f] < x_[b][f]; });
        }
        scratch_.resize(n_);
        goes_left_.resize(n_);
    }

    DecisionTree build() {
        DecisionTree tree;
        tree.nodes.reserve(64);
        grow(tree, 0, n_);
        return tree;
    }

  private:
    struct Split {
        double gain = -1.0;
        int feature = -1;
        double threshold = 0.0;
    };

    static double gini(double pos, double total) {
        double p = pos / total;
        return 2.0 * p * (1.0 - p);
    }

    std::size_t count_pos(std::size_t lo, std::size_t hi) const {
        std::size_t pos = 0;
        for (std::size_t i = lo; i < hi; ++i) pos += y_[order_[0][i]];
        return pos;
    }

    // Best threshold on one feature over [lo,hi); boundaries between
    // distinct sorted values are the candidates.
    void best_on_feature(int f, std::size_t lo, std::size_t hi, std::size_t pos, Split& best) const {
        const auto& ord = order_[f];
        double total = double(hi - lo);
        double parent = gini(double(pos), total);
        std::size_t left_n = 0, left_pos = 0;
        for (std::size_t i = lo; i + 1 < hi; ++i) {
            left_pos += y_[ord[i]];
            ++left_n;
            double v = x_[ord[i]][f];
            double next = x_[ord[i + 1]][f];
            if (v == next) continue;
            double nl = double(left_n);
            double nr = total - nl;
            double gain = parent - (nl / total) * gini(double(left_pos), nl) -
                          (nr / total) * gini(double(pos - left_pos), nr);
            double threshold = (v + next) / 2.0;
            // Adjacent doubles can round the midpoint up to `next`, which
            // would send the whole node left; fall back to the low value.
            if (!(threshold < next)) threshold = v;
            if (gain > best.gain ||
                (gain == best.gain &&
                 (f < best.feature || (f == best.feature && threshold < best.threshold)))) {
                best = {gain, f, threshold};
            }
        }
    }

    void grow(DecisionTree& tree, std::size_t lo, std::size_t hi) {
        std::size_t node_index = tree.nodes.size();
        tree.nodes.emplace_back();
        std::size_t n_node = hi - lo;
        std::size_t pos = count_pos(lo, hi);

        Split best;
        if (pos > 0 && pos < n_node) {
            // Random order over the features; the first features_per_split
            // with any spread at this node are evaluated, constants are
            // passed over.
            std::array<int, 4> perm = {0, 1, 2, 3};
            for (int i = 3; i > 0; --i)
                std::swap(perm[i], perm[rng_.bounded(std::uint64_t(i) + 1)]);
            int tried = 0;
            for (int f : perm) {
                if (tried >= features_per_split_) break;
                if (x_[order_[f][lo]][f] == x_[order_[f][hi - 1]][f]) continue;
                best_on_feature(f, lo, hi, pos, best);
                ++tried;
            }
        }
        if (best.feature < 0) {
            tree.nodes[node_index].feature = -1;
            tree.nodes[node_index].value = double(pos) / double(n_node);
            return;
        }
        importance_[best.feature] += (double(n_node) / double(n_)) * best.gain;

        for (std::size_t i = lo; i < hi; ++i) {
            std::size_t s = order_[best.feature][i];
            goes_left_[s] = x_[s][best.feature] <= best.threshold;
        }
        std::size_t n_left = 0;
        for (std::size_t i = lo; i < hi; ++i) n_left += goes_left_[order_[0][i]];
        if (n_left == 0 || n_left == n_node) {
            // Degenerate cut; emit a leaf rather than recurse in place.
            tree.nodes[node_index].feature = -1;
            tree.nodes[node_index].value = double(pos) / double(n_node);
            return;
        }
        // Stable two-way partition of each column's order, preserving
        // sortedness within both children.
        for (int f = 0; f < 4; ++f) {
            auto& ord = order_[f];
            std::size_t l = lo, r = lo + n_left;
            for (std::size_t i = lo; i < hi; ++i)
                (goes_left_[ord[i]] ? scratch_[l++] : scratch_[r++]) = ord[i];
            std::copy(scratch_.begin() + lo, scratch_.begin() + hi, ord.begin() + lo);
        }

        tree.nodes[node_index].feature = std::int16_t(best.feature);
        tree.nodes[node_index].value = best.threshold;
        grow(tree, lo, lo + n_left);
        tree.nodes[node_index].right = std::int32_t(tree.nodes.size());
        grow(tree, lo + n_left, hi);
    }

    const std::vector<std::array<double, 4>>& x_;
    const std::vector<char>& y_;
    int features_per_split_;
    Rng& rng_;
    std::array<double, 4>& importance_;
    std::size_t n_;
    std::array<std::vector<std::size_t>, 4> order_;
    std::vector<std::size_t> scratch_;
    std::vector<char> goes_left_;
};

}  // namespace

RandomForestModel train_random_forest(std::span<const TrainingPair> pairs, std::uint64_t seed,
                                      RandomForestParams params) {
    if (pairs.empty())
        throw std::invalid_argument("train_random_forest: no training pairs");
    if (params.n_trees < 1 || params.features_per_split < 1 || params.features_per_split > 4)
        throw std::invalid_argument("train_random_forest: bad parameters");
    RandomForestModel model;
    model.params = params;
    model.seed = seed;
    model.trees.reserve(params.n_trees);
    std::array<double, 4> total_importance{};
    std::vector<std::array<double, 4>> x(pairs.size());
    std::vector<char> y(pairs.size());
    std::vector<std::array<double, 4>> bx(pairs.size());
    std::vector<char> by(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        x[i] = pairs[i].features.as_array();
        y[i] = pairs[i].match ? 1 : 0;
    }
    for (int t = 0; t < params.n_trees; ++t) {
        Rng rng(mix_seed(seed, kTreeSeedSalt + std::uint64_t(t)));
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            std::size_t pick = rng.bounded(pairs.size());
            bx[i] = x[pick];
            by[i] = y[pick];
        }
        std::array<double, 4> tree_importance{};
        TreeBuilder builder(bx, by, params.features_per_split, rng, tree_importance);
        model.trees.push_back(builder.build());
        for (int f = 0; f < 4; ++f) total_importance[f] += tree_importance[f];
    }
    double sum = 0.0;
    for (int f = 0; f < 4; ++f) {
        model.importances[f] = total_importance[f] / double(params.n_trees);
        sum += model.importances[f];
    }
    if (sum > 0.0)
        for (int f = 0; f < 4; ++f) model.importances[f] /= sum;
    return model;
}

namespace {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

void check_two_classes(std::span<const TrainingPair> pairs, const char* who) {
    bool has_pos = false, has_neg = false;
    for (const auto& p : pairs) (p.match ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg)
        throw std::invalid_argument(std::string(who) + ": need both classes in training data");
}

// Solves a symmetric positive definite 5x5 system by Gaussian elimination
// with partial pivoting.
std::array<double, 5> solve5(std::array<std::array<double, 5>, 5> a, std::array<double, 5> b) {
    for (int col = 0; col < 5; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 5; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        if (a[col][col] == 0.0) throw std::runtime_error("solve5: singular system");
        for (int r = col + 1; r < 5; ++r) {
            double factor = a[r][col] / a[col][col];
            if (factor == 0.0) continue;
            for (int c = col; c < 5; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    std::array<double, 5> out{};
    for (int r = 4; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < 5; ++c) s -= a[r][c] * out[c];
        out[r] = s / a[r][r];
    }
    return out;
}

}  // namespace

double logistic_loss(std::span<const TrainingPair> pairs, const std::array<double, 4>& w,
                     double bias, double lambda) {
    double loss = 0.0;
    for (const auto& p : pairs) {
        std::array<double, 4> xv = p.features.as_array();
        double z = bias;
        for (int f = 0; f < 4; ++f) z += w[f] * xv[f];
        loss += softplus(z) - (p.match ? z : 0.0);
    }
    double reg = 0.0;
    for (int f = 0; f < 4; ++f) reg += w[f] * w[f];
    return loss + 0.5 * lambda * reg;
}

std::array<double, 5> logistic_gradient(std::span<const TrainingPair> pairs,
                                        const std::array<double, 4>& w, double bias,
                                        double lambda) {
    std::array<double, 5> g{};
    for (const auto& p : pairs) {
        std::array<double, 4> xv = p.features.as_array();
        double z = bias;
        for (int f = 0; f < 4; ++f) z += w[f] * xv[f];
        double resid = sigmoid(z) - (p.match ? 1.0 : 0.0);
        for (int f = 0; f < 4; ++f) g[f] += resid * xv[f];
        g[4] += resid;
    }
    for (int f = 0; f < 4; ++f) g[f] += lambda * w[f];
    return g;
}

double LogisticRegressionModel::predict_proba(const FeatureVector& fv) const {
    std::array<double, 4> xv = fv.as_array();
    double z = bias;
    for (int f = 0; f < 4; ++f) z += weights[f] * xv[f];
    return sigmoid(z);
}

LogisticRegressionModel train_logistic_regression(std::span<const TrainingPair> pairs,
                                                  double lambda) {
    if (pairs.empty())
        throw std::invalid_argument("train_logistic_regression: no training pairs");
    check_two_classes(pairs, "train_logistic_regression");
    LogisticRegressionModel model;
    model.lambda = lambda;
    double loss = logistic_loss(pairs, model.weights, model.bias, lambda);
    for (int iter = 0; iter < 1000; ++iter) {
        std::array<double, 5> g = logistic_gradient(pairs, model.weights, model.bias, lambda);
        double gnorm = 0.0;
        for (double v : g) gnorm += v * v;
        gnorm = std::sqrt(gnorm);
        model.iterations = iter;
        if (gnorm <= 1e-8) return model;

        std::array<std::array<double, 5>, 5> h{};
        for (const auto& p : pairs) {
            std::array<double, 5> xv5;
            std::array<double, 4> xv = p.features.as_array();
            for (int f = 0; f < 4; ++f) xv5[f] = xv[f];
            xv5[4] = 1.0;
            double z = model.bias;
            for (int f = 0; f < 4; ++f) z += model.weights[f] * xv[f];
            double s = sigmoid(z);
            double wgt = s * (1.0 - s);
            for (int r = 0; r < 5; ++r)
                for (int c = r; c < 5; ++c) h[r][c] += wgt * xv5[r] * xv5[c];
        }
        for (int r = 0; r < 5; ++r)
            for (int c = 0; c < r; ++c) h[r][c] = h[c][r];
        for (int f = 0; f < 4; ++f) h[f][f] += lambda;
        for (int f = 0; f < 5; ++f) h[f][f] += 1e-12;

        std::array<double, 5> step = solve5(h, g);
        // Damped Newton: halve the step until the objective stops rising.
        double eta = 1.0;
        while (true) {
            std::array<double, 4> w2 = model.weights;
            for (int f = 0; f < 4; ++f) w2[f] -= eta * step[f];
            double b2 = model.bias - eta * step[4];
            double new_loss = logistic_loss(pairs, w2, b2, lambda);
            if (new_loss <= loss || eta < 1e-9) {
                model.weights = w2;
                model.bias = b2;
                loss = new_loss;
                break;
            }
            eta *= 0.5;
        }
    }
    model.iterations = 1000;
    return model;
}

double GaussianNbModel::predict_proba(const FeatureVector& fv) const {
    std::array<double, 4> xv = fv.as_array();
    std::array<double, 2> log_post;
    for (int c = 0; c < 2; ++c) {
        double lp = log_prior[c];
        for (int f = 0; f < 4; ++f) {
            double d = xv[f] - mean[c][f];
            lp += -0.5 * std::log(2.0 * M_PI * var[c][f]) - d * d / (2.0 * var[c][f]);
        }
        log_post[c] = lp;
    }
    double m = std::max(log_post[0], log_post[1]);
    double e0 = std::exp(log_post[0] - m);
    double e1 = std::exp(log_post[1] - m);
    return e1 / (e0 + e1);
}

GaussianNbModel train_gaussian_nb(std::span<const TrainingPair> pairs) {
    if (pairs.empty()) throw std::invalid_argument("train_gaussian_nb: no training pairs");
    check_two_classes(pairs, "train_gaussian_nb");
    GaussianNbModel model;
    std::array<std::size_t, 2> count{};
    std::array<std::array<double, 4>, 2> sum{}, sumsq{};
    for (const auto& p : pairs) {
        int c = p.match ? 1 : 0;
        ++count[c];
        std::array<double, 4> xv = p.features.as_array();
        for (int f = 0; f < 4; ++f) {
            sum[c][f] += xv[f];
            sumsq[c][f] += xv[f] * xv[f];
        }
    }
    for (int c = 0; c < 2; ++c) {
        model.log_prior[c] = std::log(double(count[c]) / double(pairs.size()));
        for (int f = 0; f < 4; ++f) {
            double mu = sum[c][f] / double(count[c]);
            model.mean[c][f] = mu;
            double v = sumsq[c][f] / double(count[c]) - mu * mu;
            model.var[c][f] = std::max(v, 1e-9);
        }
    }
    return model;
}

double PairClassifier::predict_proba(const FeatureVector& fv) const {
    return std::visit([&](const auto& m) { return m.predict_proba(fv); }, model_);
}

ClassifierKind PairClassifier::kind() const {
    if (std::holds_alternative<RandomForestModel>(model_)) return ClassifierKind::RandomForest;
    if (std::holds_alternative<LogisticRegressionModel>(model_))
        return ClassifierKind::LogisticRegression;
    return ClassifierKind::GaussianNB;
}

std::array<double, 4> PairClassifier::feature_importance() const {
    if (const auto* rf = std::get_if<RandomForestModel>(&model_)) return rf->importances;
    throw std::logic_error("feature_importance: only defined for the random forest");
}

PairClassifier PairClassifier::train(ClassifierKind kind, std::span<const TrainingPair> pairs,
                                     std::uint64_t seed) {
    switch (kind) {
        case ClassifierKind::RandomForest:
            return PairClassifier(train_random_forest(pairs, seed));
        case ClassifierKind::LogisticRegression:
            return PairClassifier(train_logistic_regression(pairs));
        case ClassifierKind::GaussianNB:
            return PairClassifier(train_gaussian_nb(pairs));
    }
    throw std::logic_error("PairClassifier::train: unknown kind");
}

const RandomForestModel& PairClassifier::forest() const {
    return std::get<RandomForestModel>(model_);
}
const LogisticRegressionModel& PairClassifier::logistic() const {
    return std::get<LogisticRegressionModel>(model_);
}
const GaussianNbModel& PairClassifier::naive_bayes() const {
    return std::get<GaussianNbModel>(model_);
}

namespace {

using nlohmann::json;

json forest_to_json(const RandomForestModel& m) {
    json trees = json::array();
    for (const auto& tree : m.trees) {
        json nodes = json::array();
        for (const auto& n : tree.nodes)
            nodes.push_back(json::array({int(n.feature), n.value, int(n.right)}));
        trees.push_back(std::move(nodes));
    }
    return json{{"format_version", 1},
                {"kind", "random_forest"},
                {"n_trees", m.params.n_trees},
                {"features_per_split", m.params.features_per_split},
                {"seed", m.seed},
                {"importances", m.importances},
                {"trees", std::move(trees)}};
}

RandomForestModel forest_from_json(const json& j) {
    RandomForestModel m;
    m.params.n_trees = j.at("n_trees").get<int>();
    m.params.features_per_split = j.at("features_per_split").get<int>();
    m.seed = j.at("seed").get<std::uint64_t>();
    auto imp = j.at("importances");
    for (int f = 0; f < 4; ++f) m.importances[f] = imp.at(f).get<double>();
    for (const auto& jt : j.at("trees")) {
        DecisionTree tree;
        tree.nodes.reserve(jt.size());
        for (const auto& jn : jt) {
            TreeNode n;
            n.feature = std::int16_t(jn.at(0).get<int>());
            n.value = jn.at(1).get<double>();
            n.right = jn.at(2).get<int>();
            tree.nodes.push_back(n);
        }
        m.trees.push_back(std::move(tree));
    }
    return m;
}

}  // namespace

void PairClassifier::save(const std::string& path) const {
    json j;
    if (const auto* rf = std::get_if<RandomForestModel>(&model_)) {
        j = forest_to_json(*rf);
    } else if (const auto* lr = std::get_if<LogisticRegressionModel>(&model_)) {
        j = json{{"format_version", 1},
                 {"kind", "logistic_regression"},
                 {"weights", lr->weights},
                 {"bias", lr->bias},
                 {"lambda", lr->lambda},
                 {"iterations", lr->iterations}};
    } else {
        const auto& nb = std::get<GaussianNbModel>(model_);
        j = json{{"format_version", 1},
                 {"kind", "gaussian_nb"},
                 {"log_prior", nb.log_prior},
                 {"mean", nb.mean},
                 {"var", nb.var}};
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("PairClassifier::save: cannot open " + path);
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("PairClassifier::save: write failed for " + path);
}

PairClassifier PairClassifier::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("PairClassifier::load: cannot open " + path);
    json j = json::parse(in);
    if (j.at("format_version").get<int>() != 1)
        throw std::runtime_error("PairClassifier::load: unsupported format_version");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "random_forest") return PairClassifier(forest_from_json(j));
    if (kind == "logistic_regression") {
        LogisticRegressionModel m;
        auto w = j.at("weights");
        for (int f = 0; f < 4; ++f) m.weights[f] = w.at(f).get<double>();
        m.bias = j.at("bias").get<double>();
        m.lambda = j.at("lambda").get<double>();
        m.iterations = j.at("iterations").get<int>();
        return PairClassifier(m);
    }
    if (kind == "gaussian_nb") {
        GaussianNbModel m;
        auto lp = j.at("log_prior");
        for (int c = 0; c < 2; ++c) m.log_prior[c] = lp.at(c).get<double>();
        for (int c = 0; c < 2; ++c) {
            for (int f = 0; f < 4; ++f) {
                m.mean[c][f] = j.at("mean").at(c).at(f).get<double>();
                m.var[c][f] = j.at("var").at(c).at(f).get<double>();
            }
        }
        return PairClassifier(m);
    }
    throw std::runtime_error("PairClassifier::load: unknown kind '" + kind + "'");
}

}  // namespace namegauge
