#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "namegauge/evaluate.hpp"

using namespace namegauge;

namespace {

Clustering from_labels(const std::vector<int>& labels) {
    Clustering c;
    for (std::size_t i = 0; i < labels.size(); ++i)
        c.assignment["i" + std::to_string(i)] = "c" + std::to_string(labels[i]);
    return c;
}

}  // namespace

TEST_CASE("b3 hand-checked example") {
    // predicted {0,1} {2,3,4}; truth {0,1,2} {3,4}
    Clustering pred = from_labels({1, 1, 2, 2, 2});
    Clustering truth = from_labels({1, 1, 1, 2, 2});
    B3Score s = b3(pred, truth);
    CHECK(s.precision == doctest::Approx(11.0 / 15.0));
    CHECK(s.recall == doctest::Approx(11.0 / 15.0));
    CHECK(s.f1 == doctest::Approx(11.0 / 15.0));
}

TEST_CASE("b3 extremes") {
    Clustering truth = from_labels({1, 1, 1, 2, 2});
    CHECK(b3(truth, truth).f1 == doctest::Approx(1.0));
    // all singletons: precision 1, recall = mean of 1/|truth cluster|
    Clustering singles = from_labels({0, 1, 2, 3, 4});
    B3Score s = b3(singles, truth);
    CHECK(s.precision == doctest::Approx(1.0));
    CHECK(s.recall == doctest::Approx((3 * (1.0 / 3.0) + 2 * (1.0 / 2.0)) / 5.0));
    // one giant cluster: recall 1
    Clustering lump = from_labels({7, 7, 7, 7, 7});
    B3Score t = b3(lump, truth);
    CHECK(t.recall == doctest::Approx(1.0));
    CHECK(t.precision == doctest::Approx((3 * (3.0 / 5.0) + 2 * (2.0 / 5.0)) / 5.0));
}

TEST_CASE("b3 agrees with the brute-force oracle on random partitions") {
    std::uint64_t state = 77;
    auto next = [&]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 33;
    };
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n = 1 + next() % 40;
        std::vector<int> pl(n), tl(n);
        std::uint64_t kp = 1 + next() % 8, kt = 1 + next() % 8;
        for (std::size_t i = 0; i < n; ++i) {
            pl[i] = int(next() % kp);
            tl[i] = int(next() % kt);
        }
        Clustering pred = from_labels(pl);
        Clustering truth = from_labels(tl);
        B3Score fast = b3(pred, truth);
        B3Score slow = b3_bruteforce(pred, truth);
        CHECK(fast.precision == doctest::Approx(slow.precision).epsilon(1e-12));
        CHECK(fast.recall == doctest::Approx(slow.recall).epsilon(1e-12));
        CHECK(fast.f1 == doctest::Approx(slow.f1).epsilon(1e-12));
        // swapping the roles swaps precision and recall
        B3Score rev = b3(truth, pred);
        CHECK(rev.precision == doctest::Approx(fast.recall).epsilon(1e-12));
        CHECK(rev.recall == doctest::Approx(fast.precision).epsilon(1e-12));
    }
}

TEST_CASE("b3 coverage mismatch throws with the missing ids") {
    Clustering pred = from_labels({1, 1});
    Clustering truth = from_labels({1, 1, 2});
    CHECK_THROWS_WITH_AS(b3(pred, truth), doctest::Contains("i2"), std::invalid_argument);
    CHECK_THROWS_AS(b3(truth, pred), std::invalid_argument);
    Clustering empty;
    CHECK_THROWS_AS(b3(empty, empty), std::invalid_argument);
}

TEST_CASE("b3_labels matches the string api") {
    std::vector<int> pl = {0, 0, 1, 1, 2};
    std::vector<int> tl = {0, 1, 1, 1, 2};
    B3Score a = detail::b3_labels(pl, tl);
    B3Score b = b3(from_labels(pl), from_labels(tl));
    CHECK(a.precision == doctest::Approx(b.precision).epsilon(1e-12));
    CHECK(a.recall == doctest::Approx(b.recall).epsilon(1e-12));
    CHECK_THROWS_AS(detail::b3_labels({0, 1}, {0}), std::invalid_argument);
}

TEST_CASE("mean_scores computes mean and sample stddev") {
    std::vector<B3Score> scores = {{0.5, 0.6, 0.7}, {0.7, 0.8, 0.9}};
    ScoreStats st = mean_scores(scores);
    CHECK(st.mean.precision == doctest::Approx(0.6));
    CHECK(st.mean.recall == doctest::Approx(0.7));
    CHECK(st.mean.f1 == doctest::Approx(0.8));
    // sample stddev with n-1 = 1: |x - mean| * sqrt(2) ... = 0.1414
    CHECK(st.stddev.f1 == doctest::Approx(0.1414213562).epsilon(1e-6));
    std::vector<B3Score> one = {{0.5, 0.5, 0.5}};
    CHECK(mean_scores(one).stddev.precision == 0.0);
    std::vector<B3Score> none;
    CHECK_THROWS_AS(mean_scores(none), std::invalid_argument);
}
