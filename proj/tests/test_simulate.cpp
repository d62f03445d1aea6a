#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "namegauge/simulate.hpp"
#include "support.hpp"

using namespace namegauge;
using testsupport::inst;
using testsupport::record;

namespace {

Corpus full_forename_corpus(int n) {
    Corpus c;
    for (int i = 0; i < n; ++i) {
        std::string rid = "r" + std::to_string(1000 + i);
        c.records.push_back(record(
            rid, "t", "v",
            {inst(rid, 0, "Kim", {"Minjae", "Soo"}, "a1", true)}));
    }
    return c;
}

std::vector<std::string> kept_ids(const Corpus& c) {
    std::vector<std::string> out;
    for (const auto& r : c.records)
        for (const auto& a : r.authors)
            if (forename_string_type(a) == ForenameStringType::OneOrMoreFull)
                out.push_back(a.instance_id);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("apply_full_ratio keeps the floor count") {
    Corpus c = full_forename_corpus(10);
    CHECK(kept_ids(apply_full_ratio(c, 0.0, 7)).size() == 0);
    CHECK(kept_ids(apply_full_ratio(c, 0.3, 7)).size() == 3);
    CHECK(kept_ids(apply_full_ratio(c, 0.5, 7)).size() == 5);
    CHECK(kept_ids(apply_full_ratio(c, 1.0, 7)).size() == 10);
    // floor, not round: 0.19 of 10 keeps 1
    CHECK(kept_ids(apply_full_ratio(c, 0.19, 7)).size() == 1);
}

TEST_CASE("apply_full_ratio survivors are nested as the ratio rises") {
    Corpus c = full_forename_corpus(20);
    std::vector<std::string> prev;
    for (double ratio : {0.1, 0.2, 0.5, 0.7, 1.0}) {
        std::vector<std::string> cur = kept_ids(apply_full_ratio(c, ratio, 99));
        CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
        prev = cur;
    }
}

TEST_CASE("apply_full_ratio initializes the losers tokenwise") {
    Corpus c = full_forename_corpus(1);
    Corpus out = apply_full_ratio(c, 0.0, 1);
    const NameInstance& a = out.records[0].authors[0];
    CHECK(a.forenames == std::vector<std::string>{"M", "S"});
    CHECK(forename_string_type(a) == ForenameStringType::AllInitialized);
    // surname and labels untouched
    CHECK(a.surname == "Kim");
    CHECK(a.author_label == "a1");
}

TEST_CASE("apply_full_ratio is deterministic and seed sensitive") {
    Corpus c = full_forename_corpus(30);
    CHECK(kept_ids(apply_full_ratio(c, 0.4, 5)) == kept_ids(apply_full_ratio(c, 0.4, 5)));
    CHECK(kept_ids(apply_full_ratio(c, 0.4, 5)) != kept_ids(apply_full_ratio(c, 0.4, 6)));
}

TEST_CASE("apply_full_ratio focal scope leaves coauthors alone") {
    Corpus c;
    c.records.push_back(record("r1", "t", "v",
                               {inst("r1", 0, "Kim", {"Minjae"}, "a1", true),
                                inst("r1", 1, "Lee", {"Hana"})}));
    Corpus out = apply_full_ratio(c, 0.0, 3, RatioScope::Focal);
    CHECK(out.records[0].authors[0].forenames == std::vector<std::string>{"M"});
    CHECK(out.records[0].authors[1].forenames == std::vector<std::string>{"Hana"});
    Corpus all = apply_full_ratio(c, 0.0, 3, RatioScope::All);
    CHECK(all.records[0].authors[1].forenames == std::vector<std::string>{"H"});
}

TEST_CASE("apply_full_ratio rejects out-of-range ratios") {
    Corpus c = full_forename_corpus(2);
    CHECK_THROWS_AS(apply_full_ratio(c, -0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(apply_full_ratio(c, 1.5, 0), std::invalid_argument);
}

TEST_CASE("truncate_forenames keeps the first n letters across tokens") {
    Corpus c;
    c.records.push_back(record("r1", "t", "v",
                               {inst("r1", 0, "Brown", {"Charles", "Cha"}, "a1", true)}));
    auto forenames_at = [](const Corpus& out) { return out.records[0].authors[0].forenames; };
    CHECK(forenames_at(truncate_forenames(c, 1)) == std::vector<std::string>{"C"});
    CHECK(forenames_at(truncate_forenames(c, 3)) == std::vector<std::string>{"Cha"});
    CHECK(forenames_at(truncate_forenames(c, 8)) == std::vector<std::string>{"Charles", "C"});
    CHECK(forenames_at(truncate_forenames(c, 10)) ==
          std::vector<std::string>{"Charles", "Cha"});
    CHECK(forenames_at(truncate_forenames(c, 100)) ==
          std::vector<std::string>{"Charles", "Cha"});
}

TEST_CASE("truncate_forenames strips non-letters before counting") {
    Corpus c;
    c.records.push_back(record("r1", "t", "v",
                               {inst("r1", 0, "Brown", {"C.-H.", "O'Neil"}, "a1", true)}));
    auto out = truncate_forenames(c, 3);
    CHECK(out.records[0].authors[0].forenames == std::vector<std::string>{"CH", "O"});
    CHECK_THROWS_AS(truncate_forenames(c, 0), std::invalid_argument);
}

TEST_CASE("split_train_test partitions focal instances") {
    Corpus c = full_forename_corpus(10);
    auto [train, test] = split_train_test(c, 0.5, 17);
    auto count_focal = [](const Corpus& k) {
        std::size_t n = 0;
        for (const auto& r : k.records)
            for (const auto& a : r.authors) n += a.focal;
        return n;
    };
    CHECK(count_focal(train) == 5);
    CHECK(count_focal(test) == 5);
    // the union of focal ids is the original set, disjointly
    std::set<std::string> seen;
    for (const Corpus* side : {&train, &test})
        for (const auto& r : side->records)
            for (const auto& a : r.authors)
                if (a.focal) CHECK(seen.insert(a.instance_id).second);
    CHECK(seen.size() == 10);
    // deterministic
    auto [train2, test2] = split_train_test(c, 0.5, 17);
    CHECK(count_focal(train2) == 5);
    CHECK(train2.records.size() == train.records.size());
}

TEST_CASE("split keeps shared records on both sides with demotion") {
    // one record owning two focal instances that land on opposite sides
    Corpus c;
    c.records.push_back(record("r1", "t", "v",
                               {inst("r1", 0, "Kim", {"A"}, "a1", true),
                                inst("r1", 1, "Lee", {"B"}, "a2", true)}));
    for (int i = 0; i < 8; ++i) {
        std::string rid = "s" + std::to_string(i);
        c.records.push_back(record(rid, "t", "v",
                                   {inst(rid, 0, "Park", {"C"}, "a3", true)}));
    }
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto [train, test] = split_train_test(c, 0.5, seed);
        auto find_r1 = [](const Corpus& k) -> const Record* {
            for (const auto& r : k.records)
                if (r.record_id == "r1") return &r;
            return nullptr;
        };
        const Record* tr = find_r1(train);
        const Record* te = find_r1(test);
        bool tr_has_focal = false, te_has_focal = false;
        if (tr)
            for (const auto& a : tr->authors) tr_has_focal |= a.focal;
        if (te)
            for (const auto& a : te->authors) te_has_focal |= a.focal;
        if (tr && te) {
            // r1's two focal instances were split across the sides; each
            // copy keeps both author mentions but only one stays focal
            CHECK(tr->authors.size() == 2);
            CHECK(te->authors.size() == 2);
            CHECK(tr_has_focal);
            CHECK(te_has_focal);
            int tr_focal = int(tr->authors[0].focal) + int(tr->authors[1].focal);
            int te_focal = int(te->authors[0].focal) + int(te->authors[1].focal);
            CHECK(tr_focal == 1);
            CHECK(te_focal == 1);
        }
    }
}

TEST_CASE("split fraction bounds") {
    Corpus c = full_forename_corpus(4);
    CHECK_THROWS_AS(split_train_test(c, -0.2, 0), std::invalid_argument);
    CHECK_THROWS_AS(split_train_test(c, 1.2, 0), std::invalid_argument);
}

TEST_CASE("cumulative ngram profile") {
    Corpus c;
    c.records.push_back(record("r1", "t", "v", {inst("r1", 0, "A", {"Jo"}, "x", true)}));
    c.records.push_back(record("r2", "t", "v", {inst("r2", 0, "B", {"Drew"}, "x", true)}));
    c.records.push_back(record("r3", "t", "v", {inst("r3", 0, "C", {"Imogen"}, "x", true)}));
    c.records.push_back(record("r4", "t", "v", {inst("r4", 0, "D", {}, "x", true)}));
    std::vector<NgramProfileRow> rows = cumulative_ngram_profile(c);
    REQUIRE(rows.size() == 10);
    // lengths 2, 4, 6 over the three non-null instances
    CHECK(rows[0].fraction == doctest::Approx(0.0));       // n=1
    CHECK(rows[1].fraction == doctest::Approx(1.0 / 3.0)); // n=2
    CHECK(rows[3].fraction == doctest::Approx(2.0 / 3.0)); // n=4
    CHECK(rows[5].fraction == doctest::Approx(1.0));       // n=6
    CHECK(rows[9].fraction == doctest::Approx(1.0));       // n=10
    CHECK(rows[9].n == 10);
}
