#include <stdexcept>

#include "doctest.h"
#include "namegauge/features.hpp"
#include "support.hpp"

using namespace namegauge;
using testsupport::inst;
using testsupport::record;

namespace {

Corpus two_paper_corpus() {
    Corpus c;
    c.records.push_back(record(
        "r1", "Clustering Networks", "KDD",
        {inst("r1", 0, "Brown", {"Charles"}, "a1", true), inst("r1", 1, "Smith", {"Alice"}),
         inst("r1", 2, "Jones", {"Bob"})}));
    c.records.push_back(record(
        "r2", "Clustering Networks", "KDD",
        {inst("r2", 0, "Brown", {"Charles"}, "a1", true), inst("r2", 1, "Smith", {"Alice"}),
         inst("r2", 2, "Davis", {"Carol"})}));
    return c;
}

}  // namespace

TEST_CASE("preprocess_title stems and drops stopwords") {
    const StopwordSet& sw = default_stopwords();
    CHECK(preprocess_title("The Clustering of Networks", sw) ==
          std::vector<std::string>{"cluster", "network"});
    CHECK(preprocess_title("", sw).empty());
    CHECK(preprocess_title("a the of", sw).empty());
    // punctuation inside tokens is stripped before stemming
    CHECK(preprocess_title("large-scale", sw) == std::vector<std::string>{"largescal"});
}

TEST_CASE("identical content scores 1 on every feature") {
    Corpus c = two_paper_corpus();
    // make r2 an exact content copy of r1
    c.records[1].authors[2] = inst("r2", 2, "Jones", {"Bob"});
    for (SimilarityScheme scheme :
         {SimilarityScheme::AllNGram, SimilarityScheme::Distinct1, SimilarityScheme::Distinct2}) {
        FeatureOptions opts;
        opts.scheme = scheme;
        FeatureContext ctx(c, opts);
        FeatureVector fv = ctx.pair("r1#0", "r2#0");
        CAPTURE(int(scheme));
        CHECK(fv.forename == doctest::Approx(1.0));
        CHECK(fv.coauthor == doctest::Approx(1.0));
        CHECK(fv.title == doctest::Approx(1.0));
        CHECK(fv.venue == doctest::Approx(1.0));
    }
}

TEST_CASE("missing data scores 0 on the affected feature") {
    Corpus c = two_paper_corpus();
    c.records[0].authors[0].forenames.clear();       // null forename on one side
    c.records[0].venue = "";                         // venue missing
    c.records[1].title = "of the";                   // all stopwords -> empty tokens
    c.records[1].authors.resize(1);                  // no coauthors on r2
    for (SimilarityScheme scheme :
         {SimilarityScheme::AllNGram, SimilarityScheme::Distinct1, SimilarityScheme::Distinct2}) {
        FeatureOptions opts;
        opts.scheme = scheme;
        FeatureContext ctx(c, opts);
        FeatureVector fv = ctx.pair("r1#0", "r2#0");
        CAPTURE(int(scheme));
        CHECK(fv.forename == 0.0);
        CHECK(fv.coauthor == 0.0);
        CHECK(fv.title == 0.0);
        CHECK(fv.venue == 0.0);
    }
}

TEST_CASE("initial against full forename has no shared grams") {
    Corpus c = two_paper_corpus();
    c.records[1].authors[0].forenames = {"C"};
    FeatureContext ctx(c);
    CHECK(ctx.pair("r1#0", "r2#0").forename == 0.0);
    // under Jaro-Winkler the single initial still matches the prefix
    FeatureOptions opts;
    opts.scheme = SimilarityScheme::Distinct2;
    FeatureContext ctx2(c, opts);
    CHECK(ctx2.pair("r1#0", "r2#0").forename > 0.0);
}

TEST_CASE("pooled coauthor similarity matches a hand-built profile") {
    Corpus c = two_paper_corpus();
    FeatureContext ctx(c);
    GramMultiset lhs = gram_add(char_ngrams("smith alice"), char_ngrams("jones bob"));
    GramMultiset rhs = gram_add(char_ngrams("smith alice"), char_ngrams("davis carol"));
    CHECK(ctx.pair("r1#0", "r2#0").coauthor == doctest::Approx(tf_cosine(lhs, rhs)));
}

TEST_CASE("greedy mean coauthor aggregation") {
    Corpus c = two_paper_corpus();
    FeatureOptions opts;
    opts.coauthor_agg = CoauthorAgg::Mean;
    FeatureContext ctx(c, opts);
    double cross = tf_cosine(char_ngrams("jones bob"), char_ngrams("davis carol"));
    CHECK(ctx.pair("r1#0", "r2#0").coauthor == doctest::Approx((1.0 + cross) / 2.0));

    // uneven lists divide by the larger count
    Corpus c2 = two_paper_corpus();
    c2.records[1].authors.resize(2);  // r2 keeps only focal + smith alice
    FeatureContext ctx2(c2, opts);
    CHECK(ctx2.pair("r1#0", "r2#0").coauthor == doctest::Approx((1.0 + 0.0) / 2.0));
}

TEST_CASE("distinct schemes use jaro winkler for coauthors") {
    Corpus c = two_paper_corpus();
    FeatureOptions opts;
    opts.scheme = SimilarityScheme::Distinct1;
    FeatureContext ctx(c, opts);
    double cross = jaro_winkler("jones bob", "davis carol");
    CHECK(ctx.pair("r1#0", "r2#0").coauthor == doctest::Approx((1.0 + cross) / 2.0));
}

TEST_CASE("distinct schemes switch the text features") {
    Corpus c = two_paper_corpus();
    c.records[1].title = "Clustering Graphs";
    // tokens: {cluster, network} vs {cluster, graph}
    FeatureOptions d1;
    d1.scheme = SimilarityScheme::Distinct1;
    FeatureContext ctx1(c, d1);
    CHECK(ctx1.pair("r1#0", "r2#0").title == doctest::Approx(0.5));
    FeatureOptions d2;
    d2.scheme = SimilarityScheme::Distinct2;
    FeatureContext ctx2(c, d2);
    CHECK(ctx2.pair("r1#0", "r2#0").title == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("features are symmetric in the pair") {
    Corpus c = two_paper_corpus();
    c.records[1].title = "Community Detection at Scale";
    c.records[1].venue = "WWW";
    for (SimilarityScheme scheme :
         {SimilarityScheme::AllNGram, SimilarityScheme::Distinct1, SimilarityScheme::Distinct2}) {
        for (CoauthorAgg agg : {CoauthorAgg::Pool, CoauthorAgg::Mean}) {
            FeatureOptions opts;
            opts.scheme = scheme;
            opts.coauthor_agg = agg;
            FeatureContext ctx(c, opts);
            FeatureVector ab = ctx.pair("r1#0", "r2#0");
            FeatureVector ba = ctx.pair("r2#0", "r1#0");
            CHECK(ab.forename == doctest::Approx(ba.forename));
            CHECK(ab.coauthor == doctest::Approx(ba.coauthor));
            CHECK(ab.title == doctest::Approx(ba.title));
            CHECK(ab.venue == doctest::Approx(ba.venue));
        }
    }
}

TEST_CASE("free pair_features agrees with the context") {
    Corpus c = two_paper_corpus();
    FeatureContext ctx(c);
    FeatureVector via_ctx = ctx.pair("r1#0", "r2#0");
    FeatureVector direct = pair_features(c.records[0].authors[0], c.records[0],
                                         c.records[1].authors[0], c.records[1]);
    CHECK(via_ctx.forename == doctest::Approx(direct.forename));
    CHECK(via_ctx.coauthor == doctest::Approx(direct.coauthor));
    CHECK(via_ctx.title == doctest::Approx(direct.title));
    CHECK(via_ctx.venue == doctest::Approx(direct.venue));
}

TEST_CASE("ownership violations throw") {
    Corpus c = two_paper_corpus();
    FeatureContext ctx(c);
    CHECK_THROWS_AS(ctx.pair("r1#0", "zzz#9"), std::out_of_range);
    CHECK_THROWS_AS(pair_features(c.records[0].authors[0], c.records[1],
                                  c.records[1].authors[0], c.records[0]),
                    std::invalid_argument);
}

TEST_CASE("feature values stay in the unit interval") {
    Corpus c = two_paper_corpus();
    c.records[1].title = "Partially overlapping clustering title";
    c.records[1].venue = "KDD Workshops";
    for (SimilarityScheme scheme :
         {SimilarityScheme::AllNGram, SimilarityScheme::Distinct1, SimilarityScheme::Distinct2}) {
        FeatureOptions opts;
        opts.scheme = scheme;
        FeatureContext ctx(c, opts);
        FeatureVector fv = ctx.pair("r1#0", "r2#0");
        for (double v : fv.as_array()) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("shipped stopword file matches the built-in list") {
    StopwordSet from_file = load_stopwords(NAMEGAUGE_DATA_DIR "/stopwords.txt");
    CHECK(from_file == default_stopwords());
}

TEST_CASE("load_stopwords skips comments and blank lines") {
    StopwordSet s = load_stopwords(NAMEGAUGE_DATA_DIR "/stopwords.txt");
    CHECK(s.count("the") == 1);
    CHECK(s.count("#") == 0);
    CHECK(s.count("") == 0);
    CHECK_THROWS_AS(load_stopwords("/nonexistent/stopwords.txt"), std::runtime_error);
}
