#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "namegauge/corpus.hpp"
#include "namegauge/similarity.hpp"
#include "namegauge/stopwords.hpp"

namespace namegauge {

// AllNGram compares raw character n-gram profiles; Distinct1 switches the
// name fields to string distance and the text fields to token cosine;
// Distinct2 uses token Jaccard for the text fields instead.
enum class SimilarityScheme { AllNGram, Distinct1, Distinct2 };

// How coauthor evidence is combined under AllNGram: one pooled n-gram
// profile per side, or a greedy one-to-one matching of per-coauthor
// cosines averaged over max(|A|,|B|).
enum class CoauthorAgg { Pool, Mean };

struct FeatureVector {
    double forename = 0.0;
    double coauthor = 0.0;
    double title = 0.0;
    double venue = 0.0;

    std::array<double, 4> as_array() const { return {forename, coauthor, title, venue}; }
};

inline constexpr std::array<const char*, 4> kFeatureNames = {"forename", "coauthor",
                                                             "title", "venue"};

struct FeatureOptions {
    SimilarityScheme scheme = SimilarityScheme::AllNGram;
    CoauthorAgg coauthor_agg = CoauthorAgg::Pool;
    const StopwordSet* stopwords = nullptr;  // null = built-in list

    const StopwordSet& stopword_set() const {
        return stopwords ? *stopwords : default_stopwords();
    }
};

// normalize, split, drop stopwords, Porter-stem. Punctuation is stripped
// from each token before the stopword and stemming passes.
std::vector<std::string> preprocess_title(std::string_view title, const StopwordSet& stopwords);

// All four similarities for one candidate pair, computed directly from the
// instances and their records. Missing data on either side scores 0.
FeatureVector pair_features(const NameInstance& a, const Record& ra,
                            const NameInstance& b, const Record& rb,
                            const FeatureOptions& opts = {});

// Precomputed per-corpus state so blocks of pairs can be scored without
// re-deriving token lists and n-gram profiles for every pair.
class FeatureContext {
  public:
    FeatureContext(const Corpus& corpus, FeatureOptions opts = {});
    ~FeatureContext();
    FeatureContext(FeatureContext&&) noexcept;
    FeatureContext& operator=(FeatureContext&&) noexcept;

    FeatureVector pair(const std::string& instance_id_a, const std::string& instance_id_b) const;

    const FeatureOptions& options() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace namegauge
