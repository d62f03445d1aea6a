#include "namegauge/features.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

#include "namegauge/porter.hpp"

namespace namegauge {

std::vector<std::string> preprocess_title(std::string_view title, const StopwordSet& stopwords) {
    std::string norm = normalize_text(title);
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < norm.size()) {
        while (i < norm.size() && norm[i] == ' ') ++i;
        std::size_t j = i;
        while (j < norm.size() && norm[j] != ' ') ++j;
        if (j > i) {
            std::string tok;
            for (std::size_t k = i; k < j; ++k) {
                unsigned char c = static_cast<unsigned char>(norm[k]);
                if (std::isalnum(c)) tok.push_back(static_cast<char>(c));
            }
            if (!tok.empty() && !stopwords.count(tok)) out.push_back(porter_stem(tok));
        }
        i = j;
    }
    return out;
}

namespace {

struct RecordShared {
    std::vector<std::string> title_tokens;
    GramMultiset title_grams;
    std::string venue;
    std::vector<std::string> venue_tokens;
    GramMultiset venue_grams;
    std::vector<std::string> author_names;
    std::vector<GramMultiset> author_name_grams;
    GramMultiset all_author_grams;
};

struct InstanceSide {
    const RecordShared* rec = nullptr;
    std::size_t author_pos = 0;
    std::string forename;
    GramMultiset forename_grams;
    GramMultiset coauthor_pooled;
};

std::vector<std::string> split_spaces(const std::string& s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

RecordShared build_record_shared(const Record& rec, const FeatureOptions& opts) {
    RecordShared rs;
    rs.title_tokens = preprocess_title(rec.title, opts.stopword_set());
    std::string joined;
    for (const auto& t : rs.title_tokens) {
        if (!joined.empty()) joined.push_back(' ');
        joined += t;
    }
    rs.title_grams = char_ngrams(joined);
    rs.venue = normalize_text(rec.venue);
    rs.venue_tokens = split_spaces(rs.venue);
    rs.venue_grams = char_ngrams(rs.venue);
    rs.author_names.reserve(rec.authors.size());
    rs.author_name_grams.reserve(rec.authors.size());
    for (const auto& a : rec.authors) {
        rs.author_names.push_back(full_name_string(a));
        rs.author_name_grams.push_back(char_ngrams(rs.author_names.back()));
        rs.all_author_grams = gram_add(rs.all_author_grams, rs.author_name_grams.back());
    }
    return rs;
}

InstanceSide build_instance_side(const RecordShared& rs, std::size_t pos) {
    InstanceSide side;
    side.rec = &rs;
    side.author_pos = pos;
    side.coauthor_pooled = gram_subtract(rs.all_author_grams, rs.author_name_grams[pos]);
    return side;
}

// Greedy one-to-one matching: repeatedly take the highest-scoring
// unmatched pair; unmatched entries contribute 0 via the max(|A|,|B|)
// denominator.
template <typename Score>
double greedy_match_mean(std::size_t na, std::size_t nb, Score&& score) {
    if (na == 0 || nb == 0) return 0.0;
    std::vector<double> s(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) s[i * nb + j] = score(i, j);
    std::vector<bool> used_a(na, false), used_b(nb, false);
    std::size_t rounds = std::min(na, nb);
    double total = 0.0;
    for (std::size_t r = 0; r < rounds; ++r) {
        double best = -1.0;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < na; ++i) {
            if (used_a[i]) continue;
            for (std::size_t j = 0; j < nb; ++j) {
                if (used_b[j]) continue;
                if (s[i * nb + j] > best) {
                    best = s[i * nb + j];
                    bi = i;
                    bj = j;
                }
            }
        }
        used_a[bi] = true;
        used_b[bj] = true;
        total += best;
    }
    return total / double(std::max(na, nb));
}

double coauthor_similarity(const InstanceSide& a, const InstanceSide& b,
                           const FeatureOptions& opts) {
    std::size_t na = a.rec->author_names.size() - 1;
    std::size_t nb = b.rec->author_names.size() - 1;
    if (na == 0 || nb == 0) return 0.0;
    auto coauthor_at = [](const InstanceSide& s, std::size_t i) {
        return i < s.author_pos ? i : i + 1;
    };
    switch (opts.scheme) {
        case SimilarityScheme::AllNGram:
            if (opts.coauthor_agg == CoauthorAgg::Pool)
                return tf_cosine(a.coauthor_pooled, b.coauthor_pooled);
            return greedy_match_mean(na, nb, [&](std::size_t i, std::size_t j) {
                return tf_cosine(a.rec->author_name_grams[coauthor_at(a, i)],
                                 b.rec->author_name_grams[coauthor_at(b, j)]);
            });
        case SimilarityScheme::Distinct1:
        case SimilarityScheme::Distinct2:
            return greedy_match_mean(na, nb, [&](std::size_t i, std::size_t j) {
                return jaro_winkler(a.rec->author_names[coauthor_at(a, i)],
                                    b.rec->author_names[coauthor_at(b, j)]);
            });
    }
    return 0.0;
}

FeatureVector pair_from_sides(const InstanceSide& a, const InstanceSide& b,
                              const FeatureOptions& opts) {
    FeatureVector fv;
    if (!a.forename.empty() && !b.forename.empty()) {
        switch (opts.scheme) {
            case SimilarityScheme::AllNGram:
            case SimilarityScheme::Distinct1:
                fv.forename = tf_cosine(a.forename_grams, b.forename_grams);
                break;
            case SimilarityScheme::Distinct2:
                fv.forename = jaro_winkler(a.forename, b.forename);
                break;
        }
    }
    fv.coauthor = coauthor_similarity(a, b, opts);
    if (!a.rec->title_tokens.empty() && !b.rec->title_tokens.empty()) {
        switch (opts.scheme) {
            case SimilarityScheme::AllNGram:
                fv.title = tf_cosine(a.rec->title_grams, b.rec->title_grams);
                break;
            case SimilarityScheme::Distinct1:
                fv.title = token_cosine(a.rec->title_tokens, b.rec->title_tokens);
                break;
            case SimilarityScheme::Distinct2:
                fv.title = token_jaccard(a.rec->title_tokens, b.rec->title_tokens);
                break;
        }
    }
    if (!a.rec->venue.empty() && !b.rec->venue.empty()) {
        switch (opts.scheme) {
            case SimilarityScheme::AllNGram:
                fv.venue = tf_cosine(a.rec->venue_grams, b.rec->venue_grams);
                break;
            case SimilarityScheme::Distinct1:
                fv.venue = token_cosine(a.rec->venue_tokens, b.rec->venue_tokens);
                break;
            case SimilarityScheme::Distinct2:
                fv.venue = token_jaccard(a.rec->venue_tokens, b.rec->venue_tokens);
                break;
        }
    }
    return fv;
}

InstanceSide make_side(const RecordShared& rs, const NameInstance& inst, std::size_t pos) {
    InstanceSide side = build_instance_side(rs, pos);
    side.forename = forename_string(inst);
    side.forename_grams = char_ngrams(side.forename);
    return side;
}

}  // namespace

FeatureVector pair_features(const NameInstance& a, const Record& ra,
                            const NameInstance& b, const Record& rb,
                            const FeatureOptions& opts) {
    auto find_pos = [](const NameInstance& inst, const Record& rec) -> std::size_t {
        for (std::size_t i = 0; i < rec.authors.size(); ++i)
            if (rec.authors[i].instance_id == inst.instance_id) return i;
        throw std::invalid_argument("pair_features: instance " + inst.instance_id +
                                    " is not an author of record " + rec.record_id);
    };
    RecordShared rsa = build_record_shared(ra, opts);
    RecordShared rsb = build_record_shared(rb, opts);
    InstanceSide sa = make_side(rsa, a, find_pos(a, ra));
    InstanceSide sb = make_side(rsb, b, find_pos(b, rb));
    return pair_from_sides(sa, sb, opts);
}

struct FeatureContext::Impl {
    FeatureOptions opts;
    CorpusIndex index;
    std::vector<RecordShared> records;
    std::unordered_map<std::string, InstanceSide> sides;

    Impl(const Corpus& corpus, FeatureOptions o) : opts(o), index(corpus) {
        records.reserve(corpus.records.size());
        for (const auto& rec : corpus.records)
            records.push_back(build_record_shared(rec, opts));
        for (std::size_t r = 0; r < corpus.records.size(); ++r) {
            const auto& rec = corpus.records[r];
            for (std::size_t p = 0; p < rec.authors.size(); ++p)
                sides.emplace(rec.authors[p].instance_id,
                              make_side(records[r], rec.authors[p], p));
        }
    }

    const InstanceSide& side(const std::string& id) const {
        auto it = sides.find(id);
        if (it == sides.end())
            throw std::out_of_range("FeatureContext: unknown instance_id " + id);
        return it->second;
    }
};

FeatureContext::FeatureContext(const Corpus& corpus, FeatureOptions opts)
    : impl_(std::make_unique<Impl>(corpus, opts)) {}

FeatureContext::~FeatureContext() = default;
FeatureContext::FeatureContext(FeatureContext&&) noexcept = default;
FeatureContext& FeatureContext::operator=(FeatureContext&&) noexcept = default;

FeatureVector FeatureContext::pair(const std::string& id_a, const std::string& id_b) const {
    return pair_from_sides(impl_->side(id_a), impl_->side(id_b), impl_->opts);
}

const FeatureOptions& FeatureContext::options() const { return impl_->opts; }

}  // namespace namegauge
