#include "namegauge/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

#include "namegauge/rng.hpp"

namespace namegauge {

namespace {

// floor with a guard for ratios like 0.3 that are not exact in binary.
std::size_t floor_count(double fraction, std::size_t n) {
    return static_cast<std::size_t>(std::floor(fraction * double(n) + 1e-9));
}

void initialize_instance(NameInstance& inst) {
    for (auto& tok : inst.forenames) {
        std::string first = first_alpha_utf8(tok);
        if (!first.empty()) tok = first;
    }
}

// Letters of the token, in order, as UTF-8 substrings.
std::vector<std::string> token_letters(const std::string& tok) {
    std::vector<std::string> letters;
    std::size_t i = 0;
    while (i < tok.size()) {
        std::size_t start = i;
        unsigned char c = static_cast<unsigned char>(tok[i]);
        std::size_t len = c < 0x80 ? 1 : (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3 : 4;
        i = std::min(tok.size(), i + len);
        std::string piece = tok.substr(start, i - start);
        if (!first_alpha_utf8(piece).empty()) letters.push_back(piece);
    }
    return letters;
}

}  // namespace

Corpus apply_full_ratio(const Corpus& corpus, double ratio, std::uint64_t seed,
                        RatioScope scope) {
    if (ratio < 0.0 || ratio > 1.0)
        throw std::invalid_argument("apply_full_ratio: ratio must be in [0,1]");
    // Collect the eligible instances and order them by a per-instance hash
    // keyed only on (seed, instance_id), so the survivor set at a lower
    // ratio is always a subset of the one at a higher ratio.
    struct Eligible {
        std::uint64_t key;
        std::size_t rec;
        std::size_t pos;
    };
    std::uint64_t stream = mix_seed(seed, SALT_RATIO);
    std::vector<Eligible> eligible;
    for (std::size_t r = 0; r < corpus.records.size(); ++r) {
        const auto& rec = corpus.records[r];
        for (std::size_t p = 0; p < rec.authors.size(); ++p) {
            const auto& inst = rec.authors[p];
            if (scope == RatioScope::Focal && !inst.focal) continue;
            if (forename_string_type(inst) != ForenameStringType::OneOrMoreFull) continue;
            eligible.push_back({item_key(stream, inst.instance_id), r, p});
        }
    }
    std::sort(eligible.begin(), eligible.end(), [](const Eligible& a, const Eligible& b) {
        return a.key < b.key;
    });
    std::size_t keep = floor_count(ratio, eligible.size());
    Corpus out = corpus;
    for (std::size_t i = keep; i < eligible.size(); ++i)
        initialize_instance(out.records[eligible[i].rec].authors[eligible[i].pos]);
    return out;
}

Corpus truncate_forenames(const Corpus& corpus, int n) {
    if (n < 1) throw std::invalid_argument("truncate_forenames: n must be >= 1");
    Corpus out = corpus;
    for (auto& rec : out.records) {
        for (auto& inst : rec.authors) {
            int budget = n;
            std::vector<std::string> kept;
            for (const auto& tok : inst.forenames) {
                if (budget <= 0) break;
                std::string piece;
                for (const auto& letter : token_letters(tok)) {
                    if (budget <= 0) break;
                    piece += letter;
                    --budget;
                }
                if (!piece.empty()) kept.push_back(std::move(piece));
            }
            inst.forenames = std::move(kept);
        }
    }
    return out;
}

std::pair<Corpus, Corpus> split_train_test(const Corpus& corpus, double fraction,
                                           std::uint64_t seed) {
    if (fraction < 0.0 || fraction > 1.0)
        throw std::invalid_argument("split_train_test: fraction must be in [0,1]");
    struct Focal {
        std::uint64_t key;
        const std::string* id;
    };
    std::uint64_t stream = mix_seed(seed, SALT_SPLIT);
    std::vector<Focal> focal;
    for (const auto& rec : corpus.records)
        for (const auto& inst : rec.authors)
            if (inst.focal) focal.push_back({item_key(stream, inst.instance_id), &inst.instance_id});
    std::sort(focal.begin(), focal.end(), [](const Focal& a, const Focal& b) {
        if (a.key != b.key) return a.key < b.key;
        return *a.id < *b.id;
    });
    std::size_t n_train = floor_count(fraction, focal.size());
    std::set<std::string> train_ids;
    for (std::size_t i = 0; i < n_train; ++i) train_ids.insert(*focal[i].id);

    auto build = [&](bool train_side) {
        Corpus side;
        for (const auto& rec : corpus.records) {
            bool owns = false;
            for (const auto& inst : rec.authors)
                if (inst.focal && train_ids.count(inst.instance_id) == train_side) owns = true;
            if (!owns) continue;
            Record copy = rec;
            for (auto& inst : copy.authors)
                if (inst.focal && train_ids.count(inst.instance_id) != train_side)
                    inst.focal = false;
            side.records.push_back(std::move(copy));
        }
        return side;
    };
    return {build(true), build(false)};
}

std::vector<NgramProfileRow> cumulative_ngram_profile(const Corpus& corpus) {
    std::size_t total = 0;
    std::array<std::size_t, 11> upto{};
    for (const auto& rec : corpus.records) {
        for (const auto& inst : rec.authors) {
            if (inst.forenames.empty()) continue;
            ++total;
            std::size_t letters = 0;
            for (const auto& tok : inst.forenames) letters += token_letters(tok).size();
            for (int n = 1; n <= 10; ++n)
                if (letters <= static_cast<std::size_t>(n)) ++upto[n];
        }
    }
    std::vector<NgramProfileRow> rows;
    rows.reserve(10);
    for (int n = 1; n <= 10; ++n)
        rows.push_back({n, total ? double(upto[n]) / double(total) : 0.0});
    return rows;
}

}  // namespace namegauge
