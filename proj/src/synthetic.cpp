#include "namegauge/synthetic.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>

#include "namegauge/rng.hpp"

namespace namegauge {

namespace {

// Stateless draws: every value is a hash of (seed, tag, indices), so the
// output is independent of generation order.
struct SynthRand {
    std::uint64_t base;

    std::uint64_t operator()(std::string_view tag, std::uint64_t i, std::uint64_t j = 0) const {
        std::uint64_t h = base ^ fnv1a64(tag);
        h = splitmix64(h + 0x9e3779b97f4a7c15ULL * (i + 1));
        return splitmix64(h + 0xc2b2ae3d27d4eb4fULL * (j + 1));
    }
};

std::string base26(std::uint64_t k, int width) {
    std::string out(width, 'a');
    for (int i = width - 1; i >= 0; --i) {
        out[i] = char('a' + k % 26);
        k /= 26;
    }
    return out;
}

std::string zero_pad(std::uint64_t k, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*llu", width, static_cast<unsigned long long>(k));
    return buf;
}

const std::array<const char*, 24> kCommonWords = {
    "analysis", "method",   "model",    "network",  "system",   "data",
    "graph",    "learning", "approach", "theory",   "dynamic",  "optimal",
    "structure", "design",  "inference", "process", "random",   "spectral",
    "robust",   "efficient", "parallel", "quantum", "neural",   "statistical",
};

}  // namespace

const char* synth_profile_name(SynthProfile profile) {
    switch (profile) {
        case SynthProfile::ForenameSeparable: return "forename-separable";
        case SynthProfile::PureHomonym: return "pure-homonym";
        case SynthProfile::Mixed: return "mixed";
    }
    return "?";
}

Corpus generate_synthetic(const SynthConfig& config) {
    if (config.authors < 1 || config.papers_per_author < 1 || config.authors_per_block < 1)
        throw std::invalid_argument("generate_synthetic: counts must be positive");
    SynthRand rnd{mix_seed(config.seed, SALT_SYNTH)};

    const int n_authors = config.authors;
    const int per_block = config.authors_per_block;
    const int n_coauthors = std::max(24, n_authors / 2);
    const int n_topics = 2 * n_authors + 6;
    const int n_venues = std::max(6, n_authors / 10);

    // Coauthor identities: full single-token forenames of 2..6 letters.
    std::vector<std::string> co_surname(n_coauthors), co_forename(n_coauthors);
    for (int k = 0; k < n_coauthors; ++k) {
        co_surname[k] = "co" + base26(k, 3);
        int len = 2 + int(rnd("colen", k) % 5);
        std::string f;
        for (int t = 0; t < len; ++t) f.push_back(char('a' + rnd("colet", k, t) % 26));
        co_forename[k] = f;
    }

    auto author_forename = [&](int a) {
        int block = a / per_block;
        int slot = a % per_block;
        char initial = char('a' + block % 26);
        bool homonym;
        switch (config.profile) {
            case SynthProfile::ForenameSeparable: homonym = false; break;
            case SynthProfile::PureHomonym: homonym = true; break;
            default: homonym = rnd("blockmode", block) % 2 == 0; break;
        }
        if (homonym) return std::string(1, initial) + "aa";
        std::string f = std::string(1, initial) + base26(slot, 2);
        int pad = int(rnd("padlen", a) % 3);
        f.append(pad, char('a' + slot % 26));
        return f;
    };

    Corpus corpus;
    corpus.records.reserve(std::size_t(n_authors) * config.papers_per_author);
    std::uint64_t record_counter = 0;
    for (int a = 0; a < n_authors; ++a) {
        int block = a / per_block;
        std::string surname = "sur" + base26(block, 3);
        std::string forename = author_forename(a);
        std::string label = "a" + zero_pad(a, 4);

        // Four preferred coauthors, overlapping with neighbouring authors.
        std::array<int, 4> pool;
        for (int t = 0; t < 4; ++t) pool[t] = (a * 3 + t * 2) % n_coauthors;

        for (int p = 0; p < config.papers_per_author; ++p) {
            Record rec;
            rec.record_id = "p" + zero_pad(record_counter, 6);
            int n_co = 2 + int(rnd("ncoauth", a, p) % 2);
            int offset = int(rnd("cooff", a, p) % 4);

            std::string title;
            for (int t = 0; t < 3; ++t) {
                int topic = (2 * a + int(rnd("topic", a, p * 4 + t) % 6)) % n_topics;
                title += "t" + base26(topic, 3) + " ";
            }
            for (int t = 0; t < 2; ++t)
                title += std::string(kCommonWords[rnd("common", a, p * 4 + t) % kCommonWords.size()]) + " ";
            title += "u" + base26(record_counter, 4);
            rec.title = title;
            int venue = int(rnd("venue", a, p) % 2) == 0 ? a % n_venues : (a + 3) % n_venues;
            rec.venue = "ven" + base26(venue, 2);
            rec.year = 1990 + int(record_counter % 25);

            NameInstance focal;
            focal.record_id = rec.record_id;
            focal.instance_id = rec.record_id + "#0";
            focal.surname = surname;
            focal.forenames = {forename};
            focal.author_label = label;
            focal.focal = true;
            rec.authors.push_back(std::move(focal));
            for (int c = 0; c < n_co; ++c) {
                int k = pool[(offset + c) % 4];
                NameInstance co;
                co.record_id = rec.record_id;
                co.instance_id = rec.record_id + "#" + std::to_string(c + 1);
                co.surname = co_surname[k];
                co.forenames = {co_forename[k]};
                co.focal = false;
                rec.authors.push_back(std::move(co));
            }
            corpus.records.push_back(std::move(rec));
            ++record_counter;
        }
    }
    return corpus;
}

}  // namespace namegauge
