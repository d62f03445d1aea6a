#include "namegauge/linkage.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "namegauge/blocking.hpp"

namespace namegauge {

namespace {

std::size_t word_count(const std::string& normalized) {
    std::size_t words = 0;
    bool in_word = false;
    for (char c : normalized) {
        if (c == ' ') in_word = false;
        else if (!in_word) { in_word = true; ++words; }
    }
    return words;
}

// title -> record index, or npos when the title occurs more than once.
constexpr std::size_t kDuplicate = static_cast<std::size_t>(-1);

std::map<std::string, std::size_t> title_index(const Corpus& corpus) {
    std::map<std::string, std::size_t> index;
    for (std::size_t r = 0; r < corpus.records.size(); ++r) {
        std::string norm = normalize_text(corpus.records[r].title);
        if (word_count(norm) < 5) continue;
        auto [it, inserted] = index.emplace(std::move(norm), r);
        if (!inserted) it->second = kDuplicate;
    }
    return index;
}

}  // namespace

std::vector<TitleLink> link_by_title(const Corpus& src, const Corpus& donor) {
    std::map<std::string, std::size_t> src_titles = title_index(src);
    std::map<std::string, std::size_t> donor_titles = title_index(donor);
    std::vector<TitleLink> links;
    for (const auto& [title, src_idx] : src_titles) {
        if (src_idx == kDuplicate) continue;
        auto it = donor_titles.find(title);
        if (it == donor_titles.end() || it->second == kDuplicate) continue;
        links.push_back({src.records[src_idx].record_id, donor.records[it->second].record_id});
    }
    std::sort(links.begin(), links.end(), [](const TitleLink& a, const TitleLink& b) {
        return a.src_record_id < b.src_record_id;
    });
    return links;
}

std::pair<Corpus, std::size_t> restore_forenames(const Corpus& src,
                                                 const std::vector<TitleLink>& links,
                                                 const Corpus& donor) {
    std::map<std::string, std::size_t> src_by_id, donor_by_id;
    for (std::size_t r = 0; r < src.records.size(); ++r)
        src_by_id.emplace(src.records[r].record_id, r);
    for (std::size_t r = 0; r < donor.records.size(); ++r)
        donor_by_id.emplace(donor.records[r].record_id, r);

    Corpus out = src;
    std::size_t restored = 0;
    for (const auto& link : links) {
        auto sit = src_by_id.find(link.src_record_id);
        auto dit = donor_by_id.find(link.donor_record_id);
        if (sit == src_by_id.end())
            throw std::invalid_argument("restore_forenames: unknown source record " +
                                        link.src_record_id);
        if (dit == donor_by_id.end())
            throw std::invalid_argument("restore_forenames: unknown donor record " +
                                        link.donor_record_id);
        Record& rec = out.records[sit->second];
        const Record& drec = donor.records[dit->second];
        for (auto& inst : rec.authors) {
            if (forename_string_type(inst) != ForenameStringType::AllInitialized) continue;
            std::string key = block_key(inst);
            const NameInstance* candidate = nullptr;
            bool unique = true;
            for (const auto& dinst : drec.authors) {
                if (block_key(dinst) != key) continue;
                if (candidate) unique = false;
                candidate = &dinst;
            }
            if (!candidate || !unique) continue;
            if (forename_string_type(*candidate) != ForenameStringType::OneOrMoreFull) continue;
            inst.forenames = candidate->forenames;
            ++restored;
        }
    }
    return {std::move(out), restored};
}

}  // namespace namegauge
