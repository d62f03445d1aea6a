#include "namegauge/blocking.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace namegauge {

std::string block_key(const NameInstance& inst) {
    std::string key = normalize_text(inst.surname);
    key.push_back('|');
    std::string initial;
    if (!inst.forenames.empty())
        initial = normalize_text(first_alpha_utf8(inst.forenames.front()));
    key += initial.empty() ? "∅" : initial;
    return key;
}

std::vector<Block> make_blocks(const Corpus& corpus) {
    std::map<std::string, std::vector<std::string>> groups;
    for (const auto& rec : corpus.records)
        for (const auto& a : rec.authors)
            if (a.focal) groups[block_key(a)].push_back(a.instance_id);
    std::vector<Block> blocks;
    blocks.reserve(groups.size());
    for (auto& [key, members] : groups) {
        std::sort(members.begin(), members.end());
        blocks.push_back(Block{key, std::move(members)});
    }
    return blocks;
}

AmbiguityType ambiguity_type(const NameInstance& a, const NameInstance& b) {
    if (!a.author_label || !b.author_label)
        throw std::invalid_argument("ambiguity_type: both instances must carry author labels");
    bool same_name = full_name_string(a) == full_name_string(b);
    bool same_author = *a.author_label == *b.author_label;
    if (same_name) return same_author ? AmbiguityType::SNSA : AmbiguityType::Homonym;
    return same_author ? AmbiguityType::Synonym : AmbiguityType::DNDA;
}

AmbiguityProfile ambiguity_profile(const std::vector<Block>& blocks, const Corpus& corpus) {
    CorpusIndex index(corpus);
    AmbiguityProfile profile;
    for (const auto& block : blocks) {
        // Cache the comparison keys once per member; pair loops only compare.
        std::vector<std::string> names;
        std::vector<const std::string*> labels;
        names.reserve(block.members.size());
        labels.reserve(block.members.size());
        for (const auto& id : block.members) {
            const NameInstance& inst = index.instance(id);
            if (!inst.author_label)
                throw std::invalid_argument("ambiguity_profile: instance " + id +
                                            " has no author label");
            names.push_back(full_name_string(inst));
            labels.push_back(&*inst.author_label);
        }
        for (std::size_t i = 0; i < block.members.size(); ++i) {
            for (std::size_t j = i + 1; j < block.members.size(); ++j) {
                ++profile.pairs;
                bool same_name = names[i] == names[j];
                bool same_author = *labels[i] == *labels[j];
                if (same_name && same_author) ++profile.snsa;
                else if (same_name) ++profile.homonym;
                else if (same_author) ++profile.synonym;
                else ++profile.dnda;
            }
        }
    }
    return profile;
}

}  // namespace namegauge
