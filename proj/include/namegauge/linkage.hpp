#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "namegauge/corpus.hpp"

namespace namegauge {

struct TitleLink {
    std::string src_record_id;
    std::string donor_record_id;
};

// Exact match on the normalized title word sequence. Titles shorter than
// five words are ignored, and a title that appears on more than one
// record within either corpus is discarded entirely as unsafe to link.
std::vector<TitleLink> link_by_title(const Corpus& src, const Corpus& donor);

// For each linked record pair, rewrites the forenames of source instances
// whose forename strings are all bare initials, copying from the donor
// author that matches on normalized surname and first initial. The copy
// only happens when exactly one donor author matches and that author
// carries a full forename. Returns the rewritten corpus and how many
// instances changed.
std::pair<Corpus, std::size_t> restore_forenames(const Corpus& src,
                                                 const std::vector<TitleLink>& links,
                                                 const Corpus& donor);

}  // namespace namegauge
