#pragma once

#include <cstdint>

#include "namegauge/corpus.hpp"

namespace namegauge {

// forename_separable: every author in a block has a distinct full
// forename sharing the block initial, so full forenames disambiguate
// perfectly. pure_homonym: all authors in a block carry the same full
// name, so forenames never help. mixed: a per-block coin picks one of the
// two regimes.
enum class SynthProfile { ForenameSeparable, PureHomonym, Mixed };

struct SynthConfig {
    SynthProfile profile = SynthProfile::ForenameSeparable;
    int authors = 100;
    int papers_per_author = 8;
    int authors_per_block = 5;
    std::uint64_t seed = 0;
};

// Deterministic labeled corpus: same config, same bytes. Focal instances
// are labeled; coauthors have full names and no labels. Titles have at
// least five words, one of them unique per record, the rest drawn from
// per-author topic pools that overlap between neighbouring authors.
Corpus generate_synthetic(const SynthConfig& config);

const char* synth_profile_name(SynthProfile profile);

}  // namespace namegauge
