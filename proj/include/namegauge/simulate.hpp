#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "namegauge/corpus.hpp"

namespace namegauge {

enum class RatioScope { All, Focal };

// Keeps a seeded ⌊ratio·|eligible|⌋-subset of the full-forename instances
// intact and reduces every other eligible instance's forename tokens to
// their first letter. Survivor sets are nested: raising the ratio with the
// same seed never un-keeps an instance. Scope Focal restricts the
// transformation to focal instances.
Corpus apply_full_ratio(const Corpus& corpus, double ratio, std::uint64_t seed,
                        RatioScope scope = RatioScope::All);

// Caps every forename string at its first n letters, counted across
// tokens; token boundaries are preserved and emptied tokens dropped.
// Non-letter characters are removed. Applies to all instances.
Corpus truncate_forenames(const Corpus& corpus, int n);

// Seeded partition of the focal instances; train gets ⌊fraction·N⌋ of
// them. Each side keeps every record that owns at least one of its focal
// instances, with the other side's focal instances demoted to plain
// coauthor mentions so instance ids never change.
std::pair<Corpus, Corpus> split_train_test(const Corpus& corpus, double fraction,
                                           std::uint64_t seed);

struct NgramProfileRow {
    int n = 0;
    double fraction = 0.0;
};

// Fraction of non-Null instances whose total forename letter count is at
// most n, for n = 1..10.
std::vector<NgramProfileRow> cumulative_ngram_profile(const Corpus& corpus);

}  // namespace namegauge
