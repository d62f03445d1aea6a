#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "namegauge/corpus.hpp"

namespace namegauge {

// Focal instances sharing a normalized surname and first forename initial.
// Members are instance ids in lexicographic order.
struct Block {
    std::string key;
    std::vector<std::string> members;
};

// "<normalized surname>|<normalized first initial>"; instances with no
// forename letter get "∅" as the initial so they still block together.
std::string block_key(const NameInstance& inst);

// Blocks over the focal instances of the corpus, sorted by key.
std::vector<Block> make_blocks(const Corpus& corpus);

// Taxonomy of a same-block pair: does the rendered full name string agree,
// and does the true author agree.
//   Homonym: same name, different author.  Synonym: different name, same
//   author.  SNSA: same name, same author.  DNDA: different name,
//   different author.
enum class AmbiguityType { Homonym, Synonym, SNSA, DNDA };

AmbiguityType ambiguity_type(const NameInstance& a, const NameInstance& b);

struct AmbiguityProfile {
    std::size_t pairs = 0;
    std::size_t homonym = 0;
    std::size_t synonym = 0;
    std::size_t snsa = 0;
    std::size_t dnda = 0;

    // Fractions of all in-block pairs; zeros when there are no pairs.
    std::array<double, 4> fractions() const {
        if (pairs == 0) return {0.0, 0.0, 0.0, 0.0};
        double n = static_cast<double>(pairs);
        return {homonym / n, synonym / n, snsa / n, dnda / n};
    }
};

// Pairwise taxonomy counts across all blocks. Every member must carry an
// author label.
AmbiguityProfile ambiguity_profile(const std::vector<Block>& blocks, const Corpus& corpus);

}  // namespace namegauge
