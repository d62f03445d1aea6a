#pragma once

#include <set>
#include <string>

namespace namegauge {

using StopwordSet = std::set<std::string>;

// Built-in English stopword list, matching data/stopwords.txt.
const StopwordSet& default_stopwords();

// One word per line, UTF-8, '#' starts a comment. Entries are normalized
// the same way title tokens are, so matching is exact.
StopwordSet load_stopwords(const std::string& path);

}  // namespace namegauge
