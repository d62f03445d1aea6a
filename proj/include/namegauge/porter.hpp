#pragma once

#include <string>
#include <string_view>

namespace namegauge {

// Porter's 1980 suffix-stripping algorithm, matching the author's ANSI C
// reference implementation (including its extra "logi" -> "log" rule and
// leaving words of one or two letters untouched). Expects a lower-case
// token; non-letter characters make the suffix rules miss, so strip
// punctuation first.
std::string porter_stem(std::string_view word);

}  // namespace namegauge
