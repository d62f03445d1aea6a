#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace namegauge {

// One author mention on one record. instance_id is "<record_id>#<position>"
// with a zero-based author position, unique corpus-wide.
struct NameInstance {
    std::string instance_id;
    std::string record_id;
    std::string surname;
    std::vector<std::string> forenames;
    std::optional<std::string> author_label;
    bool focal = false;
};

struct Record {
    std::string record_id;
    std::string title;
    std::string venue;
    std::optional<int> year;
    std::vector<NameInstance> authors;
};

struct Corpus {
    std::vector<Record> records;
};

enum class ForenameStringType { Null, AllInitialized, OneOrMoreFull };

enum class CorpusFormat { Jsonl };

// Lower-cases, folds Latin diacritics to ASCII (with the usual
// transliterations: ss, ae, oe, th), drops anything unmappable, collapses
// whitespace and trims. Idempotent.
std::string normalize_text(std::string_view s);

// Unicode letter test on a code point, used before any ASCII folding.
bool is_alpha_cp(std::uint32_t cp);

// First alphabetic code point of a UTF-8 string, as a UTF-8 substring.
// Empty when the string has no letter.
std::string first_alpha_utf8(std::string_view s);

const std::set<std::string>& default_suffixes();

struct SplitName {
    std::string surname;
    std::vector<std::string> forenames;
};

// Splits a raw "forenames surname" string. The last token is taken as the
// surname unless it is a generational suffix (jr, III, ...), in which case
// the suffix is kept attached to the preceding token.
SplitName split_raw_name(std::string_view full_name,
                         const std::set<std::string>& suffixes = default_suffixes());

ForenameStringType forename_string_type(const NameInstance& inst);

// Normalized forename tokens joined by single spaces ("" when none).
std::string forename_string(const NameInstance& inst);

// Normalized "surname forename1 forename2 ...": the rendering used by the
// exact-match heuristic and the ambiguity taxonomy.
std::string full_name_string(const NameInstance& inst);

Corpus parse_corpus(const std::string& path, CorpusFormat format,
                    const std::set<std::string>& suffixes = default_suffixes());

void write_corpus_jsonl(const Corpus& corpus, const std::string& path);

struct CorpusStats {
    std::size_t records = 0;
    std::size_t instances = 0;
    std::size_t focal_instances = 0;
    std::size_t labeled_focal_instances = 0;
    std::size_t distinct_labels = 0;
    std::size_t null_forename = 0;
    std::size_t all_initialized = 0;
    std::size_t one_or_more_full = 0;

    double full_fraction() const {
        return instances ? double(one_or_more_full) / double(instances) : 0.0;
    }
};

// Counts cover every instance, focal and coauthor alike.
CorpusStats corpus_stats(const Corpus& corpus);

// Lookup from instance_id to its record and author position.
class CorpusIndex {
  public:
    explicit CorpusIndex(const Corpus& corpus);

    const NameInstance& instance(const std::string& instance_id) const;
    const Record& record_of(const std::string& instance_id) const;
    std::size_t position_of(const std::string& instance_id) const;

  private:
    const Corpus* corpus_;
    std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> where_;
};

}  // namespace namegauge
