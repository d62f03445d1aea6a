#include "namegauge/corpus.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace namegauge {

namespace {

// Decodes one UTF-8 code point starting at s[i]; advances i. Malformed
// bytes yield 0xFFFD and advance by one so normalization can drop them.
std::uint32_t decode_utf8(std::string_view s, std::size_t& i) {
    unsigned char c = s[i];
    if (c < 0x80) {
        ++i;
        return c;
    }
    int extra;
    std::uint32_t cp;
    if ((c & 0xE0) == 0xC0) {
        extra = 1;
        cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
        extra = 2;
        cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
        extra = 3;
        cp = c & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + extra >= s.size()) {
        ++i;
        return 0xFFFD;
    }
    for (int k = 1; k <= extra; ++k) {
        unsigned char cc = s[i + k];
        if ((cc & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (cc & 0x3F);
    }
    i += extra + 1;
    return cp;
}

// ASCII folding for the Latin-1 Supplement block (0xC0..0xFF).
// nullptr marks symbols that are dropped.
const char* fold_latin1(std::uint32_t cp) {
    static const char* table[64] = {
        "a",  "a", "a", "a", "a", "a", "ae", "c",   // C0-C7
        "e",  "e", "e", "e", "i", "i", "i",  "i",   // C8-CF
        "d",  "n", "o", "o", "o", "o", "o",  nullptr,  // D0-D7 (D7 = multiply)
        "o",  "u", "u", "u", "u", "y", "th", "ss",  // D8-DF
        "a",  "a", "a", "a", "a", "a", "ae", "c",   // E0-E7
        "e",  "e", "e", "e", "i", "i", "i",  "i",   // E8-EF
        "d",  "n", "o", "o", "o", "o", "o",  nullptr,  // F0-F7 (F7 = divide)
        "o",  "u", "u", "u", "u", "y", "th", "y",   // F8-FF
    };
    return table[cp - 0xC0];
}

// Latin Extended-A (0x100..0x17F), grouped by base letter.
const char* fold_latin_ext_a(std::uint32_t cp) {
    if (cp <= 0x105) return "a";
    if (cp <= 0x10D) return "c";
    if (cp <= 0x111) return "d";
    if (cp <= 0x11B) return "e";
    if (cp <= 0x123) return "g";
    if (cp <= 0x127) return "h";
    if (cp <= 0x131) return "i";
    if (cp <= 0x133) return "ij";
    if (cp <= 0x135) return "j";
    if (cp <= 0x138) return "k";
    if (cp <= 0x142) return "l";
    if (cp <= 0x14B) return "n";
    if (cp <= 0x151) return "o";
    if (cp <= 0x153) return "oe";
    if (cp <= 0x159) return "r";
    if (cp <= 0x161) return "s";
    if (cp <= 0x167) return "t";
    if (cp <= 0x173) return "u";
    if (cp <= 0x175) return "w";
    if (cp <= 0x178) return "y";
    if (cp <= 0x17E) return "z";
    return "s";  // 0x17F, long s
}

// Latin Extended-B and Extended Additional: the code points that turn up
// in romanized bibliographic names. Anything unlisted is dropped.
const char* fold_latin_other(std::uint32_t cp) {
    if (cp >= 0x1EA0 && cp <= 0x1EB7) return "a";  // Vietnamese vowels
    if (cp >= 0x1EB8 && cp <= 0x1EC7) return "e";
    if (cp >= 0x1EC8 && cp <= 0x1ECB) return "i";
    if (cp >= 0x1ECC && cp <= 0x1EE3) return "o";
    if (cp >= 0x1EE4 && cp <= 0x1EF1) return "u";
    if (cp >= 0x1EF2 && cp <= 0x1EF9) return "y";
    switch (cp) {
        case 0x180: case 0x181: case 0x182: case 0x183: return "b";
        case 0x18F: case 0x259: return "e";  // schwa
        case 0x192: return "f";
        case 0x1A0: case 0x1A1: return "o";
        case 0x1AF: case 0x1B0: return "u";
        case 0x1C4: case 0x1C5: case 0x1C6: return "dz";
        case 0x1C7: case 0x1C8: case 0x1C9: return "lj";
        case 0x1CA: case 0x1CB: case 0x1CC: return "nj";
        case 0x1CD: case 0x1CE: return "a";
        case 0x1CF: case 0x1D0: return "i";
        case 0x1D1: case 0x1D2: return "o";
        case 0x1D3: case 0x1D4: case 0x1D5: case 0x1D6:
        case 0x1D7: case 0x1D8: case 0x1D9: case 0x1DA:
        case 0x1DB: case 0x1DC: return "u";
        case 0x1DE: case 0x1DF: case 0x1E0: case 0x1E1: return "a";
        case 0x1E2: case 0x1E3: return "ae";
        case 0x1E6: case 0x1E7: return "g";
        case 0x1E8: case 0x1E9: return "k";
        case 0x1EA: case 0x1EB: case 0x1EC: case 0x1ED: return "o";
        case 0x1F0: return "j";
        case 0x1F1: case 0x1F2: case 0x1F3: return "dz";
        case 0x1F4: case 0x1F5: return "g";
        case 0x1F8: case 0x1F9: return "n";
        case 0x1FA: case 0x1FB: return "a";
        case 0x1FC: case 0x1FD: return "ae";
        case 0x1FE: case 0x1FF: return "o";
        case 0x218: case 0x219: return "s";  // Romanian comma-below
        case 0x21A: case 0x21B: return "t";
        case 0x21E: case 0x21F: return "h";
        case 0x226: case 0x227: return "a";
        case 0x228: case 0x229: return "e";
        case 0x232: case 0x233: return "y";
        case 0x237: return "j";
        case 0x1E0C: case 0x1E0D: case 0x1E0E: case 0x1E0F: return "d";
        case 0x1E24: case 0x1E25: case 0x1E2A: case 0x1E2B: return "h";
        case 0x1E36: case 0x1E37: return "l";
        case 0x1E40: case 0x1E41: case 0x1E42: case 0x1E43: return "m";
        case 0x1E44: case 0x1E45: case 0x1E46: case 0x1E47: return "n";
        case 0x1E5A: case 0x1E5B: return "r";
        case 0x1E62: case 0x1E63: return "s";
        case 0x1E6C: case 0x1E6D: return "t";
        case 0x1E80: case 0x1E81: case 0x1E82: case 0x1E83:
        case 0x1E84: case 0x1E85: return "w";
        case 0x1E8F: return "y";
        case 0x1E90: case 0x1E91: case 0x1E92: case 0x1E93: return "z";
        case 0x1E97: return "t";
        case 0x1E9E: return "ss";
        default: break;
    }
    if (cp >= 0x200 && cp <= 0x203) return "a";
    if (cp >= 0x204 && cp <= 0x207) return "e";
    if (cp >= 0x208 && cp <= 0x20B) return "i";
    if (cp >= 0x20C && cp <= 0x20F) return "o";
    if (cp >= 0x210 && cp <= 0x213) return "r";
    if (cp >= 0x214 && cp <= 0x217) return "u";
    if (cp >= 0x22A && cp <= 0x231) return "o";
    return nullptr;
}

bool is_space_cp(std::uint32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\v' || cp == '\f' ||
           cp == '\r' || cp == 0xA0 || (cp >= 0x2000 && cp <= 0x200B) ||
           cp == 0x202F || cp == 0x3000;
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace

std::string normalize_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    auto push = [&](const char* t) {
        if (pending_space && !out.empty()) out.push_back(' ');
        pending_space = false;
        out += t;
    };
    std::size_t i = 0;
    while (i < s.size()) {
        std::uint32_t cp = decode_utf8(s, i);
        if (is_space_cp(cp)) {
            pending_space = true;
            continue;
        }
        if (cp < 0x80) {
            char buf[2] = {static_cast<char>(std::tolower(static_cast<int>(cp))), 0};
            push(buf);
            continue;
        }
        const char* folded = nullptr;
        if (cp >= 0xC0 && cp <= 0xFF) folded = fold_latin1(cp);
        else if (cp >= 0x100 && cp <= 0x17F) folded = fold_latin_ext_a(cp);
        else if (cp >= 0x300 && cp <= 0x36F) continue;  // combining marks
        else folded = fold_latin_other(cp);
        if (folded) push(folded);
        // unmappable code points are dropped
    }
    return out;
}

bool is_alpha_cp(std::uint32_t cp) {
    if (cp < 0x80)
        return (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z');
    if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
    if (cp >= 0x386 && cp <= 0x3FF) return cp != 0x387;
    if (cp >= 0x400 && cp <= 0x4FF) return true;
    if (cp >= 0x531 && cp <= 0x586) return true;   // Armenian
    if (cp >= 0x5D0 && cp <= 0x5EA) return true;   // Hebrew
    if (cp >= 0x621 && cp <= 0x64A) return true;   // Arabic
    if (cp >= 0x1E00 && cp <= 0x1EFF) return true;
    if (cp >= 0x3040 && cp <= 0x30FF) return true;  // kana
    if (cp >= 0x4E00 && cp <= 0x9FFF) return true;  // CJK
    if (cp >= 0xAC00 && cp <= 0xD7A3) return true;  // Hangul
    return false;
}

std::string first_alpha_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t start = i;
        std::uint32_t cp = decode_utf8(s, i);
        if (is_alpha_cp(cp)) return std::string(s.substr(start, i - start));
    }
    return "";
}

const std::set<std::string>& default_suffixes() {
    static const std::set<std::string> s = {"jr", "sr", "ii", "iii", "iv"};
    return s;
}

namespace {

// Lower-cased token with ASCII punctuation stripped, for suffix matching.
std::string suffix_key(std::string_view token) {
    std::string out;
    for (char c : token) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isalnum(u)) out.push_back(static_cast<char>(std::tolower(u)));
    }
    return out;
}

}  // namespace

SplitName split_raw_name(std::string_view full_name, const std::set<std::string>& suffixes) {
    std::vector<std::string> tokens = split_ws(full_name);
    if (tokens.empty())
        throw std::invalid_argument("split_raw_name: name is empty or all whitespace");
    SplitName out;
    if (tokens.size() == 1) {
        out.surname = tokens[0];
        return out;
    }
    std::size_t last = tokens.size() - 1;
    if (suffixes.count(suffix_key(tokens[last])) && tokens.size() >= 2) {
        // "john smith jr" -> surname "smith jr"
        out.surname = tokens[last - 1] + " " + tokens[last];
        out.forenames.assign(tokens.begin(), tokens.begin() + (last - 1));
    } else {
        out.surname = tokens[last];
        out.forenames.assign(tokens.begin(), tokens.begin() + last);
    }
    return out;
}

ForenameStringType forename_string_type(const NameInstance& inst) {
    if (inst.forenames.empty()) return ForenameStringType::Null;
    bool all_single = true;
    for (const auto& tok : inst.forenames) {
        std::size_t letters = 0;
        std::size_t i = 0;
        while (i < tok.size()) {
            std::uint32_t cp = decode_utf8(tok, i);
            if (is_alpha_cp(cp)) ++letters;
        }
        if (letters != 1) all_single = false;
    }
    return all_single ? ForenameStringType::AllInitialized
                      : ForenameStringType::OneOrMoreFull;
}

std::string forename_string(const NameInstance& inst) {
    std::string joined;
    for (const auto& tok : inst.forenames) {
        if (!joined.empty()) joined.push_back(' ');
        joined += tok;
    }
    return normalize_text(joined);
}

std::string full_name_string(const NameInstance& inst) {
    std::string joined = inst.surname;
    for (const auto& tok : inst.forenames) {
        joined.push_back(' ');
        joined += tok;
    }
    return normalize_text(joined);
}

namespace {

using nlohmann::json;

std::string instance_id_for(const std::string& record_id, std::size_t pos) {
    return record_id + "#" + std::to_string(pos);
}

NameInstance parse_author(const json& a, const std::string& record_id, std::size_t pos,
                          const std::set<std::string>& suffixes, const std::string& where) {
    for (const char* key : {"surname", "forenames", "raw_name", "author_id", "focal"}) {
        if (!a.contains(key))
            throw std::runtime_error(where + ": author missing field '" + key + "'");
    }
    NameInstance inst;
    inst.record_id = record_id;
    inst.instance_id = instance_id_for(record_id, pos);
    bool has_surname = !a["surname"].is_null();
    bool has_raw = !a["raw_name"].is_null();
    if (has_surname == has_raw)
        throw std::runtime_error(where + ": exactly one of surname/raw_name must be set");
    if (has_surname) {
        inst.surname = a["surname"].get<std::string>();
        if (!a["forenames"].is_null()) {
            for (const auto& f : a["forenames"]) inst.forenames.push_back(f.get<std::string>());
        }
    } else {
        SplitName split = split_raw_name(a["raw_name"].get<std::string>(), suffixes);
        inst.surname = split.surname;
        inst.forenames = std::move(split.forenames);
    }
    if (!a["focal"].is_boolean())
        throw std::runtime_error(where + ": focal must be a boolean");
    inst.focal = a["focal"].get<bool>();
    if (!a["author_id"].is_null()) inst.author_label = a["author_id"].get<std::string>();
    if (normalize_text(inst.surname).empty())
        throw std::runtime_error(where + ": surname '" + inst.surname +
                                 "' is empty after normalization");
    return inst;
}

}  // namespace

Corpus parse_corpus(const std::string& path, CorpusFormat format,
                    const std::set<std::string>& suffixes) {
    if (format != CorpusFormat::Jsonl)
        throw std::invalid_argument("parse_corpus: unsupported format");
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_corpus: cannot open " + path);
    Corpus corpus;
    std::set<std::string> seen_ids;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) { blank = false; break; }
        if (blank) continue;
        std::string where = path + ":" + std::to_string(lineno);
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw std::runtime_error(where + ": bad JSON: " + e.what());
        }
        for (const char* key : {"record_id", "title", "venue", "year", "authors"}) {
            if (!j.contains(key))
                throw std::runtime_error(where + ": record missing field '" + key + "'");
        }
        Record rec;
        rec.record_id = j["record_id"].get<std::string>();
        if (!seen_ids.insert(rec.record_id).second)
            throw std::runtime_error(where + ": duplicate record_id '" + rec.record_id + "'");
        rec.title = j["title"].get<std::string>();
        rec.venue = j["venue"].get<std::string>();
        if (!j["year"].is_null()) rec.year = j["year"].get<int>();
        const auto& authors = j["authors"];
        if (!authors.is_array())
            throw std::runtime_error(where + ": authors must be an array");
        for (std::size_t pos = 0; pos < authors.size(); ++pos)
            rec.authors.push_back(parse_author(authors[pos], rec.record_id, pos, suffixes, where));
        corpus.records.push_back(std::move(rec));
    }
    return corpus;
}

void write_corpus_jsonl(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_corpus_jsonl: cannot open " + path);
    for (const auto& rec : corpus.records) {
        json j;
        j["record_id"] = rec.record_id;
        j["title"] = rec.title;
        j["venue"] = rec.venue;
        j["year"] = rec.year ? json(*rec.year) : json(nullptr);
        json authors = json::array();
        for (const auto& a : rec.authors) {
            json ja;
            ja["surname"] = a.surname;
            ja["forenames"] = a.forenames;
            ja["raw_name"] = nullptr;
            ja["author_id"] = a.author_label ? json(*a.author_label) : json(nullptr);
            ja["focal"] = a.focal;
            authors.push_back(std::move(ja));
        }
        j["authors"] = std::move(authors);
        out << j.dump() << "\n";
    }
    if (!out) throw std::runtime_error("write_corpus_jsonl: write failed for " + path);
}

CorpusStats corpus_stats(const Corpus& corpus) {
    CorpusStats st;
    st.records = corpus.records.size();
    std::set<std::string> labels;
    for (const auto& rec : corpus.records) {
        for (const auto& a : rec.authors) {
            ++st.instances;
            if (a.focal) {
                ++st.focal_instances;
                if (a.author_label) {
                    ++st.labeled_focal_instances;
                    labels.insert(*a.author_label);
                }
            }
            switch (forename_string_type(a)) {
                case ForenameStringType::Null: ++st.null_forename; break;
                case ForenameStringType::AllInitialized: ++st.all_initialized; break;
                case ForenameStringType::OneOrMoreFull: ++st.one_or_more_full; break;
            }
        }
    }
    st.distinct_labels = labels.size();
    return st;
}

CorpusIndex::CorpusIndex(const Corpus& corpus) : corpus_(&corpus) {
    for (std::size_t r = 0; r < corpus.records.size(); ++r)
        for (std::size_t p = 0; p < corpus.records[r].authors.size(); ++p)
            where_.emplace(corpus.records[r].authors[p].instance_id, std::make_pair(r, p));
}

const NameInstance& CorpusIndex::instance(const std::string& instance_id) const {
    auto it = where_.find(instance_id);
    if (it == where_.end())
        throw std::out_of_range("unknown instance_id: " + instance_id);
    return corpus_->records[it->second.first].authors[it->second.second];
}

const Record& CorpusIndex::record_of(const std::string& instance_id) const {
    auto it = where_.find(instance_id);
    if (it == where_.end())
        throw std::out_of_range("unknown instance_id: " + instance_id);
    return corpus_->records[it->second.first];
}

std::size_t CorpusIndex::position_of(const std::string& instance_id) const {
    auto it = where_.find(instance_id);
    if (it == where_.end())
        throw std::out_of_range("unknown instance_id: " + instance_id);
    return it->second.second;
}

}  // namespace namegauge
