#include "namegauge/similarity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>

namespace namegauge {

void GramMultiset::recompute_norm() {
    double s = 0.0;
    for (const auto& [gram, count] : items) s += double(count) * double(count);
    norm = std::sqrt(s);
}

GramMultiset char_ngrams(std::string_view text, int lo, int hi) {
    std::map<std::string, int> counts;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j > i) {
            std::string_view token = text.substr(i, j - i);
            int len = static_cast<int>(token.size());
            if (len < lo) {
                ++counts[std::string(token)];
            } else {
                int top = std::min(hi, len);
                for (int n = lo; n <= top; ++n)
                    for (int s = 0; s + n <= len; ++s)
                        ++counts[std::string(token.substr(s, n))];
            }
        }
        i = j;
    }
    GramMultiset out;
    out.items.assign(counts.begin(), counts.end());
    out.recompute_norm();
    return out;
}

GramMultiset gram_add(const GramMultiset& a, const GramMultiset& b) {
    GramMultiset out;
    out.items.reserve(a.items.size() + b.items.size());
    std::size_t i = 0, j = 0;
    while (i < a.items.size() || j < b.items.size()) {
        if (j == b.items.size() || (i < a.items.size() && a.items[i].first < b.items[j].first)) {
            out.items.push_back(a.items[i++]);
        } else if (i == a.items.size() || b.items[j].first < a.items[i].first) {
            out.items.push_back(b.items[j++]);
        } else {
            out.items.emplace_back(a.items[i].first, a.items[i].second + b.items[j].second);
            ++i;
            ++j;
        }
    }
    out.recompute_norm();
    return out;
}

GramMultiset gram_subtract(const GramMultiset& total, const GramMultiset& part) {
    GramMultiset out;
    out.items.reserve(total.items.size());
    std::size_t j = 0;
    for (const auto& [gram, count] : total.items) {
        while (j < part.items.size() && part.items[j].first < gram) ++j;
        int c = count;
        if (j < part.items.size() && part.items[j].first == gram) c -= part.items[j].second;
        if (c > 0) out.items.emplace_back(gram, c);
    }
    out.recompute_norm();
    return out;
}

double tf_cosine(const GramMultiset& a, const GramMultiset& b) {
    if (a.empty() || b.empty()) return 0.0;
    double dot = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.items.size() && j < b.items.size()) {
        int cmp = a.items[i].first.compare(b.items[j].first);
        if (cmp < 0) ++i;
        else if (cmp > 0) ++j;
        else {
            dot += double(a.items[i].second) * double(b.items[j].second);
            ++i;
            ++j;
        }
    }
    if (a.norm == 0.0 || b.norm == 0.0) return 0.0;
    return dot / (a.norm * b.norm);
}

double jaro_winkler(std::string_view a, std::string_view b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    if (a == b) return 1.0;
    const int la = static_cast<int>(a.size());
    const int lb = static_cast<int>(b.size());
    const int window = std::max(0, std::max(la, lb) / 2 - 1);
    std::vector<bool> used_a(la, false), used_b(lb, false);
    int matches = 0;
    for (int i = 0; i < la; ++i) {
        int lo = std::max(0, i - window);
        int hi = std::min(lb - 1, i + window);
        for (int j = lo; j <= hi; ++j) {
            if (!used_b[j] && a[i] == b[j]) {
                used_a[i] = used_b[j] = true;
                ++matches;
                break;
            }
        }
    }
    if (matches == 0) return 0.0;
    int half_transpositions = 0;
    int j = 0;
    for (int i = 0; i < la; ++i) {
        if (!used_a[i]) continue;
        while (!used_b[j]) ++j;
        if (a[i] != b[j]) ++half_transpositions;
        ++j;
    }
    double m = matches;
    double t = half_transpositions / 2.0;
    double jaro = (m / la + m / lb + (m - t) / m) / 3.0;
    int prefix = 0;
    int max_prefix = std::min({4, la, lb});
    while (prefix < max_prefix && a[prefix] == b[prefix]) ++prefix;
    return jaro + prefix * 0.1 * (1.0 - jaro);
}

double token_cosine(std::span<const std::string> a, std::span<const std::string> b) {
    if (a.empty() || b.empty()) return 0.0;
    std::map<std::string, std::pair<int, int>> counts;
    for (const auto& t : a) ++counts[t].first;
    for (const auto& t : b) ++counts[t].second;
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (const auto& [tok, c] : counts) {
        dot += double(c.first) * double(c.second);
        na += double(c.first) * double(c.first);
        nb += double(c.second) * double(c.second);
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

double token_jaccard(std::span<const std::string> a, std::span<const std::string> b) {
    std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    if (sa.empty() && sb.empty()) return 0.0;
    std::size_t inter = 0;
    for (const auto& t : sa) inter += sb.count(t);
    std::size_t uni = sa.size() + sb.size() - inter;
    return uni ? double(inter) / double(uni) : 0.0;
}

}  // namespace namegauge
