#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "subposet/errors.hpp"

namespace subposet {

/// One subset of [n] packed into a machine word: bit i-1 is set iff the
/// element i is present. The owning Family fixes n <= 64.
struct SetWord {
    std::uint64_t bits = 0;

    bool contains(int element) const { return bits >> (element - 1) & 1u; }
    int count() const { return std::popcount(bits); }
    bool subset_of(SetWord o) const { return (bits & o.bits) == bits; }
    bool proper_subset_of(SetWord o) const {
        return bits != o.bits && subset_of(o);
    }
    friend bool operator==(SetWord, SetWord) = default;
};

/// Canonical order: by cardinality first, then by numeric value.
inline bool canonical_less(SetWord a, SetWord b) {
    int ca = a.count(), cb = b.count();
    return ca != cb ? ca < cb : a.bits < b.bits;
}

inline SetWord make_set(std::initializer_list<int> elements) {
    SetWord w;
    for (int e : elements) w.bits |= std::uint64_t{1} << (e - 1);
    return w;
}

/// A deduplicated family of subsets of [n], stored in canonical order.
/// Immutable by convention after construction; safe to share across threads.
struct Family {
    int n = 0;
    std::vector<SetWord> sets;

    std::size_t size() const { return sets.size(); }
    bool member(SetWord w) const {
        auto it = std::lower_bound(sets.begin(), sets.end(), w, canonical_less);
        return it != sets.end() && *it == w;
    }
    std::size_t index_of(SetWord w) const {
        auto it = std::lower_bound(sets.begin(), sets.end(), w, canonical_less);
        if (it == sets.end() || !(*it == w))
            throw DomainError("set is not a member of the family");
        return static_cast<std::size_t>(it - sets.begin());
    }
    friend bool operator==(const Family&, const Family&) = default;
};

/// Sorts, deduplicates and validates; the only way families are built.
inline Family make_family(int n, std::vector<SetWord> sets) {
    if (n < 1 || n > 64) throw DomainError("ground-set size must be in 1..64");
    std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    for (SetWord w : sets)
        if (w.bits & ~mask)
            throw DomainError("set contains an element outside 1..n");
    std::sort(sets.begin(), sets.end(), canonical_less);
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    return Family{n, std::move(sets)};
}

inline std::string format_set(SetWord w) {
    if (w.bits == 0) return "-";
    std::string out;
    for (int e = 1; e <= 64; ++e) {
        if (!w.contains(e)) continue;
        if (!out.empty()) out += ',';
        out += std::to_string(e);
    }
    return out;
}

/// Canonical family file: header line `n=<decimal>`, then one set per line in
/// canonical order, `-` for the empty set, LF endings, no trailing spaces.
inline std::string serialize_family(const Family& fam) {
    std::string out = "n=" + std::to_string(fam.n) + "\n";
    for (SetWord w : fam.sets) {
        out += format_set(w);
        out += '\n';
    }
    return out;
}

struct LoadResult {
    Family family;
    std::size_t duplicates_dropped = 0;  // duplicates are a warning, not an error
};

namespace detail {

inline SetWord parse_set_line(std::string_view line, int n, std::size_t lineno) {
    if (line == "-") return SetWord{};
    SetWord w;
    int prev = 0;
    std::size_t i = 0;
    while (i < line.size()) {
        std::size_t j = i;
        while (j < line.size() && line[j] >= '0' && line[j] <= '9') ++j;
        if (j == i)
            throw ParseError("line " + std::to_string(lineno) +
                             ": expected a decimal element");
        long v = 0;
        for (std::size_t t = i; t < j; ++t) {
            v = v * 10 + (line[t] - '0');
            if (v > 64)
                throw ParseError("line " + std::to_string(lineno) +
                                 ": element out of range 1..n");
        }
        if (v < 1 || v > n)
            throw ParseError("line " + std::to_string(lineno) +
                             ": element out of range 1..n");
        if (static_cast<int>(v) <= prev)
            throw ParseError("line " + std::to_string(lineno) +
                             ": elements must be strictly increasing");
        prev = static_cast<int>(v);
        w.bits |= std::uint64_t{1} << (v - 1);
        if (j < line.size()) {
            if (line[j] != ',')
                throw ParseError("line " + std::to_string(lineno) +
                                 ": unexpected character");
            ++j;
            if (j == line.size())
                throw ParseError("line " + std::to_string(lineno) +
                                 ": trailing comma");
        }
        i = j;
    }
    return w;
}

}  // namespace detail

/// Parses the family file format. `#`-prefixed lines are comments. Duplicate
/// sets are collapsed and counted, everything else malformed is an error.
inline LoadResult load_family(std::string_view text) {
    int n = -1;
    std::vector<SetWord> sets;
    std::size_t duplicates = 0;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        if (n < 0) {
            if (line.substr(0, 2) != "n=")
                throw ParseError("line " + std::to_string(lineno) +
                                 ": expected header n=<decimal>");
            std::string_view num = line.substr(2);
            if (num.empty())
                throw ParseError("line " + std::to_string(lineno) +
                                 ": malformed header");
            long v = 0;
            for (char c : num) {
                if (c < '0' || c > '9')
                    throw ParseError("line " + std::to_string(lineno) +
                                     ": malformed header");
                v = v * 10 + (c - '0');
                if (v > 64) break;
            }
            if (v < 1 || v > 64)
                throw ParseError("line " + std::to_string(lineno) +
                                 ": n must be in 1..64");
            n = static_cast<int>(v);
            continue;
        }
        sets.push_back(detail::parse_set_line(line, n, lineno));
    }
    if (n < 0) throw ParseError("missing header n=<decimal>");
    std::size_t before = sets.size();
    Family fam = make_family(n, std::move(sets));
    duplicates = before - fam.size();
    return LoadResult{std::move(fam), duplicates};
}

}  // namespace subposet
