#pragma once

// Index combinatorics: m-element subsets of [n] = {1..n} in lexicographic
// order, ranking/unranking, concatenation signs, and the three pairings
// of a 4-set. The lex order of subsets fixes the row/column indexing of
// every wedge-indexed matrix in the library.

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "exsq/errors.hpp"

namespace exsq {

/// A strictly increasing tuple of labels from [1, n]. Pair and Quad are
/// the arity-2 and arity-4 cases used throughout.
class IndexSet {
public:
    IndexSet() = default;

    /// Validates strict increase; the upper bound n is checked by callers
    /// that know it (valid_for).
    explicit IndexSet(std::vector<int> elems) : elems_(std::move(elems)) {
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (elems_[i] < 1)
                throw InvalidIndexSet("labels start at 1");
            if (i > 0 && elems_[i] <= elems_[i - 1])
                throw InvalidIndexSet("labels must be strictly increasing");
        }
    }

    static IndexSet pair(int a, int b) { return IndexSet({a, b}); }
    static IndexSet quad(int a, int b, int c, int d) { return IndexSet({a, b, c, d}); }

    int arity() const { return static_cast<int>(elems_.size()); }
    const std::vector<int>& elements() const { return elems_; }
    int operator[](int i) const { return elems_[static_cast<std::size_t>(i)]; }

    bool valid_for(int n) const { return elems_.empty() || elems_.back() <= n; }

    bool contains(int label) const {
        return std::binary_search(elems_.begin(), elems_.end(), label);
    }

    bool disjoint_from(const IndexSet& other) const {
        for (int x : elems_)
            if (other.contains(x)) return false;
        return true;
    }

    /// Sorted union; throws on overlap (used where disjointness is a
    /// structural requirement, e.g. A ∪ C as a Quad).
    IndexSet disjoint_union(const IndexSet& other) const {
        std::vector<int> merged;
        merged.reserve(elems_.size() + other.elems_.size());
        std::merge(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                   std::back_inserter(merged));
        for (std::size_t i = 1; i < merged.size(); ++i)
            if (merged[i] == merged[i - 1])
                throw OverlappingIndices("union of overlapping index sets");
        return IndexSet(std::move(merged));
    }

    /// Replaces label `from` by `to`, re-sorting. Returns nothing when the
    /// result would have a repeated label.
    std::vector<int> with_replaced(int from, int to) const {
        std::vector<int> out = elems_;
        auto it = std::find(out.begin(), out.end(), from);
        if (it == out.end()) return {};
        *it = to;
        std::sort(out.begin(), out.end());
        for (std::size_t i = 1; i < out.size(); ++i)
            if (out[i] == out[i - 1]) return {};
        return out;
    }

    friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.elems_ == b.elems_; }
    friend bool operator!=(const IndexSet& a, const IndexSet& b) { return !(a == b); }
    friend bool operator<(const IndexSet& a, const IndexSet& b) { return a.elems_ < b.elems_; }

    /// "13" when all labels are single digits, "1,3" otherwise. The
    /// comma-free form is what files and reports use for n <= 9.
    std::string str() const {
        bool single_digits = std::all_of(elems_.begin(), elems_.end(),
                                         [](int x) { return x <= 9; });
        std::string out;
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (i > 0 && !single_digits) out += ',';
            out += std::to_string(elems_[i]);
        }
        return out;
    }

    static IndexSet parse(std::string_view text) {
        std::vector<int> elems;
        if (text.find(',') != std::string_view::npos) {
            std::size_t pos = 0;
            while (pos <= text.size()) {
                auto next = text.find(',', pos);
                auto token = text.substr(pos, next == std::string_view::npos ? next : next - pos);
                if (token.empty() || token.find_first_not_of("0123456789") != std::string_view::npos)
                    throw ParseError("bad index set '" + std::string(text) + "'");
                elems.push_back(std::stoi(std::string(token)));
                if (next == std::string_view::npos) break;
                pos = next + 1;
            }
        } else {
            for (char c : text) {
                if (c < '1' || c > '9')
                    throw ParseError("bad index set '" + std::string(text) + "'");
                elems.push_back(c - '0');
            }
        }
        if (elems.empty()) throw ParseError("empty index set");
        try {
            return IndexSet(std::move(elems));
        } catch (const InvalidIndexSet& e) {
            throw ParseError(std::string("bad index set '") + std::string(text) + "': " + e.what());
        }
    }

private:
    std::vector<int> elems_;
};

using Pair = IndexSet;
using Quad = IndexSet;

inline std::uint64_t binomial(int n, int m) {
    if (m < 0 || m > n) return 0;
    m = std::min(m, n - m);
    std::uint64_t r = 1;
    for (int i = 1; i <= m; ++i) {
        r = r * static_cast<std::uint64_t>(n - m + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

/// All C(n, m) m-subsets of [n] in lexicographic order of their increasing
/// tuples. This order is the indexing contract for wedge matrices.
inline std::vector<IndexSet> subsets(int n, int m) {
    if (m < 0 || m > n || n < 0)
        throw ArityOutOfRange("subsets(" + std::to_string(n) + ", " + std::to_string(m) + ")");
    std::vector<IndexSet> out;
    out.reserve(static_cast<std::size_t>(binomial(n, m)));
    std::vector<int> cur(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
    if (m == 0) {
        out.emplace_back();
        return out;
    }
    while (true) {
        out.push_back(IndexSet(cur));
        int i = m - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - m + i + 1) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < m; ++j)
            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

/// Position of I in subsets(n, arity(I)).
inline std::int64_t rank(const IndexSet& I, int n) {
    if (!I.valid_for(n) || I.arity() == 0)
        throw InvalidIndexSet("index set " + I.str() + " not valid for n=" + std::to_string(n));
    const int m = I.arity();
    std::int64_t r = 0;
    int prev = 0;
    for (int i = 0; i < m; ++i) {
        for (int x = prev + 1; x < I[i]; ++x)
            r += static_cast<std::int64_t>(binomial(n - x, m - i - 1));
        prev = I[i];
    }
    return r;
}

/// Inverse of rank: the idx-th m-subset of [n] in lex order.
inline IndexSet unrank(std::int64_t idx, int n, int m) {
    if (m < 1 || m > n || idx < 0 || idx >= static_cast<std::int64_t>(binomial(n, m)))
        throw InvalidIndexSet("unrank(" + std::to_string(idx) + ", " + std::to_string(n) + ", " +
                              std::to_string(m) + ")");
    std::vector<int> elems;
    elems.reserve(static_cast<std::size_t>(m));
    int x = 1;
    for (int i = 0; i < m; ++i) {
        while (true) {
            const auto block = static_cast<std::int64_t>(binomial(n - x, m - i - 1));
            if (idx < block) break;
            idx -= block;
            ++x;
        }
        elems.push_back(x);
        ++x;
    }
    return IndexSet(std::move(elems));
}

/// Sign of the permutation (i_1..i_v, j_1..j_u) sorting the concatenation
/// of two sorted tuples; 0 when they overlap. Computed by counting
/// inversions between the halves.
inline int sign_concat(const IndexSet& I, const IndexSet& J) {
    long inversions = 0;
    for (int a : I.elements()) {
        for (int b : J.elements()) {
            if (a == b) return 0;
            if (a > b) ++inversions;
        }
    }
    return inversions % 2 == 0 ? 1 : -1;
}

struct PairPartition {
    Pair first;
    Pair second;
    int sign;  // sign_concat(first, second), well defined unordered for 2+2 splits
};

/// The three unordered partitions {B, D} of a 4-set, each with its
/// concatenation sign. Lex order of the smaller half: the signs come out
/// as (+, -, +), the canonical quadratic-relation pattern.
inline std::array<PairPartition, 3> pair_partitions(const Quad& H) {
    if (H.arity() != 4) throw InvalidIndexSet("pair_partitions needs a 4-set");
    const int a = H[0], b = H[1], c = H[2], d = H[3];
    std::array<PairPartition, 3> out{
        PairPartition{Pair::pair(a, b), Pair::pair(c, d), 0},
        PairPartition{Pair::pair(a, c), Pair::pair(b, d), 0},
        PairPartition{Pair::pair(a, d), Pair::pair(b, c), 0},
    };
    for (auto& p : out) p.sign = sign_concat(p.first, p.second);
    return out;
}

} // namespace exsq
