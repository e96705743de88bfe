#pragma once

// Elementary transvections t_{i,j}(xi) = e + xi*e_{i,j} at plain or
// wedge-2 indexing, and the decomposition of a wedged transvection into
// a commuting product of n-2 elementary transvections of the big group.

#include <cstdint>
#include <random>
#include <vector>

#include "exsq/errors.hpp"
#include "exsq/index_set.hpp"
#include "exsq/matrix.hpp"
#include "exsq/scalar.hpp"

namespace exsq {

/// row/col are 0-based positions within the indexing scheme.
struct Transvection {
    Indexing indexing;
    int row = 0;
    int col = 0;
    Scalar param;

    Transvection(Indexing idx, int r, int c, Scalar p)
        : indexing(idx), row(r), col(c), param(std::move(p)) {
        if (r == c || r < 0 || c < 0 || r >= idx.side() || c >= idx.side())
            throw InvalidIndexSet("transvection needs distinct in-range row and column");
    }

    /// Convenience for plain indexing with 1-based labels.
    static Transvection plain(int n, int i, int j, Scalar p) {
        return Transvection(Indexing::plain(n), i - 1, j - 1, std::move(p));
    }

    /// Wedge-2 transvection addressed by row/column pairs.
    static Transvection wedge2(int n, const Pair& row_pair, const Pair& col_pair, Scalar p) {
        const Indexing idx = Indexing::wedge2(n);
        return Transvection(idx, static_cast<int>(rank(row_pair, n)),
                            static_cast<int>(rank(col_pair, n)), std::move(p));
    }
};

inline SquareMatrix to_matrix(const Transvection& t) {
    SquareMatrix m = SquareMatrix::identity(t.param.ring(), t.indexing);
    m.at(t.row, t.col) = t.param;
    return m;
}

/// g * t in O(side): adds param * column(row) into column(col).
inline void apply_right(SquareMatrix& g, const Transvection& t) {
    if (g.indexing() != t.indexing || g.ring() != t.param.ring())
        throw ShapeMismatch("transvection does not match matrix");
    for (int r = 0; r < g.side(); ++r) {
        const Scalar& v = g.at(r, t.row);
        if (!v.is_zero()) g.at(r, t.col) += v * t.param;
    }
}

/// The product of a transvection sequence, via sparse column updates.
inline SquareMatrix product(const std::vector<Transvection>& ts, const RingTag& ring,
                            const Indexing& indexing) {
    SquareMatrix g = SquareMatrix::identity(ring, indexing);
    for (const auto& t : ts) apply_right(g, t);
    return g;
}

/// Writes the wedge-2 image of t_{i,j}(xi) as a product of n-2 elementary
/// transvections of the C(n,2)-sized group. For i < j the factors are
///   t_{ki,kj}(xi)  for k < i,   t_{il,lj}(-xi)  for i < l < j,
///   t_{im,jm}(xi)  for m > j,
/// and for i > j
///   t_{ki,kj}(xi)  for k < j,   t_{li,jl}(-xi)  for j < l < i,
///   t_{im,jm}(xi)  for m > i.
/// All pair indices are already ascending, so no sign normalization is
/// needed; the factors commute pairwise.
inline std::vector<Transvection> decompose_wedge2(int n, int i, int j, const Scalar& xi) {
    if (n < 3) throw RankTooSmall("decompose_wedge2 needs n >= 3");
    if (i == j || i < 1 || j < 1 || i > n || j > n)
        throw InvalidIndexSet("transvection labels must be distinct in [1, n]");
    std::vector<Transvection> out;
    out.reserve(static_cast<std::size_t>(n - 2));
    const Scalar neg_xi = -xi;
    const int lo = std::min(i, j), hi = std::max(i, j);
    for (int k = 1; k < lo; ++k)
        out.push_back(Transvection::wedge2(n, Pair::pair(k, i), Pair::pair(k, j), xi));
    for (int l = lo + 1; l < hi; ++l) {
        if (i < j)
            out.push_back(Transvection::wedge2(n, Pair::pair(i, l), Pair::pair(l, j), neg_xi));
        else
            out.push_back(Transvection::wedge2(n, Pair::pair(l, i), Pair::pair(j, l), neg_xi));
    }
    for (int m = hi + 1; m <= n; ++m)
        out.push_back(Transvection::wedge2(n, Pair::pair(i, m), Pair::pair(j, m), xi));
    return out;
}

/// Checks the decomposition the hard way: the factor product must equal
/// wedge(2, t_{i,j}(xi)) under every factor ordering, and all factor
/// pairs must commute.
inline bool verify_decomposition(int n, int i, int j, const Scalar& xi) {
    const RingTag& ring = xi.ring();
    const auto factors = decompose_wedge2(n, i, j, xi);
    const SquareMatrix expected = wedge(2, to_matrix(Transvection::plain(n, i, j, xi)));
    const Indexing idx = Indexing::wedge2(n);

    std::vector<std::size_t> order(factors.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    do {
        SquareMatrix g = SquareMatrix::identity(ring, idx);
        for (std::size_t k : order) apply_right(g, factors[k]);
        if (g != expected) return false;
    } while (std::next_permutation(order.begin(), order.end()));

    for (std::size_t a = 0; a < factors.size(); ++a) {
        for (std::size_t b = a + 1; b < factors.size(); ++b) {
            const SquareMatrix ga = to_matrix(factors[a]);
            const SquareMatrix gb = to_matrix(factors[b]);
            if (ga * gb != gb * ga) return false;
        }
    }
    return true;
}

/// Deterministic seeded product of random transvections (PRNG:
/// mt19937_64). Determinant is 1 by construction.
inline SquareMatrix random_elementary(int n, int length, const RingTag& ring,
                                      std::uint64_t seed) {
    if (n < 2) throw RankTooSmall("random_elementary needs n >= 2");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> label(1, n);
    SquareMatrix g = SquareMatrix::identity(ring, Indexing::plain(n));
    std::uniform_int_distribution<long long> small(-3, 3);
    for (int step = 0; step < length; ++step) {
        int i = label(rng), j = label(rng);
        while (j == i) j = label(rng);
        Scalar xi = Scalar::zero(ring);
        if (ring.kind() == RingKind::IntegersMod) {
            std::uniform_int_distribution<std::uint64_t> residue(
                0, static_cast<std::uint64_t>(ring.modulus() - 1));
            xi = Scalar::from_int(ring, BigInt(residue(rng)));
        } else {
            xi = Scalar::from_int(ring, small(rng));
        }
        apply_right(g, Transvection::plain(n, i, j, xi));
    }
    return g;
}

} // namespace exsq
