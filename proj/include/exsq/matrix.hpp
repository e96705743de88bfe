#pragma once

// Exact dense square matrices with a declared index scheme: Plain(n) for
// ordinary n x n matrices, Wedge(m, n) for matrices whose rows/columns
// are indexed by the lex-ordered m-subsets of [n]. Provides products,
// minors, determinants, inverses, and the minor-entry wedge map.
//
// Matrices are immutable values in practice: operations return fresh
// matrices, so instances can be shared freely between workers.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exsq/errors.hpp"
#include "exsq/index_set.hpp"
#include "exsq/scalar.hpp"

namespace exsq {

enum class IndexingKind { Plain, Wedge };

/// Index scheme of a square matrix: Plain(n) has side n, Wedge(m, n) has
/// side C(n, m). Wedge(2, n) indexes exterior-square images, Wedge(4, n)
/// the tables of fourth-order data.
class Indexing {
public:
    static Indexing plain(int n) { return Indexing(IndexingKind::Plain, n, 1); }
    static Indexing wedge(int m, int n) {
        if (m < 1 || m > n)
            throw ArityOutOfRange("wedge indexing needs 1 <= m <= n");
        return Indexing(IndexingKind::Wedge, n, m);
    }
    static Indexing wedge2(int n) { return wedge(2, n); }
    static Indexing wedge4(int n) { return wedge(4, n); }

    IndexingKind kind() const { return kind_; }
    int n() const { return n_; }
    int arity() const { return m_; }

    int side() const {
        return kind_ == IndexingKind::Plain
                   ? n_
                   : static_cast<int>(binomial(n_, m_));
    }

    friend bool operator==(const Indexing& a, const Indexing& b) {
        return a.kind_ == b.kind_ && a.n_ == b.n_ && (a.kind_ == IndexingKind::Plain || a.m_ == b.m_);
    }
    friend bool operator!=(const Indexing& a, const Indexing& b) { return !(a == b); }

    std::string str() const {
        if (kind_ == IndexingKind::Plain) return "plain";
        return "wedge" + std::to_string(m_);
    }

private:
    Indexing(IndexingKind kind, int n, int m) : kind_(kind), n_(n), m_(m) {}
    IndexingKind kind_;
    int n_;
    int m_;
};

class SquareMatrix {
public:
    SquareMatrix(RingTag ring, Indexing indexing)
        : ring_(std::move(ring)),
          indexing_(indexing),
          side_(indexing.side()),
          entries_(static_cast<std::size_t>(side_) * static_cast<std::size_t>(side_),
                   Scalar::zero(ring_)) {}

    static SquareMatrix identity(const RingTag& ring, const Indexing& indexing) {
        SquareMatrix m(ring, indexing);
        const Scalar one = Scalar::one(ring);
        for (int i = 0; i < m.side_; ++i) m.at(i, i) = one;
        return m;
    }

    const RingTag& ring() const { return ring_; }
    const Indexing& indexing() const { return indexing_; }
    int side() const { return side_; }

    const Scalar& at(int r, int c) const {
        return entries_[static_cast<std::size_t>(r) * static_cast<std::size_t>(side_) +
                        static_cast<std::size_t>(c)];
    }
    Scalar& at(int r, int c) {
        return entries_[static_cast<std::size_t>(r) * static_cast<std::size_t>(side_) +
                        static_cast<std::size_t>(c)];
    }

    /// Entry addressed by index sets (ranked through the lex subset order).
    const Scalar& at(const IndexSet& I, const IndexSet& J) const {
        return at(row_of(I), row_of(J));
    }
    Scalar& at(const IndexSet& I, const IndexSet& J) {
        return at(row_of(I), row_of(J));
    }

    int row_of(const IndexSet& I) const {
        if (indexing_.kind() == IndexingKind::Plain) {
            if (I.arity() != 1 || !I.valid_for(indexing_.n()))
                throw InvalidIndexSet("plain matrices are indexed by single labels");
            return I[0] - 1;
        }
        if (I.arity() != indexing_.arity() || !I.valid_for(indexing_.n()))
            throw InvalidIndexSet("index set " + I.str() + " does not match " + indexing_.str());
        return static_cast<int>(rank(I, indexing_.n()));
    }

    friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
        return a.ring_ == b.ring_ && a.indexing_ == b.indexing_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const SquareMatrix& a, const SquareMatrix& b) { return !(a == b); }

    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
        a.require_compatible(b);
        SquareMatrix out(a.ring_, a.indexing_);
        const int n = a.side_;
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
                const Scalar& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < n; ++j) {
                    const Scalar& bkj = b.at(k, j);
                    if (bkj.is_zero()) continue;
                    out.at(i, j) += aik * bkj;
                }
            }
        }
        return out;
    }

    friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
        a.require_compatible(b);
        SquareMatrix out = a;
        for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += b.entries_[i];
        return out;
    }

    SquareMatrix transpose() const {
        SquareMatrix out(ring_, indexing_);
        for (int i = 0; i < side_; ++i)
            for (int j = 0; j < side_; ++j) out.at(j, i) = at(i, j);
        return out;
    }

    SquareMatrix scaled(const Scalar& c) const {
        SquareMatrix out = *this;
        for (auto& e : out.entries_) e *= c;
        return out;
    }

    bool is_identity() const {
        const Scalar one = Scalar::one(ring_);
        for (int i = 0; i < side_; ++i)
            for (int j = 0; j < side_; ++j) {
                const Scalar& e = at(i, j);
                if (i == j ? e != one : !e.is_zero()) return false;
            }
        return true;
    }

private:
    void require_compatible(const SquareMatrix& b) const {
        if (ring_ != b.ring_) throw RingMismatch("matrices over different rings");
        if (indexing_ != b.indexing_ || side_ != b.side_)
            throw ShapeMismatch("matrices with different shapes");
    }

    RingTag ring_;
    Indexing indexing_;
    int side_;
    std::vector<Scalar> entries_;
};

namespace detail {

/// Determinant of an explicitly listed selection (positions are 0-based),
/// by Laplace expansion along the first row. Exponential; reserved for
/// small selections and for the zero-divisor fallback over Z/m.
inline Scalar det_laplace(const SquareMatrix& a, std::vector<int> rows, std::vector<int> cols) {
    const std::size_t k = rows.size();
    if (k == 0) return Scalar::one(a.ring());
    if (k == 1) return a.at(rows[0], cols[0]);
    if (k == 2)
        return a.at(rows[0], cols[0]) * a.at(rows[1], cols[1]) -
               a.at(rows[0], cols[1]) * a.at(rows[1], cols[0]);
    Scalar acc = Scalar::zero(a.ring());
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t j = 0; j < k; ++j) {
        const Scalar& pivot = a.at(rows[0], cols[j]);
        if (pivot.is_zero()) continue;
        std::vector<int> sub_cols;
        sub_cols.reserve(k - 1);
        for (std::size_t t = 0; t < k; ++t)
            if (t != j) sub_cols.push_back(cols[t]);
        Scalar term = pivot * det_laplace(a, sub_rows, sub_cols);
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

/// Fraction-free Bareiss elimination; valid over any integral domain
/// (Z, Q, Z/p). Division by the previous pivot is exact by construction.
inline Scalar det_bareiss(std::vector<std::vector<Scalar>> m, const RingTag& ring) {
    const std::size_t n = m.size();
    Scalar prev = Scalar::one(ring);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return Scalar::zero(ring);
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).div_exact(prev);
            }
            m[i][k] = Scalar::zero(ring);
        }
        prev = m[k][k];
    }
    Scalar det = m[n - 1][n - 1];
    return sign == 1 ? det : -det;
}

/// Elimination over Z/m with composite m: only unit pivots are used; if a
/// column offers none, expand along it by cofactors. Exact on all inputs.
inline Scalar det_unit_pivot(const SquareMatrix& a, std::vector<int> rows, std::vector<int> cols);

inline Scalar det_unit_pivot_step(const SquareMatrix& a, std::vector<std::vector<Scalar>> m,
                                  const RingTag& ring) {
    const std::size_t n = m.size();
    Scalar det = Scalar::one(ring);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot_row = n;
        for (std::size_t i = k; i < n; ++i) {
            if (m[i][k].is_unit()) {
                pivot_row = i;
                break;
            }
        }
        if (pivot_row == n) {
            bool all_zero = true;
            for (std::size_t i = k; i < n; ++i)
                if (!m[i][k].is_zero()) all_zero = false;
            if (all_zero) return Scalar::zero(ring);
            // Zero-divisor column: cofactor expansion along it.
            Scalar acc = Scalar::zero(ring);
            for (std::size_t i = k; i < n; ++i) {
                if (m[i][k].is_zero()) continue;
                std::vector<std::vector<Scalar>> sub;
                sub.reserve(n - k - 1);
                for (std::size_t r = k; r < n; ++r) {
                    if (r == i) continue;
                    std::vector<Scalar> row;
                    row.reserve(n - k - 1);
                    for (std::size_t c = k + 1; c < n; ++c) row.push_back(m[r][c]);
                    sub.push_back(std::move(row));
                }
                Scalar term = m[i][k] * det_unit_pivot_step(a, std::move(sub), ring);
                if ((i - k) % 2 == 0)
                    acc += term;
                else
                    acc -= term;
            }
            return det * acc;
        }
        if (pivot_row != k) {
            std::swap(m[k], m[pivot_row]);
            det = -det;
        }
        const Scalar pivot_inv = m[k][k].inv();
        det *= m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k].is_zero()) continue;
            const Scalar factor = m[i][k] * pivot_inv;
            for (std::size_t j = k; j < n; ++j) m[i][j] -= factor * m[k][j];
        }
    }
    return det;
}

/// Ordinary Gaussian elimination over Z/p: one inversion per pivot
/// instead of Bareiss's exact division per entry.
inline Scalar det_field_gauss(std::vector<std::vector<Scalar>> m, const RingTag& ring) {
    const std::size_t n = m.size();
    Scalar det = Scalar::one(ring);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot_row = k;
        while (pivot_row < n && m[pivot_row][k].is_zero()) ++pivot_row;
        if (pivot_row == n) return Scalar::zero(ring);
        if (pivot_row != k) {
            std::swap(m[k], m[pivot_row]);
            det = -det;
        }
        det *= m[k][k];
        const Scalar pivot_inv = m[k][k].inv();
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k].is_zero()) continue;
            const Scalar factor = m[i][k] * pivot_inv;
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] -= factor * m[k][j];
        }
    }
    return det;
}

inline Scalar det_of_selection(const SquareMatrix& a, const std::vector<int>& rows,
                               const std::vector<int>& cols) {
    if (rows.size() != cols.size())
        throw ShapeMismatch("minor selection must be square");
    const RingTag& ring = a.ring();
    if (rows.size() <= 4) return det_laplace(a, rows, cols);
    std::vector<std::vector<Scalar>> m;
    m.reserve(rows.size());
    for (int r : rows) {
        std::vector<Scalar> row;
        row.reserve(cols.size());
        for (int c : cols) row.push_back(a.at(r, c));
        m.push_back(std::move(row));
    }
    if (ring.kind() == RingKind::IntegersMod)
        return ring.modulus_is_prime() ? det_field_gauss(std::move(m), ring)
                                       : det_unit_pivot_step(a, std::move(m), ring);
    return det_bareiss(std::move(m), ring);
}

} // namespace detail

/// Determinant of the submatrix with rows I and columns J (labels, 1-based
/// positions within the matrix side).
inline Scalar minor(const SquareMatrix& a, const IndexSet& I, const IndexSet& J) {
    if (I.arity() != J.arity())
        throw InvalidIndexSet("minor needs equally sized row and column sets");
    if (I.arity() == 0 || I.arity() > a.side() ||
        !I.valid_for(a.side()) || !J.valid_for(a.side()))
        throw InvalidIndexSet("minor selection out of range");
    std::vector<int> rows, cols;
    rows.reserve(static_cast<std::size_t>(I.arity()));
    cols.reserve(static_cast<std::size_t>(J.arity()));
    for (int x : I.elements()) rows.push_back(x - 1);
    for (int x : J.elements()) cols.push_back(x - 1);
    return detail::det_of_selection(a, rows, cols);
}

inline Scalar det(const SquareMatrix& a) {
    std::vector<int> all(static_cast<std::size_t>(a.side()));
    for (int i = 0; i < a.side(); ++i) all[static_cast<std::size_t>(i)] = i;
    return detail::det_of_selection(a, all, all);
}

namespace detail {

/// Gauss-Jordan inverse over a field.
inline SquareMatrix inverse_field(const SquareMatrix& a) {
    const int n = a.side();
    SquareMatrix work = a;
    SquareMatrix inv = SquareMatrix::identity(a.ring(), a.indexing());
    for (int k = 0; k < n; ++k) {
        int pivot_row = -1;
        for (int i = k; i < n; ++i) {
            if (!work.at(i, k).is_zero()) {
                pivot_row = i;
                break;
            }
        }
        if (pivot_row < 0) throw NotInvertible("matrix is singular");
        if (pivot_row != k) {
            for (int j = 0; j < n; ++j) {
                std::swap(work.at(k, j), work.at(pivot_row, j));
                std::swap(inv.at(k, j), inv.at(pivot_row, j));
            }
        }
        const Scalar pivot_inv = work.at(k, k).inv();
        for (int j = 0; j < n; ++j) {
            work.at(k, j) *= pivot_inv;
            inv.at(k, j) *= pivot_inv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || work.at(i, k).is_zero()) continue;
            const Scalar factor = work.at(i, k);
            for (int j = 0; j < n; ++j) {
                work.at(i, j) -= factor * work.at(k, j);
                inv.at(i, j) -= factor * inv.at(k, j);
            }
        }
    }
    return inv;
}

} // namespace detail

/// Reinterprets an integer matrix over Z/m (entries reduced).
inline SquareMatrix reduce_mod(const SquareMatrix& a, const BigInt& modulus) {
    if (a.ring().kind() != RingKind::Integers)
        throw RingMismatch("reduce_mod expects an integer matrix");
    const RingTag ring = RingTag::integers_mod(modulus);
    SquareMatrix out(ring, a.indexing());
    for (int i = 0; i < a.side(); ++i)
        for (int j = 0; j < a.side(); ++j)
            out.at(i, j) = Scalar::from_int(ring, a.at(i, j).int_value());
    return out;
}

/// Exact inverse; requires det to be a unit of the ring.
inline SquareMatrix inverse(const SquareMatrix& a) {
    const RingTag& ring = a.ring();
    if (ring.is_field()) return detail::inverse_field(a);

    // Z and composite Z/m: go through the rationals. The lifted adjugate
    // det_Q * inv_Q(lift) is an integer matrix, so the result maps back
    // exactly; the unit check on det decides invertibility in the ring.
    const Scalar d = det(a);
    if (!d.is_unit()) throw NotInvertible("determinant " + d.str() + " is not a unit");
    const RingTag q = RingTag::rationals();
    SquareMatrix lifted(q, a.indexing());
    for (int i = 0; i < a.side(); ++i)
        for (int j = 0; j < a.side(); ++j)
            lifted.at(i, j) = Scalar::from_int(q, a.at(i, j).int_value());
    const SquareMatrix inv_q = detail::inverse_field(lifted);
    const Scalar det_q = det(lifted);
    SquareMatrix out(ring, a.indexing());
    const Scalar unit_inv = d.inv();
    for (int i = 0; i < a.side(); ++i) {
        for (int j = 0; j < a.side(); ++j) {
            const BigRational adj = inv_q.at(i, j).rat_value() * det_q.rat_value();
            if (boost::multiprecision::denominator(adj) != 1)
                throw NotInvertible("adjugate is not integral");  // cannot happen
            out.at(i, j) =
                Scalar::from_int(ring, BigInt(boost::multiprecision::numerator(adj))) * unit_inv;
        }
    }
    return out;
}

/// The exterior-power map on matrices: the (I, J) entry of the result is
/// the m-th order minor of x with rows I and columns J. Entry computation
/// is a pure map over (I, J), so the loop order is immaterial.
inline SquareMatrix wedge(int m, const SquareMatrix& x) {
    if (x.indexing().kind() != IndexingKind::Plain)
        throw ShapeMismatch("wedge expects a plain-indexed matrix");
    const int n = x.side();
    if (m < 1 || m > n)
        throw ArityOutOfRange("wedge power " + std::to_string(m) + " out of range for n=" +
                              std::to_string(n));
    const auto index_sets = subsets(n, m);
    SquareMatrix out(x.ring(), Indexing::wedge(m, n));
    const int N = out.side();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            out.at(i, j) = minor(x, index_sets[static_cast<std::size_t>(i)],
                                 index_sets[static_cast<std::size_t>(j)]);
    return out;
}

} // namespace exsq
