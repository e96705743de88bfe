#pragma once

// Degree-2 component of the ideal cut out by the quadratic relations of
// the rank-2 Grassmannian: the three-term relation polynomials, their
// canonical basis, exact membership with witness extraction, and the
// action of a wedge-2-indexed matrix on quadratic forms in the bracket
// coordinates x_I (I a 2-subset of [n], with x_{ab} = -x_{ba} folded
// into ascending keys).

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "exsq/errors.hpp"
#include "exsq/index_set.hpp"
#include "exsq/matrix.hpp"
#include "exsq/scalar.hpp"

namespace exsq {

/// A quadratic form sum b_{I,J} x_I x_J with unordered keys {I, J};
/// absent keys mean zero, zero coefficients are dropped.
class QuadForm {
public:
    using Key = std::pair<Pair, Pair>;  // normalized: first <= second lex

    QuadForm(int n, RingTag ring) : n_(n), ring_(std::move(ring)) {}

    int n() const { return n_; }
    const RingTag& ring() const { return ring_; }
    const std::map<Key, Scalar>& coeffs() const { return coeffs_; }

    static Key make_key(Pair I, Pair J) {
        if (J < I) std::swap(I, J);
        return {std::move(I), std::move(J)};
    }

    Scalar coeff(const Pair& I, const Pair& J) const {
        auto it = coeffs_.find(make_key(I, J));
        return it == coeffs_.end() ? Scalar::zero(ring_) : it->second;
    }

    void add(const Pair& I, const Pair& J, const Scalar& c) {
        if (c.ring() != ring_) throw RingMismatch("coefficient ring mismatch");
        if (!I.valid_for(n_) || !J.valid_for(n_) || I.arity() != 2 || J.arity() != 2)
            throw InvalidIndexSet("quadratic form keys must be pairs over [n]");
        auto key = make_key(I, J);
        auto [it, inserted] = coeffs_.try_emplace(key, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        } else if (it->second.is_zero()) {
            coeffs_.erase(it);
        }
    }

    /// Adds c * x_a x_b * x_c x_d where the two coordinate index pairs
    /// may be written in either order; the antisymmetry sign is folded in.
    void add_raw(int a, int b, int c, int d, Scalar coeff_value) {
        if (a == b || c == d) return;  // x_{aa} = 0
        if (a > b) {
            std::swap(a, b);
            coeff_value = -coeff_value;
        }
        if (c > d) {
            std::swap(c, d);
            coeff_value = -coeff_value;
        }
        add(Pair::pair(a, b), Pair::pair(c, d), coeff_value);
    }

    friend bool operator==(const QuadForm& x, const QuadForm& y) {
        return x.n_ == y.n_ && x.ring_ == y.ring_ && x.coeffs_ == y.coeffs_;
    }
    friend bool operator!=(const QuadForm& x, const QuadForm& y) { return !(x == y); }

    QuadForm operator-() const {
        QuadForm out(n_, ring_);
        for (const auto& [k, v] : coeffs_) out.coeffs_.emplace(k, -v);
        return out;
    }

    friend QuadForm operator+(const QuadForm& x, const QuadForm& y) {
        if (x.n_ != y.n_ || x.ring_ != y.ring_)
            throw ShapeMismatch("adding forms over different spaces");
        QuadForm out = x;
        for (const auto& [k, v] : y.coeffs_) out.add(k.first, k.second, v);
        return out;
    }

    QuadForm scaled(const Scalar& c) const {
        QuadForm out(n_, ring_);
        if (c.is_zero()) return out;
        for (const auto& [k, v] : coeffs_) out.coeffs_.emplace(k, v * c);
        return out;
    }

private:
    int n_;
    RingTag ring_;
    std::map<Key, Scalar> coeffs_;
};

/// Witness of ideal membership: one coefficient per 4-set.
class ThetaVector {
public:
    ThetaVector(int n, RingTag ring) : n_(n), ring_(std::move(ring)) {}

    int n() const { return n_; }
    const RingTag& ring() const { return ring_; }

    Scalar get(const Quad& S) const {
        auto it = vals_.find(S);
        return it == vals_.end() ? Scalar::zero(ring_) : it->second;
    }

    void set(const Quad& S, const Scalar& v) {
        if (S.arity() != 4 || !S.valid_for(n_)) throw InvalidIndexSet("theta key must be a 4-set");
        if (v.is_zero())
            vals_.erase(S);
        else
            vals_.insert_or_assign(S, v);
    }

    const std::map<Quad, Scalar>& values() const { return vals_; }

    friend bool operator==(const ThetaVector& a, const ThetaVector& b) {
        return a.n_ == b.n_ && a.ring_ == b.ring_ && a.vals_ == b.vals_;
    }

private:
    int n_;
    RingTag ring_;
    std::map<Quad, Scalar> vals_;
};

/// The three-term relation polynomial for (i, J):
///   sum_h (-1)^h x_{i j_h} x_{J \ j_h},  J = {j_1 < j_2 < j_3}, i not in J.
inline QuadForm plucker_poly(int n, int i, const IndexSet& J, const RingTag& ring) {
    if (J.arity() != 3) throw InvalidIndexSet("second argument must be a 3-set");
    if (J.contains(i)) throw OverlappingIndices("index i must avoid J");
    if (i < 1 || i > n || !J.valid_for(n)) throw InvalidIndexSet("labels out of range");
    QuadForm f(n, ring);
    const Scalar one = Scalar::one(ring);
    for (int h = 0; h < 3; ++h) {
        std::vector<int> rest;
        for (int t = 0; t < 3; ++t)
            if (t != h) rest.push_back(J[t]);
        const Scalar sign = (h % 2 == 0) ? -one : one;  // (-1)^{h+1} for 1-based h
        f.add_raw(i, J[h], rest[0], rest[1], sign);
    }
    return f;
}

/// The C(n,4) canonical generators f_{min(H), H \ min(H)} in lex order of
/// the 4-set H. Empty (not an error) for n < 4: the degree-2 component is
/// genuinely zero there.
inline std::vector<QuadForm> canonical_basis(int n, const RingTag& ring) {
    std::vector<QuadForm> out;
    if (n < 4) return out;
    for (const auto& H : subsets(n, 4)) {
        out.push_back(plucker_poly(n, H[0], IndexSet({H[1], H[2], H[3]}), ring));
    }
    return out;
}

struct IdealMembership {
    bool accepted = false;
    std::optional<ThetaVector> theta;  // present iff accepted
};

/// Exact membership test for the degree-2 component: accepts iff
/// (a) coefficients with overlapping key pairs vanish, and (b) for each
/// 4-set S the sign-weighted coefficient sign(I,J)*b_{I,J} is constant
/// over the three partitions S = I ⊔ J. The canonical generator for S
/// has coefficients -sign(I,J), so b = sum_S theta_S f_{canonical(S)}
/// with theta_S equal to the negated common value.
inline IdealMembership in_ideal(const QuadForm& b) {
    IdealMembership out;
    ThetaVector theta(b.n(), b.ring());
    std::map<Quad, Scalar> seen;
    for (const auto& [key, coeff] : b.coeffs()) {
        if (!key.first.disjoint_from(key.second)) return out;  // condition (a)
        const Quad S = key.first.disjoint_union(key.second);
        const Scalar weighted =
            Scalar::from_int(b.ring(), sign_concat(key.first, key.second)) * coeff;
        auto [it, inserted] = seen.try_emplace(S, weighted);
        if (!inserted && it->second != weighted) return out;  // condition (b)
    }
    // Absent coefficients are zeros and must agree with the recorded
    // value too: stored coefficients are nonzero, so a 4-set seen on one
    // partition but missing on another is a violation of (b).
    for (const auto& [S, v] : seen) {
        for (const auto& p : pair_partitions(S)) {
            if (b.coeff(p.first, p.second).is_zero()) return out;
        }
        theta.set(S, -v);
    }
    out.accepted = true;
    out.theta = std::move(theta);
    return out;
}

/// Substitutes x_K -> sum_A g_{A,K} x_A into the form. The expansion is
/// an ordered double sum over (A, C); folding it into unordered keys
/// makes the coefficient of x_A x_C (A != C) collect both the (A, C)
/// and (C, A) terms.
inline QuadForm act(const SquareMatrix& g, const QuadForm& f) {
    if (g.indexing() != Indexing::wedge2(f.n()))
        throw ShapeMismatch("action needs a wedge2-indexed matrix over the form's [n]");
    if (g.ring() != f.ring()) throw RingMismatch("matrix and form rings differ");
    const auto pairs = subsets(f.n(), 2);
    const int N = static_cast<int>(pairs.size());
    QuadForm out(f.n(), f.ring());
    for (const auto& [key, coeff] : f.coeffs()) {
        const int k_rank = static_cast<int>(rank(key.first, f.n()));
        const int l_rank = static_cast<int>(rank(key.second, f.n()));
        for (int a = 0; a < N; ++a) {
            const Scalar& g_ak = g.at(a, k_rank);
            if (g_ak.is_zero()) continue;
            for (int c = 0; c < N; ++c) {
                const Scalar& g_cl = g.at(c, l_rank);
                if (g_cl.is_zero()) continue;
                out.add(pairs[static_cast<std::size_t>(a)],
                        pairs[static_cast<std::size_t>(c)], coeff * g_ak * g_cl);
            }
        }
    }
    return out;
}

} // namespace exsq
