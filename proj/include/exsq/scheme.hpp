#pragma once

// The equation systems cutting out the exterior-square group scheme
// inside GL_N, N = C(n,2). The algebraic ingredient is the family of
// exterior numbers
//
//   a^H_{A,C}(g) = sum_{B ⊔ D = H} sign(B,D) g_{A,B} g_{C,D}
//
// over ordered complementary pairs (B, D) of the 4-set H. A matrix g is
// a scheme point iff every a^H_{A,C} with overlapping A, C vanishes and
// the sign-weighted values sign(A,C) a^H_{A,C} depend on A ⊔ C only;
// those common values form the theta table, which for g = wedge(2, x)
// consists of the fourth-order minors of x.
//
// The constraint sweep over (H, A, C) keys is a pure reduction: keys can
// be partitioned across workers and reports merged by lex-smallest
// violating key. This implementation runs it single-threaded, with a
// word-sized residue fast path for small moduli.

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "exsq/errors.hpp"
#include "exsq/index_set.hpp"
#include "exsq/matrix.hpp"
#include "exsq/scalar.hpp"
#include "exsq/transvection.hpp"

namespace exsq {

/// Dense (S, H) -> scalar table indexed by the lex-ordered 4-subsets of
/// [n]. Over a machine-word modulus the payload is stored as raw
/// residues; tables of fourth-order data get large (C(n,4)^2 entries).
class ThetaTable {
public:
    ThetaTable(int n, RingTag ring)
        : n_(n),
          ring_(std::move(ring)),
          side_(n >= 4 ? static_cast<int>(binomial(n, 4)) : 0),
          compact_(use_compact(ring_)) {
        const auto cells = static_cast<std::size_t>(side_) * static_cast<std::size_t>(side_);
        if (compact_)
            residues_.assign(cells, 0);
        else
            values_.assign(cells, Scalar::zero(ring_));
    }

    /// The delta table: 1 at (S, S), the theta table of the identity.
    static ThetaTable identity(int n, const RingTag& ring) {
        ThetaTable t(n, ring);
        for (int s = 0; s < t.side_; ++s) t.set(s, s, Scalar::one(ring));
        return t;
    }

    int n() const { return n_; }
    int side() const { return side_; }
    const RingTag& ring() const { return ring_; }

    Scalar at(int s, int h) const {
        if (compact_) return Scalar::from_int(ring_, BigInt(residues_[cell(s, h)]));
        return values_[cell(s, h)];
    }
    Scalar at(const Quad& S, const Quad& H) const {
        return at(static_cast<int>(rank(S, n_)), static_cast<int>(rank(H, n_)));
    }

    void set(int s, int h, const Scalar& v) {
        if (v.ring() != ring_) throw RingMismatch("theta value ring mismatch");
        if (compact_)
            residues_[cell(s, h)] = static_cast<std::uint64_t>(v.int_value());
        else
            values_[cell(s, h)] = v;
    }

    bool is_compact() const { return compact_; }
    std::uint64_t residue(int s, int h) const { return residues_[cell(s, h)]; }
    void set_residue(int s, int h, std::uint64_t v) { residues_[cell(s, h)] = v; }

    friend bool operator==(const ThetaTable& a, const ThetaTable& b) {
        return a.n_ == b.n_ && a.ring_ == b.ring_ && a.residues_ == b.residues_ &&
               a.values_ == b.values_;
    }
    friend bool operator!=(const ThetaTable& a, const ThetaTable& b) { return !(a == b); }

    /// Determinant under the 4-subset indexing; 1 for empty tables.
    Scalar det() const {
        if (side_ == 0) return Scalar::one(ring_);
        if (compact_ && ring_.modulus_is_prime()) return det_compact_prime();
        SquareMatrix m(ring_, Indexing::wedge4(n_));
        for (int s = 0; s < side_; ++s)
            for (int h = 0; h < side_; ++h) m.at(s, h) = at(s, h);
        return exsq::det(m);
    }

private:
    static bool use_compact(const RingTag& ring) {
        return ring.kind() == RingKind::IntegersMod &&
               ring.modulus() <= BigInt("9223372036854775807");
    }

    std::size_t cell(int s, int h) const {
        return static_cast<std::size_t>(s) * static_cast<std::size_t>(side_) +
               static_cast<std::size_t>(h);
    }

    Scalar det_compact_prime() const {
        const auto m = static_cast<std::uint64_t>(ring_.modulus());
        std::vector<std::uint64_t> w = residues_;
        const int nn = side_;
        auto mul = [m](std::uint64_t a, std::uint64_t b) {
            return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
        };
        std::uint64_t detv = 1 % m;
        bool neg = false;
        for (int k = 0; k < nn; ++k) {
            int pivot = -1;
            for (int i = k; i < nn; ++i)
                if (w[static_cast<std::size_t>(i) * nn + k] != 0) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) return Scalar::zero(ring_);
            if (pivot != k) {
                for (int j = 0; j < nn; ++j)
                    std::swap(w[static_cast<std::size_t>(k) * nn + j],
                              w[static_cast<std::size_t>(pivot) * nn + j]);
                neg = !neg;
            }
            const std::uint64_t p = w[static_cast<std::size_t>(k) * nn + k];
            detv = mul(detv, p);
            const std::uint64_t p_inv = static_cast<std::uint64_t>(
                Scalar::from_int(ring_, BigInt(p)).inv().int_value());
            for (int i = k + 1; i < nn; ++i) {
                const std::uint64_t f = mul(w[static_cast<std::size_t>(i) * nn + k], p_inv);
                if (f == 0) continue;
                for (int j = k; j < nn; ++j) {
                    std::uint64_t& cell_ij = w[static_cast<std::size_t>(i) * nn + j];
                    const std::uint64_t sub = mul(f, w[static_cast<std::size_t>(k) * nn + j]);
                    cell_ij = (cell_ij + m - sub) % m;
                }
            }
        }
        if (neg) detv = (m - detv) % m;
        return Scalar::from_int(ring_, BigInt(detv));
    }

    int n_;
    RingTag ring_;
    int side_;
    bool compact_;
    std::vector<std::uint64_t> residues_;  // compact payload
    std::vector<Scalar> values_;           // generic payload
};

struct ExtNumberKey {
    Pair A;
    Pair C;
    Quad H;
};

struct Violation {
    enum class Kind { ZeroConstraint, ConsistencyConstraint };
    Kind kind = Kind::ZeroConstraint;
    ExtNumberKey key;
    Scalar value;  // the offending exterior number a^H_{A,C}
    std::optional<ExtNumberKey> conflicting_key;
};

struct MembershipReport {
    bool accepted = false;
    std::optional<ThetaTable> theta;     // present iff accepted
    std::vector<Violation> violations;   // first entry is the lex-first violation
    std::optional<Scalar> theta_det;     // recorded on request; no condition imposed
};

/// Signature for pluggable exterior-number evaluators (the diagram route
/// supplies one); empty means the direct 6-term sum.
using ExtNumberFn =
    std::function<Scalar(const SquareMatrix&, const Pair&, const Pair&, const Quad&)>;

struct MembershipOptions {
    bool require_invertible = true;  // equations-only mode turns this off
    bool full_report = false;        // sweep past the first violation
    bool compute_theta_det = false;
    ExtNumberFn evaluator;           // alternative exterior-number route
    std::ostream* trace = nullptr;   // logs every checked constraint key
};

/// The direct 6-term exterior number: ordered complementary pairs of H,
/// grouped as the three unordered partitions taken in both orders.
/// Symmetric in A and C.
inline Scalar exterior_number(const SquareMatrix& g, const Pair& A, const Pair& C,
                              const Quad& H) {
    if (g.indexing().kind() != IndexingKind::Wedge || g.indexing().arity() != 2)
        throw ShapeMismatch("exterior numbers need a wedge2-indexed matrix");
    const int n = g.indexing().n();
    if (A.arity() != 2 || C.arity() != 2 || H.arity() != 4 || !A.valid_for(n) ||
        !C.valid_for(n) || !H.valid_for(n))
        throw InvalidIndexSet("exterior number key (A, C, H) malformed");
    const int a = static_cast<int>(rank(A, n));
    const int c = static_cast<int>(rank(C, n));
    Scalar acc = Scalar::zero(g.ring());
    for (const auto& p : pair_partitions(H)) {
        const int b = static_cast<int>(rank(p.first, n));
        const int d = static_cast<int>(rank(p.second, n));
        Scalar term = g.at(a, b) * g.at(c, d) + g.at(a, d) * g.at(c, b);
        if (p.sign < 0)
            acc -= term;
        else
            acc += term;
    }
    return acc;
}

/// theta_S^H = fourth-order minor of x with rows S and columns H; the
/// independent description of the theta table of wedge(2, x).
inline ThetaTable theta_from_minors(const SquareMatrix& x) {
    if (x.indexing().kind() != IndexingKind::Plain)
        throw ShapeMismatch("theta_from_minors expects a plain matrix");
    const int n = x.side();
    ThetaTable t(n, x.ring());
    if (n < 4) return t;
    const auto quads = subsets(n, 4);
    for (int s = 0; s < t.side(); ++s)
        for (int h = 0; h < t.side(); ++h)
            t.set(s, h, minor(x, quads[static_cast<std::size_t>(s)],
                              quads[static_cast<std::size_t>(h)]));
    return t;
}

/// Theta table of a product: (theta_{gh})_S^H = sum_I theta_S^I(g) theta_I^H(h).
inline ThetaTable theta_compose(const ThetaTable& a, const ThetaTable& b) {
    if (a.n() != b.n() || a.ring() != b.ring())
        throw ShapeMismatch("theta tables of different shape");
    ThetaTable out(a.n(), a.ring());
    const int q = a.side();
    if (a.is_compact() && b.is_compact() && out.is_compact()) {
        const auto m = static_cast<std::uint64_t>(a.ring().modulus());
        for (int s = 0; s < q; ++s) {
            for (int i = 0; i < q; ++i) {
                const std::uint64_t asi = a.residue(s, i);
                if (asi == 0) continue;
                for (int h = 0; h < q; ++h) {
                    const std::uint64_t prod = static_cast<std::uint64_t>(
                        static_cast<unsigned __int128>(asi) * b.residue(i, h) % m);
                    out.set_residue(s, h, (out.residue(s, h) + prod) % m);
                }
            }
        }
        return out;
    }
    for (int s = 0; s < q; ++s) {
        for (int i = 0; i < q; ++i) {
            const Scalar asi = a.at(s, i);
            if (asi.is_zero()) continue;
            for (int h = 0; h < q; ++h) {
                const Scalar bih = b.at(i, h);
                if (bih.is_zero()) continue;
                out.set(s, h, out.at(s, h) + asi * bih);
            }
        }
    }
    return out;
}

namespace detail {

/// Rank-level lookup tables shared by the sweep implementations.
struct SweepTables {
    int n = 0;
    int N = 0;  // C(n,2)
    int Q = 0;  // C(n,4)
    std::vector<IndexSet> pairs;
    std::vector<IndexSet> quads;
    std::vector<signed char> disjoint;   // N*N
    std::vector<int> union_rank;         // N*N, -1 when overlapping
    std::vector<signed char> sign_ac;    // N*N, sign_concat for disjoint pairs
    struct HPartition {
        int b, d;
        signed char sign;
    };
    std::vector<std::array<HPartition, 3>> partitions;  // per quad rank
};

inline SweepTables make_sweep_tables(int n) {
    SweepTables t;
    t.n = n;
    t.pairs = subsets(n, 2);
    t.quads = n >= 4 ? subsets(n, 4) : std::vector<IndexSet>{};
    t.N = static_cast<int>(t.pairs.size());
    t.Q = static_cast<int>(t.quads.size());
    t.disjoint.assign(static_cast<std::size_t>(t.N) * t.N, 0);
    t.union_rank.assign(static_cast<std::size_t>(t.N) * t.N, -1);
    t.sign_ac.assign(static_cast<std::size_t>(t.N) * t.N, 0);
    for (int a = 0; a < t.N; ++a) {
        for (int c = 0; c < t.N; ++c) {
            const auto& A = t.pairs[static_cast<std::size_t>(a)];
            const auto& C = t.pairs[static_cast<std::size_t>(c)];
            if (!A.disjoint_from(C)) continue;
            const std::size_t cell = static_cast<std::size_t>(a) * t.N + c;
            t.disjoint[cell] = 1;
            t.union_rank[cell] = static_cast<int>(rank(A.disjoint_union(C), n));
            t.sign_ac[cell] = static_cast<signed char>(sign_concat(A, C));
        }
    }
    t.partitions.reserve(static_cast<std::size_t>(t.Q));
    for (const auto& H : t.quads) {
        std::array<SweepTables::HPartition, 3> ps{};
        const auto parts = pair_partitions(H);
        for (int i = 0; i < 3; ++i) {
            ps[static_cast<std::size_t>(i)] = {
                static_cast<int>(rank(parts[static_cast<std::size_t>(i)].first, n)),
                static_cast<int>(rank(parts[static_cast<std::size_t>(i)].second, n)),
                static_cast<signed char>(parts[static_cast<std::size_t>(i)].sign)};
        }
        t.partitions.push_back(ps);
    }
    return t;
}

/// Shared violation/theta bookkeeping; Value is Scalar or uint64_t.
template <typename MakeScalar>
inline void record_violation(MembershipReport& report, Violation::Kind kind,
                             const SweepTables& t, int h, int a, int c,
                             MakeScalar&& make_scalar, std::optional<std::pair<int, int>> rep) {
    Violation v;
    v.kind = kind;
    v.key = ExtNumberKey{t.pairs[static_cast<std::size_t>(a)],
                         t.pairs[static_cast<std::size_t>(c)],
                         t.quads[static_cast<std::size_t>(h)]};
    v.value = make_scalar();
    if (rep) {
        v.conflicting_key = ExtNumberKey{t.pairs[static_cast<std::size_t>(rep->first)],
                                         t.pairs[static_cast<std::size_t>(rep->second)],
                                         t.quads[static_cast<std::size_t>(h)]};
    }
    report.violations.push_back(std::move(v));
}

/// Word-sized residue sweep for IntegersMod with a small modulus.
inline void sweep_compact(const SquareMatrix& g, const SweepTables& t,
                          const MembershipOptions& opts, MembershipReport& report,
                          ThetaTable& theta) {
    const auto m = static_cast<std::uint64_t>(g.ring().modulus());
    const int N = t.N;
    std::vector<std::uint64_t> res(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            res[static_cast<std::size_t>(i) * N + j] =
                static_cast<std::uint64_t>(g.at(i, j).int_value());

    auto mul = [m](std::uint64_t x, std::uint64_t y) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % m);
    };

    std::vector<signed char> seen(static_cast<std::size_t>(t.Q), 0);
    std::vector<std::pair<int, int>> rep(static_cast<std::size_t>(t.Q));
    std::vector<std::uint64_t> col(static_cast<std::size_t>(6) * N);
    for (int h = 0; h < t.Q; ++h) {
        const auto& parts = t.partitions[static_cast<std::size_t>(h)];
        for (int p = 0; p < 3; ++p) {
            for (int r = 0; r < N; ++r) {
                col[static_cast<std::size_t>(2 * p) * N + r] =
                    res[static_cast<std::size_t>(r) * N + parts[static_cast<std::size_t>(p)].b];
                col[static_cast<std::size_t>(2 * p + 1) * N + r] =
                    res[static_cast<std::size_t>(r) * N + parts[static_cast<std::size_t>(p)].d];
            }
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (int a = 0; a < N; ++a) {
            for (int c = a; c < N; ++c) {
                std::uint64_t acc = 0;
                for (int p = 0; p < 3; ++p) {
                    const std::uint64_t* cb = col.data() + static_cast<std::size_t>(2 * p) * N;
                    const std::uint64_t* cd = col.data() + static_cast<std::size_t>(2 * p + 1) * N;
                    std::uint64_t term = (mul(cb[a], cd[c]) + mul(cd[a], cb[c])) % m;
                    if (parts[static_cast<std::size_t>(p)].sign < 0) term = (m - term) % m;
                    acc = (acc + term) % m;
                }
                const std::size_t cell = static_cast<std::size_t>(a) * N + c;
                if (!t.disjoint[cell]) {
                    if (acc != 0) {
                        record_violation(
                            report, Violation::Kind::ZeroConstraint, t, h, a, c,
                            [&] { return Scalar::from_int(g.ring(), BigInt(acc)); },
                            std::nullopt);
                        if (!opts.full_report) return;
                    }
                    continue;
                }
                const int s = t.union_rank[cell];
                const std::uint64_t weighted = t.sign_ac[cell] < 0 ? (m - acc) % m : acc;
                if (!seen[static_cast<std::size_t>(s)]) {
                    seen[static_cast<std::size_t>(s)] = 1;
                    rep[static_cast<std::size_t>(s)] = {a, c};
                    theta.set_residue(s, h, weighted);
                } else if (theta.residue(s, h) != weighted) {
                    record_violation(
                        report, Violation::Kind::ConsistencyConstraint, t, h, a, c,
                        [&] { return Scalar::from_int(g.ring(), BigInt(acc)); },
                        rep[static_cast<std::size_t>(s)]);
                    if (!opts.full_report) return;
                }
            }
        }
    }
}

/// Generic sweep over Scalar arithmetic; also hosts the pluggable
/// evaluator and tracing.
inline void sweep_generic(const SquareMatrix& g, const SweepTables& t,
                          const MembershipOptions& opts, MembershipReport& report,
                          ThetaTable& theta) {
    const RingTag& ring = g.ring();
    const int N = t.N;
    std::vector<signed char> seen(static_cast<std::size_t>(t.Q), 0);
    std::vector<std::pair<int, int>> rep(static_cast<std::size_t>(t.Q));
    for (int h = 0; h < t.Q; ++h) {
        const auto& parts = t.partitions[static_cast<std::size_t>(h)];
        std::fill(seen.begin(), seen.end(), 0);
        for (int a = 0; a < N; ++a) {
            for (int c = a; c < N; ++c) {
                Scalar acc = Scalar::zero(ring);
                if (opts.evaluator) {
                    acc = opts.evaluator(g, t.pairs[static_cast<std::size_t>(a)],
                                         t.pairs[static_cast<std::size_t>(c)],
                                         t.quads[static_cast<std::size_t>(h)]);
                } else {
                    for (const auto& p : parts) {
                        Scalar term = g.at(a, p.b) * g.at(c, p.d) + g.at(a, p.d) * g.at(c, p.b);
                        if (p.sign < 0)
                            acc -= term;
                        else
                            acc += term;
                    }
                }
                const std::size_t cell = static_cast<std::size_t>(a) * N + c;
                if (opts.trace) {
                    *opts.trace << (t.disjoint[cell] ? "consistency " : "zero ")
                                << t.pairs[static_cast<std::size_t>(a)].str() << ","
                                << t.pairs[static_cast<std::size_t>(c)].str() << "|"
                                << t.quads[static_cast<std::size_t>(h)].str() << " = "
                                << acc.str() << "\n";
                }
                if (!t.disjoint[cell]) {
                    if (!acc.is_zero()) {
                        record_violation(report, Violation::Kind::ZeroConstraint, t, h, a, c,
                                         [&] { return acc; }, std::nullopt);
                        if (!opts.full_report) return;
                    }
                    continue;
                }
                const int s = t.union_rank[cell];
                const Scalar weighted = t.sign_ac[cell] < 0 ? -acc : acc;
                if (!seen[static_cast<std::size_t>(s)]) {
                    seen[static_cast<std::size_t>(s)] = 1;
                    rep[static_cast<std::size_t>(s)] = {a, c};
                    theta.set(s, h, weighted);
                } else if (theta.at(s, h) != weighted) {
                    record_violation(report, Violation::Kind::ConsistencyConstraint, t, h, a, c,
                                     [&] { return acc; }, rep[static_cast<std::size_t>(s)]);
                    if (!opts.full_report) return;
                }
            }
        }
    }
}

} // namespace detail

/// Decides scheme membership for a wedge2-indexed matrix. Invertibility
/// is checked first (a precondition of acceptance, not of evaluating
/// the equations); the sweep order is lexicographic in (H, A, C) and the
/// first violated constraint is reported deterministically.
inline MembershipReport membership(const SquareMatrix& g, const MembershipOptions& opts = {}) {
    if (g.indexing().kind() != IndexingKind::Wedge || g.indexing().arity() != 2)
        throw ShapeMismatch("membership expects a wedge2-indexed matrix");
    if (opts.require_invertible && !det(g).is_unit())
        throw NotInvertible("matrix is not invertible over " + g.ring().str());

    const int n = g.indexing().n();
    MembershipReport report;
    ThetaTable theta(n, g.ring());
    const auto tables = detail::make_sweep_tables(n);
    if (theta.is_compact() && !opts.evaluator && !opts.trace)
        detail::sweep_compact(g, tables, opts, report, theta);
    else
        detail::sweep_generic(g, tables, opts, report, theta);

    report.accepted = report.violations.empty();
    if (report.accepted) {
        if (opts.compute_theta_det) report.theta_det = theta.det();
        report.theta = std::move(theta);
    }
    return report;
}

/// Membership modulo an ideal (modulus) of Z: every equality is tested
/// mod the modulus, deciding membership of the reduction.
inline MembershipReport congruence_membership(const SquareMatrix& g, const BigInt& modulus,
                                              const MembershipOptions& opts = {}) {
    if (g.ring().kind() != RingKind::Integers)
        throw RingMismatch("congruence membership expects an integer matrix");
    if (modulus < 2)
        throw DomainError("congruence modulus must be >= 2 (the zero ring accepts everything)");
    const SquareMatrix reduced = reduce_mod(g, modulus);
    try {
        return membership(reduced, opts);
    } catch (const NotInvertible& e) {
        throw NotInvertibleModulo(std::string(e.what()) + " (mod " + modulus.str() + ")");
    }
}

/// Closed form for the exterior numbers of a wedged transvection
/// wedge(2, t_{i,j}(xi)). The three contributing shapes are (B, D) =
/// (A, C) when H = A ⊔ C, and the index-shifted pairs obtained by
/// replacing i with j in C (resp. A); overlapping A, C can make two
/// shapes contribute to the same H, in which case they cancel.
inline Scalar transvection_ext_numbers(int n, int i, int j, const Scalar& xi, const Pair& A,
                                       const Pair& C, const Quad& H) {
    if (i == j || i < 1 || j < 1 || i > n || j > n)
        throw InvalidIndexSet("transvection labels must be distinct in [1, n]");
    if (A.arity() != 2 || C.arity() != 2 || H.arity() != 4 || !A.valid_for(n) ||
        !C.valid_for(n) || !H.valid_for(n))
        throw InvalidIndexSet("exterior number key (A, C, H) malformed");
    const RingTag& ring = xi.ring();
    const SquareMatrix t = to_matrix(Transvection::plain(n, i, j, xi));
    Scalar value = Scalar::zero(ring);
    if (A.disjoint_from(C) && A.disjoint_union(C) == H)
        value += Scalar::from_int(ring, sign_concat(A, C));
    if (C.contains(i)) {
        const auto shifted = C.with_replaced(i, j);
        if (!shifted.empty()) {
            const Pair D{shifted};
            if (A.disjoint_from(D) && A.disjoint_union(D) == H)
                value += Scalar::from_int(ring, sign_concat(A, D)) * minor(t, C, D);
        }
    }
    if (A.contains(i)) {
        const auto shifted = A.with_replaced(i, j);
        if (!shifted.empty()) {
            const Pair B{shifted};
            if (B.disjoint_from(C) && B.disjoint_union(C) == H)
                value += Scalar::from_int(ring, sign_concat(B, C)) * minor(t, A, B);
        }
    }
    return value;
}

/// Symmetric coefficient matrix of the canonical quadratic relation for
/// the 4-set I: (B_I)_{M,L} = sign(M,L) when M ⊔ L = I, else 0.
inline SquareMatrix b_matrix(const Quad& Iset, int n, const RingTag& ring) {
    if (Iset.arity() != 4 || !Iset.valid_for(n))
        throw InvalidIndexSet("b_matrix needs a 4-set over [n]");
    SquareMatrix B(ring, Indexing::wedge2(n));
    for (const auto& p : pair_partitions(Iset)) {
        const int mrank = static_cast<int>(rank(p.first, n));
        const int lrank = static_cast<int>(rank(p.second, n));
        const Scalar s = Scalar::from_int(ring, p.sign);
        B.at(mrank, lrank) = s;
        B.at(lrank, mrank) = s;
    }
    return B;
}

struct SecondFormReport {
    bool accepted = false;
    /// alpha.at(I, J) = alpha_J^I; present iff accepted.
    std::optional<ThetaTable> alpha;
};

/// The alternative equation system: g is a scheme point iff for every
/// 4-set I there are constants alpha_J^I with
///   g^t B_I = sum_J alpha_J^I B_J g^{-1}.
/// Each I gives a linear system in C(n,4) unknowns, solved exactly by
/// elimination; needs a field (Q or Z/p).
inline SecondFormReport second_form_membership(const SquareMatrix& g) {
    if (g.indexing().kind() != IndexingKind::Wedge || g.indexing().arity() != 2)
        throw ShapeMismatch("second-form membership expects a wedge2-indexed matrix");
    const RingTag& ring = g.ring();
    if (!ring.is_field())
        throw UnsupportedRing("second-form membership needs a field (q or zmod:<prime>)");
    const int n = g.indexing().n();
    const int N = g.side();
    const SquareMatrix g_inv = inverse(g);  // throws NotInvertible
    const SquareMatrix g_t = g.transpose();

    SecondFormReport out;
    if (n < 4) {
        out.accepted = true;
        out.alpha = ThetaTable(n, ring);
        return out;
    }
    const auto quads = subsets(n, 4);
    const int Q = static_cast<int>(quads.size());

    // Columns of the shared coefficient matrix: vec(B_J * g^{-1}).
    std::vector<SquareMatrix> basis_cols;
    basis_cols.reserve(static_cast<std::size_t>(Q));
    for (const auto& J : quads) basis_cols.push_back(b_matrix(J, n, ring) * g_inv);

    ThetaTable alpha(n, ring);
    const std::size_t cells = static_cast<std::size_t>(N) * N;
    for (int qi = 0; qi < Q; ++qi) {
        const SquareMatrix rhs = g_t * b_matrix(quads[static_cast<std::size_t>(qi)], n, ring);
        // Augmented system, one row per matrix cell.
        std::vector<std::vector<Scalar>> rows;
        rows.reserve(cells);
        for (int r = 0; r < N; ++r) {
            for (int c = 0; c < N; ++c) {
                std::vector<Scalar> row;
                row.reserve(static_cast<std::size_t>(Q) + 1);
                for (int j = 0; j < Q; ++j)
                    row.push_back(basis_cols[static_cast<std::size_t>(j)].at(r, c));
                row.push_back(rhs.at(r, c));
                rows.push_back(std::move(row));
            }
        }
        // Exact Gauss-Jordan over the field.
        std::vector<int> pivot_of_col(static_cast<std::size_t>(Q), -1);
        int next_row = 0;
        for (int col = 0; col < Q && next_row < static_cast<int>(rows.size()); ++col) {
            int pr = -1;
            for (int r = next_row; r < static_cast<int>(rows.size()); ++r) {
                if (!rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) {
                    pr = r;
                    break;
                }
            }
            if (pr < 0) continue;
            std::swap(rows[static_cast<std::size_t>(next_row)], rows[static_cast<std::size_t>(pr)]);
            auto& prow = rows[static_cast<std::size_t>(next_row)];
            const Scalar inv_p = prow[static_cast<std::size_t>(col)].inv();
            for (auto& v : prow) v *= inv_p;
            for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
                if (r == next_row) continue;
                auto& row = rows[static_cast<std::size_t>(r)];
                if (row[static_cast<std::size_t>(col)].is_zero()) continue;
                const Scalar f = row[static_cast<std::size_t>(col)];
                for (int k = col; k <= Q; ++k)
                    row[static_cast<std::size_t>(k)] -= f * prow[static_cast<std::size_t>(k)];
            }
            pivot_of_col[static_cast<std::size_t>(col)] = next_row;
            ++next_row;
        }
        // Inconsistent iff some zero coefficient row keeps a nonzero rhs.
        for (int r = next_row; r < static_cast<int>(rows.size()); ++r) {
            if (!rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(Q)].is_zero())
                return out;  // rejected
        }
        for (int col = 0; col < Q; ++col) {
            const int pr = pivot_of_col[static_cast<std::size_t>(col)];
            if (pr >= 0)
                alpha.set(qi, col, rows[static_cast<std::size_t>(pr)][static_cast<std::size_t>(Q)]);
        }
    }
    out.accepted = true;
    out.alpha = std::move(alpha);
    return out;
}

} // namespace exsq
