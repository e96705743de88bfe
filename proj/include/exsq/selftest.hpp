#pragma once

// Built-in invariant suites, runnable from the CLI. Every check is
// deterministic for a given seed. Quick level keeps ranks at n <= 6;
// full level extends the sweeps to n <= 8. Oracles used here (cycle
// parity, permutation-sum determinants, naive products) are written
// independently of the library paths they check.

#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "exsq/diagram.hpp"
#include "exsq/matrix.hpp"
#include "exsq/pluecker.hpp"
#include "exsq/random.hpp"
#include "exsq/scheme.hpp"
#include "exsq/transvection.hpp"

namespace exsq {

enum class SelftestLevel { Quick, Full };

struct SelftestResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace selftest_detail {

// --- independent oracles ---------------------------------------------------

/// Permutation parity via cycle decomposition.
inline int cycle_parity(std::vector<int> perm) {
    std::vector<bool> seen(perm.size(), false);
    int transpositions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::size_t j = i, len = 0;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<std::size_t>(perm[j]);
            ++len;
        }
        transpositions += static_cast<int>(len) - 1;
    }
    return transpositions % 2 == 0 ? 1 : -1;
}

/// Signed permutation-sum determinant (k! terms).
inline Scalar det_permutation_sum(const SquareMatrix& a) {
    const int k = a.side();
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    Scalar acc = Scalar::zero(a.ring());
    do {
        Scalar term = Scalar::one(a.ring());
        for (int i = 0; i < k; ++i) term *= a.at(i, perm[static_cast<std::size_t>(i)]);
        if (cycle_parity(perm) < 0)
            acc -= term;
        else
            acc += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

inline SquareMatrix naive_matmul(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix out(a.ring(), a.indexing());
    for (int i = 0; i < a.side(); ++i)
        for (int j = 0; j < a.side(); ++j) {
            Scalar s = Scalar::zero(a.ring());
            for (int k = 0; k < a.side(); ++k) s += a.at(i, k) * b.at(k, j);
            out.at(i, j) = s;
        }
    return out;
}

inline Scalar rand_scalar(const RingTag& ring, std::mt19937_64& rng) {
    if (ring.kind() == RingKind::IntegersMod) {
        std::uniform_int_distribution<std::uint64_t> d(
            0, static_cast<std::uint64_t>(ring.modulus() - 1));
        return Scalar::from_int(ring, BigInt(d(rng)));
    }
    std::uniform_int_distribution<long long> num(-9, 9);
    if (ring.kind() == RingKind::Rationals) {
        std::uniform_int_distribution<long long> den(1, 9);
        return Scalar::from_rational(ring, BigRational(BigInt(num(rng)), BigInt(den(rng))));
    }
    return Scalar::from_int(ring, num(rng));
}

inline IndexSet rand_subset(int n, int m, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> d(
        0, static_cast<std::int64_t>(binomial(n, m)) - 1);
    return unrank(d(rng), n, m);
}

// --- individual checks -----------------------------------------------------

inline bool check_ring_axioms(SelftestLevel, std::mt19937_64& rng, std::string& detail) {
    const std::array<RingTag, 4> rings = {RingTag::integers(), RingTag::rationals(),
                                          RingTag::integers_mod(97), RingTag::integers_mod(12)};
    for (const auto& ring : rings) {
        for (int t = 0; t < 120; ++t) {
            const Scalar a = rand_scalar(ring, rng), b = rand_scalar(ring, rng),
                         c = rand_scalar(ring, rng);
            if ((a + b) + c != a + (b + c) || (a * b) * c != a * (b * c) ||
                a * (b + c) != a * b + a * c || a + b != b + a || a * b != b * a ||
                (a - b) + b != a || Scalar::parse(ring, a.str()) != a) {
                detail = "axiom failed over " + ring.str();
                return false;
            }
        }
    }
    return true;
}

inline bool check_inverses(SelftestLevel, std::mt19937_64& rng, std::string& detail) {
    const auto z7 = RingTag::integers_mod(7);
    if (Scalar::from_int(z7, 3).inv() != Scalar::from_int(z7, 5)) {
        detail = "inv(3) mod 7";
        return false;
    }
    if (Scalar::from_int(RingTag::integers(), -1).inv() !=
        Scalar::from_int(RingTag::integers(), -1)) {
        detail = "inv(-1) over z";
        return false;
    }
    for (const char* bad : {"0"}) {
        try {
            Scalar::parse(RingTag::rationals(), bad).inv();
            detail = "inv(0) must throw";
            return false;
        } catch (const NotAUnit&) {
        }
    }
    try {
        Scalar::from_int(RingTag::integers_mod(12), 4).inv();
        detail = "zero divisor mod 12 must throw";
        return false;
    } catch (const NotAUnit&) {
    }
    const auto z97 = RingTag::integers_mod(97);
    for (int t = 0; t < 50; ++t) {
        Scalar a = rand_scalar(z97, rng);
        if (a.is_zero()) continue;
        if (a * a.inv() != Scalar::one(z97)) {
            detail = "a * inv(a) != 1 mod 97";
            return false;
        }
    }
    return true;
}

inline bool check_subsets(SelftestLevel level, std::mt19937_64&, std::string& detail) {
    const int max_n = level == SelftestLevel::Full ? 8 : 6;
    for (int n = 1; n <= max_n; ++n) {
        for (int m = 0; m <= n; ++m) {
            const auto all = subsets(n, m);
            if (all.size() != binomial(n, m)) {
                detail = "count mismatch at n=" + std::to_string(n);
                return false;
            }
            for (std::size_t i = 0; i < all.size(); ++i) {
                if (i > 0 && !(all[i - 1] < all[i])) {
                    detail = "lex order broken";
                    return false;
                }
                if (m > 0 && (rank(all[i], n) != static_cast<std::int64_t>(i) ||
                              unrank(static_cast<std::int64_t>(i), n, m) != all[i])) {
                    detail = "rank/unrank roundtrip";
                    return false;
                }
            }
        }
    }
    return true;
}

inline bool check_sign_antisymmetry(SelftestLevel, std::mt19937_64& rng, std::string& detail) {
    for (int t = 0; t < 400; ++t) {
        const int n = 4 + static_cast<int>(rng() % 5);  // 4..8
        const int u = 1 + static_cast<int>(rng() % 3);
        const int v = 1 + static_cast<int>(rng() % 3);
        if (u + v > n) continue;
        const IndexSet I = rand_subset(n, u, rng);
        IndexSet J = rand_subset(n, v, rng);
        if (!I.disjoint_from(J)) continue;
        const int expected = (u * v) % 2 == 0 ? 1 : -1;
        if (sign_concat(I, J) * sign_concat(J, I) != expected) {
            detail = "(-1)^{|I||J|} law at " + I.str() + "," + J.str();
            return false;
        }
    }
    return true;
}

inline bool check_sign_cycle_oracle(SelftestLevel, std::mt19937_64&, std::string& detail) {
    for (const auto& I : subsets(6, 2)) {
        for (const auto& J : subsets(6, 2)) {
            if (!I.disjoint_from(J)) continue;
            // Permutation sorting the concatenated word, as positions.
            std::vector<int> word = {I[0], I[1], J[0], J[1]};
            std::vector<int> sorted = word;
            std::sort(sorted.begin(), sorted.end());
            std::vector<int> perm(word.size());
            for (std::size_t k = 0; k < word.size(); ++k)
                perm[k] = static_cast<int>(
                    std::find(sorted.begin(), sorted.end(), word[k]) - sorted.begin());
            if (sign_concat(I, J) != cycle_parity(perm)) {
                detail = "cycle oracle disagrees at " + I.str() + "," + J.str();
                return false;
            }
        }
    }
    return true;
}

inline bool check_pair_partitions(SelftestLevel, std::mt19937_64&, std::string& detail) {
    for (const auto& H : subsets(8, 4)) {
        const auto parts = pair_partitions(H);
        if (parts[0].sign != 1 || parts[1].sign != -1 || parts[2].sign != 1) {
            detail = "sign pattern at " + H.str();
            return false;
        }
        for (const auto& p : parts) {
            if (p.first.disjoint_union(p.second) != H || p.sign != sign_concat(p.first, p.second)) {
                detail = "partition tiling at " + H.str();
                return false;
            }
        }
    }
    return true;
}

inline bool check_matmul_oracle(SelftestLevel, std::mt19937_64& rng, std::string& detail) {
    const auto z97 = RingTag::integers_mod(97);
    for (int t = 0; t < 20; ++t) {
        const SquareMatrix a = random_matrix(3, z97, rng());
        const SquareMatrix b = random_matrix(3, z97, rng());
        if (a * b != naive_matmul(a, b)) {
            detail = "3x3 product mismatch";
            return false;
        }
        if (a * SquareMatrix::identity(z97, a.indexing()) != a) {
            detail = "identity law";
            return false;
        }
    }
    return true;
}

inline bool check_minor_oracle(SelftestLevel, std::mt19937_64& rng, std::string& detail) {
    const auto z = RingTag::integers();
    const IndexSet full({1, 2, 3, 4});
    for (int t = 0; t < 10; ++t) {
        const SquareMatrix a = random_matrix(4, z, rng());
        if (minor(a, full, full) != det_permutation_sum(a)) {
            detail = "4x4 permutation-sum oracle";
            return false;
        }
    }
    // identity minors
    const SquareMatrix id = SquareMatrix::identity(z, Indexing::plain(5));
    for (const auto& I : subsets(5, 3)) {
        for (const auto& J : subsets(5, 3)) {
            const Scalar m = minor(id, I, J);
            if (I == J ? !m.is_one() : !m.is_zero()) {
                detail = "identity minor at " + I.str() + "," + J.str();
                return false;
            }
        }
    }
    return true;
}

inline bool check_inverse(SelftestLevel, std::mt19937_64& rng, std::string& detail) {
    const auto z101 = RingTag::integers_mod(101);
    const SquareMatrix a = random_invertible(5, z101, rng());
    if (!(a * inverse(a)).is_identity()) {
        detail = "a * inv(a) over zmod:101";
        return false;
    }
    const auto z = RingTag::integers();
    const auto t = Transvection::plain(4, 1, 2, Scalar::from_int(z, 7));
    const auto t_inv = Transvection::plain(4, 1, 2, Scalar::from_int(z, -7));
    if (inverse(to_matrix(t)) != to_matrix(t_inv)) {
        detail = "transvection inverse";
        return false;
    }
    return true;
}

inline bool check_cauchy_binet(SelftestLevel level, std::mt19937_64& rng, std::string& detail) {
    const auto z97 = RingTag::integers_mod(97);
    const int max_n = level == SelftestLevel::Full ? 7 : 6;
    for (int n = 4; n <= max_n; ++n) {
        for (int m : {2, 3, 4}) {
            for (int t = 0; t < 3; ++t) {
                const SquareMatrix x = random_matrix(n, z97, rng());
                const SquareMatrix y = random_matrix(n, z97, rng());
                if (wedge(m, x * y) != wedge(m, x) * wedge(m, y)) {
                    detail = "homomorphism at n=" + std::to_string(n) + ", m=" + std::to_string(m);
                    return false;
                }
            }
        }
    }
    const auto z = RingTag::integers();
    const SquareMatrix x = random_matrix(4, z, rng());
    const SquareMatrix y = random_matrix(4, z, rng());
    if (wedge(2, x * y) != wedge(2, x) * wedge(2, y)) {
        detail = "homomorphism over z";
        return false;
    }
    return true;
}

inline bool check_sylvester_franke(SelftestLevel, std::mt19937_64& rng, std::string& detail) {
    for (int n : {4, 5}) {
        for (const RingTag& ring : {RingTag::integers_mod(97), RingTag::integers()}) {
            const SquareMatrix x = random_matrix(n, ring, rng());
            Scalar expected = Scalar::one(ring);
            const Scalar dx = det(x);
            for (int k = 0; k < n - 1; ++k) expected *= dx;
            if (det(wedge(2, x)) != expected) {
                detail = "det(wedge2 x) != det(x)^{n-1} at n=" + std::to_string(n);
                return false;
            }
        }
    }
    return true;
}

inline bool check_minor_alternating(SelftestLevel, std::mt19937_64& rng, std::string& detail) {
    const auto z = RingTag::integers();
    const SquareMatrix a = random_matrix(6, z, rng());
    SquareMatrix swapped = a;  // swap rows 2 and 4 (labels)
    for (int j = 0; j < 6; ++j) std::swap(swapped.at(1, j), swapped.at(3, j));
    const IndexSet I({2, 3, 4});
    for (const auto& J : subsets(6, 3)) {
        if (minor(swapped, I, J) != -minor(a, I, J)) {
            detail = "row swap must negate minor";
            return false;
        }
    }
    return true;
}

inline bool check_transvection_relations(SelftestLevel, std::mt19937_64&, std::string& detail) {
    const auto z5 = RingTag::integers_mod(5);
    const int n = 4;
    auto commutator = [&](const SquareMatrix& x, const SquareMatrix& y) {
        return x * y * inverse(x) * inverse(y);
    };
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            for (int h = 1; h <= n; ++h) {
                for (int k = 1; k <= n; ++k) {
                    if (h == k) continue;
                    for (int xi = 1; xi < 5; ++xi) {
                        for (int zeta = 1; zeta < 5; ++zeta) {
                            const auto a =
                                to_matrix(Transvection::plain(n, i, j, Scalar::from_int(z5, xi)));
                            const auto b =
                                to_matrix(Transvection::plain(n, h, k, Scalar::from_int(z5, zeta)));
                            const auto comm = commutator(a, b);
                            SquareMatrix expected = SquareMatrix::identity(z5, a.indexing());
                            if (j == h && i != k) {
                                expected = to_matrix(Transvection::plain(
                                    n, i, k, Scalar::from_int(z5, xi * zeta)));
                            } else if (j != h && i == k) {
                                expected = to_matrix(Transvection::plain(
                                    n, h, j, Scalar::from_int(z5, -zeta * xi)));
                            } else if (j == h && i == k) {
                                continue;  // not covered by the displayed cases
                            }
                            if (comm != expected) {
                                detail = "commutator case (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")x(" + std::to_string(h) + "," +
                                         std::to_string(k) + ")";
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    // additivity at both index schemes
    const auto z = RingTag::integers();
    const auto xi = Scalar::from_int(z, 3), zeta = Scalar::from_int(z, 4);
    if (to_matrix(Transvection::plain(4, 1, 2, xi)) * to_matrix(Transvection::plain(4, 1, 2, zeta)) !=
        to_matrix(Transvection::plain(4, 1, 2, xi + zeta))) {
        detail = "plain additivity";
        return false;
    }
    const auto r = Pair::pair(1, 3), c = Pair::pair(2, 3);
    if (to_matrix(Transvection::wedge2(4, r, c, xi)) * to_matrix(Transvection::wedge2(4, r, c, zeta)) !=
        to_matrix(Transvection::wedge2(4, r, c, xi + zeta))) {
        detail = "wedge2 additivity";
        return false;
    }
    return true;
}

inline bool check_decomposition(SelftestLevel level, std::mt19937_64&, std::string& detail) {
    const auto z = RingTag::integers();
    const int max_n = level == SelftestLevel::Full ? 7 : 5;
    const std::vector<long long> xis =
        level == SelftestLevel::Full ? std::vector<long long>{1, 3} : std::vector<long long>{1};
    for (int n = 3; n <= max_n; ++n) {
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) {
                if (i == j) continue;
                for (long long x : xis) {
                    const Scalar xi = Scalar::from_int(z, x);
                    if (static_cast<int>(decompose_wedge2(n, i, j, xi).size()) != n - 2) {
                        detail = "factor count != n-2";
                        return false;
                    }
                    if (!verify_decomposition(n, i, j, xi)) {
                        detail = "decomposition fails at n=" + std::to_string(n) + ", (" +
                                 std::to_string(i) + "," + std::to_string(j) + ")";
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

inline bool check_random_elementary(SelftestLevel, std::mt19937_64& rng, std::string& detail) {
    const auto z97 = RingTag::integers_mod(97);
    const SquareMatrix e = random_elementary(5, 20, z97, rng());
    if (!det(e).is_one()) {
        detail = "det of elementary product must be 1";
        return false;
    }
    if (!membership(wedge(2, e)).accepted) {
        detail = "wedge of elementary product must be a member";
        return false;
    }
    return true;
}

inline bool check_plucker_sign_law(SelftestLevel, std::mt19937_64&, std::string& detail) {
    const auto z = RingTag::integers();
    const int n = 6;
    for (const auto& H : subsets(n, 4)) {
        const int i = H[0], j = H[1], k = H[2], l = H[3];
        const QuadForm f = plucker_poly(n, i, IndexSet({j, k, l}), z);
        const std::array<std::pair<int, std::array<int, 3>>, 3> variants = {
            std::make_pair(j, std::array<int, 3>{i, k, l}),
            std::make_pair(k, std::array<int, 3>{i, j, l}),
            std::make_pair(l, std::array<int, 3>{i, j, k})};
        const std::array<int, 3> expected_signs = {-1, 1, -1};
        for (int v = 0; v < 3; ++v) {
            const auto& [s, T] = variants[static_cast<std::size_t>(v)];
            const QuadForm g = plucker_poly(n, s, IndexSet({T[0], T[1], T[2]}), z);
            const QuadForm expected =
                expected_signs[static_cast<std::size_t>(v)] == 1 ? f : -f;
            if (g != expected) {
                detail = "sign law at H=" + H.str();
                return false;
            }
        }
    }
    return true;
}

inline bool check_theta_roundtrip(SelftestLevel, std::mt19937_64& rng, std::string& detail) {
    const auto z97 = RingTag::integers_mod(97);
    for (int n : {4, 5, 6}) {
        const auto basis = canonical_basis(n, z97);
        const auto quads = subsets(n, 4);
        QuadForm combo(n, z97);
        ThetaVector expected(n, z97);
        for (std::size_t q = 0; q < quads.size(); ++q) {
            const Scalar theta = rand_scalar(z97, rng);
            expected.set(quads[q], theta);
            combo = combo + basis[q].scaled(theta);
        }
        const auto verdict = in_ideal(combo);
        if (!verdict.accepted || !(*verdict.theta == expected)) {
            detail = "roundtrip at n=" + std::to_string(n);
            return false;
        }
    }
    return true;
}

inline bool check_ideal_rejections(SelftestLevel level, std::mt19937_64& rng,
                                   std::string& detail) {
    const auto z97 = RingTag::integers_mod(97);
    const int n = 6;
    const int trials = level == SelftestLevel::Full ? 50 : 10;
    for (int t = 0; t < trials; ++t) {
        // single disjoint-key monomial: breaks consistency
        QuadForm mono(n, z97);
        const auto H = rand_subset(n, 4, rng);
        const auto parts = pair_partitions(H);
        mono.add(parts[0].first, parts[0].second, Scalar::one(z97));
        if (in_ideal(mono).accepted) {
            detail = "single monomial accepted";
            return false;
        }
        // overlapping-key monomial: breaks the zero condition
        QuadForm overlap(n, z97);
        const auto A = rand_subset(n, 2, rng);
        auto other = A.with_replaced(A[1], A[1] == n ? A[1] - 1 : A[1] + 1);
        if (other.empty()) continue;
        overlap.add(A, Pair(other), Scalar::one(z97));
        if (in_ideal(overlap).accepted) {
            detail = "overlapping key accepted";
            return false;
        }
    }
    return true;
}

inline bool check_action_stability(SelftestLevel level, std::mt19937_64& rng,
                                   std::string& detail) {
    const auto z97 = RingTag::integers_mod(97);
    const int trials = level == SelftestLevel::Full ? 50 : 5;
    for (int n : {4, 5, 6}) {
        const auto basis = canonical_basis(n, z97);
        for (int t = 0; t < trials; ++t) {
            const SquareMatrix g = wedge(2, random_invertible(n, z97, rng()));
            for (const auto& f : basis) {
                if (!in_ideal(act(g, f)).accepted) {
                    detail = "image left the ideal at n=" + std::to_string(n);
                    return false;
                }
            }
        }
        // negative control: a non-member matrix moves some basis form out
        SquareMatrix bad = SquareMatrix::identity(z97, Indexing::wedge2(4));
        bad.at(bad.row_of(Pair::pair(1, 2)), bad.row_of(Pair::pair(3, 4))) = Scalar::one(z97);
        if (in_ideal(act(bad, canonical_basis(4, z97)[0])).accepted) {
            detail = "perturbed identity should not stabilize the ideal";
            return false;
        }
    }
    return true;
}

inline bool check_theta_minor_oracle(SelftestLevel level, std::mt19937_64& rng,
                                     std::string& detail) {
    const auto z97 = RingTag::integers_mod(97);
    const int max_n = level == SelftestLevel::Full ? 7 : 6;
    const int trials = level == SelftestLevel::Full ? 25 : 5;
    for (int n = 4; n <= max_n; ++n) {
        for (int t = 0; t < trials; ++t) {
            const SquareMatrix x = random_invertible(n, z97, rng());
            const auto report = membership(wedge(2, x));
            if (!report.accepted || *report.theta != theta_from_minors(x)) {
                detail = "theta != fourth-order minors at n=" + std::to_string(n);
                return false;
            }
        }
    }
    return true;
}

inline bool check_exterior_symmetry(SelftestLevel, std::mt19937_64& rng, std::string& detail) {
    const auto z97 = RingTag::integers_mod(97);
    const int n = 5;
    SquareMatrix g(z97, Indexing::wedge2(n));
    for (int i = 0; i < g.side(); ++i)
        for (int j = 0; j < g.side(); ++j) g.at(i, j) = rand_scalar(z97, rng);
    for (int t = 0; t < 100; ++t) {
        const auto A = rand_subset(n, 2, rng);
        const auto C = rand_subset(n, 2, rng);
        const auto H = rand_subset(n, 4, rng);
        if (exterior_number(g, A, C, H) != exterior_number(g, C, A, H)) {
            detail = "a^H_{A,C} != a^H_{C,A}";
            return false;
        }
    }
    return true;
}

inline bool check_zero_reject(SelftestLevel, std::mt19937_64&, std::string& detail) {
    const auto z = RingTag::integers();
    SquareMatrix g = SquareMatrix::identity(z, Indexing::wedge2(4));
    g.at(g.row_of(Pair::pair(1, 2)), g.row_of(Pair::pair(3, 4))) = Scalar::one(z);
    const auto report = membership(g);
    if (report.accepted || report.violations.empty()) {
        detail = "perturbed identity must be rejected";
        return false;
    }
    const auto& v = report.violations.front();
    if (v.kind != Violation::Kind::ZeroConstraint || v.key.A != Pair::pair(1, 2) ||
        v.key.C != Pair::pair(1, 2) || v.key.H != IndexSet({1, 2, 3, 4}) ||
        v.value != Scalar::from_int(z, 2)) {
        detail = "wrong first violation";
        return false;
    }
    if (!congruence_membership(g, 2).accepted) {
        detail = "must be accepted mod 2";
        return false;
    }
    return true;
}

inline bool check_scalar_point(SelftestLevel, std::mt19937_64&, std::string& detail) {
    const auto z97 = RingTag::integers_mod(97);
    // smallest quadratic non-residue mod 97
    Scalar lambda = Scalar::zero(z97);
    for (int c = 2; c < 97; ++c) {
        bool square = false;
        for (int y = 1; y < 97; ++y)
            if ((y * y) % 97 == c) square = true;
        if (!square) {
            lambda = Scalar::from_int(z97, c);
            break;
        }
    }
    const int n = 4;
    const SquareMatrix g =
        SquareMatrix::identity(z97, Indexing::wedge2(n)).scaled(lambda);
    const auto report = membership(g);
    if (!report.accepted) {
        detail = "scalar matrix must be accepted";
        return false;
    }
    const ThetaTable expected_theta = ThetaTable::identity(n, z97);
    ThetaTable scaled(n, z97);
    for (int s = 0; s < scaled.side(); ++s)
        scaled.set(s, s, lambda * lambda);
    if (*report.theta != scaled) {
        detail = "theta must be lambda^2 * delta";
        return false;
    }
    return true;
}

inline bool check_multiplicativity(SelftestLevel, std::mt19937_64& rng, std::string& detail) {
    const auto z97 = RingTag::integers_mod(97);
    {
        const int n = 4;
        const SquareMatrix x = random_invertible(n, z97, rng());
        const SquareMatrix y = random_invertible(n, z97, rng());
        const SquareMatrix g = wedge(2, x), h = wedge(2, y);
        const SquareMatrix gh = g * h;
        const ThetaTable tg = theta_from_minors(x), th = theta_from_minors(y);
        const ThetaTable composed = theta_compose(tg, th);
        for (const auto& A : subsets(n, 2)) {
            for (const auto& C : subsets(n, 2)) {
                for (const auto& H : subsets(n, 4)) {
                    const Scalar direct = exterior_number(gh, A, C, H);
                    Scalar expected = Scalar::zero(z97);
                    if (A.disjoint_from(C)) {
                        expected = Scalar::from_int(z97, sign_concat(A, C)) *
                                   composed.at(A.disjoint_union(C), H);
                    }
                    if (direct != expected) {
                        detail = "product law full sweep at n=4";
                        return false;
                    }
                }
            }
        }
        // three-factor form
        const SquareMatrix z3 = random_invertible(n, z97, rng());
        const ThetaTable triple =
            theta_compose(theta_compose(tg, th), theta_from_minors(z3));
        const SquareMatrix g3 = g * h * wedge(2, z3);
        const auto A = Pair::pair(1, 2), C = Pair::pair(3, 4);
        const auto H = IndexSet({1, 2, 3, 4});
        if (exterior_number(g3, A, C, H) !=
            Scalar::from_int(z97, sign_concat(A, C)) * triple.at(A.disjoint_union(C), H)) {
            detail = "three-factor law";
            return false;
        }
    }
    {
        const int n = 6;
        const SquareMatrix x = random_invertible(n, z97, rng());
        const SquareMatrix y = random_invertible(n, z97, rng());
        const SquareMatrix gh = wedge(2, x) * wedge(2, y);
        const ThetaTable composed =
            theta_compose(theta_from_minors(x), theta_from_minors(y));
        for (int t = 0; t < 200; ++t) {
            const auto A = rand_subset(n, 2, rng);
            const auto C = rand_subset(n, 2, rng);
            const auto H = rand_subset(n, 4, rng);
            const Scalar direct = exterior_number(gh, A, C, H);
            Scalar expected = Scalar::zero(z97);
            if (A.disjoint_from(C))
                expected = Scalar::from_int(z97, sign_concat(A, C)) *
                           composed.at(A.disjoint_union(C), H);
            if (direct != expected) {
                detail = "product law sample at n=6";
                return false;
            }
        }
    }
    return true;
}

inline bool check_transvection_closed_form(SelftestLevel level, std::mt19937_64&,
                                           std::string& detail) {
    const auto z = RingTag::integers();
    const int max_n = level == SelftestLevel::Full ? 5 : 4;
    for (int n = 4; n <= max_n; ++n) {
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) {
                if (i == j) continue;
                for (long long x : {1LL, 2LL, 5LL}) {
                    const Scalar xi = Scalar::from_int(z, x);
                    const SquareMatrix w =
                        wedge(2, to_matrix(Transvection::plain(n, i, j, xi)));
                    for (const auto& A : subsets(n, 2)) {
                        for (const auto& C : subsets(n, 2)) {
                            for (const auto& H : subsets(n, 4)) {
                                if (transvection_ext_numbers(n, i, j, xi, A, C, H) !=
                                    exterior_number(w, A, C, H)) {
                                    detail = "closed form at n=" + std::to_string(n) + " (" +
                                             std::to_string(i) + "," + std::to_string(j) + ")";
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return true;
}

inline bool check_congruence_coherence(SelftestLevel, std::mt19937_64& rng,
                                       std::string& detail) {
    const auto z = RingTag::integers();
    const SquareMatrix x = random_elementary(5, 12, z, rng());
    const SquareMatrix g = wedge(2, x);
    if (!membership(g).accepted) {
        detail = "integral member rejected";
        return false;
    }
    for (int m : {2, 3, 4, 5, 6, 97}) {
        if (!congruence_membership(g, m).accepted) {
            detail = "member rejected mod " + std::to_string(m);
            return false;
        }
    }
    return true;
}

inline bool check_second_form_agreement(SelftestLevel, std::mt19937_64& rng,
                                        std::string& detail) {
    const auto z97 = RingTag::integers_mod(97);
    int checked = 0;
    for (int n : {4, 5}) {
        for (int t = 0; t < 10; ++t) {
            const SquareMatrix member = wedge(2, random_invertible(n, z97, rng()));
            SquareMatrix perturbed = member;
            const int r = static_cast<int>(rng() % static_cast<std::uint64_t>(member.side()));
            const int c = static_cast<int>(rng() % static_cast<std::uint64_t>(member.side()));
            perturbed.at(r, c) += Scalar::one(z97);
            const std::array<const SquareMatrix*, 2> suite = {&member, &perturbed};
            for (const SquareMatrix* g : suite) {
                if (!det(*g).is_unit()) continue;
                const auto direct = membership(*g);
                const auto second = second_form_membership(*g);
                if (direct.accepted != second.accepted) {
                    detail = "verdicts disagree at n=" + std::to_string(n);
                    return false;
                }
                // Observed relation between the two witness tables:
                // alpha_J^I = theta_I^J, i.e. the tables coincide under
                // (row = upper index) storage.
                if (direct.accepted && !(*direct.theta == *second.alpha)) {
                    detail = "alpha table differs from theta table";
                    return false;
                }
                ++checked;
            }
        }
    }
    if (checked < 30) {
        detail = "suite too small";
        return false;
    }
    return true;
}

inline bool check_diagram_structure(SelftestLevel, std::mt19937_64&, std::string& detail) {
    const WeightDiagram d4(4);
    if (d4.vertices().size() != 6 || d4.edges().size() != 6) {
        detail = "n=4 diagram size";
        return false;
    }
    auto nb = d4.neighbors(Pair::pair(1, 4));
    if (nb.size() != 2) {
        detail = "(1,4) must have 2 neighbors";
        return false;
    }
    for (const auto& [v, label] : nb) {
        const bool ok = (v == Pair::pair(1, 3) && label == 3) ||
                        (v == Pair::pair(2, 4) && label == 1);
        if (!ok) {
            detail = "(1,4) neighbor labels";
            return false;
        }
    }
    const WeightDiagram d3(3);
    if (d3.vertices().size() != 3 || d3.edges().size() != 2) {
        detail = "n=3 must be a 3-vertex path";
        return false;
    }
    // brute-force adjacency oracle at n=5
    const WeightDiagram d5(5);
    int expected_edges = 0;
    for (const auto& P : d5.vertices()) {
        for (const auto& Q : d5.vertices()) {
            if (!(P < Q)) continue;
            int diff_count = 0;
            bool is_step = false;
            for (int k = 1; k <= 5; ++k) {
                const bool in_p = P.contains(k), in_q = Q.contains(k);
                if (in_p != in_q) ++diff_count;
            }
            if (diff_count == 2) {
                for (int k = 1; k < 5; ++k)
                    if (P.contains(k) && !P.contains(k + 1) && Q.contains(k + 1) &&
                        !Q.contains(k) && P.with_replaced(k, k + 1) == Q.elements())
                        is_step = true;
            }
            if (is_step) ++expected_edges;
            if (is_step != d5.adjacent(P, Q)) {
                detail = "adjacency oracle at n=5";
                return false;
            }
        }
    }
    // Substitution edges with label k: one per partner x outside {k, k+1},
    // so (n-1)(n-2) in total; 12 at n=5 (and 6 at n=4, matching the
    // triangle picture).
    if (expected_edges != static_cast<int>(d5.edges().size()) || expected_edges != 12) {
        detail = "edge count at n=5";
        return false;
    }
    return true;
}

inline bool check_diagram_paths(SelftestLevel, std::mt19937_64&, std::string& detail) {
    for (int n : {4, 5, 6, 7}) {
        const WeightDiagram d(n);
        for (int i = 1; i <= n; ++i) {
            const auto p = path_of(d, i);
            if (static_cast<int>(p.vertices.size()) != n - 1) {
                detail = "path length";
                return false;
            }
            // consecutive links are edges, except the single junction at
            // ((i-1, i), (i, i+1))
            for (std::size_t k = 0; k + 1 < p.vertices.size(); ++k) {
                const auto& P = p.vertices[k];
                const auto& Q = p.vertices[k + 1];
                const bool junction = i > 1 && i < n && P[0] == i - 1 && P[1] == i &&
                                      Q[0] == i && Q[1] == i + 1;
                if (!junction && !d.adjacent(P, Q)) {
                    detail = "path link not an edge";
                    return false;
                }
            }
            for (int j = i + 1; j <= n; ++j) {
                const auto q = path_of(d, j);
                std::vector<Pair> common;
                for (const auto& a : p.vertices)
                    for (const auto& b : q.vertices)
                        if (a == b) common.push_back(a);
                if (common.size() != 1 || common[0] != Pair::pair(i, j)) {
                    detail = "paths must meet exactly at (i, j)";
                    return false;
                }
            }
        }
    }
    return true;
}

inline bool check_diagram_squares(SelftestLevel, std::mt19937_64&, std::string& detail) {
    for (int n : {4, 5, 6, 7}) {
        const WeightDiagram d(n);
        for (const auto& H : subsets(n, 4)) {
            const auto sq = elementary_square(d, H);
            if (sq.vertices.size() != 6) {
                detail = "square must have 6 vertices";
                return false;
            }
            const auto expected_parts = pair_partitions(H);
            for (int p = 0; p < 3; ++p) {
                if (sq.pairings[static_cast<std::size_t>(p)].sign !=
                    expected_parts[static_cast<std::size_t>(p)].sign) {
                    detail = "square signs differ from pair partitions";
                    return false;
                }
            }
            for (const auto& [a, b] : sq.edges) {
                if (!d.adjacent(a, b)) {
                    detail = "square edge not an ambient edge";
                    return false;
                }
            }
            // Consecutive 4-sets embed with the full six-edge subdiagram.
            if (H[1] == H[0] + 1 && H[2] == H[1] + 1 && H[3] == H[2] + 1 &&
                sq.edges.size() != 6) {
                detail = "consecutive 4-set must induce the whole small diagram";
                return false;
            }
        }
    }
    return true;
}

inline bool check_diagram_oracle(SelftestLevel level, std::mt19937_64& rng,
                                 std::string& detail) {
    const auto z97 = RingTag::integers_mod(97);
    const int max_n = level == SelftestLevel::Full ? 6 : 5;
    for (int n = 4; n <= max_n; ++n) {
        SquareMatrix g(z97, Indexing::wedge2(n));
        for (int i = 0; i < g.side(); ++i)
            for (int j = 0; j < g.side(); ++j) g.at(i, j) = rand_scalar(z97, rng);
        for (const auto& H : subsets(n, 4)) {
            for (const auto& A : subsets(n, 2)) {
                for (const auto& C : subsets(n, 2)) {
                    if (diagram_exterior_number(g, A, C, H) != exterior_number(g, A, C, H)) {
                        detail = "diagram route differs at n=" + std::to_string(n);
                        return false;
                    }
                }
            }
        }
    }
    if (level == SelftestLevel::Full) {
        const int n = 8;
        SquareMatrix g(z97, Indexing::wedge2(n));
        for (int i = 0; i < g.side(); ++i)
            for (int j = 0; j < g.side(); ++j) g.at(i, j) = rand_scalar(z97, rng);
        for (int t = 0; t < 1000; ++t) {
            const auto A = rand_subset(n, 2, rng);
            const auto C = rand_subset(n, 2, rng);
            const auto H = rand_subset(n, 4, rng);
            if (diagram_exterior_number(g, A, C, H) != exterior_number(g, A, C, H)) {
                detail = "diagram route differs at n=8";
                return false;
            }
        }
    }
    return true;
}

} // namespace selftest_detail

inline std::vector<SelftestResult> run_selftest(SelftestLevel level, std::uint64_t seed) {
    using Check = bool (*)(SelftestLevel, std::mt19937_64&, std::string&);
    const std::vector<std::pair<std::string, Check>> checks = {
        {"scalars/ring-axioms", selftest_detail::check_ring_axioms},
        {"scalars/inverses", selftest_detail::check_inverses},
        {"combinat/subsets", selftest_detail::check_subsets},
        {"combinat/sign-antisymmetry", selftest_detail::check_sign_antisymmetry},
        {"combinat/sign-cycle-oracle", selftest_detail::check_sign_cycle_oracle},
        {"combinat/pair-partitions", selftest_detail::check_pair_partitions},
        {"exalg/matmul-oracle", selftest_detail::check_matmul_oracle},
        {"exalg/minor-oracle", selftest_detail::check_minor_oracle},
        {"exalg/inverse", selftest_detail::check_inverse},
        {"exalg/cauchy-binet", selftest_detail::check_cauchy_binet},
        {"exalg/sylvester-franke", selftest_detail::check_sylvester_franke},
        {"exalg/minor-alternating", selftest_detail::check_minor_alternating},
        {"transvect/relations", selftest_detail::check_transvection_relations},
        {"transvect/decomposition", selftest_detail::check_decomposition},
        {"transvect/random-elementary", selftest_detail::check_random_elementary},
        {"pluecker/sign-law", selftest_detail::check_plucker_sign_law},
        {"pluecker/theta-roundtrip", selftest_detail::check_theta_roundtrip},
        {"pluecker/rejections", selftest_detail::check_ideal_rejections},
        {"pluecker/action-stability", selftest_detail::check_action_stability},
        {"scheme/theta-minor-oracle", selftest_detail::check_theta_minor_oracle},
        {"scheme/exterior-symmetry", selftest_detail::check_exterior_symmetry},
        {"scheme/zero-reject", selftest_detail::check_zero_reject},
        {"scheme/scalar-point", selftest_detail::check_scalar_point},
        {"scheme/multiplicativity", selftest_detail::check_multiplicativity},
        {"scheme/transvection-closed-form", selftest_detail::check_transvection_closed_form},
        {"scheme/congruence-coherence", selftest_detail::check_congruence_coherence},
        {"scheme/second-form-agreement", selftest_detail::check_second_form_agreement},
        {"diagrams/structure", selftest_detail::check_diagram_structure},
        {"diagrams/paths", selftest_detail::check_diagram_paths},
        {"diagrams/squares", selftest_detail::check_diagram_squares},
        {"diagrams/oracle-equivalence", selftest_detail::check_diagram_oracle},
    };
    std::vector<SelftestResult> results;
    results.reserve(checks.size());
    std::uint64_t salt = 0;
    for (const auto& [name, fn] : checks) {
        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * ++salt));
        SelftestResult r;
        r.name = name;
        try {
            r.passed = fn(level, rng, r.detail);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace exsq
