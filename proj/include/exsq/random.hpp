#pragma once

// Seeded test-matrix generators (PRNG: mt19937_64). Deterministic for a
// given (shape, ring, seed), so generated corpora are reproducible.

#include <cstdint>
#include <random>

#include "exsq/matrix.hpp"
#include "exsq/transvection.hpp"

namespace exsq {

/// Uniform random entries: residues over Z/m, small values in [-3, 3]
/// over Z and Q.
inline SquareMatrix random_matrix(int n, const RingTag& ring, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SquareMatrix out(ring, Indexing::plain(n));
    if (ring.kind() == RingKind::IntegersMod) {
        std::uniform_int_distribution<std::uint64_t> d(
            0, static_cast<std::uint64_t>(ring.modulus() - 1));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.at(i, j) = Scalar::from_int(ring, BigInt(d(rng)));
    } else {
        std::uniform_int_distribution<long long> d(-3, 3);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.at(i, j) = Scalar::from_int(ring, d(rng));
    }
    return out;
}

/// A random matrix whose determinant is a unit. Over Z that means a
/// product of transvections (det 1); elsewhere rejection sampling.
inline SquareMatrix random_invertible(int n, const RingTag& ring, std::uint64_t seed) {
    if (ring.kind() == RingKind::Integers) return random_elementary(n, 4 * n, ring, seed);
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const SquareMatrix candidate = random_matrix(n, ring, rng());
        if (det(candidate).is_unit()) return candidate;
    }
    throw DomainError("failed to sample an invertible matrix");
}

} // namespace exsq
