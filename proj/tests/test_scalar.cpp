#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "exsq/scalar.hpp"

using namespace exsq;

namespace {

Scalar rnd(const RingTag& ring, std::mt19937_64& rng) {
    if (ring.kind() == RingKind::IntegersMod) {
        std::uniform_int_distribution<std::uint64_t> d(
            0, static_cast<std::uint64_t>(ring.modulus() - 1));
        return Scalar::from_int(ring, BigInt(d(rng)));
    }
    std::uniform_int_distribution<long long> num(-20, 20);
    if (ring.kind() == RingKind::Rationals) {
        std::uniform_int_distribution<long long> den(1, 12);
        return Scalar::from_rational(ring, BigRational(BigInt(num(rng)), BigInt(den(rng))));
    }
    return Scalar::from_int(ring, num(rng));
}

} // namespace

TEST_CASE("arithmetic matches the worked values") {
    const auto z = RingTag::integers();
    CHECK(Scalar::from_int(z, 2) * Scalar::from_int(z, 3) == Scalar::from_int(z, 6));

    const auto z97 = RingTag::integers_mod(97);
    CHECK(Scalar::from_int(z97, 96) + Scalar::from_int(z97, 5) == Scalar::from_int(z97, 4));

    const auto q = RingTag::rationals();
    CHECK(Scalar::parse(q, "1/2") * Scalar::parse(q, "2/3") == Scalar::parse(q, "1/3"));
}

TEST_CASE("canonical forms") {
    const auto q = RingTag::rationals();
    CHECK(Scalar::parse(q, "2/6").str() == "1/3");
    CHECK(Scalar::parse(q, "5/-3").str() == "-5/3");
    CHECK(Scalar::parse(q, "4/2").str() == "2");
    CHECK(Scalar::parse(q, "-0").str() == "0");

    const auto z7 = RingTag::integers_mod(7);
    CHECK(Scalar::from_int(z7, -3) == Scalar::from_int(z7, 4));
    CHECK(Scalar::from_int(z7, 700).is_zero());

    // structural equality is value equality
    const auto a = Scalar::parse(q, "3/9");
    const auto b = Scalar::parse(q, "1/3");
    CHECK(a == b);
    CHECK(a.str() == b.str());
}

TEST_CASE("inverses and units") {
    const auto z7 = RingTag::integers_mod(7);
    CHECK(Scalar::from_int(z7, 3).inv() == Scalar::from_int(z7, 5));

    const auto z = RingTag::integers();
    CHECK(Scalar::from_int(z, -1).inv() == Scalar::from_int(z, -1));
    CHECK_THROWS_AS(Scalar::from_int(z, 2).inv(), NotAUnit);
    CHECK_THROWS_AS(Scalar::zero(z).inv(), NotAUnit);
    CHECK_THROWS_AS(Scalar::zero(RingTag::rationals()).inv(), NotAUnit);

    const auto z12 = RingTag::integers_mod(12);
    CHECK_THROWS_AS(Scalar::from_int(z12, 4).inv(), NotAUnit);  // zero divisor
    CHECK(Scalar::from_int(z12, 5).inv() == Scalar::from_int(z12, 5));
    CHECK(Scalar::from_int(z12, 5).is_unit());
    CHECK_FALSE(Scalar::from_int(z12, 6).is_unit());
}

TEST_CASE("mixed rings are rejected") {
    const auto a = Scalar::from_int(RingTag::integers(), 1);
    const auto b = Scalar::from_int(RingTag::integers_mod(5), 1);
    CHECK_THROWS_AS(a + b, RingMismatch);
    CHECK_THROWS_AS(a * b, RingMismatch);
    const auto c = Scalar::from_int(RingTag::integers_mod(7), 1);
    CHECK_THROWS_AS(b - c, RingMismatch);
    CHECK(a != b);
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(7);
    for (const auto& ring : {RingTag::integers(), RingTag::rationals(),
                             RingTag::integers_mod(97), RingTag::integers_mod(12)}) {
        for (int t = 0; t < 300; ++t) {
            const Scalar a = rnd(ring, rng), b = rnd(ring, rng), c = rnd(ring, rng);
            REQUIRE((a + b) + c == a + (b + c));
            REQUIRE((a * b) * c == a * (b * c));
            REQUIRE(a * (b + c) == a * b + a * c);
            REQUIRE(a + b == b + a);
            REQUIRE(a * b == b * a);
            REQUIRE((a - b) + b == a);
            REQUIRE(a + Scalar::zero(ring) == a);
            REQUIRE(a * Scalar::one(ring) == a);
            REQUIRE(Scalar::parse(ring, a.str()) == a);
        }
    }
}

TEST_CASE("exact division") {
    const auto z = RingTag::integers();
    CHECK(Scalar::from_int(z, 12).div_exact(Scalar::from_int(z, -4)) == Scalar::from_int(z, -3));
    CHECK_THROWS_AS(Scalar::from_int(z, 7).div_exact(Scalar::from_int(z, 2)), DomainError);

    const auto z11 = RingTag::integers_mod(11);
    const auto x = Scalar::from_int(z11, 9), y = Scalar::from_int(z11, 4);
    CHECK(x.div_exact(y) * y == x);
}

TEST_CASE("ring tag parsing") {
    CHECK(RingTag::parse("z") == RingTag::integers());
    CHECK(RingTag::parse("q") == RingTag::rationals());
    CHECK(RingTag::parse("zmod:97") == RingTag::integers_mod(97));
    CHECK(RingTag::parse("zmod:97").modulus_is_prime());
    CHECK_FALSE(RingTag::parse("zmod:12").modulus_is_prime());
    CHECK_THROWS_AS(RingTag::parse("zmod:1"), ParseError);
    CHECK_THROWS_AS(RingTag::parse("zmod:x"), ParseError);
    CHECK_THROWS_AS(RingTag::parse("gf256"), ParseError);
    CHECK_THROWS_AS(RingTag::integers_mod(1), DomainError);
}

TEST_CASE("scalar parsing rejects malformed input") {
    const auto z = RingTag::integers();
    CHECK_THROWS_AS(Scalar::parse(z, ""), ParseError);
    CHECK_THROWS_AS(Scalar::parse(z, "-"), ParseError);
    CHECK_THROWS_AS(Scalar::parse(z, "1.5"), ParseError);
    CHECK_THROWS_AS(Scalar::parse(z, "1/2"), ParseError);  // fraction needs q
    CHECK_THROWS_AS(Scalar::parse(RingTag::rationals(), "1/0"), ParseError);
    CHECK(Scalar::parse(z, "+5") == Scalar::from_int(z, 5));
}
