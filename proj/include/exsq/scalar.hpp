#pragma once

// Exact scalar arithmetic over the three coefficient rings used by the
// library: arbitrary-precision integers, rationals, and integers mod m.
// Every value is kept in canonical form (reduced fraction with positive
// denominator, residue in [0, m)), so equality is structural. There is
// no floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "exsq/errors.hpp"

namespace exsq {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

enum class RingKind { Integers, Rationals, IntegersMod };

/// Identifies the coefficient ring. Scalars of different rings never mix.
class RingTag {
public:
    RingTag() : kind_(RingKind::Integers) {}

    static RingTag integers() { return RingTag(RingKind::Integers, 0, false); }
    static RingTag rationals() { return RingTag(RingKind::Rationals, 0, false); }

    static RingTag integers_mod(BigInt m) {
        if (m < 2)
            throw DomainError("IntegersMod requires modulus >= 2, got " + m.str());
        bool prime = boost::multiprecision::miller_rabin_test(m, 25);
        return RingTag(RingKind::IntegersMod, std::move(m), prime);
    }

    RingKind kind() const { return kind_; }
    const BigInt& modulus() const { return modulus_; }
    bool modulus_is_prime() const { return modulus_prime_; }

    /// Fields are where unrestricted division lives (Q and Z/p).
    bool is_field() const {
        return kind_ == RingKind::Rationals ||
               (kind_ == RingKind::IntegersMod && modulus_prime_);
    }

    friend bool operator==(const RingTag& a, const RingTag& b) {
        if (a.kind_ != b.kind_) return false;
        if (a.kind_ == RingKind::IntegersMod) return a.modulus_ == b.modulus_;
        return true;
    }
    friend bool operator!=(const RingTag& a, const RingTag& b) { return !(a == b); }

    std::string str() const {
        switch (kind_) {
            case RingKind::Integers: return "z";
            case RingKind::Rationals: return "q";
            case RingKind::IntegersMod: return "zmod:" + modulus_.str();
        }
        return "?";
    }

    /// Parses the ring syntax used by matrix files: "z", "q", "zmod:<m>".
    static RingTag parse(std::string_view s) {
        if (s == "z") return integers();
        if (s == "q") return rationals();
        constexpr std::string_view prefix = "zmod:";
        if (s.substr(0, prefix.size()) == prefix) {
            std::string digits(s.substr(prefix.size()));
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("bad modulus in ring tag '" + std::string(s) + "'");
            BigInt m(digits);
            if (m < 2) throw ParseError("modulus must be >= 2 in ring tag '" + std::string(s) + "'");
            return integers_mod(std::move(m));
        }
        throw ParseError("unknown ring tag '" + std::string(s) + "'");
    }

private:
    RingTag(RingKind kind, BigInt modulus, bool prime)
        : kind_(kind), modulus_(std::move(modulus)), modulus_prime_(prime) {}

    RingKind kind_;
    BigInt modulus_;        // meaningful only for IntegersMod
    bool modulus_prime_ = false;
};

/// An exact element of one of the three rings, always canonical:
/// integers as-is, residues in [0, m), rationals reduced with positive
/// denominator (cpp_rational maintains that on its own).
class Scalar {
public:
    Scalar() : ring_(RingTag::integers()), int_(0) {}

    static Scalar zero(const RingTag& ring) { return from_int(ring, 0); }
    static Scalar one(const RingTag& ring) { return from_int(ring, 1); }

    static Scalar from_int(const RingTag& ring, BigInt v) {
        Scalar s;
        s.ring_ = ring;
        switch (ring.kind()) {
            case RingKind::Integers: s.int_ = std::move(v); break;
            case RingKind::Rationals: s.rat_ = BigRational(std::move(v)); break;
            case RingKind::IntegersMod: s.int_ = reduce(v, ring.modulus()); break;
        }
        return s;
    }

    static Scalar from_int(const RingTag& ring, long long v) { return from_int(ring, BigInt(v)); }

    /// Exact rational constructor; only rationals accept a non-integral value.
    static Scalar from_rational(const RingTag& ring, BigRational v) {
        if (ring.kind() == RingKind::Rationals) {
            Scalar s;
            s.ring_ = ring;
            s.rat_ = std::move(v);
            return s;
        }
        if (boost::multiprecision::denominator(v) != 1)
            throw DomainError("non-integral value for ring " + ring.str());
        return from_int(ring, BigInt(boost::multiprecision::numerator(v)));
    }

    const RingTag& ring() const { return ring_; }

    bool is_zero() const {
        return ring_.kind() == RingKind::Rationals ? rat_.is_zero() : int_.is_zero();
    }

    bool is_one() const {
        return ring_.kind() == RingKind::Rationals ? rat_ == 1 : int_ == 1;
    }

    bool is_unit() const {
        switch (ring_.kind()) {
            case RingKind::Integers: return int_ == 1 || int_ == -1;
            case RingKind::Rationals: return !rat_.is_zero();
            case RingKind::IntegersMod: return gcd(int_, ring_.modulus()) == 1;
        }
        return false;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        a.require_same_ring(b);
        Scalar r = a;
        if (a.ring_.kind() == RingKind::Rationals) {
            r.rat_ += b.rat_;
        } else {
            r.int_ += b.int_;
            r.reduce_in_place();
        }
        return r;
    }

    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        a.require_same_ring(b);
        Scalar r = a;
        if (a.ring_.kind() == RingKind::Rationals) {
            r.rat_ -= b.rat_;
        } else {
            r.int_ -= b.int_;
            r.reduce_in_place();
        }
        return r;
    }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        a.require_same_ring(b);
        Scalar r = a;
        if (a.ring_.kind() == RingKind::Rationals) {
            r.rat_ *= b.rat_;
        } else {
            r.int_ *= b.int_;
            r.reduce_in_place();
        }
        return r;
    }

    Scalar operator-() const {
        Scalar r = *this;
        if (ring_.kind() == RingKind::Rationals) {
            r.rat_ = -rat_;
        } else {
            r.int_ = -int_;
            r.reduce_in_place();
        }
        return r;
    }

    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    /// Multiplicative inverse. Throws NotAUnit for non-invertible elements;
    /// over Z/m with composite m that includes every zero divisor.
    Scalar inv() const {
        switch (ring_.kind()) {
            case RingKind::Integers:
                if (int_ == 1 || int_ == -1) return *this;
                throw NotAUnit("integer " + int_.str() + " is not a unit");
            case RingKind::Rationals: {
                if (rat_.is_zero()) throw NotAUnit("zero is not a unit");
                Scalar r = *this;
                r.rat_ = 1 / rat_;
                return r;
            }
            case RingKind::IntegersMod: {
                auto [g, x] = extended_gcd_mod(int_, ring_.modulus());
                if (g != 1)
                    throw NotAUnit(int_.str() + " is not a unit mod " + ring_.modulus().str());
                Scalar r = *this;
                r.int_ = reduce(x, ring_.modulus());
                return r;
            }
        }
        throw NotAUnit("unreachable");
    }

    /// Exact division: a/b when the quotient exists in the ring.
    /// Used by fraction-free elimination, where divisibility is guaranteed.
    Scalar div_exact(const Scalar& b) const {
        require_same_ring(b);
        switch (ring_.kind()) {
            case RingKind::Integers: {
                if (b.int_.is_zero()) throw NotAUnit("division by zero");
                BigInt q, r;
                boost::multiprecision::divide_qr(int_, b.int_, q, r);
                if (!r.is_zero())
                    throw DomainError("inexact integer division " + int_.str() + "/" + b.int_.str());
                Scalar s = *this;
                s.int_ = std::move(q);
                return s;
            }
            case RingKind::Rationals:
            case RingKind::IntegersMod:
                return *this * b.inv();
        }
        throw DomainError("unreachable");
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.ring_ != b.ring_) return false;
        return a.ring_.kind() == RingKind::Rationals ? a.rat_ == b.rat_ : a.int_ == b.int_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Canonical textual form: "p/q" only when the denominator is not 1.
    std::string str() const {
        if (ring_.kind() == RingKind::Rationals) {
            const BigInt num(boost::multiprecision::numerator(rat_));
            const BigInt den(boost::multiprecision::denominator(rat_));
            if (den == 1) return num.str();
            return num.str() + "/" + den.str();
        }
        return int_.str();
    }

    /// Parses the scalar syntax of matrix files: optional-sign digits,
    /// or "p/q" over the rationals. Modular input is reduced into [0, m).
    static Scalar parse(const RingTag& ring, std::string_view text) {
        const auto slash = text.find('/');
        if (slash != std::string_view::npos) {
            if (ring.kind() != RingKind::Rationals)
                throw ParseError("fraction '" + std::string(text) + "' needs the rational ring");
            const BigInt num = parse_integer(text.substr(0, slash));
            const BigInt den = parse_integer(text.substr(slash + 1));
            if (den.is_zero()) throw ParseError("zero denominator in '" + std::string(text) + "'");
            return from_rational(ring, BigRational(num, den));
        }
        return from_int(ring, parse_integer(text));
    }

    /// Integer payload (value over Z, residue over Z/m).
    const BigInt& int_value() const { return int_; }
    const BigRational& rat_value() const { return rat_; }

private:
    static BigInt reduce(const BigInt& v, const BigInt& m) {
        BigInt r = v % m;
        if (r < 0) r += m;
        return r;
    }

    void reduce_in_place() {
        if (ring_.kind() == RingKind::IntegersMod) int_ = reduce(int_, ring_.modulus());
    }

    void require_same_ring(const Scalar& b) const {
        if (ring_ != b.ring_)
            throw RingMismatch("mixed rings " + ring_.str() + " and " + b.ring_.str());
    }

    // Returns (gcd, x) with a*x = gcd (mod m).
    static std::pair<BigInt, BigInt> extended_gcd_mod(BigInt a, BigInt m) {
        BigInt old_r = std::move(a), r = m;
        BigInt old_x = 1, x = 0;
        while (!r.is_zero()) {
            BigInt q = old_r / r;
            BigInt tmp = old_r - q * r;
            old_r = std::exchange(r, std::move(tmp));
            tmp = old_x - q * x;
            old_x = std::exchange(x, std::move(tmp));
        }
        if (old_r < 0) { old_r = -old_r; old_x = -old_x; }
        return {old_r, old_x};
    }

    static BigInt parse_integer(std::string_view s) {
        if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
            if (s.size() == 1) throw ParseError("bare sign is not a number");
        } else if (s.empty()) {
            throw ParseError("empty scalar");
        }
        const auto digits = (s.front() == '+' || s.front() == '-') ? s.substr(1) : s;
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
            throw ParseError("bad integer '" + std::string(s) + "'");
        return BigInt(std::string(s));
    }

    RingTag ring_;
    BigInt int_;       // Integers / IntegersMod payload
    BigRational rat_;  // Rationals payload
};

} // namespace exsq
