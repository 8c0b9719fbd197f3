#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace hkr {

using Int = mpz_class;
using Rat = mpq_class;

/// Error type for all mathematical failures (inexact division, non-field
/// ring where a field is required, budget violations, ...).
class MathError : public std::runtime_error {
public:
    explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

enum class RingKind { Integers, Rationals, PrimeField, CyclicRing, PLocalIntegers };

bool is_prime(const Int& n);

/// Exact base ring. Elements are carried as mpq_class values; the ring
/// interprets them (modular reduction for PrimeField / Z/p^k, denominator
/// checks for Z and Z_(p)). Immutable after construction.
class BaseRing {
public:
    static BaseRing integers() { return BaseRing(RingKind::Integers, 0, 0); }
    static BaseRing rationals() { return BaseRing(RingKind::Rationals, 0, 0); }
    static BaseRing prime_field(const Int& p) { return BaseRing(RingKind::PrimeField, p, 1); }
    static BaseRing cyclic(const Int& p, unsigned k) { return BaseRing(RingKind::CyclicRing, p, k); }
    static BaseRing p_local(const Int& p) { return BaseRing(RingKind::PLocalIntegers, p, 0); }

    RingKind kind() const { return kind_; }
    const Int& p() const { return p_; }
    unsigned k() const { return k_; }
    const Int& modulus() const { return modulus_; }  // p^k, modular kinds only

    bool is_field() const {
        return kind_ == RingKind::Rationals || kind_ == RingKind::PrimeField;
    }
    bool is_modular() const {
        return kind_ == RingKind::PrimeField || kind_ == RingKind::CyclicRing;
    }
    /// True for rings whose homology is computed integrally (SNF path).
    bool is_integral_like() const {
        return kind_ == RingKind::Integers || kind_ == RingKind::PLocalIntegers;
    }

    /// Canonical representative of an element. Throws MathError if the value
    /// does not denote an element of this ring.
    Rat reduce(const Rat& x) const;

    Rat add(const Rat& a, const Rat& b) const { return reduce(a + b); }
    Rat sub(const Rat& a, const Rat& b) const { return reduce(a - b); }
    Rat mul(const Rat& a, const Rat& b) const { return reduce(a * b); }
    Rat neg(const Rat& a) const { return reduce(-a); }
    Rat inv(const Rat& a) const;
    bool is_zero(const Rat& a) const { return reduce(a) == 0; }
    bool eq(const Rat& a, const Rat& b) const { return reduce(a - b) == 0; }

    std::string name() const;

    bool operator==(const BaseRing& o) const {
        return kind_ == o.kind_ && p_ == o.p_ && k_ == o.k_;
    }
    bool operator!=(const BaseRing& o) const { return !(*this == o); }

private:
    BaseRing(RingKind kind, const Int& p, unsigned k);

    RingKind kind_;
    Int p_;
    unsigned k_;
    Int modulus_;
};

/// Inverse of a modulo m (m > 1). Throws if not invertible.
Int mod_inverse(const Int& a, const Int& m);

Int binomial(const Int& n, const Int& k);
Int factorial(unsigned n);

}  // namespace hkr
