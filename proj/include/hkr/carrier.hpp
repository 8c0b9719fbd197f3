#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hkr/poly.hpp"
#include "hkr/ring.hpp"

namespace hkr {

/// Evaluation site for Witt-vector functor-of-points computations: a
/// commutative ring whose elements are encoded as Rat values. Finite rings
/// expose full enumeration; elements of F_{p^k} and F_p[eps]/eps^2 are
/// encoded as integer indices whose base-p digits are basis coefficients.
class Carrier {
public:
    virtual ~Carrier() = default;
    virtual std::string name() const = 0;
    virtual bool finite() const = 0;
    virtual long size() const { throw MathError("enumeration requires finite ring"); }
    virtual Rat element(long i) const;
    virtual Rat zero() const = 0;
    virtual Rat one() const = 0;
    virtual Rat add(const Rat& a, const Rat& b) const = 0;
    virtual Rat mul(const Rat& a, const Rat& b) const = 0;
    virtual Rat neg(const Rat& a) const = 0;
    virtual Rat from_integer(const Int& n) const = 0;
    /// True if this ring is an algebra over F_p for the given prime.
    virtual bool is_fp_algebra(const Int& p) const = 0;
    virtual bool eq(const Rat& a, const Rat& b) const;

    Rat sub(const Rat& a, const Rat& b) const { return add(a, neg(b)); }
    Rat pow(const Rat& a, const Int& e) const;
    Rat eval_poly(const MultiPoly& f, const std::vector<Rat>& values) const;

    static std::shared_ptr<const Carrier> integers();
    static std::shared_ptr<const Carrier> rationals();
    static std::shared_ptr<const Carrier> cyclic(const Int& p, unsigned k);  // Z/p^k
    static std::shared_ptr<const Carrier> prime_field(const Int& p) { return cyclic(p, 1); }
    static std::shared_ptr<const Carrier> finite_field(const Int& p, unsigned k);  // F_{p^k}
    static std::shared_ptr<const Carrier> dual_numbers(const Int& p);  // F_p[eps]/eps^2
};

using CarrierPtr = std::shared_ptr<const Carrier>;

}  // namespace hkr
