#include "hkr/ring.hpp"

namespace hkr {

bool is_prime(const Int& n) {
    if (n < 2) return false;
    // 50 Miller-Rabin rounds: deterministic for anything we ever construct.
    return mpz_probab_prime_p(n.get_mpz_t(), 50) != 0;
}

BaseRing::BaseRing(RingKind kind, const Int& p, unsigned k) : kind_(kind), p_(p), k_(k) {
    if (kind == RingKind::PrimeField || kind == RingKind::CyclicRing ||
        kind == RingKind::PLocalIntegers) {
        if (!is_prime(p)) throw MathError("BaseRing: p = " + p.get_str() + " is not prime");
    }
    if (kind == RingKind::CyclicRing && k == 0)
        throw MathError("BaseRing: Z/p^k needs k >= 1");
    if (is_modular()) {
        mpz_pow_ui(modulus_.get_mpz_t(), p_.get_mpz_t(), k_);
    }
}

Int mod_inverse(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw MathError("not invertible: " + a.get_str() + " mod " + m.get_str());
    return r;
}

Rat BaseRing::reduce(const Rat& x) const {
    Rat c = x;
    c.canonicalize();
    switch (kind_) {
        case RingKind::Integers:
            if (c.get_den() != 1)
                throw MathError("not an integer: " + c.get_str());
            return c;
        case RingKind::Rationals:
            return c;
        case RingKind::PLocalIntegers: {
            Int g;
            mpz_gcd(g.get_mpz_t(), c.get_den().get_mpz_t(), p_.get_mpz_t());
            if (g != 1)
                throw MathError("not p-local at p=" + p_.get_str() + ": " + c.get_str());
            return c;
        }
        case RingKind::PrimeField:
        case RingKind::CyclicRing: {
            Int den = c.get_den();
            Int num = c.get_num();
            Int v = num;
            if (den != 1) v = num * mod_inverse(den, modulus_);
            Int r;
            mpz_mod(r.get_mpz_t(), v.get_mpz_t(), modulus_.get_mpz_t());
            return Rat(r);
        }
    }
    throw MathError("unreachable ring kind");
}

Rat BaseRing::inv(const Rat& a) const {
    Rat c = reduce(a);
    if (c == 0) throw MathError("division by zero");
    switch (kind_) {
        case RingKind::Rationals:
            return Rat(1) / c;
        case RingKind::PrimeField:
        case RingKind::CyclicRing:
            return Rat(mod_inverse(c.get_num(), modulus_));
        case RingKind::Integers:
            if (c == 1 || c == -1) return c;
            throw MathError("non-unit in Z: " + c.get_str());
        case RingKind::PLocalIntegers: {
            Int g;
            mpz_gcd(g.get_mpz_t(), c.get_num().get_mpz_t(), p_.get_mpz_t());
            if (g != 1) throw MathError("non-unit in Z_(p): " + c.get_str());
            return reduce(Rat(1) / c);
        }
    }
    throw MathError("unreachable ring kind");
}

std::string BaseRing::name() const {
    switch (kind_) {
        case RingKind::Integers: return "Z";
        case RingKind::Rationals: return "Q";
        case RingKind::PrimeField: return "F" + p_.get_str();
        case RingKind::CyclicRing: return "Z/" + modulus_.get_str();
        case RingKind::PLocalIntegers: return "Z_(" + p_.get_str() + ")";
    }
    return "?";
}

Int binomial(const Int& n, const Int& k) {
    if (k < 0 || k > n) return 0;
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k.get_ui());
    return r;
}

Int factorial(unsigned n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

}  // namespace hkr
