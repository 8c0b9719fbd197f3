#include "hkr/carrier.hpp"

namespace hkr {

Rat Carrier::element(long) const { throw MathError("enumeration requires finite ring"); }

bool Carrier::eq(const Rat& a, const Rat& b) const { return a == b; }

Rat Carrier::pow(const Rat& a, const Int& e) const {
    if (e < 0) throw MathError("negative power in carrier");
    Rat r = one();
    Rat base = a;
    Int n = e;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

Rat Carrier::eval_poly(const MultiPoly& f, const std::vector<Rat>& values) const {
    if (values.size() != f.vars().size()) throw MathError("eval_poly: value count mismatch");
    Rat acc = zero();
    for (const auto& [e, c] : f.terms()) {
        if (c.get_den() != 1) throw MathError("carrier evaluation needs integer coefficients");
        Rat t = from_integer(c.get_num());
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t = mul(t, values[i]);
        acc = add(acc, t);
    }
    return acc;
}

namespace {

class IntegerCarrier final : public Carrier {
public:
    std::string name() const override { return "Z"; }
    bool finite() const override { return false; }
    Rat zero() const override { return Rat(0); }
    Rat one() const override { return Rat(1); }
    Rat add(const Rat& a, const Rat& b) const override { return a + b; }
    Rat mul(const Rat& a, const Rat& b) const override { return a * b; }
    Rat neg(const Rat& a) const override { return -a; }
    Rat from_integer(const Int& n) const override { return Rat(n); }
    bool is_fp_algebra(const Int&) const override { return false; }
};

class RationalCarrier final : public Carrier {
public:
    std::string name() const override { return "Q"; }
    bool finite() const override { return false; }
    Rat zero() const override { return Rat(0); }
    Rat one() const override { return Rat(1); }
    Rat add(const Rat& a, const Rat& b) const override { return a + b; }
    Rat mul(const Rat& a, const Rat& b) const override { return a * b; }
    Rat neg(const Rat& a) const override { return -a; }
    Rat from_integer(const Int& n) const override { return Rat(n); }
    bool is_fp_algebra(const Int&) const override { return false; }
};

class CyclicCarrier final : public Carrier {
public:
    CyclicCarrier(const Int& p, unsigned k) : p_(p), k_(k) {
        if (!is_prime(p)) throw MathError("carrier: p not prime");
        mpz_pow_ui(mod_.get_mpz_t(), p.get_mpz_t(), k);
    }
    std::string name() const override {
        return k_ == 1 ? "F" + p_.get_str() : "Z/" + mod_.get_str();
    }
    bool finite() const override { return true; }
    long size() const override { return mod_.get_si(); }
    Rat element(long i) const override { return Rat(i); }
    Rat zero() const override { return Rat(0); }
    Rat one() const override { return Rat(1); }
    Rat add(const Rat& a, const Rat& b) const override { return red(a + b); }
    Rat mul(const Rat& a, const Rat& b) const override { return red(a * b); }
    Rat neg(const Rat& a) const override { return red(-a); }
    Rat from_integer(const Int& n) const override { return red(Rat(n)); }
    bool is_fp_algebra(const Int& p) const override { return k_ == 1 && p == p_; }

private:
    Rat red(const Rat& x) const {
        if (x.get_den() != 1) throw MathError("non-integral element of Z/p^k");
        Int r;
        mpz_mod(r.get_mpz_t(), x.get_num().get_mpz_t(), mod_.get_mpz_t());
        return Rat(r);
    }
    Int p_, mod_;
    unsigned k_;
};

// F_{p^k} with elements encoded as indices in [0, p^k): base-p digits are
// the coefficients of 1, a, a^2, ... where a is a root of the modulus.
class FiniteFieldCarrier final : public Carrier {
public:
    FiniteFieldCarrier(const Int& p, unsigned k) : p_(p.get_si()), k_(k) {
        if (!is_prime(p)) throw MathError("carrier: p not prime");
        if (k < 1 || k > 3) throw MathError("F_{p^k} supported for k <= 3 only");
        size_ = 1;
        for (unsigned i = 0; i < k; ++i) size_ *= p_;
        modulus_ = find_modulus();
    }
    std::string name() const override {
        return "F" + std::to_string(p_) + (k_ > 1 ? "^" + std::to_string(k_) : "");
    }
    bool finite() const override { return true; }
    long size() const override { return size_; }
    Rat element(long i) const override { return Rat(i); }
    Rat zero() const override { return Rat(0); }
    Rat one() const override { return Rat(1); }
    Rat add(const Rat& a, const Rat& b) const override {
        auto x = digits(a), y = digits(b);
        for (unsigned i = 0; i < k_; ++i) x[i] = (x[i] + y[i]) % p_;
        return encode(x);
    }
    Rat neg(const Rat& a) const override {
        auto x = digits(a);
        for (unsigned i = 0; i < k_; ++i) x[i] = (p_ - x[i]) % p_;
        return encode(x);
    }
    Rat mul(const Rat& a, const Rat& b) const override {
        auto x = digits(a), y = digits(b);
        std::vector<long> prod(2 * k_ - 1, 0);
        for (unsigned i = 0; i < k_; ++i)
            for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
        // Reduce by the monic modulus: a^k = -(lower terms).
        for (int d = static_cast<int>(prod.size()) - 1; d >= static_cast<int>(k_); --d) {
            long c = prod[d];
            if (c == 0) continue;
            prod[d] = 0;
            for (unsigned i = 0; i < k_; ++i)
                prod[d - k_ + i] = ((prod[d - k_ + i] - c * modulus_[i]) % p_ + p_) % p_;
        }
        prod.resize(k_);
        return encode(prod);
    }
    Rat from_integer(const Int& n) const override {
        Int r;
        Int p(p_);
        mpz_mod(r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        return Rat(r);
    }
    bool is_fp_algebra(const Int& p) const override { return p == p_; }

private:
    std::vector<long> digits(const Rat& a) const {
        long v = a.get_num().get_si();
        std::vector<long> d(k_);
        for (unsigned i = 0; i < k_; ++i) {
            d[i] = v % p_;
            v /= p_;
        }
        return d;
    }
    Rat encode(const std::vector<long>& d) const {
        long v = 0;
        for (unsigned i = k_; i-- > 0;) v = v * p_ + d[i];
        return Rat(v);
    }
    // Smallest monic irreducible of degree k over F_p, stored as the low
    // coefficients c_0..c_{k-1} of x^k + c_{k-1}x^{k-1} + ... + c_0.
    // Degree <= 3: irreducible iff no roots in F_p.
    std::vector<long> find_modulus() const {
        if (k_ == 1) return {0};
        long combos = 1;
        for (unsigned i = 0; i < k_; ++i) combos *= p_;
        for (long idx = 0; idx < combos; ++idx) {
            std::vector<long> c(k_);
            long v = idx;
            for (unsigned i = 0; i < k_; ++i) {
                c[i] = v % p_;
                v /= p_;
            }
            bool has_root = false;
            for (long r = 0; r < p_ && !has_root; ++r) {
                long val = 1;  // x^k term
                for (unsigned i = k_; i-- > 0;) val = (val * r + c[i]) % p_;
                if (val % p_ == 0) has_root = true;
            }
            if (!has_root) return c;
        }
        throw MathError("no irreducible polynomial found");
    }

    long p_, size_;
    unsigned k_;
    std::vector<long> modulus_;
};

// F_p[eps]/(eps^2); element a + b*eps encoded as index a + p*b.
class DualNumberCarrier final : public Carrier {
public:
    explicit DualNumberCarrier(const Int& p) : p_(p.get_si()) {
        if (!is_prime(p)) throw MathError("carrier: p not prime");
    }
    std::string name() const override { return "F" + std::to_string(p_) + "[eps]"; }
    bool finite() const override { return true; }
    long size() const override { return p_ * p_; }
    Rat element(long i) const override { return Rat(i); }
    Rat zero() const override { return Rat(0); }
    Rat one() const override { return Rat(1); }
    Rat add(const Rat& x, const Rat& y) const override {
        auto [a, b] = split(x);
        auto [c, d] = split(y);
        return join((a + c) % p_, (b + d) % p_);
    }
    Rat neg(const Rat& x) const override {
        auto [a, b] = split(x);
        return join((p_ - a) % p_, (p_ - b) % p_);
    }
    Rat mul(const Rat& x, const Rat& y) const override {
        auto [a, b] = split(x);
        auto [c, d] = split(y);
        return join((a * c) % p_, (a * d + b * c) % p_);
    }
    Rat from_integer(const Int& n) const override {
        Int r;
        Int p(p_);
        mpz_mod(r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        return Rat(r);
    }
    bool is_fp_algebra(const Int& p) const override { return p == p_; }

private:
    std::pair<long, long> split(const Rat& x) const {
        long v = x.get_num().get_si();
        return {v % p_, v / p_};
    }
    Rat join(long a, long b) const { return Rat(a + p_ * b); }
    long p_;
};

}  // namespace

CarrierPtr Carrier::integers() { return std::make_shared<IntegerCarrier>(); }
CarrierPtr Carrier::rationals() { return std::make_shared<RationalCarrier>(); }
CarrierPtr Carrier::cyclic(const Int& p, unsigned k) {
    return std::make_shared<CyclicCarrier>(p, k);
}
CarrierPtr Carrier::finite_field(const Int& p, unsigned k) {
    if (k == 1) return cyclic(p, 1);
    return std::make_shared<FiniteFieldCarrier>(p, k);
}
CarrierPtr Carrier::dual_numbers(const Int& p) { return std::make_shared<DualNumberCarrier>(p); }

}  // namespace hkr
