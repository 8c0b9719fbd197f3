#pragma once

#include <map>
#include <string>
#include <vector>

#include "hkr/ring.hpp"

namespace hkr {

using Exponents = std::vector<int>;

/// Graded-lex order on exponent vectors: higher total degree first, ties
/// broken lexicographically (larger wins). std::map comparator form.
struct GrlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const {
        long da = 0, db = 0;
        for (int x : a) da += x;
        for (int x : b) db += x;
        if (da != db) return da > db;
        return a > b;
    }
};

/// Sparse multivariate polynomial over a BaseRing with a fixed ordered
/// variable list. Zero coefficients are never stored. Immutable in spirit:
/// operations return new values.
class MultiPoly {
public:
    using TermMap = std::map<Exponents, Rat, GrlexGreater>;

    MultiPoly(std::vector<std::string> vars, BaseRing ring)
        : vars_(std::move(vars)), ring_(ring) {}
    static MultiPoly constant(const Rat& c, std::vector<std::string> vars, BaseRing ring);
    static MultiPoly variable(size_t index, std::vector<std::string> vars, BaseRing ring);

    const std::vector<std::string>& vars() const { return vars_; }
    const BaseRing& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rat coeff(const Exponents& e) const;
    void add_term(const Exponents& e, const Rat& c);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly scaled(const Rat& c) const;
    MultiPoly pow(unsigned n) const;
    bool operator==(const MultiPoly& o) const;

    /// Substitute images[i] for variable i; images share one variable list.
    MultiPoly substitute(const std::vector<MultiPoly>& images) const;

    /// Exact division of every coefficient by n. Throws MathError carrying
    /// the offending term if any coefficient is not divisible; that error is
    /// a mathematical signal (it falsifies an integrality claim).
    MultiPoly divide_exactly_by_integer(const Int& n) const;

    /// Generic evaluation: values[i] replaces variable i, combined with the
    /// supplied ring-like callbacks. Used for carrier evaluation.
    template <typename Elem, typename FromInt, typename Add, typename Mul>
    Elem evaluate(const std::vector<Elem>& values, const Elem& zero, const Elem& one,
                  FromInt from_int, Add add, Mul mul) const {
        Elem acc = zero;
        for (const auto& [e, c] : terms_) {
            if (c.get_den() != 1) throw MathError("carrier evaluation needs integer coefficients");
            Elem t = from_int(c.get_num());
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) t = mul(t, values[i]);
            acc = add(acc, t);
        }
        (void)one;
        return acc;
    }

    /// Plain evaluation in the coefficient ring.
    Rat evaluate_ring(const std::vector<Rat>& values) const;

    MultiPoly over(BaseRing ring) const;
    /// Drop terms of total degree > n.
    MultiPoly truncated(long n) const;
    long total_degree() const;
    std::string str() const;

private:
    std::vector<std::string> vars_;
    BaseRing ring_;
    TermMap terms_;
};

}  // namespace hkr
