#include "hkr/poly.hpp"

#include <sstream>

namespace hkr {

MultiPoly MultiPoly::constant(const Rat& c, std::vector<std::string> vars, BaseRing ring) {
    MultiPoly p(std::move(vars), ring);
    p.add_term(Exponents(p.vars_.size(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(size_t index, std::vector<std::string> vars, BaseRing ring) {
    MultiPoly p(std::move(vars), ring);
    if (index >= p.vars_.size()) throw MathError("variable index out of range");
    Exponents e(p.vars_.size(), 0);
    e[index] = 1;
    p.add_term(e, Rat(1));
    return p;
}

Rat MultiPoly::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

void MultiPoly::add_term(const Exponents& e, const Rat& c) {
    if (e.size() != vars_.size()) throw MathError("exponent vector length mismatch");
    Rat v = ring_.reduce(c);
    if (v == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, v);
    } else {
        it->second = ring_.add(it->second, v);
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    if (vars_ != o.vars_) throw MathError("polynomial variable list mismatch");
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator-() const { return scaled(Rat(-1)); }

MultiPoly MultiPoly::scaled(const Rat& c) const {
    MultiPoly r(vars_, ring_);
    for (const auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (vars_ != o.vars_) throw MathError("polynomial variable list mismatch");
    MultiPoly r(vars_, ring_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Exponents e(e1.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

MultiPoly MultiPoly::pow(unsigned n) const {
    MultiPoly r = constant(Rat(1), vars_, ring_);
    MultiPoly base = *this;
    while (n > 0) {
        if (n & 1u) r = r * base;
        base = base * base;
        n >>= 1u;
    }
    return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    return vars_ == o.vars_ && (*this - o).is_zero();
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images) const {
    if (images.size() != vars_.size()) throw MathError("substitute: image count mismatch");
    if (images.empty()) return *this;
    MultiPoly r(images[0].vars_, images[0].ring_);
    for (const auto& [e, c] : terms_) {
        MultiPoly t = MultiPoly::constant(c, images[0].vars_, images[0].ring_);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) t = t * images[i].pow(static_cast<unsigned>(e[i]));
        r = r + t;
    }
    return r;
}

MultiPoly MultiPoly::divide_exactly_by_integer(const Int& n) const {
    if (n == 0) throw MathError("divide_exactly_by_integer: zero divisor");
    MultiPoly r(vars_, ring_);
    for (const auto& [e, c] : terms_) {
        if (c.get_den() != 1 || c.get_num() % n != 0) {
            std::ostringstream os;
            os << "inexact division by " << n.get_str() << " at term coeff " << c.get_str();
            throw MathError(os.str());
        }
        r.add_term(e, Rat(c.get_num() / n));
    }
    return r;
}

Rat MultiPoly::evaluate_ring(const std::vector<Rat>& values) const {
    if (values.size() != vars_.size()) throw MathError("evaluate: value count mismatch");
    Rat acc(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= values[i];
        acc += t;
    }
    return ring_.reduce(acc);
}

MultiPoly MultiPoly::over(BaseRing ring) const {
    MultiPoly r(vars_, ring);
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    return r;
}

MultiPoly MultiPoly::truncated(long n) const {
    MultiPoly r(vars_, ring_);
    for (const auto& [e, c] : terms_) {
        long d = 0;
        for (int x : e) d += x;
        if (d <= n) r.add_term(e, c);
    }
    return r;
}

long MultiPoly::total_degree() const {
    long d = -1;
    for (const auto& [e, c] : terms_) {
        (void)c;
        long t = 0;
        for (int x : e) t += x;
        d = std::max(d, t);
    }
    return d;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*" << vars_[i];
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

}  // namespace hkr
