#include "hkr/circlehopf.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "hkr/witt.hpp"

namespace hkr {
namespace hopf {

namespace {

int koszul(int h1, int h2) { return (h1 % 2 != 0 && h2 % 2 != 0) ? -1 : 1; }

std::vector<Rat> zero_vec(int n) { return std::vector<Rat>(static_cast<size_t>(n), Rat(0)); }

void axpy(const BaseRing& ring, std::vector<Rat>& acc, const Rat& c,
          const std::vector<Rat>& v) {
    for (size_t i = 0; i < acc.size(); ++i) acc[i] = ring.add(acc[i], c * v[i]);
}

std::vector<Rat> mult_vec(const GradedHopfAlgebra& H, const std::vector<Rat>& x,
                          const std::vector<Rat>& y) {
    std::vector<Rat> out = zero_vec(H.rank());
    for (int i = 0; i < H.rank(); ++i) {
        if (H.ring.is_zero(x[static_cast<size_t>(i)])) continue;
        for (int j = 0; j < H.rank(); ++j) {
            if (H.ring.is_zero(y[static_cast<size_t>(j)])) continue;
            axpy(H.ring, out, x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)],
                 H.mult[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        }
    }
    return out;
}

// Element of H (x) H as a coefficient matrix t(i, j) on e_i (x) e_j.
ExactMatrix tensor_mult(const GradedHopfAlgebra& H, const ExactMatrix& s, const ExactMatrix& t) {
    const int r = H.rank();
    ExactMatrix out(r, r, H.ring);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            if (H.ring.is_zero(s.at(a, b))) continue;
            for (int c = 0; c < r; ++c)
                for (int d = 0; d < r; ++d) {
                    if (H.ring.is_zero(t.at(c, d))) continue;
                    Rat coeff = s.at(a, b) * t.at(c, d) *
                                koszul(H.basis[static_cast<size_t>(b)].hdeg,
                                       H.basis[static_cast<size_t>(c)].hdeg);
                    const auto& lm = H.mult[static_cast<size_t>(a)][static_cast<size_t>(c)];
                    const auto& rm = H.mult[static_cast<size_t>(b)][static_cast<size_t>(d)];
                    for (int k = 0; k < r; ++k) {
                        if (H.ring.is_zero(lm[static_cast<size_t>(k)])) continue;
                        for (int l = 0; l < r; ++l)
                            out.set(k, l,
                                    H.ring.add(out.at(k, l),
                                               coeff * lm[static_cast<size_t>(k)] *
                                                   rm[static_cast<size_t>(l)]));
                    }
                }
        }
    return out;
}

ExactMatrix comult_mat(const GradedHopfAlgebra& H, int k) {
    const int r = H.rank();
    ExactMatrix m(r, r, H.ring);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            m.set(i, j, H.comult[static_cast<size_t>(k)][static_cast<size_t>(i)]
                                [static_cast<size_t>(j)]);
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// GradedHopfAlgebra
// ---------------------------------------------------------------------------

void GradedHopfAlgebra::validate() const {
    const int r = rank();
    const size_t rs = static_cast<size_t>(r);
    if (mult.size() != rs || comult.size() != rs || unit.size() != rs || counit.size() != rs ||
        antipode.size() != rs)
        throw MathError("hopf structure size mismatch");
    auto w = [&](int i) { return basis[static_cast<size_t>(i)].weight; };
    auto h = [&](int i) { return basis[static_cast<size_t>(i)].hdeg; };
    // Grading additivity of product and coproduct. Truncated instances are
    // filtered rather than graded: weights may drop under multiplication and
    // coproduct components sit in lower total weight.
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                bool mok = trunc >= 0 ? w(k) <= w(i) + w(j) : w(k) == w(i) + w(j);
                bool cok = trunc >= 0 ? w(i) + w(j) <= w(k) : w(i) + w(j) == w(k);
                if (!ring.is_zero(mult[static_cast<size_t>(i)][static_cast<size_t>(j)]
                                      [static_cast<size_t>(k)]) &&
                    (!mok || h(k) != h(i) + h(j)))
                    throw MathError("product does not preserve grading");
                if (!ring.is_zero(comult[static_cast<size_t>(k)][static_cast<size_t>(i)]
                                        [static_cast<size_t>(j)]) &&
                    (!cok || h(k) != h(i) + h(j)))
                    throw MathError("coproduct does not preserve grading");
            }
    // Associativity (valid through a truncation when weights are >= 0).
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                std::vector<Rat> lhs = zero_vec(r), rhs = zero_vec(r);
                for (int m = 0; m < r; ++m) {
                    axpy(ring, lhs,
                         mult[static_cast<size_t>(i)][static_cast<size_t>(j)]
                             [static_cast<size_t>(m)],
                         mult[static_cast<size_t>(m)][static_cast<size_t>(k)]);
                    axpy(ring, rhs,
                         mult[static_cast<size_t>(j)][static_cast<size_t>(k)]
                             [static_cast<size_t>(m)],
                         mult[static_cast<size_t>(i)][static_cast<size_t>(m)]);
                }
                if (lhs != rhs) throw MathError("product not associative");
            }
    // Unit laws.
    for (int j = 0; j < r; ++j) {
        std::vector<Rat> left = zero_vec(r), right = zero_vec(r);
        for (int i = 0; i < r; ++i) {
            axpy(ring, left, unit[static_cast<size_t>(i)],
                 mult[static_cast<size_t>(i)][static_cast<size_t>(j)]);
            axpy(ring, right, unit[static_cast<size_t>(i)],
                 mult[static_cast<size_t>(j)][static_cast<size_t>(i)]);
        }
        std::vector<Rat> ej = zero_vec(r);
        ej[static_cast<size_t>(j)] = 1;
        for (int k = 0; k < r; ++k)
            if (!ring.eq(left[static_cast<size_t>(k)], ej[static_cast<size_t>(k)]) ||
                !ring.eq(right[static_cast<size_t>(k)], ej[static_cast<size_t>(k)]))
                throw MathError("unit law fails");
    }
    // Coassociativity: compare the two 3-tensor expansions of Delta^2(e_k).
    for (int k = 0; k < r; ++k)
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b)
                for (int c = 0; c < r; ++c) {
                    Rat lhs(0), rhs(0);
                    for (int m = 0; m < r; ++m) {
                        lhs += comult[static_cast<size_t>(k)][static_cast<size_t>(m)]
                                     [static_cast<size_t>(c)] *
                               comult[static_cast<size_t>(m)][static_cast<size_t>(a)]
                                     [static_cast<size_t>(b)];
                        rhs += comult[static_cast<size_t>(k)][static_cast<size_t>(a)]
                                     [static_cast<size_t>(m)] *
                               comult[static_cast<size_t>(m)][static_cast<size_t>(b)]
                                     [static_cast<size_t>(c)];
                    }
                    if (!ring.eq(lhs, rhs)) throw MathError("coproduct not coassociative");
                }
    // Counit laws.
    for (int k = 0; k < r; ++k) {
        std::vector<Rat> left = zero_vec(r), right = zero_vec(r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                Rat c = comult[static_cast<size_t>(k)][static_cast<size_t>(i)]
                              [static_cast<size_t>(j)];
                left[static_cast<size_t>(j)] =
                    ring.add(left[static_cast<size_t>(j)], c * counit[static_cast<size_t>(i)]);
                right[static_cast<size_t>(i)] =
                    ring.add(right[static_cast<size_t>(i)], c * counit[static_cast<size_t>(j)]);
            }
        for (int j = 0; j < r; ++j) {
            Rat want = j == k ? Rat(1) : Rat(0);
            if (!ring.eq(left[static_cast<size_t>(j)], want) ||
                !ring.eq(right[static_cast<size_t>(j)], want))
                throw MathError("counit law fails");
        }
    }
    // Delta(1) = 1 (x) 1 and counit multiplicativity.
    {
        ExactMatrix d1(r, r, ring);
        for (int k = 0; k < r; ++k) {
            if (ring.is_zero(unit[static_cast<size_t>(k)])) continue;
            ExactMatrix dk = comult_mat(*this, k);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    d1.set(i, j, ring.add(d1.at(i, j), unit[static_cast<size_t>(k)] * dk.at(i, j)));
        }
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                if (!ring.eq(d1.at(i, j),
                             unit[static_cast<size_t>(i)] * unit[static_cast<size_t>(j)]))
                    throw MathError("coproduct of the unit is not 1 (x) 1");
    }
    // Compatibility: Delta is multiplicative (with Koszul signs); through a
    // truncation only pairs of total weight <= trunc are meaningful.
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (trunc >= 0 && w(i) + w(j) > trunc) continue;
            ExactMatrix lhs(r, r, ring);
            for (int k = 0; k < r; ++k) {
                Rat c = mult[static_cast<size_t>(i)][static_cast<size_t>(j)]
                            [static_cast<size_t>(k)];
                if (ring.is_zero(c)) continue;
                ExactMatrix dk = comult_mat(*this, k);
                for (int a = 0; a < r; ++a)
                    for (int b = 0; b < r; ++b)
                        lhs.set(a, b, ring.add(lhs.at(a, b), c * dk.at(a, b)));
            }
            ExactMatrix rhs = tensor_mult(*this, comult_mat(*this, i), comult_mat(*this, j));
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b)
                    if (!ring.eq(lhs.at(a, b), rhs.at(a, b)))
                        throw MathError("coproduct is not an algebra map");
            // Counit multiplicativity on the same pairs.
            Rat e(0);
            for (int k = 0; k < r; ++k)
                e += mult[static_cast<size_t>(i)][static_cast<size_t>(j)]
                         [static_cast<size_t>(k)] *
                     counit[static_cast<size_t>(k)];
            if (!ring.eq(e, counit[static_cast<size_t>(i)] * counit[static_cast<size_t>(j)]))
                throw MathError("counit is not an algebra map");
        }
    // Antipode identities m(S (x) id)Delta = unit . counit = m(id (x) S)Delta.
    for (int k = 0; k < r; ++k) {
        std::vector<Rat> left = zero_vec(r), right = zero_vec(r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                Rat c = comult[static_cast<size_t>(k)][static_cast<size_t>(i)]
                              [static_cast<size_t>(j)];
                if (ring.is_zero(c)) continue;
                std::vector<Rat> ej = zero_vec(r), ei = zero_vec(r);
                ej[static_cast<size_t>(j)] = 1;
                ei[static_cast<size_t>(i)] = 1;
                axpy(ring, left, c, mult_vec(*this, antipode[static_cast<size_t>(i)], ej));
                axpy(ring, right, c, mult_vec(*this, ei, antipode[static_cast<size_t>(j)]));
            }
        for (int j = 0; j < r; ++j) {
            Rat want = counit[static_cast<size_t>(k)] * unit[static_cast<size_t>(j)];
            if (!ring.eq(left[static_cast<size_t>(j)], want) ||
                !ring.eq(right[static_cast<size_t>(j)], want))
                throw MathError("antipode identity fails");
        }
    }
}

GradedHopfAlgebra GradedHopfAlgebra::dual() const {
    const int r = rank();
    GradedHopfAlgebra D;
    D.ring = ring;
    D.trunc = trunc;
    for (const auto& b : basis) D.basis.push_back({-b.hdeg, -b.weight, b.name + "^"});
    D.mult.assign(static_cast<size_t>(r),
                  std::vector<std::vector<Rat>>(static_cast<size_t>(r), zero_vec(r)));
    D.comult = D.mult;
    D.unit = counit;
    D.counit = unit;
    D.antipode.assign(static_cast<size_t>(r), zero_vec(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            int sg = koszul(basis[static_cast<size_t>(i)].hdeg, basis[static_cast<size_t>(j)].hdeg);
            for (int k = 0; k < r; ++k) {
                D.mult[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] =
                    ring.reduce(Rat(sg) * comult[static_cast<size_t>(k)][static_cast<size_t>(i)]
                                                [static_cast<size_t>(j)]);
                D.comult[static_cast<size_t>(k)][static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    ring.reduce(Rat(sg) * mult[static_cast<size_t>(i)][static_cast<size_t>(j)]
                                              [static_cast<size_t>(k)]);
            }
            D.antipode[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                antipode[static_cast<size_t>(j)][static_cast<size_t>(i)];
        }
    D.validate();
    return D;
}

std::vector<std::vector<Rat>> GradedHopfAlgebra::primitives() const {
    const int r = rank();
    if (!ring.is_field()) throw MathError("field required");
    ExactMatrix M(r * r, r, ring);
    for (int k = 0; k < r; ++k)
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                Rat v = comult[static_cast<size_t>(k)][static_cast<size_t>(i)]
                              [static_cast<size_t>(j)];
                if (i == k) v -= unit[static_cast<size_t>(j)];
                if (j == k) v -= unit[static_cast<size_t>(i)];
                M.set(i * r + j, k, v);
            }
    return kernel_basis(M);
}

std::vector<int> GradedHopfAlgebra::grouplike_basis_elements() const {
    std::vector<int> out;
    for (int k = 0; k < rank(); ++k) {
        bool ok = ring.eq(counit[static_cast<size_t>(k)], Rat(1));
        for (int i = 0; ok && i < rank(); ++i)
            for (int j = 0; ok && j < rank(); ++j) {
                Rat want = (i == k && j == k) ? Rat(1) : Rat(0);
                ok = ring.eq(comult[static_cast<size_t>(k)][static_cast<size_t>(i)]
                                   [static_cast<size_t>(j)],
                             want);
            }
        if (ok) out.push_back(k);
    }
    return out;
}

bool same_structure(const GradedHopfAlgebra& a, const GradedHopfAlgebra& b) {
    if (a.rank() != b.rank() || a.ring != b.ring) return false;
    for (int i = 0; i < a.rank(); ++i)
        if (a.basis[static_cast<size_t>(i)].hdeg != b.basis[static_cast<size_t>(i)].hdeg ||
            a.basis[static_cast<size_t>(i)].weight != b.basis[static_cast<size_t>(i)].weight)
            return false;
    auto eqv = [&](const std::vector<Rat>& x, const std::vector<Rat>& y) {
        for (size_t i = 0; i < x.size(); ++i)
            if (!a.ring.eq(x[i], y[i])) return false;
        return true;
    };
    for (int i = 0; i < a.rank(); ++i) {
        if (!eqv(a.antipode[static_cast<size_t>(i)], b.antipode[static_cast<size_t>(i)]))
            return false;
        for (int j = 0; j < a.rank(); ++j)
            if (!eqv(a.mult[static_cast<size_t>(i)][static_cast<size_t>(j)],
                     b.mult[static_cast<size_t>(i)][static_cast<size_t>(j)]) ||
                !eqv(a.comult[static_cast<size_t>(i)][static_cast<size_t>(j)],
                     b.comult[static_cast<size_t>(i)][static_cast<size_t>(j)]))
                return false;
    }
    return eqv(a.unit, b.unit) && eqv(a.counit, b.counit);
}

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

GradedHopfAlgebra lambda_hopf(BaseRing k) {
    GradedHopfAlgebra H;
    H.ring = k;
    H.basis = {{0, 0, "1"}, {1, 1, "e"}};
    H.mult.assign(2, std::vector<std::vector<Rat>>(2, zero_vec(2)));
    H.comult = H.mult;
    H.mult[0][0][0] = 1;
    H.mult[0][1][1] = 1;
    H.mult[1][0][1] = 1;  // e^2 = 0
    H.comult[0][0][0] = 1;
    H.comult[1][1][0] = 1;
    H.comult[1][0][1] = 1;  // e primitive
    H.unit = {Rat(1), Rat(0)};
    H.counit = {Rat(1), Rat(0)};
    H.antipode = {{Rat(1), Rat(0)}, {Rat(0), Rat(-1)}};
    H.validate();
    return H;
}

GradedHopfAlgebra alpha_hopf(const Int& p, int m) {
    BaseRing k = BaseRing::prime_field(p);
    long n = 1;
    for (int i = 0; i < m; ++i) n *= p.get_si();
    GradedHopfAlgebra H;
    H.ring = k;
    for (long a = 0; a < n; ++a) H.basis.push_back({0, a, "T^" + std::to_string(a)});
    int r = static_cast<int>(n);
    H.mult.assign(static_cast<size_t>(r),
                  std::vector<std::vector<Rat>>(static_cast<size_t>(r), zero_vec(r)));
    H.comult = H.mult;
    H.antipode.assign(static_cast<size_t>(r), zero_vec(r));
    H.unit = zero_vec(r);
    H.unit[0] = 1;
    H.counit = zero_vec(r);
    H.counit[0] = 1;
    for (long a = 0; a < n; ++a) {
        for (long b = 0; b < n; ++b)
            if (a + b < n) H.mult[static_cast<size_t>(a)][static_cast<size_t>(b)]
                                 [static_cast<size_t>(a + b)] = 1;
        for (long i = 0; i <= a; ++i)
            H.comult[static_cast<size_t>(a)][static_cast<size_t>(i)][static_cast<size_t>(a - i)] =
                k.reduce(Rat(binomial(Int(a), Int(i))));
        H.antipode[static_cast<size_t>(a)][static_cast<size_t>(a)] =
            k.reduce(a % 2 == 0 ? Rat(1) : Rat(-1));
    }
    H.validate();
    return H;
}

GradedHopfAlgebra mu_hopf(BaseRing k, long n) {
    GradedHopfAlgebra H;
    H.ring = k;
    for (long a = 0; a < n; ++a) H.basis.push_back({0, 0, "U^" + std::to_string(a)});
    int r = static_cast<int>(n);
    H.mult.assign(static_cast<size_t>(r),
                  std::vector<std::vector<Rat>>(static_cast<size_t>(r), zero_vec(r)));
    H.comult = H.mult;
    H.antipode.assign(static_cast<size_t>(r), zero_vec(r));
    H.unit = zero_vec(r);
    H.unit[0] = 1;
    H.counit.assign(static_cast<size_t>(r), Rat(1));
    for (long a = 0; a < n; ++a) {
        for (long b = 0; b < n; ++b)
            H.mult[static_cast<size_t>(a)][static_cast<size_t>(b)]
                  [static_cast<size_t>((a + b) % n)] = 1;
        H.comult[static_cast<size_t>(a)][static_cast<size_t>(a)][static_cast<size_t>(a)] = 1;
        H.antipode[static_cast<size_t>(a)][static_cast<size_t>((n - a) % n)] = 1;
    }
    H.validate();
    return H;
}

GradedHopfAlgebra functions_hopf(BaseRing k, long n) {
    GradedHopfAlgebra H;
    H.ring = k;
    for (long a = 0; a < n; ++a) H.basis.push_back({0, 0, "e_" + std::to_string(a)});
    int r = static_cast<int>(n);
    H.mult.assign(static_cast<size_t>(r),
                  std::vector<std::vector<Rat>>(static_cast<size_t>(r), zero_vec(r)));
    H.comult = H.mult;
    H.antipode.assign(static_cast<size_t>(r), zero_vec(r));
    H.unit.assign(static_cast<size_t>(r), Rat(1));
    H.counit = zero_vec(r);
    H.counit[0] = 1;
    for (long a = 0; a < n; ++a) {
        H.mult[static_cast<size_t>(a)][static_cast<size_t>(a)][static_cast<size_t>(a)] = 1;
        for (long b = 0; b < n; ++b)
            H.comult[static_cast<size_t>((a + b) % n)][static_cast<size_t>(a)]
                    [static_cast<size_t>(b)] = 1;
        H.antipode[static_cast<size_t>(a)][static_cast<size_t>((n - a) % n)] = 1;
    }
    H.validate();
    return H;
}

GradedHopfAlgebra kernel_hopf(const Int& p, int m, bool negate_grading) {
    BaseRing k = BaseRing::prime_field(p);
    const int pi = static_cast<int>(p.get_si());
    // Basis: monomials l_0^{a_0} .. l_{m-1}^{a_{m-1}} with 0 <= a_i < p,
    // indexed in base-p order (a_0 least significant).
    std::vector<Exponents> mons;
    {
        Exponents cur(static_cast<size_t>(m), 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == m) {
                mons.push_back(cur);
                return;
            }
            for (int a = 0; a < pi; ++a) {
                cur[static_cast<size_t>(i)] = a;
                rec(i + 1);
            }
            cur[static_cast<size_t>(i)] = 0;
        };
        rec(0);
    }
    std::sort(mons.begin(), mons.end(), [&](const Exponents& a, const Exponents& b) {
        long va = 0, vb = 0, q = 1;
        for (int i = 0; i < m; ++i) {
            va += a[static_cast<size_t>(i)] * q;
            vb += b[static_cast<size_t>(i)] * q;
            q *= pi;
        }
        return va < vb;
    });
    std::map<Exponents, int> ix;
    for (size_t i = 0; i < mons.size(); ++i) ix.emplace(mons[i], static_cast<int>(i));
    const int r = static_cast<int>(mons.size());
    auto wt = [&](const Exponents& e) {
        long w = 0, q = 1;
        for (int i = 0; i < m; ++i) {
            w += e[static_cast<size_t>(i)] * q;
            q *= pi;
        }
        return negate_grading ? -w : w;
    };
    GradedHopfAlgebra H;
    H.ring = k;
    for (const auto& e : mons) {
        std::string nm = "l^(";
        for (int i = 0; i < m; ++i)
            nm += (i ? "," : "") + std::to_string(e[static_cast<size_t>(i)]);
        H.basis.push_back({0, wt(e), nm + ")"});
    }
    H.mult.assign(static_cast<size_t>(r),
                  std::vector<std::vector<Rat>>(static_cast<size_t>(r), zero_vec(r)));
    H.comult = H.mult;
    H.antipode.assign(static_cast<size_t>(r), zero_vec(r));
    H.unit = zero_vec(r);
    H.unit[0] = 1;
    H.counit = zero_vec(r);
    H.counit[0] = 1;
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            Exponents s(static_cast<size_t>(m));
            bool ok = true;
            for (int i = 0; i < m; ++i) {
                s[static_cast<size_t>(i)] = mons[static_cast<size_t>(a)][static_cast<size_t>(i)] +
                                            mons[static_cast<size_t>(b)][static_cast<size_t>(i)];
                if (s[static_cast<size_t>(i)] >= pi) ok = false;
            }
            if (ok) H.mult[static_cast<size_t>(a)][static_cast<size_t>(b)]
                          [static_cast<size_t>(ix.at(s))] = 1;
        }
    // Coproduct of the generators from the Witt sum polynomials mod p, then
    // multiplicative extension; antipode from the negation law.
    const witt::WittLaw& law = witt::WittLaw::get(p, m);
    std::vector<ExactMatrix> dgen;  // Delta(l_i) as a tensor matrix
    std::vector<std::vector<Rat>> sgen;
    for (int i = 0; i < m; ++i) {
        ExactMatrix t(r, r, k);
        for (const auto& [e, c] : law.sum[static_cast<size_t>(i)].terms()) {
            Exponents xs(e.begin(), e.begin() + m), ys(e.begin() + m, e.end());
            bool ok = true;
            for (int j = 0; j < m; ++j)
                if (xs[static_cast<size_t>(j)] >= pi || ys[static_cast<size_t>(j)] >= pi)
                    ok = false;
            if (!ok) continue;  // the monomial dies in the quotient
            int a = ix.at(xs), b = ix.at(ys);
            t.set(a, b, k.add(t.at(a, b), c));
        }
        dgen.push_back(std::move(t));
        std::vector<Rat> sv = zero_vec(r);
        for (const auto& [e, c] : law.negation[static_cast<size_t>(i)].terms()) {
            bool ok = true;
            for (int j = 0; j < m; ++j)
                if (e[static_cast<size_t>(j)] >= pi) ok = false;
            if (!ok) continue;
            sv[static_cast<size_t>(ix.at(e))] = k.add(sv[static_cast<size_t>(ix.at(e))], c);
        }
        sgen.push_back(std::move(sv));
    }
    for (int b = 0; b < r; ++b) {
        ExactMatrix d(r, r, k);
        d.set(0, 0, Rat(1));  // Delta(1)
        std::vector<Rat> s = zero_vec(r);
        s[0] = 1;
        for (int i = 0; i < m; ++i)
            for (int rep = 0; rep < mons[static_cast<size_t>(b)][static_cast<size_t>(i)]; ++rep) {
                d = tensor_mult(H, d, dgen[static_cast<size_t>(i)]);
                s = mult_vec(H, s, sgen[static_cast<size_t>(i)]);
            }
        for (int a = 0; a < r; ++a)
            for (int c = 0; c < r; ++c)
                H.comult[static_cast<size_t>(b)][static_cast<size_t>(a)][static_cast<size_t>(c)] =
                    d.at(a, c);
        H.antipode[static_cast<size_t>(b)] = s;
    }
    H.validate();
    return H;
}

// ---------------------------------------------------------------------------
// AugmentedAlgebra and minimal resolutions
// ---------------------------------------------------------------------------

void AugmentedAlgebra::validate() const {
    if (!ring.is_field()) throw MathError("field required");
    const int r = rank();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k)
                if (!ring.is_zero(mult[static_cast<size_t>(i)][static_cast<size_t>(j)]
                                      [static_cast<size_t>(k)]) &&
                    (basis[static_cast<size_t>(k)].weight !=
                         basis[static_cast<size_t>(i)].weight +
                             basis[static_cast<size_t>(j)].weight ||
                     basis[static_cast<size_t>(k)].hdeg !=
                         basis[static_cast<size_t>(i)].hdeg + basis[static_cast<size_t>(j)].hdeg))
                    throw MathError("product does not preserve grading");
    // Associativity.
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                std::vector<Rat> lhs = zero_vec(r), rhs = zero_vec(r);
                for (int m = 0; m < r; ++m) {
                    axpy(ring, lhs,
                         mult[static_cast<size_t>(i)][static_cast<size_t>(j)]
                             [static_cast<size_t>(m)],
                         mult[static_cast<size_t>(m)][static_cast<size_t>(k)]);
                    axpy(ring, rhs,
                         mult[static_cast<size_t>(j)][static_cast<size_t>(k)]
                             [static_cast<size_t>(m)],
                         mult[static_cast<size_t>(i)][static_cast<size_t>(m)]);
                }
                if (lhs != rhs) throw MathError("product not associative");
            }
    // Augmentation is an algebra map sending 1 to 1.
    Rat e1(0);
    for (int i = 0; i < r; ++i) e1 += unit[static_cast<size_t>(i)] * counit[static_cast<size_t>(i)];
    if (!ring.eq(e1, Rat(1))) throw MathError("augmentation of the unit is not 1");
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Rat v(0);
            for (int k = 0; k < r; ++k)
                v += mult[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] *
                     counit[static_cast<size_t>(k)];
            if (!ring.eq(v, counit[static_cast<size_t>(i)] * counit[static_cast<size_t>(j)]))
                throw MathError("augmentation is not an algebra map");
        }
}

AugmentedAlgebra truncated_poly_algebra(BaseRing k, int N) {
    AugmentedAlgebra A;
    A.ring = k;
    for (int a = 0; a < N; ++a) A.basis.push_back({0, a, "T^" + std::to_string(a)});
    A.mult.assign(static_cast<size_t>(N),
                  std::vector<std::vector<Rat>>(static_cast<size_t>(N), zero_vec(N)));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            if (a + b < N) A.mult[static_cast<size_t>(a)][static_cast<size_t>(b)]
                                 [static_cast<size_t>(a + b)] = 1;
    A.unit = zero_vec(N);
    A.unit[0] = 1;
    A.counit = zero_vec(N);
    A.counit[0] = 1;
    A.validate();
    return A;
}

AugmentedAlgebra exterior_algebra(BaseRing k) {
    AugmentedAlgebra A;
    A.ring = k;
    A.basis = {{0, 0, "1"}, {1, 1, "e"}};
    A.mult.assign(2, std::vector<std::vector<Rat>>(2, zero_vec(2)));
    A.mult[0][0][0] = 1;
    A.mult[0][1][1] = 1;
    A.mult[1][0][1] = 1;
    A.unit = {Rat(1), Rat(0)};
    A.counit = {Rat(1), Rat(0)};
    A.validate();
    return A;
}

namespace {

// Left-multiplication matrix of basis element i on A.
ExactMatrix left_mult(const AugmentedAlgebra& A, int i) {
    const int r = A.rank();
    ExactMatrix L(r, r, A.ring);
    for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k)
            L.set(k, j, A.mult[static_cast<size_t>(i)][static_cast<size_t>(j)]
                              [static_cast<size_t>(k)]);
    return L;
}

// Action of basis element i on the free module with g generators.
std::vector<Rat> act_on(const AugmentedAlgebra& A, const ExactMatrix& L, int g,
                        const std::vector<Rat>& v) {
    const int r = A.rank();
    std::vector<Rat> out = zero_vec(g * r);
    for (int b = 0; b < g; ++b)
        for (int j = 0; j < r; ++j) {
            const Rat& c = v[static_cast<size_t>(b * r + j)];
            if (A.ring.is_zero(c)) continue;
            for (int k = 0; k < r; ++k)
                out[static_cast<size_t>(b * r + k)] =
                    A.ring.add(out[static_cast<size_t>(b * r + k)], c * L.at(k, j));
        }
    return out;
}

}  // namespace

long ExtData::ext_dim(int s) const {
    if (s < 0 || s >= static_cast<int>(gens.size())) return 0;
    return static_cast<long>(gens[static_cast<size_t>(s)].size());
}

ExtData ext_self(const AugmentedAlgebra& A, int bound, long max_rank) {
    A.validate();
    const int r = A.rank();
    const BaseRing& k = A.ring;
    std::vector<ExactMatrix> lmul;
    for (int i = 0; i < r; ++i) lmul.push_back(left_mult(A, i));

    ExtData E;
    E.A = A;
    E.gens.push_back({{0, 0, "g0"}});  // P_0 = A
    E.dims[{0, 0}] = 1;

    // d_0 = augmentation, P_{-1} = k.
    ExactMatrix d_prev(1, r, k);
    for (int j = 0; j < r; ++j) d_prev.set(0, j, A.counit[static_cast<size_t>(j)]);

    for (int s = 0; s < bound; ++s) {
        const auto& gcur = E.gens[static_cast<size_t>(s)];
        const int g = static_cast<int>(gcur.size());
        const int dim = g * r;
        if (dim > max_rank)
            throw MathError("budget exceeded: resolution rank " + std::to_string(dim));
        // Grade of each coordinate (generator, algebra basis element).
        auto grade = [&](int c) {
            int b = c / r, a = c % r;
            return std::pair<long, int>(gcur[static_cast<size_t>(b)].weight +
                                            A.basis[static_cast<size_t>(a)].weight,
                                        gcur[static_cast<size_t>(b)].hdeg +
                                            A.basis[static_cast<size_t>(a)].hdeg);
        };
        std::map<std::pair<long, int>, std::vector<int>> by_grade;
        for (int c = 0; c < dim; ++c) by_grade[grade(c)].push_back(c);
        // Graded kernel of d_s, then minimal generators of ker / (ideal . ker).
        std::map<std::pair<long, int>, std::vector<std::vector<Rat>>> kerg;
        for (const auto& [gr, cols] : by_grade) {
            ExactMatrix sub(d_prev.rows(), static_cast<int>(cols.size()), k);
            for (size_t c = 0; c < cols.size(); ++c)
                for (int i = 0; i < d_prev.rows(); ++i) sub.set(i, static_cast<int>(c), d_prev.at(i, cols[c]));
            for (const auto& v : kernel_basis(sub)) {
                std::vector<Rat> full = zero_vec(dim);
                for (size_t c = 0; c < cols.size(); ++c) full[static_cast<size_t>(cols[c])] = v[c];
                kerg[gr].push_back(std::move(full));
            }
        }
        std::vector<std::vector<Rat>> new_gens;
        std::vector<HopfBasisElem> new_grading;
        for (const auto& [gr, kv] : kerg) {
            // ideal . ker inside this grade (ideal basis: non-unit elements).
            std::vector<std::vector<Rat>> span;
            for (int a = 0; a < r; ++a) {
                if (A.basis[static_cast<size_t>(a)].weight == 0 &&
                    A.basis[static_cast<size_t>(a)].hdeg == 0)
                    continue;  // grading forces the augmentation ideal to be the positive part
                auto it = kerg.find({gr.first - A.basis[static_cast<size_t>(a)].weight,
                                     gr.second - A.basis[static_cast<size_t>(a)].hdeg});
                if (it == kerg.end()) continue;
                for (const auto& v : it->second)
                    span.push_back(act_on(A, lmul[static_cast<size_t>(a)], g, v));
            }
            ExactMatrix M = matrix_from_columns(span, dim, k);
            int base = rank(M);
            for (const auto& v : kv) {
                ExactMatrix M2 = M.hstack(matrix_from_columns({v}, dim, k));
                if (rank(M2) > base) {
                    M = M2;
                    ++base;
                    new_gens.push_back(v);
                    new_grading.push_back({gr.second, gr.first,
                                           "g" + std::to_string(s + 1) + "." +
                                               std::to_string(new_gens.size() - 1)});
                }
            }
        }
        // Assemble d_{s+1} : (new free module) -> P_s over k.
        const int gn = static_cast<int>(new_gens.size());
        ExactMatrix d(dim, gn * r, k);
        for (int b = 0; b < gn; ++b)
            for (int a = 0; a < r; ++a) {
                std::vector<Rat> col = act_on(A, lmul[static_cast<size_t>(a)], g,
                                              new_gens[static_cast<size_t>(b)]);
                for (int i = 0; i < dim; ++i) d.set(i, b * r + a, col[static_cast<size_t>(i)]);
            }
        E.diff.push_back(d);
        E.gens.push_back(new_grading);
        for (const auto& ge : new_grading) ++E.dims[{s + 1, -ge.weight}];
        d_prev = std::move(d);
    }
    return E;
}

std::vector<Rat> yoneda(const ExtData& E, int s, const std::vector<Rat>& f, int t,
                        const std::vector<Rat>& g) {
    const AugmentedAlgebra& A = E.A;
    const int r = A.rank();
    const BaseRing& k = A.ring;
    if (s + t >= static_cast<int>(E.gens.size()))
        throw MathError("yoneda product beyond the computed resolution");
    std::vector<ExactMatrix> lmul;
    for (int i = 0; i < r; ++i) lmul.push_back(left_mult(A, i));
    auto gen_vec = [&](int lev, int b) {
        std::vector<Rat> v = zero_vec(static_cast<int>(E.gens[static_cast<size_t>(lev)].size()) * r);
        for (int a = 0; a < r; ++a) v[static_cast<size_t>(b * r + a)] = A.unit[static_cast<size_t>(a)];
        return v;
    };
    // Lift g to a chain map G_u : P_{t+u} -> P_u, represented over k.
    // G_0 sends the generators of P_t to multiples of 1 in P_0 = A.
    auto extend = [&](int src_lev, int dst_gens, const std::vector<std::vector<Rat>>& images) {
        const int gs = static_cast<int>(E.gens[static_cast<size_t>(src_lev)].size());
        ExactMatrix M(dst_gens * r, gs * r, k);
        for (int b = 0; b < gs; ++b)
            for (int a = 0; a < r; ++a) {
                std::vector<Rat> col =
                    act_on(A, lmul[static_cast<size_t>(a)], dst_gens, images[static_cast<size_t>(b)]);
                for (int i = 0; i < dst_gens * r; ++i)
                    M.set(i, b * r + a, col[static_cast<size_t>(i)]);
            }
        return M;
    };
    std::vector<std::vector<Rat>> img0;
    for (int b = 0; b < static_cast<int>(E.gens[static_cast<size_t>(t)].size()); ++b) {
        std::vector<Rat> v = zero_vec(r);
        for (int a = 0; a < r; ++a)
            v[static_cast<size_t>(a)] = k.mul(g[static_cast<size_t>(b)], A.unit[static_cast<size_t>(a)]);
        img0.push_back(v);
    }
    ExactMatrix G = extend(t, 1, img0);
    for (int u = 1; u <= s; ++u) {
        const int src = t + u;
        std::vector<std::vector<Rat>> img;
        for (int b = 0; b < static_cast<int>(E.gens[static_cast<size_t>(src)].size()); ++b) {
            std::vector<Rat> dv = gen_vec(src, b);
            // rhs = G_{u-1}(d(gen_b))
            ExactMatrix dm = E.diff[static_cast<size_t>(src) - 1];
            std::vector<Rat> dgen = zero_vec(dm.rows());
            for (int c = 0; c < dm.cols(); ++c) {
                if (k.is_zero(dv[static_cast<size_t>(c)])) continue;
                for (int i = 0; i < dm.rows(); ++i)
                    dgen[static_cast<size_t>(i)] =
                        k.add(dgen[static_cast<size_t>(i)], dv[static_cast<size_t>(c)] * dm.at(i, c));
            }
            std::vector<Rat> rhs = zero_vec(G.rows());
            for (int c = 0; c < G.cols(); ++c) {
                if (k.is_zero(dgen[static_cast<size_t>(c)])) continue;
                for (int i = 0; i < G.rows(); ++i)
                    rhs[static_cast<size_t>(i)] =
                        k.add(rhs[static_cast<size_t>(i)], dgen[static_cast<size_t>(c)] * G.at(i, c));
            }
            auto x = solve(E.diff[static_cast<size_t>(u) - 1], rhs);
            if (!x) throw MathError("resolution lifting failed");
            img.push_back(*x);
        }
        G = extend(src, static_cast<int>(E.gens[static_cast<size_t>(u)].size()), img);
    }
    // Pair f with G_s on the generators of P_{s+t}.
    const int gst = static_cast<int>(E.gens[static_cast<size_t>(s + t)].size());
    std::vector<Rat> out = zero_vec(gst);
    for (int b = 0; b < gst; ++b) {
        std::vector<Rat> dv = gen_vec(s + t, b);
        std::vector<Rat> x = zero_vec(G.rows());
        for (int c = 0; c < G.cols(); ++c) {
            if (k.is_zero(dv[static_cast<size_t>(c)])) continue;
            for (int i = 0; i < G.rows(); ++i)
                x[static_cast<size_t>(i)] =
                    k.add(x[static_cast<size_t>(i)], dv[static_cast<size_t>(c)] * G.at(i, c));
        }
        Rat v(0);
        for (int i = 0; i < static_cast<int>(E.gens[static_cast<size_t>(s)].size()); ++i)
            for (int a = 0; a < r; ++a)
                v += f[static_cast<size_t>(i)] * A.counit[static_cast<size_t>(a)] *
                     x[static_cast<size_t>(i * r + a)];
        out[static_cast<size_t>(b)] = k.reduce(v);
    }
    return out;
}

TowerReport ext_colimit_tower(const Int& p, int m_max, int bound) {
    const BaseRing k = BaseRing::prime_field(p);
    const int pi = static_cast<int>(p.get_si());
    TowerReport rep;
    std::vector<ExtData> exts;
    std::vector<int> Ns;
    {
        int N = 1;
        for (int m = 1; m <= m_max + 1; ++m) {
            N *= pi;
            Ns.push_back(N);
            exts.push_back(ext_self(truncated_poly_algebra(k, N), bound));
        }
    }
    for (int m = 0; m <= m_max; ++m) {
        std::vector<long> dims;
        for (int s = 0; s <= bound; ++s) dims.push_back(exts[static_cast<size_t>(m)].ext_dim(s));
        if (m < m_max) rep.dims.push_back(dims);
        if (m == m_max) break;
        // Chain map phi : P^{(m+1)} -> P^{(m)} over the quotient
        // F_p[T]/T^{N_{m+1}} ->> F_p[T]/T^{N_m}, lifting the identity of k.
        const ExtData& big = exts[static_cast<size_t>(m) + 1];
        const ExtData& small = exts[static_cast<size_t>(m)];
        const int rb = big.A.rank(), rsm = small.A.rank();
        ExactMatrix Lsm = left_mult(small.A, 1);  // multiplication by T
        // phi_0 : A_{m+1} -> A_m, T^a -> T^a (or 0).
        ExactMatrix phi(rsm, rb, k);
        for (int a = 0; a < rb && a < rsm; ++a) phi.set(a, a, Rat(1));
        std::vector<ExactMatrix> tower_maps;
        {
            // Ext^0 map is 1x1 identity.
            ExactMatrix m0(1, 1, k);
            m0.set(0, 0, Rat(1));
            tower_maps.push_back(m0);
        }
        for (int u = 1; u <= bound; ++u) {
            const int gb = static_cast<int>(big.gens[static_cast<size_t>(u)].size());
            const int gs = static_cast<int>(small.gens[static_cast<size_t>(u)].size());
            std::vector<std::vector<Rat>> images;
            for (int b = 0; b < gb; ++b) {
                // d(gen_b) in P^{(m+1)}_{u-1}, then through phi_{u-1}.
                const ExactMatrix& dbig = big.diff[static_cast<size_t>(u) - 1];
                std::vector<Rat> dgen = zero_vec(dbig.rows());
                for (int a = 0; a < rb; ++a) {
                    if (k.is_zero(big.A.unit[static_cast<size_t>(a)])) continue;
                    for (int i = 0; i < dbig.rows(); ++i)
                        dgen[static_cast<size_t>(i)] = k.add(
                            dgen[static_cast<size_t>(i)],
                            big.A.unit[static_cast<size_t>(a)] * dbig.at(i, b * rb + a));
                }
                std::vector<Rat> rhs = zero_vec(phi.rows());
                for (int c = 0; c < phi.cols(); ++c) {
                    if (k.is_zero(dgen[static_cast<size_t>(c)])) continue;
                    for (int i = 0; i < phi.rows(); ++i)
                        rhs[static_cast<size_t>(i)] = k.add(rhs[static_cast<size_t>(i)],
                                                            dgen[static_cast<size_t>(c)] *
                                                                phi.at(i, c));
                }
                auto x = solve(small.diff[static_cast<size_t>(u) - 1], rhs);
                if (!x) throw MathError("tower lifting failed");
                images.push_back(*x);
            }
            // Ext map: f -> f . phi_u evaluated on the generators of the big
            // resolution (dual bases).
            ExactMatrix em(gb, gs, k);
            for (int b = 0; b < gb; ++b)
                for (int i = 0; i < gs; ++i)
                    for (int a = 0; a < rsm; ++a)
                        em.set(b, i,
                               k.add(em.at(b, i),
                                     small.A.counit[static_cast<size_t>(a)] *
                                         images[static_cast<size_t>(b)]
                                               [static_cast<size_t>(i * rsm + a)]));
            tower_maps.push_back(em);
            // Extend phi to P_u for the next step: A-linear hull of images.
            ExactMatrix phin(gs * rsm, gb * rb, k);
            for (int b = 0; b < gb; ++b) {
                // column (b, T^j): T^j . images[b] inside P^(m)_u.
                std::vector<Rat> cur = images[static_cast<size_t>(b)];
                for (int j = 0; j < rb; ++j) {
                    if (j > 0) cur = act_on(small.A, Lsm, gs, cur);
                    for (int i = 0; i < gs * rsm; ++i)
                        phin.set(i, b * rb + j, cur[static_cast<size_t>(i)]);
                }
            }
            phi = std::move(phin);
        }
        rep.maps.push_back(tower_maps);
    }
    // Colimit dimensions: rank of the composite from the first stage, with
    // the later-born classes controlled by per-stage rank checks in tests.
    for (int s = 0; s <= bound; ++s) {
        ExactMatrix comp = rep.maps[0][static_cast<size_t>(s)];
        for (int m = 1; m < m_max; ++m)
            comp = rep.maps[static_cast<size_t>(m)][static_cast<size_t>(s)] * comp;
        rep.colimit.push_back(rank(comp));
    }
    rep.split_square_zero = rep.colimit.size() >= 2 && rep.colimit[0] == 1 && rep.colimit[1] == 1;
    for (size_t s = 2; s < rep.colimit.size(); ++s)
        if (rep.colimit[s] != 0) rep.split_square_zero = false;
    return rep;
}

// ---------------------------------------------------------------------------
// Cartier duality checks
// ---------------------------------------------------------------------------

DualCheck cartier_dual_check(const Int& p, int m) {
    const BaseRing k = BaseRing::prime_field(p);
    const int pi = static_cast<int>(p.get_si());
    GradedHopfAlgebra D = alpha_hopf(p, m).dual();
    GradedHopfAlgebra K = kernel_hopf(p, m, true);
    const int r = K.rank();
    DualCheck out;
    if (D.rank() != r) {
        out.detail = "rank mismatch";
        return out;
    }
    // Generator l_i must land in the weight -p^i piece of D, which is
    // one-dimensional (the dual of T^{p^i}); search the p-1 scalars per
    // generator.
    std::vector<int> gen_target;
    {
        long q = 1;
        for (int i = 0; i < m; ++i) {
            int found = -1;
            for (int a = 0; a < r; ++a)
                if (D.basis[static_cast<size_t>(a)].weight == -q) found = a;
            if (found < 0) {
                out.detail = "no dual basis element of weight " + std::to_string(-q);
                return out;
            }
            gen_target.push_back(found);
            q *= pi;
        }
    }
    std::vector<int> scal(static_cast<size_t>(m), 1);
    auto next = [&]() {
        for (int i = 0; i < m; ++i) {
            if (scal[static_cast<size_t>(i)] + 1 < pi) {
                ++scal[static_cast<size_t>(i)];
                return true;
            }
            scal[static_cast<size_t>(i)] = 1;
        }
        return false;
    };
    do {
        // phi on the monomial basis, built multiplicatively in D.
        std::vector<std::vector<Rat>> phi;
        bool ok = true;
        for (int b = 0; b < r && ok; ++b) {
            std::vector<Rat> v = zero_vec(r);
            v[0] = 1;
            // decode exponents of basis monomial b (base-p order).
            int code = b;
            for (int i = 0; i < m; ++i) {
                int e = code % pi;
                code /= pi;
                std::vector<Rat> gi = zero_vec(r);
                gi[static_cast<size_t>(gen_target[static_cast<size_t>(i)])] =
                    Rat(scal[static_cast<size_t>(i)]);
                for (int rep = 0; rep < e; ++rep) v = mult_vec(D, v, gi);
            }
            phi.push_back(v);
        }
        // p-th powers of the generator images must vanish.
        for (int i = 0; i < m && ok; ++i) {
            std::vector<Rat> v = zero_vec(r);
            v[0] = 1;
            std::vector<Rat> gi = zero_vec(r);
            gi[static_cast<size_t>(gen_target[static_cast<size_t>(i)])] =
                Rat(scal[static_cast<size_t>(i)]);
            for (int rep = 0; rep < pi; ++rep) v = mult_vec(D, v, gi);
            for (const Rat& c : v)
                if (!k.is_zero(c)) ok = false;
        }
        // Linear bijectivity.
        if (ok && rank(matrix_from_columns(phi, r, k)) != r) ok = false;
        // Algebra map on all basis pairs.
        for (int a = 0; a < r && ok; ++a)
            for (int b = 0; b < r && ok; ++b) {
                std::vector<Rat> lhs = zero_vec(r);
                for (int c = 0; c < r; ++c)
                    axpy(k, lhs, K.mult[static_cast<size_t>(a)][static_cast<size_t>(b)]
                                       [static_cast<size_t>(c)],
                         phi[static_cast<size_t>(c)]);
                std::vector<Rat> rhs =
                    mult_vec(D, phi[static_cast<size_t>(a)], phi[static_cast<size_t>(b)]);
                if (lhs != rhs) ok = false;
            }
        // Coalgebra map, counit, unit, antipode.
        for (int b = 0; b < r && ok; ++b) {
            ExactMatrix lhs(r, r, k);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) {
                    Rat c = K.comult[static_cast<size_t>(b)][static_cast<size_t>(i)]
                                    [static_cast<size_t>(j)];
                    if (k.is_zero(c)) continue;
                    for (int x = 0; x < r; ++x) {
                        if (k.is_zero(phi[static_cast<size_t>(i)][static_cast<size_t>(x)]))
                            continue;
                        for (int y = 0; y < r; ++y)
                            lhs.set(x, y,
                                    k.add(lhs.at(x, y),
                                          c * phi[static_cast<size_t>(i)][static_cast<size_t>(x)] *
                                              phi[static_cast<size_t>(j)][static_cast<size_t>(y)]));
                    }
                }
            ExactMatrix rhs(r, r, k);
            for (int c = 0; c < r; ++c) {
                if (k.is_zero(phi[static_cast<size_t>(b)][static_cast<size_t>(c)])) continue;
                ExactMatrix dc = comult_mat(D, c);
                for (int x = 0; x < r; ++x)
                    for (int y = 0; y < r; ++y)
                        rhs.set(x, y,
                                k.add(rhs.at(x, y),
                                      phi[static_cast<size_t>(b)][static_cast<size_t>(c)] *
                                          dc.at(x, y)));
            }
            for (int x = 0; x < r && ok; ++x)
                for (int y = 0; y < r; ++y)
                    if (!k.eq(lhs.at(x, y), rhs.at(x, y))) {
                        ok = false;
                        break;
                    }
            if (ok) {
                Rat eps(0);
                for (int c = 0; c < r; ++c)
                    eps += phi[static_cast<size_t>(b)][static_cast<size_t>(c)] *
                           D.counit[static_cast<size_t>(c)];
                if (!k.eq(eps, K.counit[static_cast<size_t>(b)])) ok = false;
            }
        }
        if (ok) {
            // Primitive spaces must have equal dimension (sanity bookkeeping).
            out.verified = true;
            out.detail = "isomorphism found; primitive dims " +
                         std::to_string(K.primitives().size()) + "=" +
                         std::to_string(D.primitives().size());
            for (int i = 0; i < m; ++i) {
                std::vector<Rat> gi = zero_vec(r);
                gi[static_cast<size_t>(gen_target[static_cast<size_t>(i)])] =
                    Rat(scal[static_cast<size_t>(i)]);
                out.generator_images.push_back(gi);
            }
            return out;
        }
    } while (next());
    out.detail = "not verified: no generator-image assignment matched all structure constants";
    return out;
}

bool mu_duality_check(BaseRing k, long n) {
    GradedHopfAlgebra mu = mu_hopf(k, n);
    GradedHopfAlgebra D = mu.dual();
    GradedHopfAlgebra F = functions_hopf(k, n);
    // dual() produces negated (here zero) gradings, so structures compare
    // entry for entry; the dual-basis pairing is the identity matrix.
    return same_structure(D, F);
}

// ---------------------------------------------------------------------------
// Strict mixed category check
// ---------------------------------------------------------------------------

MixedCategoryReport strict_mixed_category_check(const std::vector<cx::MixedComplex>& samples) {
    MixedCategoryReport rep;
    rep.coaction_ok = true;
    rep.tensor_ok = true;
    for (const auto& M : samples) {
        M.validate();
        // Coassociativity of x -> 1 (x) x + e (x) Bx reduces to B^2 = 0.
        for (int n = M.underlying.min_degree(); n <= M.underlying.max_degree(); ++n)
            if (!(M.b_op(n + 1) * M.b_op(n)).is_zero()) rep.coaction_ok = false;
    }
    // Leibniz formula on tensors: B(x (x) y) = Bx (x) y + (-1)^{|x|} x (x) By,
    // assembled independently in the block layout of the tensor complex.
    for (size_t s = 0; s + 1 < samples.size(); ++s) {
        const cx::MixedComplex& X = samples[s];
        const cx::MixedComplex& Y = samples[s + 1];
        if (X.underlying.ring() != Y.underlying.ring()) continue;
        const BaseRing& ring = X.underlying.ring();
        cx::MixedComplex T = cx::tensor_mixed(X, Y);
        auto offsets = [&](int n) {
            std::map<int, int> off;
            int acc = 0;
            for (int a = X.underlying.min_degree(); a <= X.underlying.max_degree(); ++a) {
                off[a] = acc;
                acc += X.underlying.rank(a) * Y.underlying.rank(n - a);
            }
            return off;
        };
        for (int n = T.underlying.min_degree(); n <= T.underlying.max_degree(); ++n) {
            ExactMatrix want(T.underlying.rank(n + 1), T.underlying.rank(n), ring);
            auto so = offsets(n), to = offsets(n + 1);
            for (int a = X.underlying.min_degree(); a <= X.underlying.max_degree(); ++a) {
                int ra = X.underlying.rank(a), rb = Y.underlying.rank(n - a);
                if (ra == 0 || rb == 0) continue;
                ExactMatrix BX = X.b_op(a);
                for (int i = 0; i < BX.rows(); ++i)
                    for (int j = 0; j < ra; ++j) {
                        if (ring.is_zero(BX.at(i, j))) continue;
                        for (int y = 0; y < rb; ++y)
                            want.set(to.at(a + 1) + i * rb + y, so.at(a) + j * rb + y,
                                     BX.at(i, j));
                    }
                ExactMatrix BY = Y.b_op(n - a);
                Rat sgn(a % 2 == 0 ? 1 : -1);
                for (int x = 0; x < ra; ++x)
                    for (int i = 0; i < BY.rows(); ++i)
                        for (int j = 0; j < rb; ++j) {
                            if (ring.is_zero(BY.at(i, j))) continue;
                            want.set(to.at(a) + x * BY.rows() + i, so.at(a) + x * rb + j,
                                     ring.mul(sgn, BY.at(i, j)));
                        }
            }
            if (!(T.b_op(n) == want)) rep.tensor_ok = false;
        }
    }
    return rep;
}

}  // namespace hopf
}  // namespace hkr
