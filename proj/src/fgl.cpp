#include "hkr/fgl.hpp"

#include <sstream>

namespace hkr {
namespace fgl {

namespace {

MultiPoly truncate(const MultiPoly& f, int N) { return f.truncated(N); }

// Substitute the two formal variables of F by polynomials a and b (sharing a
// variable list), truncated at total degree N.
MultiPoly compose(const MultiPoly& F, const MultiPoly& a, const MultiPoly& b, int N) {
    MultiPoly out(a.vars(), a.ring());
    for (const auto& [e, c] : F.terms()) {
        MultiPoly term = MultiPoly::constant(c, a.vars(), a.ring());
        for (int i = 0; i < e[0]; ++i) term = truncate(term * a, N);
        for (int i = 0; i < e[1]; ++i) term = truncate(term * b, N);
        out = out + term;
    }
    return truncate(out, N);
}

std::vector<Rat> zero_vec(int n) { return std::vector<Rat>(static_cast<size_t>(n), Rat(0)); }

std::vector<Rat> hopf_mult(const hopf::GradedHopfAlgebra& H, const std::vector<Rat>& x,
                           const std::vector<Rat>& y) {
    std::vector<Rat> out = zero_vec(H.rank());
    for (int i = 0; i < H.rank(); ++i) {
        if (H.ring.is_zero(x[static_cast<size_t>(i)])) continue;
        for (int j = 0; j < H.rank(); ++j) {
            if (H.ring.is_zero(y[static_cast<size_t>(j)])) continue;
            for (int k = 0; k < H.rank(); ++k)
                out[static_cast<size_t>(k)] = H.ring.add(
                    out[static_cast<size_t>(k)],
                    x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)] *
                        H.mult[static_cast<size_t>(i)][static_cast<size_t>(j)]
                              [static_cast<size_t>(k)]);
        }
    }
    return out;
}

}  // namespace

void FormalGroupLaw::validate() const {
    if (N < 2) throw MathError("truncation order must be at least 2");
    if (F.vars().size() != 2) throw MathError("formal group law must be bivariate");
    const std::vector<std::string>& v = F.vars();
    MultiPoly X = MultiPoly::variable(0, v, ring);
    MultiPoly Y = MultiPoly::variable(1, v, ring);
    MultiPoly zero(v, ring);
    if (!(compose(F, X, zero, N) == truncate(X, N)) ||
        !(compose(F, zero, Y, N) == truncate(Y, N)))
        throw MathError("formal group law is not unital");
    if (!(compose(F, Y, X, N) == truncate(F, N)))
        throw MathError("formal group law is not commutative");
    std::vector<std::string> v3 = {"X", "Y", "Z"};
    MultiPoly X3 = MultiPoly::variable(0, v3, ring);
    MultiPoly Y3 = MultiPoly::variable(1, v3, ring);
    MultiPoly Z3 = MultiPoly::variable(2, v3, ring);
    MultiPoly lhs = compose(F, compose(F, X3, Y3, N), Z3, N);
    MultiPoly rhs = compose(F, X3, compose(F, Y3, Z3, N), N);
    if (!(lhs == rhs)) throw MathError("formal group law is not associative");
}

FormalGroupLaw interpolation_fgl(const Rat& lambda, BaseRing k, int N) {
    MultiPoly F({"X", "Y"}, k);
    F.add_term({1, 0}, Rat(1));
    F.add_term({0, 1}, Rat(1));
    F.add_term({1, 1}, k.reduce(lambda));
    FormalGroupLaw law{k, N, std::move(F)};
    law.validate();
    return law;
}

hopf::GradedHopfAlgebra distributions(const FormalGroupLaw& law, int N) {
    if (N > 8) throw MathError("budget exceeded: distribution truncation " + std::to_string(N));
    if (law.ring.kind() != RingKind::Integers && law.ring.kind() != RingKind::Rationals)
        throw MathError("distributions require an integral or rational base");
    law.validate();
    const BaseRing& k = law.ring;
    const int r = N + 1;
    hopf::GradedHopfAlgebra H;
    H.ring = k;
    H.trunc = N;
    for (int n = 0; n <= N; ++n) H.basis.push_back({0, n, "d_" + std::to_string(n)});
    H.mult.assign(static_cast<size_t>(r),
                  std::vector<std::vector<Rat>>(static_cast<size_t>(r), zero_vec(r)));
    H.comult = H.mult;
    H.antipode.assign(static_cast<size_t>(r), zero_vec(r));
    H.unit = zero_vec(r);
    H.unit[0] = 1;
    H.counit = zero_vec(r);
    H.counit[0] = 1;
    // Product: (d_i d_j)(T^n) = [X^i Y^j] F(X, Y)^n.
    MultiPoly Fn = MultiPoly::constant(Rat(1), law.F.vars(), k);
    for (int n = 0; n <= N; ++n) {
        if (n > 0) Fn = truncate(Fn * law.F, 2 * N);
        for (int i = 0; i <= N; ++i)
            for (int j = 0; j <= N; ++j)
                H.mult[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(n)] =
                    Fn.coeff({i, j});
    }
    // Coproduct dual to T^i T^j = T^{i+j}.
    for (int n = 0; n <= N; ++n)
        for (int i = 0; i <= n; ++i)
            H.comult[static_cast<size_t>(n)][static_cast<size_t>(i)][static_cast<size_t>(n - i)] =
                1;
    // Antipode dual to the formal inverse T -> iota(T).
    MultiPoly X = MultiPoly::variable(0, law.F.vars(), k);
    MultiPoly iota = -X;
    for (int it = 0; it < N; ++it) iota = truncate(iota - compose(law.F, X, iota, N + 1), N + 1);
    MultiPoly ik = MultiPoly::constant(Rat(1), law.F.vars(), k);
    for (int kk = 0; kk <= N; ++kk) {
        if (kk > 0) ik = truncate(ik * iota, N + 1);
        for (int n = 0; n <= N; ++n)
            H.antipode[static_cast<size_t>(n)][static_cast<size_t>(kk)] = ik.coeff({n, 0});
    }
    H.validate();
    return H;
}

Int DividedPowerAlgebra::coeff(int i, int j) const {
    if (i < 0 || j < 0 || i + j > N) throw MathError("divided power index out of range");
    return binomial(Int(i + j), Int(i));
}

DividedPowerAlgebra divided_powers(int N) { return DividedPowerAlgebra{N}; }

IntValuedPolyAlgebra intvalued_structure(int N) {
    if (N > 12) throw MathError("budget exceeded: integer-valued truncation " + std::to_string(N));
    if (N < 1) throw MathError("truncation order must be at least 1");
    const int r = N + 1;
    // c_i c_j expanded by finite differences: the coefficient of c_k is
    // sum_t (-1)^{k-t} C(k,t) c_i(t) c_j(t), an integer because the c-basis
    // values at integers are integers.
    std::vector<std::vector<std::vector<Int>>> mult(
        static_cast<size_t>(r),
        std::vector<std::vector<Int>>(static_cast<size_t>(r),
                                      std::vector<Int>(static_cast<size_t>(r), Int(0))));
    bool multiplicative = true;
    bool gr_ok = true;
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j)
            for (int k = 0; k <= 2 * N; ++k) {
                Rat a(0);
                for (int t = 0; t <= k; ++t) {
                    Rat term = Rat(binomial(Int(k), Int(t))) * Rat(binomial(Int(t), Int(i))) *
                               Rat(binomial(Int(t), Int(j)));
                    a += ((k - t) % 2 == 0) ? term : -term;
                }
                if (a.get_den() != 1)
                    throw MathError("integrality violation in c_" + std::to_string(i) + " c_" +
                                    std::to_string(j));
                if (k > i + j && a != 0) multiplicative = false;
                if (k == i + j && i + j <= N && a != Rat(binomial(Int(i + j), Int(i))))
                    gr_ok = false;
                if (k <= N)
                    mult[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] =
                        a.get_num();
            }
    // Vandermonde coproduct C(X+Y, n) = sum_{i+j=n} C(X,i) C(Y,j).
    std::vector<std::vector<std::vector<Int>>> comult(
        static_cast<size_t>(r),
        std::vector<std::vector<Int>>(static_cast<size_t>(r),
                                      std::vector<Int>(static_cast<size_t>(r), Int(0))));
    for (int n = 0; n <= N; ++n)
        for (int i = 0; i <= n; ++i)
            comult[static_cast<size_t>(n)][static_cast<size_t>(i)][static_cast<size_t>(n - i)] =
                Int(1);
    // Degree filtration as a descending tower: level k = span(c_0..c_{N-k}).
    BaseRing Q = BaseRing::rationals();
    std::vector<cx::ChainComplex> tower;
    std::vector<std::map<int, ExactMatrix>> inclusions;
    for (int lev = 0; lev <= N; ++lev) {
        cx::ChainComplex C(Q);
        C.set_rank(0, N - lev + 1);
        tower.push_back(std::move(C));
    }
    for (int lev = 0; lev < N; ++lev) {
        ExactMatrix inc(N - lev + 1, N - lev, Q);
        for (int t = 0; t < N - lev; ++t) inc.set(t, t, Rat(1));
        inclusions.push_back({{0, std::move(inc)}});
    }
    cx::FilteredComplex filt(std::move(tower), std::move(inclusions));
    rees::ReesModule rm = rees::rees_of(filt);
    rm.validate();
    return IntValuedPolyAlgebra{N,   std::move(mult), std::move(comult), std::move(filt),
                                std::move(rm), multiplicative,  gr_ok};
}

CartierInterpolationReport cartier_interpolation_check(const Int& p, int N) {
    if (p != 2 && p != 3) throw MathError("p must be 2 or 3");
    if (N > 6) throw MathError("budget exceeded: comparison truncation " + std::to_string(N));
    const BaseRing k = BaseRing::prime_field(p);
    CartierInterpolationReport rep;
    rep.multiplicative_ok = true;
    rep.additive_ok = true;
    std::ostringstream detail;
    bool any = false;
    for (long q = p.get_si(); q <= N; q *= p.get_si()) {
        any = true;
        int m = 0;
        for (long t = 1; t < q; t *= p.get_si()) ++m;
        const int D = static_cast<int>(2 * q - 2);  // enough for products of d_{<q}
        hopf::GradedHopfAlgebra distm =
            distributions(interpolation_fgl(Rat(1), BaseRing::rationals(), 2), D);
        hopf::GradedHopfAlgebra dista =
            distributions(interpolation_fgl(Rat(0), BaseRing::rationals(), 2), D);
        struct Side {
            const char* name;
            const hopf::GradedHopfAlgebra* dist;
            hopf::GradedHopfAlgebra target;
            std::vector<std::vector<Rat>> phi;  // images of d_0..d_D in the target
            bool* ok;
        };
        std::vector<Side> sides;
        {
            // Multiplicative law vs the dual of O(mu_q): d_n -> (a -> C(a, n)).
            Side s{"multiplicative", &distm, hopf::mu_hopf(k, q).dual(), {}, &rep.multiplicative_ok};
            for (int n = 0; n <= D; ++n) {
                std::vector<Rat> v = zero_vec(static_cast<int>(q));
                for (long a = 0; a < q; ++a)
                    v[static_cast<size_t>(a)] = k.reduce(Rat(binomial(Int(a), Int(n))));
                s.phi.push_back(std::move(v));
            }
            sides.push_back(std::move(s));
        }
        {
            // Additive law vs the dual of O(alpha_q): d_n -> dual of T^n.
            Side s{"additive", &dista, hopf::alpha_hopf(p, m).dual(), {}, &rep.additive_ok};
            for (int n = 0; n <= D; ++n) {
                std::vector<Rat> v = zero_vec(static_cast<int>(q));
                if (n < q) v[static_cast<size_t>(n)] = 1;
                s.phi.push_back(std::move(v));
            }
            sides.push_back(std::move(s));
        }
        for (Side& s : sides) {
            const hopf::GradedHopfAlgebra& T = s.target;
            const hopf::GradedHopfAlgebra& Dst = *s.dist;
            std::vector<std::vector<Rat>> low(s.phi.begin(), s.phi.begin() + q);
            if (rank(matrix_from_columns(low, static_cast<int>(q), k)) != q) {
                *s.ok = false;
                detail << s.name << " p^m=" << q << ": comparison map not bijective; ";
                continue;
            }
            for (long i = 0; i < q && *s.ok; ++i)
                for (long j = 0; j < q && *s.ok; ++j) {
                    std::vector<Rat> lhs = hopf_mult(T, s.phi[static_cast<size_t>(i)],
                                                     s.phi[static_cast<size_t>(j)]);
                    std::vector<Rat> rhs = zero_vec(static_cast<int>(q));
                    for (int n = 0; n <= D; ++n) {
                        Rat c = k.reduce(Dst.mult[static_cast<size_t>(i)][static_cast<size_t>(j)]
                                                 [static_cast<size_t>(n)]);
                        if (k.is_zero(c)) continue;
                        for (long a = 0; a < q; ++a)
                            rhs[static_cast<size_t>(a)] = k.add(
                                rhs[static_cast<size_t>(a)],
                                c * s.phi[static_cast<size_t>(n)][static_cast<size_t>(a)]);
                    }
                    if (lhs != rhs) {
                        *s.ok = false;
                        detail << s.name << " p^m=" << q << ": product of d_" << i << ", d_" << j
                               << " mismatches; ";
                    }
                }
            for (long n = 0; n < q && *s.ok; ++n) {
                ExactMatrix lhs(static_cast<int>(q), static_cast<int>(q), k);
                for (long c = 0; c < q; ++c) {
                    if (k.is_zero(s.phi[static_cast<size_t>(n)][static_cast<size_t>(c)])) continue;
                    for (long x = 0; x < q; ++x)
                        for (long y = 0; y < q; ++y)
                            lhs.set(static_cast<int>(x), static_cast<int>(y),
                                    k.add(lhs.at(static_cast<int>(x), static_cast<int>(y)),
                                          s.phi[static_cast<size_t>(n)][static_cast<size_t>(c)] *
                                              T.comult[static_cast<size_t>(c)]
                                                      [static_cast<size_t>(x)]
                                                      [static_cast<size_t>(y)]));
                }
                ExactMatrix rhs(static_cast<int>(q), static_cast<int>(q), k);
                for (long i = 0; i <= n; ++i)
                    for (long x = 0; x < q; ++x)
                        for (long y = 0; y < q; ++y)
                            rhs.set(static_cast<int>(x), static_cast<int>(y),
                                    k.add(rhs.at(static_cast<int>(x), static_cast<int>(y)),
                                          s.phi[static_cast<size_t>(i)][static_cast<size_t>(x)] *
                                              s.phi[static_cast<size_t>(n - i)]
                                                   [static_cast<size_t>(y)]));
                if (!(lhs == rhs)) {
                    *s.ok = false;
                    detail << s.name << " p^m=" << q << ": coproduct of d_" << n
                           << " mismatches; ";
                }
                Rat eps(0);
                for (long c = 0; c < q; ++c)
                    eps += s.phi[static_cast<size_t>(n)][static_cast<size_t>(c)] *
                           T.counit[static_cast<size_t>(c)];
                if (!k.eq(eps, n == 0 ? Rat(1) : Rat(0))) {
                    *s.ok = false;
                    detail << s.name << " p^m=" << q << ": counit of d_" << n << " mismatches; ";
                }
            }
            if (*s.ok) detail << s.name << " p^m=" << q << ": verified; ";
        }
    }
    if (!any) detail << "no p^m <= N; unit stage only";
    rep.detail = detail.str();
    return rep;
}

}  // namespace fgl
}  // namespace hkr
