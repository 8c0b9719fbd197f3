#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "hkr/complexes.hpp"

using namespace hkr;
using namespace hkr::cx;

namespace {

ChainComplex two_term(BaseRing ring, const Rat& d) {
    // 0 -> C_1 -> C_0 -> 0 with the given 1x1 differential.
    ChainComplex C(ring);
    C.set_rank(0, 1);
    C.set_rank(1, 1);
    ExactMatrix m(1, 1, ring);
    m.set(0, 0, d);
    C.set_differential(1, m);
    C.validate();
    return C;
}

}  // namespace

TEST_CASE("homology: 0 -> Z --2--> Z -> 0 gives H_0 = Z/2, H_1 = 0") {
    auto C = two_term(BaseRing::integers(), Rat(2));
    auto h = homology(C, 0, 1);
    CHECK(h[0].free_rank == 0);
    REQUIRE(h[0].torsion.size() == 1);
    CHECK(h[0].torsion[0] == 2);
    CHECK(h[1].is_zero());
}

TEST_CASE("homology: zero differentials give component ranks") {
    ChainComplex C(BaseRing::integers());
    C.set_rank(0, 2);
    C.set_rank(3, 5);
    auto h = homology(C, -1, 4);
    CHECK(h[0].free_rank == 2);
    CHECK(h[3].free_rank == 5);
    CHECK(h[1].is_zero());
    CHECK(h[-1].is_zero());  // window beyond support: zero, no error
}

TEST_CASE("homology: injective differential (Koszul slice) is acyclic") {
    auto C = two_term(BaseRing::rationals(), Rat(1));
    auto h = homology(C, 0, 1);
    CHECK(h[0].is_zero());
    CHECK(h[1].is_zero());
}

TEST_CASE("homology over PLocal drops prime-to-p torsion with a flag") {
    auto C = two_term(BaseRing::p_local(2), Rat(6));
    auto res = homology_coords(C, 0);
    CHECK(res.group.free_rank == 0);
    REQUIRE(res.group.torsion.size() == 1);
    CHECK(res.group.torsion[0] == 2);  // only the 2-primary part of Z/6
    CHECK(res.group.prime_to_p_torsion_dropped);
}

TEST_CASE("construction-time d^2 = 0 is enforced") {
    ChainComplex C(BaseRing::integers());
    C.set_rank(0, 1);
    C.set_rank(1, 1);
    C.set_rank(2, 1);
    ExactMatrix one(1, 1, BaseRing::integers());
    one.set(0, 0, 1);
    C.set_differential(1, one);
    C.set_differential(2, one);
    CHECK_THROWS_AS(C.validate(), MathError);
}

TEST_CASE("mixed complex identities are enforced") {
    // Valid instance: de-Rham-style B on two degrees.
    BaseRing Q = BaseRing::rationals();
    MixedComplex M(Q);
    M.underlying.set_rank(0, 1);
    M.underlying.set_rank(1, 1);
    ExactMatrix B0(1, 1, Q);
    B0.set(0, 0, 1);
    M.B[0] = B0;
    M.validate();
    // Invalid: B^2 != 0.
    MixedComplex bad(Q);
    bad.underlying.set_rank(0, 1);
    bad.underlying.set_rank(1, 1);
    bad.underlying.set_rank(2, 1);
    bad.B[0] = B0;
    bad.B[1] = B0;
    CHECK_THROWS_AS(bad.validate(), MathError);
}

TEST_CASE("randomized mixed-complex validity: dB + Bd = 0 catches sign errors") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> val(-3, 3);
    BaseRing Q = BaseRing::rationals();
    // B in degree 0 and d in degree 1 must anticommute; build d, B with
    // d*B != 0 and check the failure is detected.
    MixedComplex M(Q);
    M.underlying.set_rank(0, 1);
    M.underlying.set_rank(1, 2);
    ExactMatrix d(1, 2, Q);
    d.set(0, 0, 1);
    M.underlying.set_differential(1, d);
    ExactMatrix B(2, 1, Q);
    B.set(0, 0, 1);
    M.B[0] = B;
    CHECK_THROWS_AS(M.validate(), MathError);
    (void)rng;
    (void)val;
}

TEST_CASE("total_u_complex: point with B=0 has homology in degrees 0,-2,-4") {
    BaseRing Q = BaseRing::rationals();
    MixedComplex M(Q);
    M.underlying.set_rank(0, 1);
    auto T = total_u_complex(M, 3, -5, 1);
    auto h = homology(T, -5, 0);
    CHECK(h[0].free_rank == 1);
    CHECK(h[-2].free_rank == 1);
    CHECK(h[-4].free_rank == 1);
    CHECK(h[-1].is_zero());
    CHECK(h[-3].is_zero());
    CHECK(h[-5].is_zero());
}

TEST_CASE("total_u_complex with B=0 is the sum of shifted copies") {
    BaseRing Q = BaseRing::rationals();
    MixedComplex M(Q);
    M.underlying.set_rank(0, 2);
    M.underlying.set_rank(1, 1);
    auto T = total_u_complex(M, 2, -3, 2);
    CHECK(T.rank(0) == 2);
    CHECK(T.rank(1) == 1);
    CHECK(T.rank(-2) == 2);
    CHECK(T.rank(-1) == 1);
}

TEST_CASE("total_u_complex: de Rham mixed complex of Q[x], two-column oracle") {
    // Truncated model: internal degree d slice of (Q[x], Q[x]dx, B = d/dx).
    // In a fixed internal degree d >= 1 the slice is rank 1 in homological
    // degrees 0 (x^d) and 1 (x^{d-1}dx), with B(x^d) = d * x^{d-1}dx.
    BaseRing Q = BaseRing::rationals();
    for (int d = 1; d <= 4; ++d) {
        MixedComplex M(Q);
        M.underlying.set_rank(0, 1);
        M.underlying.set_rank(1, 1);
        ExactMatrix B0(1, 1, Q);
        B0.set(0, 0, d);
        M.B[0] = B0;
        M.validate();
        auto T = total_u_complex(M, 2, -4, 2);
        // Explicit 2-column totalization oracle: degree 0 component x^d,
        // degree -1 component u*x^{d-1}dx, differential uB is injective,
        // so homology vanishes in degrees 0 and -1; degree 1 is x^{d-1}dx
        // with nothing mapping in: rank 1.
        auto h = homology(T, -2, 1);
        CHECK(h[0].is_zero());
        CHECK(h[-1].is_zero());
        CHECK(h[1].free_rank == 1);
    }
    // Internal degree 0: only the constants, B = 0; degree 0 homology = Q.
    MixedComplex M0(Q);
    M0.underlying.set_rank(0, 1);
    auto T0 = total_u_complex(M0, 2, -3, 1);
    CHECK(homology_at(T0, 0).free_rank == 1);
}

TEST_CASE("total_u_complex stabilization in the stable window") {
    // de Rham mixed complex of Q[x] summed over internal degrees 0..3.
    BaseRing Q = BaseRing::rationals();
    MixedComplex M(Q);
    M.underlying.set_rank(0, 4);  // 1, x, x^2, x^3
    M.underlying.set_rank(1, 3);  // dx, xdx, x^2dx
    ExactMatrix B(3, 4, Q);
    B.set(0, 1, 1);
    B.set(1, 2, 2);
    B.set(2, 3, 3);
    M.B[0] = B;
    M.validate();
    for (int U = 2; U <= 4; ++U) {
        auto TU = total_u_complex(M, U, -2 * U, 2);
        auto TU1 = total_u_complex(M, U + 1, -2 * U - 2, 2);
        for (int n = -2 * (U - 2); n <= 1; ++n)
            CHECK(homology_at(TU, n) == homology_at(TU1, n));
    }
}

TEST_CASE("filtered complex: two-step tower Z^2 >= Z >= 0 and associated graded") {
    BaseRing Z = BaseRing::integers();
    ChainComplex F0(Z), F1(Z);
    F0.set_rank(0, 2);
    F1.set_rank(0, 1);
    ExactMatrix incl(2, 1, Z);
    incl.set(0, 0, 1);
    FilteredComplex F({F0, F1}, {{{0, incl}}});
    auto gr = associated_graded(F);
    CHECK(gr.pieces.at(0).rank(0) == 1);
    CHECK(gr.pieces.at(1).rank(0) == 1);
}

TEST_CASE("constant tower: weight 0 piece = 0, weight 1 piece = C") {
    BaseRing Q = BaseRing::rationals();
    auto C = two_term(Q, Rat(3));
    FilteredComplex F({C, C}, {{{0, ExactMatrix::identity(1, Q)}, {1, ExactMatrix::identity(1, Q)}}});
    auto gr = associated_graded(F);
    CHECK(gr.pieces.at(0).rank(0) == 0);
    CHECK(gr.pieces.at(0).rank(1) == 0);
    CHECK(gr.pieces.at(1) == C);
}

TEST_CASE("form-degree filtration of the de Rham complex of Q[x] (one internal degree)") {
    // F^0 = (Q x^d in deg 0) + (Q x^{d-1}dx in deg 1) with zero differential
    // after regrading? Model: chain complex with ranks (1,1), d = 0; F^1 =
    // forms only. gr: weight 0 = functions, weight 1 = forms.
    BaseRing Q = BaseRing::rationals();
    ChainComplex F0(Q), F1(Q);
    F0.set_rank(0, 1);
    F0.set_rank(1, 1);
    F1.set_rank(1, 1);
    std::map<int, ExactMatrix> incl;
    incl[1] = ExactMatrix::identity(1, Q);
    incl[0] = ExactMatrix::zero(1, 0, Q);
    FilteredComplex F({F0, F1}, {incl});
    auto gr = associated_graded(F);
    CHECK(gr.pieces.at(0).rank(0) == 1);
    CHECK(gr.pieces.at(0).rank(1) == 0);
    CHECK(gr.pieces.at(1).rank(1) == 1);
}

TEST_CASE("filtration transitions must be injective") {
    BaseRing Q = BaseRing::rationals();
    ChainComplex F0(Q), F1(Q);
    F0.set_rank(0, 1);
    F1.set_rank(0, 1);
    std::map<int, ExactMatrix> zero_incl;
    zero_incl[0] = ExactMatrix::zero(1, 1, Q);
    CHECK_THROWS_AS(FilteredComplex({F0, F1}, {zero_incl}), MathError);
}

TEST_CASE("exhaustiveness: sum of gr ranks equals F^0 ranks (randomized, field)") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> rk(0, 4), steps(1, 3);
    BaseRing Q = BaseRing::rationals();
    for (int trial = 0; trial < 20; ++trial) {
        // Random flag of coordinate subspaces in one degree.
        int n = rk(rng) + 1;
        int levels = steps(rng);
        std::vector<int> dims{n};
        for (int i = 0; i < levels; ++i) dims.push_back(std::max(0, dims.back() - rk(rng)));
        std::vector<ChainComplex> tower;
        std::vector<std::map<int, ExactMatrix>> incls;
        for (size_t i = 0; i < dims.size(); ++i) {
            ChainComplex C(Q);
            C.set_rank(0, dims[i]);
            tower.push_back(C);
        }
        for (size_t i = 0; i + 1 < dims.size(); ++i) {
            ExactMatrix m(dims[i], dims[i + 1], Q);
            for (int j = 0; j < dims[i + 1]; ++j) m.set(j, j, 1);
            incls.push_back({{0, m}});
        }
        FilteredComplex F(tower, incls);
        auto gr = associated_graded(F);
        int total = 0;
        for (const auto& [w, piece] : gr.pieces) {
            (void)w;
            total += piece.rank(0);
        }
        CHECK(total == dims[0]);
    }
}

TEST_CASE("cone of identity is acyclic; tensor unit") {
    BaseRing Z = BaseRing::integers();
    auto C = two_term(Z, Rat(2));
    ChainMap id{&C, &C, {{0, ExactMatrix::identity(1, Z)}, {1, ExactMatrix::identity(1, Z)}}};
    auto K = cone(id);
    for (int n = -1; n <= 3; ++n) CHECK(homology_at(K, n).is_zero());

    ChainComplex pt(Z);
    pt.set_rank(0, 1);
    auto T = tensor(pt, C);
    CHECK(T == C);
}

TEST_CASE("tensor of (Z --2--> Z) with itself: H_0 = Z/2, H_1 = Z/2") {
    BaseRing Z = BaseRing::integers();
    auto C = two_term(Z, Rat(2));
    auto T = tensor(C, C);
    auto h = homology(T, 0, 2);
    CHECK(h[0] == HomologyGroup{0, {2}, false});
    CHECK(h[1] == HomologyGroup{0, {2}, false});
    CHECK(h[2].is_zero());
}

TEST_CASE("Kunneth over a field on random small complexes") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> val(-2, 2);
    BaseRing Q = BaseRing::rationals();
    auto random_complex = [&] {
        ChainComplex C(Q);
        C.set_rank(0, 2);
        C.set_rank(1, 2);
        ExactMatrix d(2, 2, Q);
        // Build a valid complex: only two terms, any matrix works.
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) d.set(i, j, val(rng));
        C.set_differential(1, d);
        C.validate();
        return C;
    };
    for (int trial = 0; trial < 15; ++trial) {
        auto C = random_complex(), D = random_complex();
        auto T = tensor(C, D);
        for (int n = 0; n <= 2; ++n) {
            long expect = 0;
            for (int a = 0; a <= n; ++a)
                expect += homology_at(C, a).free_rank * homology_at(D, n - a).free_rank;
            CHECK(homology_at(T, n).free_rank == expect);
        }
    }
}

TEST_CASE("tensor requires matching rings") {
    auto C = two_term(BaseRing::integers(), Rat(2));
    auto D = two_term(BaseRing::rationals(), Rat(2));
    CHECK_THROWS_AS(tensor(C, D), MathError);
}
