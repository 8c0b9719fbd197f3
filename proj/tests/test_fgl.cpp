#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hkr/fgl.hpp"
#include "hkr/rees.hpp"

using namespace hkr;
using namespace hkr::fgl;

namespace {

std::vector<Rat> hmul(const hopf::GradedHopfAlgebra& H, const std::vector<Rat>& x,
                      const std::vector<Rat>& y) {
    std::vector<Rat> out(static_cast<size_t>(H.rank()), Rat(0));
    for (int i = 0; i < H.rank(); ++i)
        for (int j = 0; j < H.rank(); ++j)
            for (int k = 0; k < H.rank(); ++k)
                out[static_cast<size_t>(k)] = H.ring.add(
                    out[static_cast<size_t>(k)],
                    x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)] *
                        H.mult[static_cast<size_t>(i)][static_cast<size_t>(j)]
                              [static_cast<size_t>(k)]);
    return out;
}

}  // namespace

TEST_CASE("interpolation laws satisfy the axioms over Z and F_p") {
    for (int lam : {0, 1, 2, -1}) {
        FormalGroupLaw F = interpolation_fgl(Rat(lam), BaseRing::integers(), 4);
        CHECK(F.F.coeff({1, 0}) == 1);
        CHECK(F.F.coeff({0, 1}) == 1);
        CHECK(F.F.coeff({1, 1}) == lam);
        for (int p : {2, 3, 5}) interpolation_fgl(Rat(lam), BaseRing::prime_field(Int(p)), 4);
    }
}

TEST_CASE("additive distributions are divided powers") {
    hopf::GradedHopfAlgebra H = distributions(interpolation_fgl(Rat(0), BaseRing::rationals(), 2), 5);
    CHECK(H.rank() == 6);
    // d_1^n = n! d_n.
    std::vector<Rat> d1(6, Rat(0));
    d1[1] = 1;
    std::vector<Rat> power = d1;
    Rat factorial(1);
    for (int n = 2; n <= 5; ++n) {
        power = hmul(H, power, d1);
        factorial *= n;
        for (int k = 0; k <= 5; ++k)
            CHECK(power[static_cast<size_t>(k)] == (k == n ? factorial : Rat(0)));
    }
    // gamma constants directly: d_i d_j = C(i+j, i) d_{i+j}.
    DividedPowerAlgebra G = divided_powers(5);
    for (int i = 0; i <= 5; ++i)
        for (int j = 0; i + j <= 5; ++j)
            CHECK(H.mult[static_cast<size_t>(i)][static_cast<size_t>(j)]
                        [static_cast<size_t>(i + j)] == Rat(G.coeff(i, j)));
}

TEST_CASE("multiplicative distributions match the integer-valued basis") {
    hopf::GradedHopfAlgebra H = distributions(interpolation_fgl(Rat(1), BaseRing::rationals(), 2), 6);
    IntValuedPolyAlgebra R = intvalued_structure(6);
    // Two independent computations of the same constants: coefficient
    // extraction from (X+Y+XY)^n versus finite differences of C(X,i) C(X,j).
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; j <= 6; ++j)
            for (int k = 0; k <= 6; ++k)
                CHECK(H.mult[static_cast<size_t>(i)][static_cast<size_t>(j)]
                            [static_cast<size_t>(k)] ==
                      Rat(R.mult[static_cast<size_t>(i)][static_cast<size_t>(j)]
                                [static_cast<size_t>(k)]));
    // Symmetry of the constants.
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; j <= 6; ++j)
            CHECK(R.mult[static_cast<size_t>(i)][static_cast<size_t>(j)] ==
                  R.mult[static_cast<size_t>(j)][static_cast<size_t>(i)]);
    // Hopf axiom suite for other interpolation values.
    distributions(interpolation_fgl(Rat(2), BaseRing::rationals(), 2), 4);
    distributions(interpolation_fgl(Rat(-1), BaseRing::integers(), 2), 4);
}

TEST_CASE("integer-valued polynomial structure") {
    IntValuedPolyAlgebra R = intvalued_structure(8);
    // c_1 c_1 = c_1 + 2 c_2.
    for (int k = 0; k <= 8; ++k) {
        Int want = k == 1 ? Int(1) : k == 2 ? Int(2) : Int(0);
        CHECK(R.mult[1][1][static_cast<size_t>(k)] == want);
    }
    // Delta c_2 = c_2 (x) 1 + c_1 (x) c_1 + 1 (x) c_2.
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j)
            CHECK(R.comult[2][static_cast<size_t>(i)][static_cast<size_t>(j)] ==
                  (i + j == 2 ? Int(1) : Int(0)));
    CHECK(R.multiplicative);
    CHECK(R.gr_is_divided_powers);
    // Degree filtration through the Rees machinery: injective t-action and
    // one-dimensional graded pieces.
    CHECK(R.rees.honest);
    auto ranks = rees::rank_per_weight(R.rees);
    for (int i = 0; i <= 8; ++i) CHECK(ranks.at(i) == 8 - i + 1);
    cx::GradedComplex gr = rees::fiber_at_zero(R.rees);
    for (auto& [w, piece] : gr.pieces) CHECK(piece.rank(0) == 1);
    CHECK(rees::fiber_at_one(R.rees).rank(0) == 9);
    // Leading constants agree with divided powers up to the truncation.
    DividedPowerAlgebra G = divided_powers(8);
    CHECK(G.coeff(3, 4) == 35);
    CHECK(R.mult[3][4][7] == Int(35));
    CHECK(intvalued_structure(12).gr_is_divided_powers);
    CHECK_THROWS_WITH_AS(intvalued_structure(13),
                         doctest::Contains("budget exceeded"), MathError);
}

TEST_CASE("mod-p interpolation comparison with the circle group schemes") {
    for (auto [p, N] : {std::pair<int, int>{2, 4}, {2, 6}, {3, 3}, {3, 6}}) {
        CartierInterpolationReport rep = cartier_interpolation_check(Int(p), N);
        INFO("p=", p, " N=", N, " detail: ", rep.detail);
        CHECK(rep.multiplicative_ok);
        CHECK(rep.additive_ok);
    }
    CartierInterpolationReport trivial = cartier_interpolation_check(Int(2), 1);
    CHECK(trivial.multiplicative_ok);
    CHECK(trivial.additive_ok);
    CHECK(trivial.detail == "no p^m <= N; unit stage only");
    CHECK_THROWS_AS(cartier_interpolation_check(Int(5), 4), MathError);
    CHECK_THROWS_WITH_AS(cartier_interpolation_check(Int(2), 7),
                         doctest::Contains("budget exceeded"), MathError);
}
