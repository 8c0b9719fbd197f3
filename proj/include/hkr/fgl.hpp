#pragma once

#include <string>
#include <vector>

#include "hkr/circlehopf.hpp"
#include "hkr/poly.hpp"
#include "hkr/rees.hpp"

namespace hkr {
namespace fgl {

/// One-dimensional formal group law truncated at total degree N: a bivariate
/// polynomial F(X, Y) = X + Y (mod degree 2) satisfying unitality, symmetry
/// and associativity modulo degree N + 1.
struct FormalGroupLaw {
    BaseRing ring = BaseRing::rationals();
    int N = 2;
    MultiPoly F;  // vars X, Y

    void validate() const;
};

/// F(X, Y) = X + Y + lambda X Y. lambda = 0 is the additive law, lambda = 1
/// the multiplicative one; the axioms hold exactly (polynomially).
FormalGroupLaw interpolation_fgl(const Rat& lambda, BaseRing k, int N);

/// Hopf algebra of distributions of the formal group, truncated at degree N:
/// dual basis d_0..d_N to the monomials 1, T, .., T^N, coproduct dual to the
/// coordinate-ring product, product dual to T -> F(X, Y). The result is
/// weight-filtered (trunc = N).
hopf::GradedHopfAlgebra distributions(const FormalGroupLaw& F, int N);

/// Divided power algebra: gamma_i gamma_j = C(i+j, i) gamma_{i+j}.
struct DividedPowerAlgebra {
    int N = 0;
    Int coeff(int i, int j) const;  // C(i+j, i), exact
};
DividedPowerAlgebra divided_powers(int N);

/// Integer-valued polynomials in the binomial-coefficient basis c_n = C(X, n)
/// up to degree N, with integer structure constants, the degree filtration
/// (encoded as a descending tower, level k = span of c_0..c_{N-k}) and its
/// Rees module.
struct IntValuedPolyAlgebra {
    int N;
    std::vector<std::vector<std::vector<Int>>> mult;    // c_i c_j in the c-basis (truncated at N)
    std::vector<std::vector<std::vector<Int>>> comult;  // Delta c_n = sum c_i (x) c_j
    cx::FilteredComplex filt;
    rees::ReesModule rees;
    bool multiplicative = false;         // c-degree filtration is multiplicative
    bool gr_is_divided_powers = false;   // leading constants match C(i+j, i)
};
IntValuedPolyAlgebra intvalued_structure(int N);

/// Mod-p comparison of the truncated distribution algebras with the duals of
/// the finite group schemes from module circlehopf, for every p^m <= N:
/// the multiplicative law against dual(O(mu_{p^m})) via d_n -> C(., n), the
/// additive law against dual(O(alpha_{p^m})) via d_n -> (T^n)-dual.
struct CartierInterpolationReport {
    bool multiplicative_ok = false;
    bool additive_ok = false;
    std::string detail;
};
CartierInterpolationReport cartier_interpolation_check(const Int& p, int N);

}  // namespace fgl
}  // namespace hkr
