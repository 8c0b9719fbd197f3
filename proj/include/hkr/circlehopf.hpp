#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hkr/complexes.hpp"
#include "hkr/matrix.hpp"

namespace hkr {
namespace hopf {

struct HopfBasisElem {
    int hdeg = 0;
    long weight = 0;
    std::string name;
};

/// Finite-rank graded Hopf algebra given by structure constants on a fixed
/// homogeneous basis. validate() checks every axiom (associativity,
/// coassociativity, unit/counit laws, Delta multiplicative with Koszul
/// signs, antipode identities, grading additivity) on basis elements.
struct GradedHopfAlgebra {
    BaseRing ring = BaseRing::rationals();
    std::vector<HopfBasisElem> basis;
    std::vector<std::vector<std::vector<Rat>>> mult;    // mult[i][j][k]: e_i e_j = sum c e_k
    std::vector<std::vector<std::vector<Rat>>> comult;  // comult[k][i][j]: Delta e_k
    std::vector<Rat> unit;
    std::vector<Rat> counit;
    std::vector<std::vector<Rat>> antipode;  // S(e_k) coordinates
    /// When >= 0 the instance is a weight-filtered Hopf algebra truncated at
    /// total weight trunc: multiplicativity of Delta is only required on
    /// pairs of total weight <= trunc, and weights may drop under products
    /// (filtration degrees, not a grading).
    long trunc = -1;

    int rank() const { return static_cast<int>(basis.size()); }
    void validate() const;
    /// Linear-dual Hopf algebra on the dual basis, with the Koszul pairing
    /// <f (x) g, a (x) b> = (-1)^{|g||a|} f(a) g(b). Gradings negate.
    GradedHopfAlgebra dual() const;
    /// Basis of the primitives {x : Delta x = x (x) 1 + 1 (x) x}.
    std::vector<std::vector<Rat>> primitives() const;
    /// Indices of basis elements g with Delta g = g (x) g and counit 1.
    std::vector<int> grouplike_basis_elements() const;
};

/// Structure constants agree entry for entry (same rank, grading, tables).
bool same_structure(const GradedHopfAlgebra& a, const GradedHopfAlgebra& b);

GradedHopfAlgebra lambda_hopf(BaseRing k);                  // k[e]/e^2, e in (hdeg 1, weight 1)
GradedHopfAlgebra alpha_hopf(const Int& p, int m);          // F_p[T]/T^{p^m}, T primitive
GradedHopfAlgebra mu_hopf(BaseRing k, long n);              // k[U]/(U^n - 1), U grouplike
GradedHopfAlgebra functions_hopf(BaseRing k, long n);       // functions on Z/n
/// O(Ker^(m)) = F_p[l_0..l_{m-1}]/(l_i^p) with the Witt-sum coproduct.
/// negate_grading flips weights to the dual-side convention.
GradedHopfAlgebra kernel_hopf(const Int& p, int m, bool negate_grading = false);

/// Finite-rank augmented graded algebra over a field.
struct AugmentedAlgebra {
    BaseRing ring = BaseRing::rationals();
    std::vector<HopfBasisElem> basis;
    std::vector<std::vector<std::vector<Rat>>> mult;
    std::vector<Rat> unit;
    std::vector<Rat> counit;  // augmentation

    int rank() const { return static_cast<int>(basis.size()); }
    void validate() const;
};

AugmentedAlgebra truncated_poly_algebra(BaseRing k, int N);  // k[T]/T^N, T weight 1
AugmentedAlgebra exterior_algebra(BaseRing k);               // k[e]/e^2, e hdeg 1 weight 1

/// Minimal free resolution of k over A up to homological index `bound`,
/// with Ext dimensions read off generator counts (minimality).
struct ExtData {
    AugmentedAlgebra A;
    std::vector<std::vector<HopfBasisElem>> gens;  // grading of P_s generators
    std::vector<ExactMatrix> diff;                 // diff[s] : P_s -> P_{s-1} over k, s >= 1
    std::map<std::pair<int, long>, long> dims;     // (s, weight) -> dim Ext^s in that weight
    long ext_dim(int s) const;
};
ExtData ext_self(const AugmentedAlgebra& A, int bound, long max_rank = 4096);

/// Yoneda product Ext^s x Ext^t -> Ext^{s+t} in the generator-dual bases.
std::vector<Rat> yoneda(const ExtData& E, int s, const std::vector<Rat>& f, int t,
                        const std::vector<Rat>& g);

/// Ext towers over F_p[T]/T^{p^m} with restriction maps along the quotients
/// F_p[T]/T^{p^{m+1}} ->> F_p[T]/T^{p^m}, and the colimit dimensions.
struct TowerReport {
    std::vector<std::vector<long>> dims;         // dims[m-1][s]
    std::vector<std::vector<ExactMatrix>> maps;  // maps[m-1][s] : Ext_m^s -> Ext_{m+1}^s
    std::vector<long> colimit;                   // per degree s
    bool split_square_zero = false;              // colimit = (1, 1, 0, 0, ...)
};
TowerReport ext_colimit_tower(const Int& p, int m_max, int bound = 3);

struct DualCheck {
    bool verified = false;
    std::string detail;
    std::vector<std::vector<Rat>> generator_images;  // phi(l_i) in the dual
};
/// dual(O(alpha_{p^m})) vs O(Ker^(m)): exhaustive search over weight-graded
/// generator images, verifying all Hopf structure constants.
DualCheck cartier_dual_check(const Int& p, int m);

/// dual(O(mu_n)) equals the function Hopf algebra of Z/n on the nose, and
/// the dual-basis pairing is nondegenerate.
bool mu_duality_check(BaseRing k, long n);

/// Lambda-comodules vs mixed complexes: the coaction x -> 1 (x) x + e (x) Bx
/// is coassociative iff B^2 = 0, and the Leibniz formula for B on tensors is
/// the one induced by Delta(e) = e (x) 1 + 1 (x) e.
struct MixedCategoryReport {
    bool coaction_ok = false;
    bool tensor_ok = false;
};
MixedCategoryReport strict_mixed_category_check(const std::vector<cx::MixedComplex>& samples);

}  // namespace hopf
}  // namespace hkr
