#pragma once

#include <map>
#include <vector>

#include "hkr/complexes.hpp"

namespace hkr {
namespace rees {

/// Weight-graded module over k[t] with t of weight -1, presented by the
/// pieces of weights 0..N and the t-action maps between adjacent weights.
/// Below weight 0 the module continues with t acting as the identity on
/// the weight-0 piece; above weight N it vanishes.
struct ReesModule {
    std::vector<cx::ChainComplex> pieces;            // index = weight
    std::vector<std::map<int, ExactMatrix>> t_maps;  // t : pieces[i+1] -> pieces[i]
    bool honest = false;  // t injective wherever its source is nonzero

    int top_weight() const { return static_cast<int>(pieces.size()) - 1; }
    const BaseRing& ring() const { return pieces.front().ring(); }
    cx::ChainMap t_map(int i) const;  // pieces[i+1] -> pieces[i]
    void validate() const;            // pieces valid, t maps are chain maps
    bool t_injective() const;         // value recorded in `honest` by rees_of
};

/// Rees module of a finite tower: weight-i piece = F^i, t = inclusion.
ReesModule rees_of(const cx::FilteredComplex& F);

/// Fiber at t = 0: cokernel of the t-action per weight (associated graded).
cx::GradedComplex fiber_at_zero(const ReesModule& R);

/// Fiber at t = 1: colimit along the t-action (the underlying object F^0).
cx::ChainComplex fiber_at_one(const ReesModule& R);

/// Total rank (summed over homological degrees) of each weight piece 0..N.
std::map<int, long> rank_per_weight(const ReesModule& R);

/// Day convolution of filtrations: (F (x) G)^n = sum_{i+j=n} im(F^i (x) G^j)
/// inside F^0 (x) G^0. Field coefficients only.
cx::FilteredComplex day_tensor(const cx::FilteredComplex& F, const cx::FilteredComplex& G);

/// Algebra concentrated in homological degree 0 with a multiplicative
/// filtration: mult[a][b] holds the coordinates of e_a * e_b in the F^0
/// basis (e_* the F^0 degree-0 basis).
struct FilteredAlgebraData {
    cx::FilteredComplex filt;
    std::vector<std::vector<std::vector<Rat>>> mult;

    /// Checks F^i * F^j <= F^{i+j} on basis elements (via their images in
    /// F^0), for i + j within the tower. Membership is solved integrally
    /// over integral base rings.
    bool multiplicative() const;
};

}  // namespace rees
}  // namespace hkr
