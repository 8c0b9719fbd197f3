#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hkr/complexes.hpp"
#include "hkr/poly.hpp"

namespace hkr {
namespace hh {

/// Finitely presented commutative algebra with positive internal weights on
/// the generators. Relations must be weight-homogeneous. Over a field the
/// relation set is completed to a Groebner basis (weighted degree first,
/// ties to the rightmost generator); over Integers/PLocal only monic
/// monomial relations are accepted.
class FPGradedAlgebra {
public:
    FPGradedAlgebra(BaseRing k, std::vector<std::string> gens, std::vector<long> weights,
                    std::vector<MultiPoly> relations);

    const BaseRing& ring() const { return ring_; }
    const std::vector<std::string>& gens() const { return gens_; }
    const std::vector<long>& weights() const { return weights_; }
    bool smooth() const { return relations_.empty(); }
    const std::vector<MultiPoly>& normal_form_system() const { return nf_; }

    long weight_of(const Exponents& e) const;
    MultiPoly normal_form(const MultiPoly& f) const;
    /// Normal-form monomials of internal weight d (the k-basis of A_d).
    std::vector<Exponents> basis(long d) const;
    MultiPoly monomial(const Exponents& e) const;

private:
    BaseRing ring_;
    std::vector<std::string> gens_;
    std::vector<long> weights_;
    std::vector<MultiPoly> relations_;
    std::vector<MultiPoly> nf_;  // normal-form system (Groebner or monomial)
};

/// Presentation of the Kaehler module: free on dx_1..dx_n with the
/// differentials of the relations (coefficient of dx_i in d(r), in normal
/// form) as relation rows.
struct KahlerModule {
    std::vector<long> weights;
    std::vector<std::vector<MultiPoly>> relation_differentials;
};
KahlerModule kahler_module(const FPGradedAlgebra& A);

/// Normalized cyclic bar complex components of a fixed internal degree d in
/// homological window [0..N]: C_n = (A tensor Abar^n)_d with Abar the
/// positive-weight part.
struct HochschildSlice {
    long internal_degree = 0;
    int window = 0;
    /// basis[n][k] is the k-th basis tensor of C_n: n+1 monomials.
    std::vector<std::vector<std::vector<Exponents>>> basis;
    cx::MixedComplex mixed;  // b as the differential, Connes B as the operator
};

HochschildSlice make_slice(const FPGradedAlgebra& A, long d, int window, long max_dim = 5000);

/// HH_n(A) in internal degree d, n = 0..N.
std::map<int, cx::HomologyGroup> hochschild_homology(const FPGradedAlgebra& A, long d, int N,
                                                     long max_dim = 5000);

/// The slice's Connes operator, packaged with its identities validated.
const cx::MixedComplex& connes_B(const HochschildSlice& s);

struct HkrReport {
    long omega_rank = 0;        // rank of Omega^q in internal degree d
    cx::HomologyGroup hh;       // HH_q(A)_d
    bool cycles = false;        // b compose eps = 0
    bool generates = false;     // classes generate the homology
    bool is_iso = false;
    ExactMatrix eps;            // Omega^q_d -> C_q
};

/// Antisymmetrization map eps_q and the comparison Omega^q_d = HH_q(A)_d.
HkrReport hkr_map(const FPGradedAlgebra& A, int q, long d, long max_dim = 5000);

/// De Rham complexes per internal degree 0..dmax: ranks[d][q] = rank of
/// Omega^q_d and d_dr[d][q] : Omega^q_d -> Omega^{q+1}_d.
struct DeRhamData {
    long dmax = 0;
    std::map<long, std::vector<long>> ranks;
    std::map<long, std::vector<ExactMatrix>> d_dr;
};
DeRhamData de_rham(const FPGradedAlgebra& A, long dmax);

/// Homology of the brutal truncation Omega^{>=i}, with Omega^q placed at
/// homological degree 2i-q, keyed by internal degree then degree.
std::map<long, std::map<int, cx::HomologyGroup>> truncated_de_rham_homology(
    const FPGradedAlgebra& A, int i, long dmax);

/// Bar-model negative cyclic homology in internal degree d, truncated at
/// u^U, reported for homological degrees lo..hi.
std::map<int, cx::HomologyGroup> hc_minus(const FPGradedAlgebra& A, long d, int u_order, int lo,
                                          int hi, long max_dim = 5000);

/// True when the reported groups are unchanged under truncating at u^{U+1}
/// instead of u^U.
bool hc_minus_stable(const FPGradedAlgebra& A, long d, int u_order, int lo, int hi,
                     long max_dim = 5000);

/// De Rham model of HC^- in internal degree d with the Hodge-weight
/// filtration: the u^j Omega^q component has weight q - j, and F^i is
/// spanned by the components of weight >= i. Tower level t is F^{min_weight
/// + t}; min_weight = -(u_order - 1).
struct FilteredHcMinus {
    int min_weight = 0;
    cx::FilteredComplex filt;
    bool graded_pieces_match = false;  // gr^i = truncated de Rham homology, 0 <= i <= levels
};
FilteredHcMinus filtered_hc_minus_dr_model(const FPGradedAlgebra& A, long d, int u_order,
                                           int levels);

struct ComparisonReport {
    bool agree = false;
    std::string detail;
};

/// Bar-model HC^- vs the underlying object of the de Rham model, compared
/// group by group for internal degrees 0..dmax and |degree| <= window.
ComparisonReport comparison_map_check(const FPGradedAlgebra& A, long dmax, int window,
                                      long max_dim = 20000);

}  // namespace hh
}  // namespace hkr
